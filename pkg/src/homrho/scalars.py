"""Exact rational functions in a single formal parameter ``q``.

A :class:`Scalar` is ``num / den`` with ``num, den`` in ``Q[q]``, kept in a
canonical form (monic denominator, coprime to the numerator), so equality of
values is equality of representations.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational

__all__ = ["Poly", "Scalar", "ZERO", "ONE", "Q", "as_scalar"]


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class Poly:
    """Dense univariate polynomial, coefficients stored low degree first."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        self.c = _trim(Fraction(x) for x in coeffs)

    @classmethod
    def _raw(cls, coeffs):
        p = object.__new__(cls)
        p.c = coeffs
        return p

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def lead(self) -> Fraction:
        return self.c[-1]

    def __eq__(self, other):
        return isinstance(other, Poly) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __add__(self, other):
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return Poly._raw(_trim(out))

    def __neg__(self):
        return Poly._raw(tuple(-x for x in self.c))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        a, b = self.c, other.c
        if not a or not b:
            return Poly._raw(())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Poly._raw(_trim(out))

    def scale(self, k) -> "Poly":
        return Poly._raw(_trim(x * k for x in self.c))

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        quot = [Fraction(0)] * max(len(rem) - len(other.c) + 1, 0)
        lead = other.lead()
        dlen = len(other.c)
        while len(rem) >= dlen and rem:
            k = rem[-1] / lead
            shift = len(rem) - dlen
            quot[shift] = k
            for i, y in enumerate(other.c):
                rem[shift + i] -= k * y
            rem = list(_trim(rem))
        return Poly._raw(_trim(quot)), Poly._raw(tuple(rem))

    def monic(self) -> "Poly":
        return self.scale(1 / self.lead())

    def __call__(self, x):
        acc = Fraction(0)
        for coeff in reversed(self.c):
            acc = acc * x + coeff
        return acc

    def __repr__(self):
        return f"Poly({[str(x) for x in self.c]})"


def _gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic() if not a.is_zero() else a


_ONE_POLY = Poly((1,))


@lru_cache(maxsize=65536)
def _canonical(num: Poly, den: Poly):
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return Poly._raw(()), _ONE_POLY
    if den.degree > 0:
        g = _gcd(num, den)
        if g.degree > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
    lead = den.lead()
    if lead != 1:
        num = num.scale(1 / lead)
        den = den.scale(1 / lead)
    return num, den


class Scalar:
    """An element of the field ``Q(q)`` in canonical form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=(), den=(1,)):
        if not isinstance(num, Poly):
            num = Poly(num)
        if not isinstance(den, Poly):
            den = Poly(den)
        self.num, self.den = _canonical(num, den)
        self._hash = None

    @classmethod
    def const(cls, value) -> "Scalar":
        return cls(Poly((Fraction(value),)))

    @classmethod
    def q_power(cls, k: int) -> "Scalar":
        if k >= 0:
            return cls(Poly((0,) * k + (1,)))
        return cls(_ONE_POLY, Poly((0,) * (-k) + (1,)))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} depends on q")
        return self.num.c[0] if self.num.c else Fraction(0)

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Rational)):
                other = Scalar.const(other)
            else:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __add__(self, other):
        if not isinstance(other, (Scalar, int, Rational)):
            return NotImplemented
        other = as_scalar(other)
        if self.den == other.den:
            return Scalar(self.num + other.num, self.den)
        return Scalar(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        s = object.__new__(Scalar)
        s.num, s.den, s._hash = -self.num, self.den, None
        return s

    def __sub__(self, other):
        if not isinstance(other, (Scalar, int, Rational)):
            return NotImplemented
        return self + (-as_scalar(other))

    def __rsub__(self, other):
        return as_scalar(other) - self

    def __mul__(self, other):
        if not isinstance(other, (Scalar, int, Rational)):
            return NotImplemented
        other = as_scalar(other)
        if other.is_zero() or self.is_zero():
            return ZERO
        return Scalar(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        return Scalar(self.den, self.num)

    def __truediv__(self, other):
        return self * as_scalar(other).inverse()

    def __rtruediv__(self, other):
        return as_scalar(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def subs(self, value) -> "Scalar":
        """Specialize ``q`` to a rational value."""
        value = Fraction(value)
        d = self.den(value)
        if d == 0:
            raise ZeroDivisionError(f"denominator of {self} vanishes at q={value}")
        return Scalar.const(self.num(value) / d)

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        from .render import render_scalar

        return render_scalar(self)


def as_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Rational)):
        return Scalar.const(x)
    raise TypeError(f"cannot interpret {x!r} as a scalar")


ZERO = Scalar()
ONE = Scalar.const(1)
Q = Scalar.q_power(1)
