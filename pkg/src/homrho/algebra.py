"""Hom-rho-commutative algebras and their elements.

Two backends share the :class:`Element` type:

* ``QuantumTorus`` -- Laurent monomials ``x_1^e_1 ... x_n^e_n`` in declaration
  order; commutation factors come from the cocycle, so ``x_i x_j =
  rho(|x_i|, |x_j|) x_j x_i`` holds by construction.
* ``StructureTable`` -- a finite basis with explicit structure constants
  (e.g. the quaternions).
"""

from __future__ import annotations

import copy
import itertools
from fractions import Fraction
from dataclasses import dataclass

from .errors import DomainError, StructureError
from .grading import CocycleSpec, GradingGroup
from .report import Report
from .scalars import ONE, ZERO, Scalar, as_scalar

QUANTUM_TORUS = "QuantumTorus"
STRUCTURE_TABLE = "StructureTable"


@dataclass(frozen=True)
class Generator:
    name: str
    degree: tuple
    invertible: bool = False


class Algebra:
    """An ``AlgebraSpec``: grading, cocycle, backend data and the twist ``phi``."""

    def __init__(self, name, group: GradingGroup, cocycle: CocycleSpec, generators, backend=QUANTUM_TORUS,
                 phi=None, phi_inverse=None, table=None, unit=None):
        self.name = name
        self.group = group
        self.cocycle = cocycle
        self.backend = backend
        self.generators = tuple(generators)
        self.names = tuple(g.name for g in self.generators)
        if len(set(self.names)) != len(self.names):
            raise StructureError("duplicate generator names")
        for g in self.generators:
            if len(g.degree) != group.rank:
                raise StructureError(f"generator {g.name} has degree {g.degree} but the group has rank {group.rank}")
        if cocycle.rank != group.rank:
            raise StructureError("cocycle rank does not match group rank")
        self.index = {n: i for i, n in enumerate(self.names)}
        self.degrees = tuple(group.degree(g.degree) for g in self.generators)
        self._mul_cache = {}
        if backend == QUANTUM_TORUS:
            n = len(self.generators)
            phi = phi or {}
            # phi(x_i) = a_i x_i and phi(x_i^-1) = b_i x_i^-1, keyed by (index, sign)
            self.phi_pos = tuple(as_scalar(phi.get((i, 1), ONE)) for i in range(n))
            self.phi_neg = tuple(as_scalar(phi.get((i, -1), ONE)) for i in range(n))
            self._gen_exp = [[cocycle.exponent(self.degrees[j], self.degrees[i]) for i in range(n)] for j in range(n)]
        elif backend == STRUCTURE_TABLE:
            if unit is None or unit not in self.index:
                raise StructureError("structure-table algebra needs a declared unit")
            self.unit = self.index[unit]
            self.table = {}
            for (a, b), value in (table or {}).items():
                self.table[(self.index[a], self.index[b])] = {self.index[k]: as_scalar(c) for k, c in value.items()}
            self.phi_map = {}
            for i in range(len(self.names)):
                image = (phi or {}).get(self.names[i])
                self.phi_map[i] = {self.index[k]: as_scalar(c) for k, c in image.items()} if image else {i: ONE}
        else:
            raise StructureError(f"unknown backend {backend!r}")

    # -- constructors -----------------------------------------------------
    def element(self, terms) -> "Element":
        return Element(self, terms)

    def zero(self) -> "Element":
        return Element(self, {})

    def one(self) -> "Element":
        return Element(self, {self.unit_key: ONE})

    def scalar(self, s) -> "Element":
        return Element(self, {self.unit_key: as_scalar(s)})

    @property
    def unit_key(self):
        if self.backend == QUANTUM_TORUS:
            return (0,) * len(self.generators)
        return self.unit

    def gen(self, name, power=1) -> "Element":
        return self.normalize_word([(name, power)])

    def monomial(self, exps, coeff=ONE) -> "Element":
        if self.backend != QUANTUM_TORUS:
            raise StructureError("monomials are exponent vectors only on the quantum-torus backend")
        exps = tuple(exps)
        self._check_exponents(exps)
        return Element(self, {exps: as_scalar(coeff)})

    def basis(self, label, coeff=ONE) -> "Element":
        return Element(self, {self.index[label]: as_scalar(coeff)})

    def _check_exponents(self, exps):
        for g, e in zip(self.generators, exps):
            if e < 0 and not g.invertible:
                raise DomainError(f"negative power of non-invertible generator {g.name}")

    # -- monomial arithmetic ----------------------------------------------
    def key_degree(self, key):
        if self.backend == QUANTUM_TORUS:
            return self.group.sum(self.group.scale(e, d) for e, d in zip(key, self.degrees) if e)
        return self.degrees[key]

    def mono_mul(self, a, b):
        """Product of two monomial keys as ``{key: coefficient}``."""
        hit = self._mul_cache.get((a, b))
        if hit is not None:
            return hit
        if self.backend == QUANTUM_TORUS:
            # move each x_i^{b_i} left past x_j^{a_j} for j > i
            n = len(a)
            total = 0
            for j in range(n):
                if a[j]:
                    row = self._gen_exp[j]
                    for i in range(j):
                        if b[i]:
                            total += a[j] * b[i] * row[i]
            key = tuple(x + y for x, y in zip(a, b))
            hit = {key: self.cocycle.base**total if total else ONE}
        else:
            if a == self.unit:
                hit = {b: ONE}
            elif b == self.unit:
                hit = {a: ONE}
            else:
                hit = self.table.get((a, b), {})
        self._mul_cache[(a, b)] = hit
        return hit

    def normalize_word(self, word, coeff=ONE) -> "Element":
        """Canonical form of ``coeff * w_1^p_1 * w_2^p_2 ...`` (a word in generator names)."""
        out = Element(self, {self.unit_key: as_scalar(coeff)})
        for name, power in word:
            if name not in self.index:
                raise StructureError(f"unknown generator {name!r}")
            i = self.index[name]
            if self.backend == QUANTUM_TORUS:
                exps = tuple(power if k == i else 0 for k in range(len(self.generators)))
                self._check_exponents(exps)
                factor = Element(self, {exps: ONE})
            else:
                if power < 0:
                    raise DomainError("negative powers are not defined on the structure-table backend")
                factor = self.one()
                base = Element(self, {i: ONE})
                for _ in range(power):
                    factor = factor * base
            out = out * factor
        return out

    # -- twist ------------------------------------------------------------
    def phi_key(self, key):
        if self.backend == QUANTUM_TORUS:
            c = ONE
            for e, a, b in zip(key, self.phi_pos, self.phi_neg):
                if e > 0:
                    c = c * a**e
                elif e < 0:
                    c = c * b ** (-e)
            return {key: c}
        return self.phi_map[key]

    def phi(self, f: "Element") -> "Element":
        out = {}
        for key, c in f.terms.items():
            for k2, c2 in self.phi_key(key).items():
                out[k2] = out.get(k2, ZERO) + c * c2
        return Element(self, out)

    def phi_power(self, f: "Element", k: int) -> "Element":
        for _ in range(k):
            f = self.phi(f)
        return f

    def phi_inverse(self, f: "Element") -> "Element":
        if self.backend != QUANTUM_TORUS:
            raise StructureError("phi inverse only implemented for the quantum torus")
        out = {}
        for key, c in f.terms.items():
            (k2, c2), = self.phi_key(key).items()
            if c2.is_zero():
                raise DomainError("phi is not invertible")
            out[k2] = c / c2
        return Element(self, out)

    def letters(self):
        """The generators and (for invertible ones) their inverses, as Elements."""
        out = []
        for g in self.generators:
            if self.backend == STRUCTURE_TABLE and self.index[g.name] == self.unit:
                continue
            out.append(self.gen(g.name))
            if self.backend == QUANTUM_TORUS and g.invertible:
                out.append(self.gen(g.name, -1))
        return out

    def __repr__(self):
        return f"Algebra({self.name!r}, {self.backend}, {self.names})"


class Element:
    """A canonical sum of ``coefficient * monomial`` terms."""

    __slots__ = ("algebra", "terms", "_hash")

    def __init__(self, algebra: Algebra, terms):
        self.algebra = algebra
        self.terms = {k: c for k, c in terms.items() if not c.is_zero()}
        self._hash = None

    # -- structure --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        """Terms in canonical order: descending lex in exponents, ascending basis index for tables."""
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=self.algebra.backend == QUANTUM_TORUS)

    @property
    def degrees(self):
        return {self.algebra.key_degree(k) for k in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees) <= 1

    @property
    def degree(self):
        """Degree of a homogeneous element; ``None`` for zero."""
        degs = self.degrees
        if len(degs) > 1:
            raise DomainError(f"element {self} is inhomogeneous")
        return next(iter(degs)) if degs else None

    def homogeneous_parts(self):
        parts = {}
        for k, c in self.terms.items():
            parts.setdefault(self.algebra.key_degree(k), {})[k] = c
        return [Element(self.algebra, t) for _, t in sorted(parts.items())]

    def monomial_terms(self):
        """Each term as its own Element (all homogeneous)."""
        return [Element(self.algebra, {k: c}) for k, c in self.sorted_terms()]

    def scalar_value(self):
        """The coefficient of the unit when the element is a pure scalar, else ``None``."""
        if not self.terms:
            return ZERO
        if set(self.terms) == {self.algebra.unit_key}:
            return self.terms[self.algebra.unit_key]
        return None

    def is_unit_term(self) -> bool:
        """A single invertible term (scalar times invertible monomial)."""
        if len(self.terms) != 1:
            return False
        if self.algebra.backend == QUANTUM_TORUS:
            (key, _), = self.terms.items()
            return all(e == 0 or g.invertible for e, g in zip(key, self.algebra.generators))
        return self.scalar_value() is not None

    def inverse(self) -> "Element":
        if not self.is_unit_term():
            raise DomainError(f"{self} is not an invertible term")
        (key, c), = self.terms.items()
        if self.algebra.backend == QUANTUM_TORUS:
            inv_key = tuple(-e for e in key)
            (_, factor), = self.algebra.mono_mul(key, inv_key).items()
            return Element(self.algebra, {inv_key: (c * factor).inverse()})
        return Element(self.algebra, {key: c.inverse()})

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Element):
            if other.algebra is not self.algebra:
                raise StructureError("elements of different algebras")
            return other
        return self.algebra.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return Element(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.algebra, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, (Element, Scalar, int, Fraction)):
            return NotImplemented
        if not isinstance(other, Element):
            s = as_scalar(other)
            return Element(self.algebra, {k: c * s for k, c in self.terms.items()})
        other = self._coerce(other)
        out = {}
        mul = self.algebra.mono_mul
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                for k, c in mul(ka, kb).items():
                    v = ca * cb * c
                    out[k] = out[k] + v if k in out else v
        return Element(self.algebra, out)

    def __rmul__(self, other):
        s = as_scalar(other)
        return Element(self.algebra, {k: s * c for k, c in self.terms.items()})

    def __truediv__(self, other):
        if isinstance(other, Element):
            return self * other.inverse()
        return self * as_scalar(other).inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
        return out

    def subs_q(self, value) -> "Element":
        return Element(self.algebra, {k: c.subs(value) for k, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.algebra is other.algebra and self.terms == other.terms
        if isinstance(other, (int, Scalar)):
            return self == self.algebra.scalar(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        from .render import render_element

        return render_element(self)

    def __repr__(self):
        return f"Element({self})"


def multiply(f: Element, g: Element) -> Element:
    return f * g


def normalize_element(algebra: Algebra, word, coeff=ONE) -> Element:
    return algebra.normalize_word(word, coeff)


def rho_of(f: Element, g: Element) -> Scalar:
    """``rho(|f|, |g|)``; either argument may be zero (factor irrelevant, returns 1)."""
    df, dg = f.degree, g.degree
    if df is None or dg is None:
        return ONE
    return f.algebra.cocycle(df, dg)


def rho_commutator(f: Element, g: Element) -> Element:
    for x in (f, g):
        if not x.is_homogeneous():
            raise DomainError(f"rho-commutator needs homogeneous input, got {x}")
    return f * g - rho_of(f, g) * (g * f)


def apply_phi(f: Element) -> Element:
    return f.algebra.phi(f)


def _sample_pairs(algebra):
    if algebra.backend == STRUCTURE_TABLE:
        basis = [Element(algebra, {i: ONE}) for i in range(len(algebra.names))]
        return basis, algebra.letters()
    letters = algebra.letters()
    return letters, letters


def check_structure(algebra: Algebra) -> Report:
    """rho-commutativity, Hom-associativity, multiplicativity, involutivity, regularity."""
    report = Report("structure")
    pair_pool, triple_pool = _sample_pairs(algebra)

    witness = None
    for f, g in itertools.product(pair_pool, repeat=2):
        if not rho_commutator(f, g).is_zero():
            witness = f"f={f}, g={g}: fg={f * g}, gf={g * f}"
            break
    report.record("rho-commutativity", witness is None, witness=witness)

    witness = None
    phi = algebra.phi
    for f, g, h in itertools.product(triple_pool, repeat=3):
        lhs = phi(f) * (g * h)
        rhs = (f * g) * phi(h)
        if lhs != rhs:
            witness = f"f={f}, g={g}, h={h}: phi(f)(gh)={lhs}, (fg)phi(h)={rhs}"
            break
    report.record("hom-associativity", witness is None, witness=witness)

    witness = None
    for f, g in itertools.product(triple_pool, repeat=2):
        if phi(f * g) != phi(f) * phi(g):
            witness = f"f={f}, g={g}: phi(fg)={phi(f * g)}, phi(f)phi(g)={phi(f) * phi(g)}"
            break
    report.record("multiplicativity", witness is None, witness=witness)

    witness = None
    for f in pair_pool:
        if phi(phi(f)) != f:
            witness = f"f={f}: phi(phi(f))={phi(phi(f))}"
            break
    report.record("involutivity", witness is None, witness=witness)

    regular, why = _phi_regular(algebra)
    report.record("regularity", regular, witness=why)
    return report


def _phi_regular(algebra):
    if algebra.backend == QUANTUM_TORUS:
        for g, a, b in zip(algebra.generators, algebra.phi_pos, algebra.phi_neg):
            if a.is_zero() or (g.invertible and b.is_zero()):
                return False, f"phi multiplier of {g.name} vanishes"
        return True, None
    from .linalg import scalar_inverse

    n = len(algebra.names)
    matrix = [[algebra.phi_map[j].get(i, ZERO) for j in range(n)] for i in range(n)]
    try:
        scalar_inverse(matrix)
    except ArithmeticError as exc:
        return False, str(exc)
    return True, None


def specialize_algebra(algebra: Algebra, value) -> Algebra:
    """The same algebra with ``q`` replaced by a rational ``value``."""
    base = algebra.cocycle.base.subs(value)
    if base.is_zero():
        raise ZeroDivisionError(f"cocycle base vanishes at q={value}")
    out = copy.copy(algebra)
    out.name = f"{algebra.name}[q={value}]"
    out.cocycle = CocycleSpec(base, algebra.cocycle.form)
    out._mul_cache = {}
    if algebra.backend == QUANTUM_TORUS:
        out.phi_pos = tuple(c.subs(value) for c in algebra.phi_pos)
        out.phi_neg = tuple(c.subs(value) for c in algebra.phi_neg)
    else:
        out.table = {k: {l: c.subs(value) for l, c in v.items()} for k, v in algebra.table.items()}
        out.phi_map = {k: {l: c.subs(value) for l, c in v.items()} for k, v in algebra.phi_map.items()}
    return out


def transfer(f: Element, algebra: Algebra, value) -> Element:
    return Element(algebra, {k: c.subs(value) for k, c in f.terms.items()})
