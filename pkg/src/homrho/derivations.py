"""rho-derivations of a quantum torus, as a free left module on ``d/dx_i``."""

from __future__ import annotations

import itertools

from .algebra import QUANTUM_TORUS, Algebra, Element, rho_commutator, rho_of
from .errors import DomainError, StructureError
from .linalg import scalar_inverse
from .report import Report
from .scalars import ONE, ZERO, as_scalar


class DerivationModule:
    """``rho-Der A`` together with the twist ``phi_A``.

    ``phi_a[j][i]`` is the coefficient of ``d_j`` in ``phi_A(d_i)``.
    """

    def __init__(self, algebra: Algebra, phi_a=None):
        if algebra.backend != QUANTUM_TORUS:
            raise StructureError("derivations are only modelled on the quantum-torus backend")
        self.algebra = algebra
        n = len(algebra.generators)
        self.n = n
        if phi_a is None:
            phi_a = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        self.phi_a = tuple(tuple(as_scalar(x) for x in row) for row in phi_a)
        if len(self.phi_a) != n or any(len(r) != n for r in self.phi_a):
            raise StructureError(f"phiA must be {n}x{n}")
        group = algebra.group
        self.basis_degrees = tuple(group.neg(d) for d in algebra.degrees)
        self._basis_cache = {}
        self._phi_a_inv = None

    # -- construction -----------------------------------------------------
    def derivation(self, components) -> "Derivation":
        return Derivation(self, components)

    def zero(self) -> "Derivation":
        return Derivation(self, [self.algebra.zero()] * self.n)

    def basis(self, i: int) -> "Derivation":
        alg = self.algebra
        return Derivation(self, [alg.one() if j == i else alg.zero() for j in range(self.n)])

    def basis_named(self, name: str) -> "Derivation":
        return self.basis(self.algebra.index[name])

    @property
    def bases(self):
        return [self.basis(i) for i in range(self.n)]

    # -- action on the algebra ---------------------------------------------
    def basis_apply(self, i: int, f: Element) -> Element:
        """``d_i(f)`` by the twisted Leibniz rule, peeling generators from the left."""
        out = {}
        for key, c in f.terms.items():
            hit = self._basis_on_key(i, key)
            if hit is None:
                continue
            k2, c2 = hit
            v = c * c2
            out[k2] = out[k2] + v if k2 in out else v
        return Element(self.algebra, out)

    def _basis_on_key(self, i, key):
        cache_key = (i, key)
        if cache_key in self._basis_cache:
            return self._basis_cache[cache_key]
        e = key[i]
        result = None
        if e:
            alg = self.algebra
            rho = alg.cocycle
            d_i = self.basis_degrees[i]
            r = rho(d_i, alg.degrees[i])
            # d(x^e) = c(e) x^(e-1) with c(e+1) = c(e) + r^e and c(e-1) = c(e) - r^(e-1)
            coeff = ZERO
            if e > 0:
                for k in range(e):
                    coeff = coeff + r**k
            else:
                for k in range(e, 0):
                    coeff = coeff - r**k
            prefix = tuple(key[j] if j < i else 0 for j in range(len(key)))
            coeff = coeff * rho(d_i, alg.key_degree(prefix))
            new_key = tuple(x - 1 if j == i else x for j, x in enumerate(key))
            if not coeff.is_zero():
                result = (new_key, coeff)
        self._basis_cache[cache_key] = result
        return result

    # -- phi_A --------------------------------------------------------------
    def phi_a_inverse_matrix(self):
        if self._phi_a_inv is None:
            self._phi_a_inv = scalar_inverse([list(r) for r in self.phi_a])
        return self._phi_a_inv

    def is_even(self) -> Report:
        report = Report("phiA")
        witness = None
        for j, i in itertools.product(range(self.n), repeat=2):
            if not self.phi_a[j][i].is_zero() and self.basis_degrees[j] != self.basis_degrees[i]:
                witness = f"phiA(d{self.algebra.names[i]}) has a d{self.algebra.names[j]} component of a different degree"
                break
        report.record("phiA-even", witness is None, witness=witness)
        return report

    def __repr__(self):
        return f"DerivationModule({self.algebra.name}, phiA={[[str(x) for x in r] for r in self.phi_a]})"


class Derivation:
    """``X = sum_i f_i d_i`` (left action)."""

    __slots__ = ("module", "components")

    def __init__(self, module: DerivationModule, components):
        self.module = module
        self.components = tuple(components)
        if len(self.components) != module.n:
            raise StructureError("wrong number of derivation components")

    @property
    def algebra(self):
        return self.module.algebra

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    @property
    def degrees(self):
        group = self.algebra.group
        out = set()
        for f, d in zip(self.components, self.module.basis_degrees):
            for deg in f.degrees:
                out.add(group.add(deg, d))
        return out

    def is_homogeneous(self) -> bool:
        return len(self.degrees) <= 1

    @property
    def degree(self):
        degs = self.degrees
        if len(degs) > 1:
            raise DomainError(f"derivation {self} is inhomogeneous")
        return next(iter(degs)) if degs else None

    def homogeneous_parts(self):
        by_deg = {}
        for i, f in enumerate(self.components):
            for part in f.homogeneous_parts():
                deg = self.algebra.group.add(part.degree, self.module.basis_degrees[i])
                comps = by_deg.setdefault(deg, [self.algebra.zero()] * self.module.n)
                comps[i] = comps[i] + part
        return [Derivation(self.module, c) for _, c in sorted(by_deg.items())]

    def term_parts(self):
        """Split into single-term pieces ``c * m * d_i``."""
        out = []
        for i, f in enumerate(self.components):
            for t in f.monomial_terms():
                comps = [self.algebra.zero()] * self.module.n
                comps[i] = t
                out.append(Derivation(self.module, comps))
        return out

    def __call__(self, f: Element) -> Element:
        out = self.algebra.zero()
        for i, c in enumerate(self.components):
            if not c.is_zero():
                out = out + c * self.module.basis_apply(i, f)
        return out

    def __add__(self, other):
        return Derivation(self.module, [a + b for a, b in zip(self.components, other.components)])

    def __neg__(self):
        return Derivation(self.module, [-a for a in self.components])

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, f):
        """Left action ``f |> X``; ``f`` is an Element or a scalar."""
        if isinstance(f, Element):
            return Derivation(self.module, [f * c for c in self.components])
        s = as_scalar(f)
        return Derivation(self.module, [c * s for c in self.components])

    def __mul__(self, s):
        return Derivation(self.module, [c * as_scalar(s) for c in self.components])

    def __eq__(self, other):
        return isinstance(other, Derivation) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __str__(self):
        from .render import render_derivation

        return render_derivation(self)

    __repr__ = __str__


def rho_deg(algebra, a, b):
    if a is None or b is None:
        return ONE
    return algebra.cocycle(a, b)


def apply_derivation(X: Derivation, f: Element) -> Element:
    return X(f)


def derivation_bracket(X: Derivation, Y: Derivation) -> Derivation:
    """``[X, Y]_rho``, determined by its values on the generators."""
    for d in (X, Y):
        if not d.is_homogeneous():
            raise DomainError("bracket needs homogeneous derivations")
    r = rho_deg(X.algebra, X.degree, Y.degree)
    comps = [X(g) - r * Y(f) for f, g in zip(X.components, Y.components)]
    return Derivation(X.module, comps)


def act(f: Element, X: Derivation, side: str = "left") -> Derivation:
    if side == "left":
        return f * X
    if side != "right":
        raise ValueError("side must be 'left' or 'right'")
    if not (f.is_homogeneous() and X.is_homogeneous()):
        raise DomainError("right action needs homogeneous arguments")
    return rho_deg(X.algebra, X.degree, f.degree) * (f * X)


def apply_phiA(X: Derivation) -> Derivation:
    """``phi_A(sum f_i d_i) = sum phi(f_i) phi_A(d_i)``."""
    m = X.module
    alg = m.algebra
    comps = []
    for j in range(m.n):
        acc = alg.zero()
        for i, f in enumerate(X.components):
            c = m.phi_a[j][i]
            if not c.is_zero() and not f.is_zero():
                acc = acc + alg.phi(f) * c
        comps.append(acc)
    return Derivation(m, comps)


def apply_phiA_power(X: Derivation, k: int) -> Derivation:
    if k < 0:
        for _ in range(-k):
            X = apply_phiA_inverse(X)
        return X
    for _ in range(k):
        X = apply_phiA(X)
    return X


def apply_phiA_inverse(X: Derivation) -> Derivation:
    m = X.module
    alg = m.algebra
    inv = m.phi_a_inverse_matrix()
    comps = []
    for j in range(m.n):
        acc = alg.zero()
        for i, f in enumerate(X.components):
            if not inv[j][i].is_zero() and not f.is_zero():
                acc = acc + f * inv[j][i]
        comps.append(alg.phi_inverse(acc))
    return Derivation(m, comps)


def check_hom_rho_lie(samples, bracket=derivation_bracket, twist=apply_phiA) -> Report:
    """rho-antisymmetry and the rho-Jacobi identity on all sampled triples."""
    report = Report("hom-rho-lie")
    if not samples:
        report.skip("rho-antisymmetry", "no samples")
        return report
    alg = samples[0].algebra
    anti = None
    for X, Y in itertools.product(samples, repeat=2):
        lhs = bracket(X, Y)
        rhs = -(rho_deg(alg, X.degree, Y.degree) * bracket(Y, X))
        if lhs != rhs:
            anti = f"X={X}, Y={Y}: [X,Y]={lhs}, -rho[Y,X]={rhs}"
            break
    report.record("rho-antisymmetry", anti is None, witness=anti)
    jac = None
    for f, g, h in itertools.product(samples, repeat=3):
        residual = jacobi_sum(f, g, h, bracket, twist)
        if not residual.is_zero():
            jac = f"({f}, {g}, {h})"
            report.fail("rho-jacobi", witness=jac, residual=str(residual))
            break
    if jac is None:
        report.ok("rho-jacobi")
    return report


def jacobi_sum(f, g, h, bracket=derivation_bracket, twist=apply_phiA):
    alg = f.algebra
    r = lambda a, b: rho_deg(alg, a.degree, b.degree)  # noqa: E731
    return (
        r(h, f) * bracket(twist(f), bracket(g, h))
        + r(g, h) * bracket(twist(h), bracket(f, g))
        + r(f, g) * bracket(twist(g), bracket(h, f))
    )


def check_phik_derivation(X: Derivation, k: int, samples) -> Report:
    """``X o phi = phi o X`` and the phi^k-twisted Leibniz rule for brackets."""
    report = Report("phi^k-derivation")
    alg = X.algebra
    elements = []
    for f, g in samples:
        elements.extend([f, g])
    witness = None
    for f in elements:
        lhs, rhs = X(alg.phi(f)), alg.phi(X(f))
        if lhs != rhs:
            witness = f"f={f}: X(phi f)={lhs}, phi(X f)={rhs}"
            break
    report.record("commutes-with-phi", witness is None, witness=witness)
    witness = None
    for f, g in samples:
        lhs = X(rho_commutator(f, g))
        xf, xg = X(f), X(g)
        rhs = rho_commutator(xf, alg.phi_power(g, k)) + rho_deg(alg, X.degree, f.degree) * rho_commutator(
            alg.phi_power(f, k), xg
        )
        if lhs != rhs:
            witness = f"f={f}, g={g}"
            report.fail("twisted-leibniz", witness=witness, residual=str(lhs - rhs))
            break
    if witness is None:
        report.ok("twisted-leibniz")
    return report


def check_composition_twist(module: DerivationModule, samples, elements) -> Report:
    """Compare ``phi_A(X)`` with ``X o phi`` and check multiplicativity / involutivity of phi_A."""
    report = Report("phiA-composition")
    alg = module.algebra
    witness = None
    for X in samples:
        for f in elements:
            if apply_phiA(X)(f) != X(alg.phi(f)):
                witness = f"X={X}, f={f}"
                break
        if witness:
            break
    report.record("phiA-equals-composition", witness is None, witness=witness)
    witness = None
    for X, Y in itertools.product(samples, repeat=2):
        if apply_phiA(derivation_bracket(X, Y)) != derivation_bracket(apply_phiA(X), apply_phiA(Y)):
            witness = f"X={X}, Y={Y}"
            break
    report.record("phiA-multiplicative", witness is None, witness=witness)
    witness = None
    for X in samples:
        if apply_phiA(apply_phiA(X)) != X:
            witness = f"X={X}"
            break
    report.record("phiA-involutive", witness is None, witness=witness)
    return report
