"""Multilinear maps on rho-Der A: forms, rho-tensors, cochains and metrics.

A :class:`Tensor` stores its values on tuples of basis derivations.  Values on
arbitrary arguments follow from left linearity in the first slot and the rule
``T(.., X <| f, Y, ..) = T(.., X, f Y, ..)``, which moves each coefficient to
the front past the preceding basis derivations.
"""

from __future__ import annotations

import itertools

from .algebra import Algebra, Element
from .derivations import Derivation, DerivationModule, apply_phiA, rho_deg
from .errors import DomainError, SingularError, StructureError
from .linalg import element_inverse, element_matmul, is_identity
from .report import Report
from .scalars import ONE

FORM, TENSOR = "form", "tensor"


class Tensor:
    __slots__ = ("module", "arity", "components", "kind")

    def __init__(self, module: DerivationModule, arity: int, components, kind=TENSOR):
        self.module = module
        self.arity = arity
        self.kind = kind
        alg = module.algebra
        comps = {}
        for idx, v in components.items():
            idx = tuple(idx)
            if len(idx) != arity:
                raise StructureError(f"index {idx} does not match arity {arity}")
            if not isinstance(v, Element):
                v = alg.scalar(v)
            if not v.is_zero():
                comps[idx] = v
        self.components = comps

    @property
    def algebra(self) -> Algebra:
        return self.module.algebra

    def component(self, idx) -> Element:
        return self.components.get(tuple(idx), self.algebra.zero())

    def is_zero(self) -> bool:
        return not self.components

    @property
    def degrees(self):
        group = self.algebra.group
        out = set()
        for idx, v in self.components.items():
            shift = group.sum(self.module.basis_degrees[i] for i in idx)
            for d in v.degrees:
                out.add(group.add(d, group.neg(shift)))
        return out

    @property
    def degree(self):
        degs = self.degrees
        if len(degs) > 1:
            raise DomainError("tensor is inhomogeneous")
        return next(iter(degs)) if degs else None

    def is_homogeneous(self) -> bool:
        return len(self.degrees) <= 1

    def __call__(self, *args) -> Element:
        return eval_tensor(self, *args)

    def __add__(self, other):
        return _combine(self, other, 1)

    def __sub__(self, other):
        return _combine(self, other, -1)

    def __neg__(self):
        return Tensor(self.module, self.arity, {k: -v for k, v in self.components.items()}, self.kind)

    def scaled(self, s) -> "Tensor":
        return Tensor(self.module, self.arity, {k: v * s for k, v in self.components.items()}, self.kind)

    def __eq__(self, other):
        return isinstance(other, Tensor) and self.arity == other.arity and self.components == other.components

    def __hash__(self):
        return hash((self.arity, frozenset(self.components.items())))

    def __str__(self):
        from .render import render

        return render(self)

    __repr__ = __str__


def _combine(a: Tensor, b: Tensor, sign):
    if a.arity != b.arity:
        raise StructureError("arity mismatch")
    comps = dict(a.components)
    for k, v in b.components.items():
        comps[k] = comps.get(k, a.algebra.zero()) + (v if sign > 0 else -v)
    kind = a.kind if a.kind == b.kind else TENSOR
    return Tensor(a.module, a.arity, comps, kind)


def scalar_tensor(module: DerivationModule, f: Element) -> Tensor:
    return Tensor(module, 0, {(): f}, FORM)


def dual_form(module: DerivationModule, i: int) -> Tensor:
    """``dx^i`` with ``dx^i(d_j) = delta_ij``."""
    return Tensor(module, 1, {(i,): module.algebra.one()}, FORM)


def dual_forms(module: DerivationModule):
    return [dual_form(module, i) for i in range(module.n)]


def basis_tuples(module: DerivationModule, arity: int):
    return itertools.product(range(module.n), repeat=arity)


def eval_tensor(T: Tensor, *args: Derivation) -> Element:
    if len(args) != T.arity:
        raise StructureError(f"tensor of arity {T.arity} evaluated on {len(args)} arguments")
    alg = T.algebra
    if T.arity == 0:
        return T.component(())
    module = T.module
    rho = alg.cocycle
    group = alg.group
    expansions = []
    for X in args:
        pieces = []
        for i, f in enumerate(X.components):
            for t in f.monomial_terms():
                pieces.append((i, t))
        if not pieces:
            return alg.zero()
        expansions.append(pieces)
    out = alg.zero()
    for choice in itertools.product(*expansions):
        idx = tuple(i for i, _ in choice)
        value = T.components.get(idx)
        if value is None:
            continue
        coeff = alg.one()
        factor = ONE
        before = group.zero
        for i, f in choice:
            factor = factor * rho(before, f.degree)
            coeff = coeff * f
            before = group.add(before, module.basis_degrees[i])
        out = out + (coeff * value) * factor
    return out


def tensor_product(Tp: Tensor, Tq: Tensor) -> Tensor:
    module = Tp.module
    dp = Tp.degree
    if Tp.is_zero() or Tq.is_zero():
        return Tensor(module, Tp.arity + Tq.arity, {})
    group = module.algebra.group
    rho = module.algebra.cocycle
    comps = {}
    for I, a in Tp.components.items():
        for J, b in Tq.components.items():
            shift = group.sum(module.basis_degrees[j] for j in J)
            comps[I + J] = (a * b) * rho(shift, dp)
    kind = FORM if Tp.arity + Tq.arity <= 1 else TENSOR
    return Tensor(module, Tp.arity + Tq.arity, comps, kind)


def _shuffles(p, q):
    n = p + q
    for first in itertools.combinations(range(n), p):
        rest = tuple(i for i in range(n) if i not in first)
        yield first + rest


def _sign(perm):
    inversions = sum(1 for a, b in itertools.combinations(range(len(perm)), 2) if perm[a] > perm[b])
    return -1 if inversions % 2 else 1


def wedge(alpha: Tensor, beta: Tensor) -> Tensor:
    """Shuffle product; each inversion ``l < k, s(l) > s(k)`` contributes ``rho(X_s(k), X_s(l))``."""
    for t in (alpha, beta):
        if t.kind != FORM:
            raise DomainError("wedge needs forms")
    module = alpha.module
    p, q = alpha.arity, beta.arity
    if alpha.is_zero() or beta.is_zero():
        return Tensor(module, p + q, {}, FORM)
    alg = module.algebra
    rho = alg.cocycle
    group = alg.group
    deg_alpha = alpha.degree
    bd = module.basis_degrees
    comps = {}
    perms = [(s, _sign(s)) for s in _shuffles(p, q)]
    for idx in basis_tuples(module, p + q):
        total = alg.zero()
        for s, sign in perms:
            a = alpha.components.get(tuple(idx[s[k]] for k in range(p)))
            if a is None:
                continue
            b = beta.components.get(tuple(idx[s[k]] for k in range(p, p + q)))
            if b is None:
                continue
            factor = rho(group.sum(bd[idx[s[j]]] for j in range(p, p + q)), deg_alpha)
            for l_, k in itertools.combinations(range(p + q), 2):
                if s[l_] > s[k]:
                    factor = factor * rho(bd[idx[s[k]]], bd[idx[s[l_]]])
            total = total + (a * b) * (factor * sign)
        if not total.is_zero():
            comps[idx] = total
    return Tensor(module, p + q, comps, FORM)


def check_form_antisymmetry(T: Tensor) -> Report:
    report = Report("form")
    module = T.module
    rho = module.algebra.cocycle
    bd = module.basis_degrees
    witness = None
    for idx in basis_tuples(module, T.arity):
        for j in range(T.arity - 1):
            swapped = idx[:j] + (idx[j + 1], idx[j]) + idx[j + 2 :]
            lhs = T.component(idx)
            rhs = -(T.component(swapped) * rho(bd[idx[j]], bd[idx[j + 1]]))
            if lhs != rhs:
                witness = f"indices {idx}, slot {j}"
                break
        if witness:
            break
    report.record("rho-antisymmetry", witness is None, witness=witness)
    return report


def check_degree_law(T: Tensor) -> Report:
    report = Report("degree")
    report.record("homogeneous", T.is_homogeneous(), witness=f"degrees {sorted(T.degrees)}")
    return report


# -- metrics ---------------------------------------------------------------


class Metric:
    """``matrix[m][k] = g(d_m, d_k)``."""

    def __init__(self, module: DerivationModule, matrix):
        self.module = module
        alg = module.algebra
        n = module.n
        self.matrix = [[m if isinstance(m, Element) else alg.scalar(m) for m in row] for row in matrix]
        if len(self.matrix) != n or any(len(r) != n for r in self.matrix):
            raise StructureError(f"metric must be {n}x{n}")
        self.tensor = Tensor(module, 2, {(m, k): self.matrix[m][k] for m in range(n) for k in range(n)})
        self._inverse = None

    @property
    def algebra(self):
        return self.module.algebra

    @property
    def degree(self):
        return self.tensor.degree

    def __call__(self, X: Derivation, Y: Derivation) -> Element:
        return eval_tensor(self.tensor, X, Y)

    def inverse(self):
        """``ginv`` with ``ginv . g = g . ginv = 1``; raises SingularError with the failing pivot."""
        if self._inverse is None:
            inv = element_inverse(self.matrix)
            if not is_identity(element_matmul(self.matrix, inv)):
                raise SingularError("left inverse is not a right inverse", obstruction=None)
            self._inverse = inv
        return self._inverse

    def with_module(self, module):
        return Metric(module, self.matrix)


def _pivot_product(matrix):
    """Product of the Gauss pivots (a quasi-determinant) or the first failing pivot."""
    n = len(matrix)
    a = [list(r) for r in matrix]
    prod = a[0][0].algebra.one()
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col].is_unit_term()), None)
        if pivot is None:
            return None, a[col][col] if col < n else None
        a[col], a[pivot] = a[pivot], a[col]
        p = a[col][col]
        prod = prod * p
        inv = p.inverse()
        for r in range(col + 1, n):
            if not a[r][col].is_zero():
                k = a[r][col] * inv
                a[r] = [x - k * y for x, y in zip(a[r], a[col])]
    return prod, None


def metric_validate(g: Metric, q_value=None) -> Report:
    """rho-symmetry, phi_A-invariance and nondegeneracy (optionally at a value of ``q``)."""
    report = Report("metric")
    if q_value is not None:
        try:
            g = specialize_metric(g, q_value)
        except (ZeroDivisionError, SingularError) as exc:
            report.fail("nondegenerate", witness=f"q={q_value}: {exc}")
            return report
    module = g.module
    n = module.n
    rho = module.algebra.cocycle
    bd = module.basis_degrees
    witness = None
    for m, k in itertools.product(range(n), repeat=2):
        if g.matrix[m][k] != g.matrix[k][m] * rho(bd[m], bd[k]):
            witness = f"g(d{m + 1},d{k + 1})={g.matrix[m][k]} vs rho*g(d{k + 1},d{m + 1})"
            break
    report.record("rho-symmetry", witness is None, witness=witness)

    witness = None
    residual = None
    for m, k in itertools.product(range(n), repeat=2):
        X, Y = module.basis(m), module.basis(k)
        lhs = g(Y, X)
        rhs = g(apply_phiA(Y), apply_phiA(X))
        if lhs != rhs:
            witness = f"g(d{k + 1},d{m + 1}) vs g(phiA d{k + 1}, phiA d{m + 1})"
            residual = str(lhs - rhs)
            break
    report.record("phiA-invariance", witness is None, witness=witness, residual=residual)

    prod, failing = _pivot_product(g.matrix)
    try:
        g.inverse()
        report.ok("nondegenerate")
    except SingularError as exc:
        obstruction = f"pivot product {prod}" if prod is not None else f"non-invertible pivot {failing}"
        report.fail("nondegenerate", witness=str(exc), residual=obstruction)
    return report


def metric_obstruction(g: Metric):
    """The product of elimination pivots; ``g`` is invertible iff every pivot is a unit."""
    return _pivot_product(g.matrix)[0]


def specialize_metric(g: Metric, value) -> Metric:
    from .algebra import specialize_algebra, transfer
    from .derivations import DerivationModule

    alg = specialize_algebra(g.algebra, value)
    phi_a = [[x.subs(value) for x in row] for row in g.module.phi_a]
    module = DerivationModule(alg, phi_a)
    return Metric(module, [[transfer(e, alg, value) for e in row] for row in g.matrix])


def gtilde(g: Metric, X: Derivation) -> Tensor:
    """The 1-form ``Y -> g(Y, X)``."""
    module = g.module
    return Tensor(module, 1, {(m,): g(module.basis(m), X) for m in range(module.n)}, FORM)


def solve_pairing(module: DerivationModule, matrix, rhs, target_degree) -> Derivation:
    """Find ``X = sum c_k d_k`` of degree ``target_degree`` with
    ``sum_k matrix[m][k] evaluated as T(d_m, c_k d_k) = rhs[m]`` for every ``m``.

    ``T(d_m, c d_k) = rho(|d_m|, |c|) c T(d_m, d_k)``, so the unknowns multiply
    the known entries from the left; the system is inverted by unit-pivot
    elimination on the twisted transpose.
    """
    alg = module.algebra
    group = alg.group
    rho = alg.cocycle
    n = module.n
    bd = module.basis_degrees
    coeff_deg = [group.add(target_degree, group.neg(bd[k])) for k in range(n)]
    N = [[matrix[m][k] * rho(bd[m], coeff_deg[k]) for m in range(n)] for k in range(n)]
    inv = element_inverse(N)
    if not is_identity(element_matmul(N, inv)):
        raise SingularError("pairing matrix has no two-sided inverse")
    comps = []
    for k in range(n):
        acc = alg.zero()
        for m in range(n):
            acc = acc + rhs[m] * inv[m][k]
        comps.append(acc)
    return Derivation(module, comps)


def gtilde_inv(g: Metric, alpha: Tensor) -> Derivation:
    module = g.module
    out = module.zero()
    for part in _homogeneous_form_parts(alpha):
        deg = module.algebra.group.add(part.degree, module.algebra.group.neg(g.degree or module.algebra.group.zero))
        rhs = [part.component((m,)) for m in range(module.n)]
        out = out + solve_pairing(module, g.matrix, rhs, deg)
    return out


def _homogeneous_form_parts(alpha: Tensor):
    module = alpha.module
    group = module.algebra.group
    buckets = {}
    for idx, v in alpha.components.items():
        shift = group.sum(module.basis_degrees[i] for i in idx)
        for part in v.homogeneous_parts():
            deg = group.add(part.degree, group.neg(shift))
            bucket = buckets.setdefault(deg, {})
            bucket[idx] = bucket.get(idx, module.algebra.zero()) + part
    return [Tensor(module, alpha.arity, b, alpha.kind) for _, b in sorted(buckets.items())]
