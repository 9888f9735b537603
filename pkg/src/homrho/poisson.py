"""Symplectic structures, Hamiltonian derivations and rho-Poisson brackets."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from .algebra import Algebra, Element, rho_commutator, rho_of
from .calculus import d_mu, hom_cochain_witness, interior, is_involutive, lie_derivative
from .derivations import Derivation, DerivationModule, apply_phiA, apply_phiA_inverse, derivation_bracket
from .errors import ConsistencyError, DomainError, SingularError
from .forms import FORM, Tensor, eval_tensor, solve_pairing
from .linalg import element_inverse, element_matmul, is_identity
from .report import Report


class Symplectic:
    """A 2-cochain ``omega`` used as a symplectic structure."""

    def __init__(self, omega: Tensor):
        if omega.arity != 2:
            raise DomainError("a symplectic structure is a 2-cochain")
        self.omega = omega
        self.module = omega.module

    @property
    def algebra(self) -> Algebra:
        return self.module.algebra

    @property
    def degree(self):
        d = self.omega.degree
        return self.algebra.group.zero if d is None else d

    def __call__(self, X: Derivation, Y: Derivation) -> Element:
        return eval_tensor(self.omega, X, Y)

    def matrix(self):
        n = self.module.n
        return [[self.omega.component((m, k)) for k in range(n)] for m in range(n)]


def symplectic_validate(S: Symplectic) -> Report:
    module = S.module
    n = module.n
    B = module.bases
    phib = [apply_phiA(b) for b in B]
    report = Report("symplectic")

    dOmega = d_mu(S.omega, strict=False)
    report.record("closed", dOmega.is_zero(), witness="d_mu(Omega) != 0", residual=_inline(dOmega))

    bad = hom_cochain_witness(S.omega)
    report.record("hom-cochain", bad is None, witness=f"basis tuple {bad}")

    twisted = [[S(B[m], phib[k]) for k in range(n)] for m in range(n)]
    try:
        inv = element_inverse(twisted)
        if not is_identity(element_matmul(twisted, inv)):
            raise SingularError("no two-sided inverse")
        report.ok("nondegenerate")
    except SingularError as exc:
        report.fail("nondegenerate", witness=f"Omega(d_m, phiA d_k) not invertible: {exc}")

    witness = residual = None
    for i, j in itertools.product(range(n), repeat=2):
        lhs, rhs = S(phib[i], B[j]), -S(B[i], phib[j])
        if lhs != rhs:
            witness, residual = f"X=d{i + 1}, Y=d{j + 1}", str(lhs - rhs)
            break
    report.record("phiA-twist", witness is None, witness=witness, residual=residual)

    if is_involutive(module):
        for sign, label in ((-1, "minus"), (1, "plus")):
            witness = residual = None
            for i, j in itertools.product(range(n), repeat=2):
                lhs = S(phib[i], phib[j])
                rhs = S(B[i], B[j]) * sign
                if lhs != rhs:
                    witness, residual = f"X=d{i + 1}, Y=d{j + 1}", str(lhs - rhs)
                    break
            report.note(f"involutive-twist[{label}]", witness is None, witness=witness, residual=residual)
    return report


def hamiltonian_vf(S: Symplectic, f: Element) -> Derivation:
    """``X_f`` with ``d_mu f = Omega(., phi_A X_f)``."""
    module = S.module
    group = module.algebra.group
    out = module.zero()
    for part in f.homogeneous_parts():
        dpart = d_mu(part, module)
        rhs = [dpart.component((i,)) for i in range(module.n)]
        if all(r.is_zero() for r in rhs):
            continue
        target = group.add(part.degree, group.neg(S.degree))
        Y = solve_pairing(module, S.matrix(), rhs, target)
        out = out + apply_phiA_inverse(Y)
    return out


def is_locally_hamiltonian(S: Symplectic, X: Derivation):
    """Verdict of ``L_{phi_A X} Omega = 0``, cross-checked against ``d_mu(i_{phi_A X} Omega) = 0``."""
    report = Report("locally-hamiltonian")
    pX = apply_phiA(X)
    lie = lie_derivative(pX, S.omega)
    exact = d_mu(interior(pX, S.omega), S.module, strict=False)
    a, b = lie.is_zero(), exact.is_zero()
    report.note("L_{phiA X} Omega = 0", a, witness="", residual=_inline(lie))
    report.note("d(i_{phiA X} Omega) = 0", b, witness="", residual=_inline(exact))
    report.record("criteria-agree", a == b, witness=f"L-criterion {a}, d-criterion {b}")
    return a, report


def poisson(S: Symplectic, f: Element, g: Element) -> Element:
    """``{f,g} = -rho(Omega,g) X_f(g)``, cross-checked against ``-rho(Omega,g) Omega(phi_A X_f, phi_A X_g)``."""
    alg = S.algebra
    rho = alg.cocycle
    out = alg.zero()
    for fp in f.homogeneous_parts():
        Xf = hamiltonian_vf(S, fp)
        pXf = apply_phiA(Xf)
        for gp in g.homogeneous_parts():
            r = rho(S.degree, gp.degree)
            first = -(Xf(gp) * r)
            second = -(S(pXf, apply_phiA(hamiltonian_vf(S, gp))) * r)
            if first != second:
                residual = first - second
                raise ConsistencyError(f"the two bracket expressions disagree for f={fp}, g={gp}: {residual}", residual)
            out = out + first
    return out


@dataclass
class PoissonStructure:
    algebra: Algebra
    bracket: Callable[[Element, Element], Element]
    degree: tuple
    symplectic: Symplectic | None = None
    name: str = "poisson"

    @classmethod
    def from_symplectic(cls, S: Symplectic) -> "PoissonStructure":
        group = S.algebra.group
        return cls(S.algebra, lambda f, g: poisson(S, f, g), group.neg(S.degree), S, "symplectic")

    @classmethod
    def from_table(cls, algebra: Algebra, table, degree=None) -> "PoissonStructure":
        """Bilinear extension of ``table[(a, b)] = {a,b}`` on generator terms; missing pairs are 0."""

        def key(name):
            (k,) = algebra.gen(name).terms
            return k

        index = {(key(a), key(b)): v for (a, b), v in table.items()}
        group = algebra.group
        if degree is None:
            degree = group.zero
            for (a, b), v in table.items():
                if not v.is_zero():
                    degree = group.add(v.degree, group.neg(group.add(algebra.gen(a).degree, algebra.gen(b).degree)))
                    break

        def bracket(f: Element, g: Element) -> Element:
            out = algebra.zero()
            for ka, ca in f.terms.items():
                for kb, cb in g.terms.items():
                    v = index.get((ka, kb))
                    if v is not None:
                        out = out + v * (ca * cb)
            return out

        return cls(algebra, bracket, degree, None, "table")


def check_poisson_axioms(P: PoissonStructure, triples) -> Report:
    """Degree law, rho-antisymmetry, rho-Jacobi and the Leibniz axiom on homogeneous ``triples``.

    For a symplectic source the relation ``[X_f,X_g] = rho(g,Omega) X_{f,g}`` is
    checked too, and the hypotheses ``phi_A(X_f) = X_{phi(f)}`` and the
    bracket-compatibility condition are reported as notes.
    """
    alg = P.algebra
    group = alg.group
    br = P.bracket
    phi = alg.phi
    report = Report("poisson")
    triples = list(triples)

    def first_failure(check, cases):
        for witness, lhs, rhs in cases:
            if lhs != rhs:
                report.fail(check, witness=witness, residual=str(lhs - rhs))
                return
        report.ok(check)

    def degree_cases():
        for f, g, _ in triples:
            v = br(f, g)
            if v.is_zero() or f.is_zero() or g.is_zero():
                continue
            want = group.add(P.degree, group.add(f.degree, g.degree))
            yield f"f={f}, g={g}", v.degrees, {want}

    first_failure("degree-law", degree_cases())

    first_failure("rho-antisymmetry", (
        (f"f={f}, g={g}", br(f, g), -(br(g, f) * rho_of(f, g)))
        for f, g, _ in triples
    ))

    def jacobi(f, g, h):
        return (
            br(phi(f), br(g, h)) * rho_of(h, f)
            + br(phi(h), br(f, g)) * rho_of(g, h)
            + br(phi(g), br(h, f)) * rho_of(f, g)
        )

    first_failure("rho-jacobi", ((f"f={f}, g={g}, h={h}", jacobi(f, g, h), alg.zero()) for f, g, h in triples))

    def leibniz(f, g, h):
        hp = _shift_degree(alg, h, P.degree) if not h.is_zero() else group.zero
        lhs = br(f * g, phi(h))
        rhs = br(f, h) * phi(g) * _rho_deg(alg, g, hp) + phi(f) * br(g, h)
        return f"f={f}, g={g}, h={h}", lhs, rhs

    first_failure("leibniz", (leibniz(*t) for t in triples))

    if P.symplectic is not None:
        S = P.symplectic
        rho = alg.cocycle

        def hamiltonian_commutator(f, g):
            lhs = derivation_bracket(hamiltonian_vf(S, f), hamiltonian_vf(S, g))
            rhs = rho(g.degree, S.degree) * hamiltonian_vf(S, br(f, g))
            return f"f={f}, g={g}", lhs, rhs

        first_failure("hamiltonian-commutator", (hamiltonian_commutator(f, g) for f, g, _ in triples))

        witness = None
        for f, _, _ in triples:
            if apply_phiA(hamiltonian_vf(S, f)) != hamiltonian_vf(S, phi(f)):
                witness = f"f={f}"
                break
        report.note("hamiltonian-equivariance", witness is None, witness=witness)

        witness = None
        for f, g, h in triples:
            Xf = hamiltonian_vf(S, f)
            lhs = apply_phiA(Xf)(rho_commutator(g, h))
            rhs = rho_commutator(Xf(g), phi(h))
            if not Xf.is_zero():
                rhs = rhs + rho_commutator(phi(g), Xf(h)) * rho(Xf.degree, g.degree)
            if lhs != rhs:
                witness = f"f={f}, g={g}, h={h}"
                break
        report.note("bracket-compatibility", witness is None, witness=witness)
    return report


def check_hamiltonian_bracket(S: Symplectic, pairs) -> Report:
    """``[X,Y] = -X_{Omega(X,Y)}`` for Hamiltonian ``X = X_f``, ``Y = X_g``."""
    report = Report("hamiltonian-bracket")
    for f, g in pairs:
        X, Y = hamiltonian_vf(S, f), hamiltonian_vf(S, g)
        lhs = derivation_bracket(X, Y)
        rhs = -hamiltonian_vf(S, S(X, Y))
        if lhs != rhs:
            report.fail("bracket-lemma", witness=f"f={f}, g={g}", residual=str(lhs - rhs))
            return report
    report.ok("bracket-lemma")
    return report


def _shift_degree(alg, h: Element, shift):
    return alg.group.add(h.degree, shift)


def _rho_deg(alg, f: Element, deg):
    if f.is_zero():
        return alg.cocycle.base ** 0
    return alg.cocycle(f.degree, deg)


def _inline(t: Tensor) -> str:
    if t.is_zero():
        return "0"
    return "; ".join(f"[{','.join(str(i + 1) for i in idx)}] {v}" for idx, v in sorted(t.components.items()))


def symplectic_from_form(module: DerivationModule, omega: Tensor) -> Symplectic:
    if omega.kind != FORM:
        raise DomainError("symplectic structure must be a form")
    return Symplectic(omega)
