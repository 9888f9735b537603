"""Hom-cochain complex on rho-Der A with values in A: d_mu, i_X, L_X.

Cochains are :class:`~homrho.forms.Tensor` objects of kind ``form``; an
element ``f`` of the algebra is the 0-cochain.  The representation is the
tautological one, ``mu(X).f = X(f)``, with ``B = Id``.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .algebra import Element
from .derivations import (
    Derivation,
    DerivationModule,
    apply_phiA,
    apply_phiA_inverse,
    apply_phiA_power,
    derivation_bracket,
)
from .errors import DomainError
from .forms import FORM, Tensor, basis_tuples, dual_forms, eval_tensor, scalar_tensor, wedge
from .report import Report


def as_cochain(module: DerivationModule, alpha) -> Tensor:
    if isinstance(alpha, Tensor):
        return alpha
    if isinstance(alpha, Element):
        return scalar_tensor(module, alpha)
    return scalar_tensor(module, module.algebra.scalar(alpha))


def pullback(alpha: Tensor) -> Tensor:
    """``alpha o phi_A`` on basis tuples."""
    module = alpha.module
    phib = [apply_phiA(b) for b in module.bases]
    comps = {idx: eval_tensor(alpha, *(phib[i] for i in idx)) for idx in basis_tuples(module, alpha.arity)}
    return Tensor(module, alpha.arity, comps, alpha.kind)


def hom_cochain_witness(alpha: Tensor):
    """``None`` if ``alpha o phi_A = alpha`` on all basis tuples, else the first failing tuple."""
    if alpha.arity == 0:
        return None
    pulled = pullback(alpha)
    for idx in basis_tuples(alpha.module, alpha.arity):
        if pulled.component(idx) != alpha.component(idx):
            return idx
    return None


def is_hom_cochain(alpha: Tensor) -> bool:
    return hom_cochain_witness(alpha) is None


def d_mu(alpha, module: DerivationModule | None = None, strict: bool = True) -> Tensor:
    """Coboundary of a cochain (or of an element, as a 0-cochain).

    With ``strict`` the input must be a Hom-cochain; otherwise the formula is
    evaluated anyway (``d_mu^2 = 0`` is then not expected).
    """
    if module is None:
        if not isinstance(alpha, Tensor):
            raise DomainError("d_mu of an element needs the derivation module")
        module = alpha.module
    alpha = as_cochain(module, alpha)
    alg = module.algebra
    group = alg.group
    rho = alg.cocycle
    bd = module.basis_degrees
    B = module.bases
    k = alpha.arity
    if k == 0:
        f = alpha.component(())
        return Tensor(module, 1, {(i,): apply_phiA_inverse(B[i])(f) for i in range(module.n)}, FORM)
    if strict:
        bad = hom_cochain_witness(alpha)
        if bad is not None:
            raise DomainError(f"not a Hom-cochain (alpha o phiA != alpha at basis tuple {bad}); d^2 = 0 is not guaranteed")
    twisted = [apply_phiA_power(b, k - 1) for b in B]
    phib = [apply_phiA(b) for b in B]
    comps = {}
    for idx in basis_tuples(module, k + 1):
        total = alg.zero()
        before = group.zero
        prefix = []
        for j in range(k + 1):
            prefix.append(before)
            rest = idx[:j] + idx[j + 1 :]
            value = alpha.components.get(rest)
            if value is not None:
                term = twisted[idx[j]](value) * rho(before, bd[idx[j]])
                total = total + (term if j % 2 == 0 else -term)
            before = group.add(before, bd[idx[j]])
        for j, l in itertools.combinations(range(k + 1), 2):
            br = derivation_bracket(B[idx[j]], B[idx[l]])
            if br.is_zero():
                continue
            between = group.sum(bd[idx[i]] for i in range(j + 1, l))
            factor = rho(prefix[j], bd[idx[j]]) * rho(prefix[j], bd[idx[l]]) * rho(between, bd[idx[l]])
            args = [br] + [phib[idx[i]] for i in range(k + 1) if i not in (j, l)]
            term = eval_tensor(alpha, *args) * factor
            total = total + (term if (j + l) % 2 == 0 else -term)
        if not total.is_zero():
            comps[idx] = total
    return Tensor(module, k + 1, comps, FORM)


def interior(X: Derivation, alpha) -> Tensor:
    module = X.module
    alpha = as_cochain(module, alpha)
    k = alpha.arity
    if k == 0 or X.is_zero():
        return Tensor(module, max(k - 1, 0), {}, FORM)
    rho = module.algebra.cocycle
    group = module.algebra.group
    xd = X.degree
    B = module.bases
    comps = {}
    for idx in basis_tuples(module, k - 1):
        shift = group.sum(module.basis_degrees[i] for i in idx)
        comps[idx] = eval_tensor(alpha, X, *(B[i] for i in idx)) * rho(shift, xd)
    return Tensor(module, k - 1, comps, FORM)


def lie_derivative(X: Derivation, alpha) -> Tensor:
    module = X.module
    alpha = as_cochain(module, alpha)
    k = alpha.arity
    alg = module.algebra
    if X.is_zero():
        return Tensor(module, k, {}, FORM)
    if k == 0:
        return scalar_tensor(module, apply_phiA_inverse(X)(alpha.component(())))
    rho = alg.cocycle
    group = alg.group
    xd = X.degree
    bd = module.basis_degrees
    B = module.bases
    phib = [apply_phiA(b) for b in B]
    tw = apply_phiA_power(X, k - 1)
    comps = {}
    for idx in basis_tuples(module, k):
        total = tw(alpha.component(idx)) * rho(group.sum(bd[i] for i in idx), xd)
        for i in range(k):
            br = derivation_bracket(X, B[idx[i]])
            if br.is_zero():
                continue
            args = [phib[idx[l]] for l in range(k)]
            args[i] = br
            factor = rho(group.sum(bd[idx[j]] for j in range(i, k)), xd)
            total = total - eval_tensor(alpha, *args) * factor
        comps[idx] = total
    return Tensor(module, k, comps, FORM)


# -- sampling ---------------------------------------------------------------


def random_monomial(module: DerivationModule, rng: random.Random, exps=None, span: int = 3) -> Element:
    alg = module.algebra
    if exps is None:
        exps = tuple(rng.randint(-span, span) for _ in range(module.n))
    coeff = rng.choice([1, -1, 2, -3]) * alg.cocycle.base ** rng.randint(-2, 2)
    return alg.monomial(exps, coeff)


def random_derivation(module: DerivationModule, rng: random.Random, span: int = 3) -> Derivation:
    """A homogeneous derivation ``sum_i m_i d_i`` with monomial coefficients."""
    alg = module.algebra
    group = alg.group
    target = tuple(rng.randint(-span, span) for _ in range(module.n))
    comps = []
    for i in range(module.n):
        if rng.random() < 0.7:
            exps = group.add(target, alg.degrees[i])
            comps.append(random_monomial(module, rng, exps))
        else:
            comps.append(alg.zero())
    if all(c.is_zero() for c in comps):
        i = rng.randrange(module.n)
        comps[i] = random_monomial(module, rng, group.add(target, alg.degrees[i]))
    return Derivation(module, comps)


def _project_hom(alpha: Tensor) -> Tensor:
    """``(alpha + alpha o phi_A) / 2``, a Hom-cochain when ``phi_A`` is involutive."""
    return (alpha + pullback(alpha)).scaled(Fraction(1, 2))


def random_cochain(module: DerivationModule, arity: int, rng: random.Random, hom: bool = True, span: int = 3):
    """A homogeneous random ``arity``-form with monomial coefficients; projected onto
    Hom-cochains when ``hom`` (requires an involutive ``phi_A``)."""
    alg = module.algebra
    group = alg.group
    for _ in range(50):
        if arity == 0:
            return scalar_tensor(module, random_monomial(module, rng, span=span))
        target = tuple(rng.randint(-span, span) for _ in range(module.n))
        duals = dual_forms(module)
        alpha = Tensor(module, arity, {}, FORM)
        for combo in itertools.combinations(range(module.n), arity):
            if rng.random() < 0.25:
                continue
            w = duals[combo[0]]
            for i in combo[1:]:
                w = wedge(w, duals[i])
            shift = group.sum(alg.degrees[i] for i in combo)
            c = random_monomial(module, rng, group.add(target, group.neg(shift)))
            alpha = alpha + Tensor(module, arity, {k: c * v for k, v in w.components.items()}, FORM)
        if hom:
            alpha = _project_hom(alpha)
        if not alpha.is_zero():
            return alpha
    return Tensor(module, arity, {}, FORM)


def is_involutive(module: DerivationModule) -> bool:
    return all(apply_phiA(apply_phiA(b)) == b for b in module.bases)


# -- suites -----------------------------------------------------------------


def check_d_squared(module: DerivationModule, samples: int = 100, max_arity: int = 2, seed: int = 0,
                    hom: bool = True) -> Report:
    """``d_mu(d_mu alpha) = 0`` on random (Hom-)cochains of each arity ``0..max_arity``."""
    rng = random.Random(seed)
    report = Report("d2")
    for k in range(max_arity + 1):
        witness = residual = None
        closure = None
        for s in range(samples):
            alpha = random_cochain(module, k, rng, hom=hom)
            d1 = d_mu(alpha, strict=hom)
            if closure is None and k > 0 and hom and not is_hom_cochain(d1):
                closure = f"sample {s}: d(alpha) is not a Hom-cochain"
            d2 = d_mu(d1, strict=False)
            if not d2.is_zero():
                witness = f"arity {k}, sample {s}: alpha = {_inline(alpha)}"
                residual = _inline(d2)
                break
        report.record(f"d2=0[arity {k}]", witness is None, witness=witness, residual=residual)
        if k > 0 and hom:
            report.note(f"d-preserves-hom[arity {k}]", closure is None, witness=closure)
    return report


def check_cartan(module: DerivationModule, samples: int = 100, max_arity: int = 2, seed: int = 0) -> Report:
    """``L_{phi_A X} = d_mu i_{phi_A X} + i_{phi_A X} d_mu`` on random Hom-cochains."""
    rng = random.Random(seed)
    report = Report("cartan")
    witness = residual = None
    for s in range(samples):
        X = random_derivation(module, rng)
        alpha = random_cochain(module, s % (max_arity + 1), rng)
        pX = apply_phiA(X)
        lhs = lie_derivative(pX, alpha)
        rhs = interior(pX, d_mu(alpha, strict=False))
        if alpha.arity > 0:
            rhs = d_mu(interior(pX, alpha), module, strict=False) + rhs
        if lhs != rhs:
            witness = f"sample {s}: X = {X}, alpha = {_inline(alpha)}"
            residual = _inline(lhs - rhs)
            break
    report.record("cartan", witness is None, witness=witness, residual=residual)
    return report


def check_degrees(X: Derivation, alpha: Tensor) -> Report:
    """``|d alpha| = |alpha|`` and ``|i_X| = |L_X| = |X|``."""
    report = Report("degrees")
    group = X.algebra.group
    a = alpha.degree
    d = d_mu(alpha, strict=False)
    report.record("deg(d alpha)", d.is_zero() or d.degree == a, witness=f"{d.degree} vs {a}")
    i = interior(X, alpha)
    report.record("deg(i_X alpha)", i.is_zero() or i.degree == group.add(a, X.degree),
                  witness=f"{i.degree if not i.is_zero() else None}")
    lx = lie_derivative(X, alpha)
    report.record("deg(L_X alpha)", lx.is_zero() or lx.degree == group.add(a, X.degree),
                  witness=f"{lx.degree if not lx.is_zero() else None}")
    return report


def _inline(t: Tensor) -> str:
    if t.is_zero():
        return "0"
    return "; ".join(
        f"[{','.join(str(i + 1) for i in idx)}] {v}" for idx, v in sorted(t.components.items())
    )
