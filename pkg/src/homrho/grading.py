"""Grading groups ``Z^n`` (with optional torsion) and bi-multiplicative cocycles."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .errors import StructureError
from .report import Report
from .scalars import ONE, Q, Scalar, as_scalar

__all__ = ["GradingGroup", "CocycleSpec", "degree_add", "cocycle_eval", "validate_cocycle"]

Degree = tuple  # tuple[int, ...], canonical representatives


@dataclass(frozen=True)
class GradingGroup:
    rank: int
    moduli: tuple = ()

    def __post_init__(self):
        if self.rank <= 0:
            raise StructureError("rank must be positive")
        moduli = tuple(self.moduli) or (0,) * self.rank
        if len(moduli) != self.rank or any(m < 0 for m in moduli):
            raise StructureError(f"bad moduli {self.moduli!r} for rank {self.rank}")
        object.__setattr__(self, "moduli", moduli)

    @property
    def zero(self) -> Degree:
        return (0,) * self.rank

    def degree(self, coords: Sequence[int]) -> Degree:
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.rank:
            raise StructureError(f"degree {coords} has rank {len(coords)}, expected {self.rank}")
        return tuple(c % m if m else c for c, m in zip(coords, self.moduli))

    def add(self, a: Degree, b: Degree) -> Degree:
        if len(a) != self.rank or len(b) != self.rank:
            raise StructureError(f"rank mismatch adding {a} and {b}")
        return tuple((x + y) % m if m else x + y for x, y, m in zip(a, b, self.moduli))

    def neg(self, a: Degree) -> Degree:
        return self.degree(-x for x in a)

    def scale(self, k: int, a: Degree) -> Degree:
        return self.degree(k * x for x in a)

    def sum(self, degrees) -> Degree:
        out = self.zero
        for d in degrees:
            out = self.add(out, d)
        return out

    def is_finite(self) -> bool:
        return all(self.moduli)

    def elements(self):
        """Enumerate a finite group."""
        if not self.is_finite():
            raise StructureError("group is infinite")
        return itertools.product(*(range(m) for m in self.moduli))


def degree_add(group: GradingGroup, a: Degree, b: Degree) -> Degree:
    return group.add(a, b)


@dataclass(frozen=True)
class CocycleSpec:
    """``rho(a, b) = base ** (a^T B b)``; ``base`` is ``q`` or a rational constant."""

    base: Scalar
    form: tuple  # n x n integer matrix, rows as tuples
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "base", as_scalar(self.base))
        object.__setattr__(self, "form", tuple(tuple(int(x) for x in row) for row in self.form))

    @property
    def rank(self) -> int:
        return len(self.form)

    def exponent(self, a: Degree, b: Degree) -> int:
        if len(a) != self.rank or len(b) != self.rank:
            raise StructureError(f"degrees {a}, {b} do not match cocycle rank {self.rank}")
        return sum(a[i] * row[j] * b[j] for i, row in enumerate(self.form) for j in range(self.rank) if row[j])

    def __call__(self, a: Degree, b: Degree) -> Scalar:
        key = (a, b)
        hit = self._cache.get(key)
        if hit is None:
            hit = _power(self.base, self.exponent(a, b))
            self._cache[key] = hit
        return hit


@lru_cache(maxsize=4096)
def _power(base: Scalar, k: int) -> Scalar:
    return base**k


def cocycle_eval(rho: CocycleSpec, a: Degree, b: Degree) -> Scalar:
    return rho(a, b)


def hyperplane_cocycle(n: int) -> CocycleSpec:
    """The quantum hyperplane commutation factor, ``alpha_jk = sign(k - j)``."""
    form = [[(j < k) - (j > k) for k in range(n)] for j in range(n)]
    return CocycleSpec(Q, form)


def validate_cocycle(rho: CocycleSpec, group: GradingGroup, seed: int = 0, samples: int = 200) -> Report:
    report = Report("cocycle")
    n = group.rank
    if rho.rank != n:
        report.fail("rank", witness=f"cocycle rank {rho.rank} vs group rank {n}")
        return report
    B = rho.form
    bad = [(i, j) for i in range(n) for j in range(n) if B[i][j] != -B[j][i]]
    if bad:
        i, j = bad[0]
        report.fail("antisymmetry", witness=f"B[{i}][{j}]={B[i][j]}, B[{j}][{i}]={B[j][i]}")
    else:
        report.ok("antisymmetry")

    if group.is_finite():
        pool = [tuple(d) for d in group.elements()]
        triples = itertools.product(pool, repeat=3) if len(pool) <= 16 else None
    else:
        pool = None
        triples = None
    if triples is None:
        rng = random.Random(seed)
        rand = lambda: group.degree(rng.randint(-3, 3) for _ in range(n))  # noqa: E731
        triples = [(rand(), rand(), rand()) for _ in range(samples)]
    biadd_witness = inv_witness = None
    for a, b, c in triples:
        if biadd_witness is None and rho(group.add(a, b), c) != rho(a, c) * rho(b, c):
            biadd_witness = f"a={a}, b={b}, c={c}"
        if inv_witness is None and rho(a, b) * rho(b, a) != ONE:
            inv_witness = f"a={a}, b={b}"
    report.record("biadditivity", biadd_witness is None, witness=biadd_witness)
    report.record("inverse-symmetry", inv_witness is None, witness=inv_witness)

    mod_witness = None
    for i, m in enumerate(group.moduli):
        if not m:
            continue
        e_i = tuple(int(k == i) for k in range(n))
        for j in range(n):
            e_j = tuple(int(k == j) for k in range(n))
            shifted = tuple(m * x for x in e_i)
            if _power(rho.base, rho.exponent(shifted, e_j)) != ONE or _power(rho.base, rho.exponent(e_j, shifted)) != ONE:
                mod_witness = f"base^(m_{i} B[{i}][{j}]) != 1 with m_{i}={m}"
                break
        if mod_witness:
            break
    report.record("moduli-well-defined", mod_witness is None, witness=mod_witness)

    diag_pool = pool if pool is not None else [t[0] for t in triples]
    diag_witness = None
    for c in diag_pool:
        if rho(c, c) not in (ONE, -ONE):
            diag_witness = f"rho({c},{c}) = {rho(c, c)}"
            break
    report.record("self-pairing-sign", diag_witness is None, witness=diag_witness)
    return report
