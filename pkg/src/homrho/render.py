"""Canonical text and JSON rendering; ``parse_element(render(f)) == f``."""

from __future__ import annotations

import json
from fractions import Fraction

from .report import Report


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def render_poly(p) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.c[k]
        if c == 0:
            continue
        mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{_frac(mag)}*{mono}"
        else:
            body = _frac(mag)
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _is_single_term(p) -> bool:
    return sum(1 for c in p.c if c != 0) == 1


def render_scalar(s) -> str:
    num = render_poly(s.num)
    if s.den.degree == 0:
        return num
    den = render_poly(s.den)
    num_txt = num if _is_single_term(s.num) and "/" not in num else f"({num})"
    den_txt = den if _is_single_term(s.den) and den.count("^") + den.count("*") == 0 else f"({den})"
    return f"{num_txt}/{den_txt}"


def render_monomial(alg, key) -> str:
    from .algebra import QUANTUM_TORUS

    if alg.backend == QUANTUM_TORUS:
        parts = []
        for name, e in zip(alg.names, key):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts)
    return "" if key == alg.unit else alg.names[key]


def _coeff_prefix(c, mono: str):
    """Return (negative, text) for ``c * mono`` with the sign pulled out."""
    neg = c.num.lead() < 0
    if neg:
        c = -c
    txt = render_scalar(c)
    if c.den.degree == 0 and not _is_single_term(c.num):
        txt = f"({txt})"
    if not mono:
        return neg, txt
    return neg, mono if txt == "1" else f"{txt}*{mono}"


def render_element(f) -> str:
    if f.is_zero():
        return "0"
    pieces = []
    for key, c in f.sorted_terms():
        pieces.append(_coeff_prefix(c, render_monomial(f.algebra, key)))
    neg, body = pieces[0]
    out = ("-" if neg else "") + body
    for neg, body in pieces[1:]:
        out += f" {'-' if neg else '+'} {body}"
    return out


def render_derivation(X) -> str:
    if X.is_zero():
        return "0"
    parts = []
    for name, f in zip(X.algebra.names, X.components):
        if f.is_zero():
            continue
        d = f"d/d{name}"
        if f == f.algebra.one():
            parts.append(d)
        elif f == -f.algebra.one():
            parts.append(f"-{d}")
        else:
            parts.append(f"({render_element(f)})*{d}")
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def gamma_to_json(gamma) -> dict:
    """GammaTable as ``{"t,i,j": element text}`` with 1-based indices."""
    n = len(gamma)
    return {
        f"{t + 1},{i + 1},{j + 1}": render_element(gamma[t][i][j])
        for t in range(n)
        for i in range(n)
        for j in range(n)
    }


def render_gamma_text(gamma, names) -> str:
    n = len(gamma)
    lines = []
    for t in range(n):
        for i in range(n):
            for j in range(n):
                lines.append(f"Gamma^{names[t]}_{names[i]}{names[j]} = {render_element(gamma[t][i][j])}")
    return "\n".join(lines)


def render(obj, fmt: str = "text") -> str:
    from .algebra import Element
    from .derivations import Derivation
    from .forms import Tensor

    if isinstance(obj, Report):
        return json.dumps(obj.to_json(), indent=2) if fmt == "json" else str(obj)
    if isinstance(obj, Element):
        return json.dumps(render_element(obj)) if fmt == "json" else render_element(obj)
    if isinstance(obj, Derivation):
        if fmt == "json":
            return json.dumps({n: render_element(c) for n, c in zip(obj.algebra.names, obj.components)})
        return render_derivation(obj)
    if isinstance(obj, Tensor):
        data = {",".join(str(i + 1) for i in idx): render_element(v) for idx, v in sorted(obj.components.items())}
        if fmt == "json":
            return json.dumps({"arity": obj.arity, "kind": obj.kind, "components": data}, indent=2)
        return "\n".join(f"[{k}] {v}" for k, v in data.items()) or "0"
    raise TypeError(f"cannot render {type(obj).__name__}")
