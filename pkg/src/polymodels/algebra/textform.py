"""Canonical text form for polynomials.

Terms are written in descending graded-lex order as ``coeff * x^a y^b``
joined by `` + ``; sqrt(5) is spelled ``r5``.  Example::

    (1/2 + 1/2*r5) * x^2 y + -3 * z + 1
"""

from __future__ import annotations

import re

from .poly import MultiPoly
from .scalar import Scalar

_FACTOR = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)(?:\^(\d+))?$")


def poly_to_text(p: MultiPoly) -> str:
    p = p.pruned()
    if not p.terms:
        return "0"
    parts = []
    for e in p.sorted_exponents():
        c = p.terms[e]
        mono = " ".join(
            v if k == 1 else f"{v}^{k}" for v, k in zip(p.variables, e) if k
        )
        if not mono:
            parts.append(c.to_text())
        elif c.is_one():
            parts.append(mono)
        else:
            parts.append(f"{c.to_text()} * {mono}")
    return " + ".join(parts)


def _split_top(text: str) -> list[str]:
    out, depth, start = [], 0, 0
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and text.startswith(" + ", i):
            out.append(text[start:i])
            i += 3
            start = i
            continue
        i += 1
    out.append(text[start:])
    return out


def parse_poly(text: str) -> MultiPoly:
    """Parse the canonical text form back into a polynomial."""
    text = text.strip()
    if text == "0":
        return MultiPoly()
    exps_list = []
    for term in _split_top(text):
        term = term.strip()
        if " * " in term:
            coeff_txt, mono = term.rsplit(" * ", 1)
            coeff = Scalar.parse(coeff_txt)
        elif _is_monomial(term):
            coeff, mono = Scalar(1), term
        else:
            coeff, mono = Scalar.parse(term), ""
        exps: dict[str, int] = {}
        for factor in mono.split():
            m = _FACTOR.match(factor)
            if not m:
                raise ValueError(f"bad monomial factor {factor!r}")
            name = m.group(1)
            exps[name] = exps.get(name, 0) + int(m.group(2) or 1)
        exps_list.append((exps, coeff))
    total = MultiPoly()
    for exps, coeff in exps_list:
        total = total + MultiPoly.monomial(exps, coeff)
    return total


def _is_monomial(term: str) -> bool:
    return all(_FACTOR.match(f) for f in term.split()) and not term.startswith("r5")
