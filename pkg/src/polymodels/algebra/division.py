"""Exact division of multivariate polynomials."""

from __future__ import annotations

from .poly import MultiPoly, sort_variables


class ZeroDivisorError(ZeroDivisionError):
    pass


def _key(e: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    return (sum(e), e)


def exact_divide(p: MultiPoly, d: MultiPoly) -> MultiPoly | None:
    """Return ``q`` with ``p == q * d``, or ``None`` when ``d`` does not divide ``p``.

    Leading-term elimination in graded-lex order; a non-divisible leading
    monomial or an exhausted iteration budget both mean "not divisible".
    The quotient is confirmed by one exact multiplication.
    """
    if not d:
        raise ZeroDivisorError("division by the zero polynomial")
    if not p:
        return MultiPoly.const(0, p.variables)
    variables = sort_variables(p.variables + d.variables)
    p = p.with_variables(variables)
    d = d.with_variables(variables)

    lead_d = max(d.terms, key=_key)
    lead_c = d.terms[lead_d]
    inv_lc = lead_c.inverse()
    rest_d = [(e, c) for e, c in d.terms.items() if e != lead_d]

    rem = dict(p.terms)
    quot: dict[tuple[int, ...], object] = {}
    budget = max((p.total_degree() + 1) * len(p.terms), 64)
    steps = 0
    while rem:
        steps += 1
        if steps > budget:
            return None
        e = max(rem, key=_key)
        shift = tuple(a - b for a, b in zip(e, lead_d))
        if min(shift) < 0:
            return None
        coef = rem.pop(e) * inv_lc
        quot[shift] = coef
        for ed, cd in rest_d:
            m = tuple(a + b for a, b in zip(shift, ed))
            val = rem.get(m)
            delta = coef * cd
            if val is None:
                rem[m] = -delta
            else:
                val = val - delta
                if val:
                    rem[m] = val
                else:
                    del rem[m]
    q = MultiPoly(variables, quot)
    if q * d != p:  # defensive; elimination above is exact
        return None
    return q


def divides(d: MultiPoly, p: MultiPoly) -> bool:
    return exact_divide(p, d) is not None
