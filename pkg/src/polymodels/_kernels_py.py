"""Pure-Python kernels; reference semantics for the compiled ``_ckernels``.

Polynomials reach these kernels in *integer form*: exponent vectors packed
into one int (12 bits per variable) and numerators ``A + B*sqrt5`` sharing a
common denominator held by the caller.  ``B`` is ``None`` for rational input.
"""

from __future__ import annotations

BACKEND = "python"


def mul_packed(ka, Aa, Ba, kb, Ab, Bb):
    """Product of two integer-form polynomials.

    Returns ``(keys, A, B)``; ``B`` is ``None`` when both inputs are rational.
    Zero coefficients may be present in the output.
    """
    if Ba is None and Bb is None:
        acc: dict[int, int] = {}
        get = acc.get
        for k1, a1 in zip(ka, Aa):
            for k2, a2 in zip(kb, Ab):
                k = k1 + k2
                acc[k] = get(k, 0) + a1 * a2
        keys = list(acc)
        return keys, [acc[k] for k in keys], None

    if Ba is None:
        Ba = [0] * len(ka)
    if Bb is None:
        Bb = [0] * len(kb)
    acc_a: dict[int, int] = {}
    acc_b: dict[int, int] = {}
    ga, gb = acc_a.get, acc_b.get
    for k1, a1, b1 in zip(ka, Aa, Ba):
        for k2, a2, b2 in zip(kb, Ab, Bb):
            k = k1 + k2
            acc_a[k] = ga(k, 0) + a1 * a2 + 5 * b1 * b2
            acc_b[k] = gb(k, 0) + a1 * b2 + a2 * b1
    keys = list(acc_a)
    return keys, [acc_a[k] for k in keys], [acc_b[k] for k in keys]
