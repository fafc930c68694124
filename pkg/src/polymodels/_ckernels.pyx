# cython: language_level=3, boundscheck=False, wraparound=False
# distutils: language = c++
"""Compiled kernels; same contract as ``_kernels_py``.

Coefficients that fit comfortably in int64 go through a C loop with
overflow-checked arithmetic; any overflow restarts the product on the
Python-int path.
"""

from libc.stdint cimport int64_t
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector
from libcpp.utility cimport pair

BACKEND = "cython"

cdef extern from *:
    """
    static inline int mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int add_ovf(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    """
    int mul_ovf(long long a, long long b, long long *r) nogil
    int add_ovf(long long a, long long b, long long *r) nogil

cdef long long _LIMIT = (<long long>1) << 62


cdef bint _fits(list xs):
    cdef object v
    for v in xs:
        if v >= _LIMIT or v <= -_LIMIT:
            return False
    return True


cdef int _fast_rational(vector[long long]& ka, vector[long long]& aa,
                        vector[long long]& kb, vector[long long]& ab,
                        unordered_map[long long, long long]& acc) nogil:
    cdef size_t i, j
    cdef long long prod, cur
    cdef long long k
    for i in range(ka.size()):
        for j in range(kb.size()):
            if mul_ovf(aa[i], ab[j], &prod):
                return 1
            k = ka[i] + kb[j]
            cur = acc[k]
            if add_ovf(cur, prod, &cur):
                return 1
            acc[k] = cur
    return 0


cdef int _fast_sqrt5(vector[long long]& ka, vector[long long]& aa, vector[long long]& ba,
                     vector[long long]& kb, vector[long long]& ab, vector[long long]& bb,
                     unordered_map[long long, pair[long long, long long]]& acc) nogil:
    cdef size_t i, j
    cdef long long t1, t2, t3, k
    cdef pair[long long, long long] cur
    for i in range(ka.size()):
        for j in range(kb.size()):
            k = ka[i] + kb[j]
            cur = acc[k]
            # real part: a1*a2 + 5*b1*b2
            if mul_ovf(aa[i], ab[j], &t1):
                return 1
            if mul_ovf(ba[i], bb[j], &t2):
                return 1
            if mul_ovf(t2, 5, &t2):
                return 1
            if add_ovf(t1, t2, &t3):
                return 1
            if add_ovf(cur.first, t3, &cur.first):
                return 1
            # sqrt5 part: a1*b2 + a2*b1
            if mul_ovf(aa[i], bb[j], &t1):
                return 1
            if mul_ovf(ab[j], ba[i], &t2):
                return 1
            if add_ovf(t1, t2, &t3):
                return 1
            if add_ovf(cur.second, t3, &cur.second):
                return 1
            acc[k] = cur
    return 0


def _slow(list ka, list Aa, object Ba, list kb, list Ab, object Bb):
    cdef Py_ssize_t i, j, na = len(ka), nb = len(kb)
    cdef object k, a1, b1, a2, b2
    cdef dict acc_a = {}
    cdef dict acc_b
    if Ba is None and Bb is None:
        for i in range(na):
            a1 = Aa[i]
            for j in range(nb):
                k = ka[i] + kb[j]
                acc_a[k] = acc_a.get(k, 0) + a1 * Ab[j]
        keys = list(acc_a)
        return keys, [acc_a[k] for k in keys], None
    if Ba is None:
        Ba = [0] * na
    if Bb is None:
        Bb = [0] * nb
    acc_b = {}
    for i in range(na):
        a1 = Aa[i]
        b1 = Ba[i]
        for j in range(nb):
            a2 = Ab[j]
            b2 = Bb[j]
            k = ka[i] + kb[j]
            acc_a[k] = acc_a.get(k, 0) + a1 * a2 + 5 * b1 * b2
            acc_b[k] = acc_b.get(k, 0) + a1 * b2 + a2 * b1
    keys = list(acc_a)
    return keys, [acc_a[k] for k in keys], [acc_b[k] for k in keys]


def mul_packed(list ka, list Aa, object Ba, list kb, list Ab, object Bb):
    cdef vector[long long] vka, vaa, vba, vkb, vab, vbb
    cdef unordered_map[long long, long long] racc
    cdef unordered_map[long long, pair[long long, long long]] sacc
    cdef int failed
    if not (_fits(Aa) and _fits(Ab)
            and (Ba is None or _fits(Ba)) and (Bb is None or _fits(Bb))):
        return _slow(ka, Aa, Ba, kb, Ab, Bb)
    vka = ka
    vkb = kb
    vaa = Aa
    vab = Ab
    if Ba is None and Bb is None:
        with nogil:
            failed = _fast_rational(vka, vaa, vkb, vab, racc)
        if failed:
            return _slow(ka, Aa, Ba, kb, Ab, Bb)
        keys = []
        avals = []
        for item in racc:
            keys.append(item.first)
            avals.append(item.second)
        return keys, avals, None
    vba = Ba if Ba is not None else [0] * len(ka)
    vbb = Bb if Bb is not None else [0] * len(kb)
    with nogil:
        failed = _fast_sqrt5(vka, vaa, vba, vkb, vab, vbb, sacc)
    if failed:
        return _slow(ka, Aa, Ba, kb, Ab, Bb)
    keys = []
    avals = []
    bvals = []
    for sitem in sacc:
        keys.append(sitem.first)
        avals.append(sitem.second.first)
        bvals.append(sitem.second.second)
    return keys, avals, bvals
