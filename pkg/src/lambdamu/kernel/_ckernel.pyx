# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled reduction kernel over flat codes (see ``lambdamu.codec``).

Interface and results are identical to ``_pykernel``.
"""
from cpython.bytes cimport PyBytes_AS_STRING, PyBytes_FromStringAndSize
from libc.stdlib cimport free, malloc, realloc

BETA = 1
MU = 2
MU_PRIME = 4

cdef enum:
    T_LAM = 0
    T_MU = 1
    T_APP = 2
    T_BVAR = 3
    T_FVAR = 4
    T_BNAMED = 5
    T_FNAMED = 6
    R_BETA = 1
    R_MU = 2
    R_MU_PRIME = 4


cdef struct Vec:
    int* data
    Py_ssize_t n
    Py_ssize_t cap


cdef int vec_init(Vec* v, Py_ssize_t cap) except -1:
    if cap < 16:
        cap = 16
    v.data = <int*> malloc(cap * sizeof(int))
    if v.data == NULL:
        raise MemoryError()
    v.n = 0
    v.cap = cap
    return 0


cdef int vec_reserve(Vec* v, Py_ssize_t extra) except -1:
    cdef Py_ssize_t need = v.n + extra
    cdef Py_ssize_t cap = v.cap
    cdef int* d
    if need <= cap:
        return 0
    while cap < need:
        cap *= 2
    d = <int*> realloc(v.data, cap * sizeof(int))
    if d == NULL:
        raise MemoryError()
    v.data = d
    v.cap = cap
    return 0


cdef inline int vec_push(Vec* v, int w) except -1:
    if v.n == v.cap:
        vec_reserve(v, 1)
    v.data[v.n] = w
    v.n += 1
    return 0


cdef int* compute_ends(const int* c, Py_ssize_t n) except NULL:
    cdef int* ends = <int*> malloc((n + 1) * sizeof(int))
    cdef Py_ssize_t i
    cdef int tag
    if ends == NULL:
        raise MemoryError()
    i = n - 1
    while i >= 0:
        tag = c[i] & 7
        if tag == T_APP:
            ends[i] = ends[ends[i + 1]]
        elif tag == T_BVAR or tag == T_FVAR:
            ends[i] = <int> (i + 1)
        else:
            ends[i] = ends[i + 1]
        i -= 1
    return ends


cdef int shift_into(Vec* out, const int* c, const int* ends, Py_ssize_t start,
                    Py_ssize_t stop, int dl, int dm, int* ls, int* ms) except -1:
    cdef Py_ssize_t i
    cdef int nl = 0, nm = 0, w, tag, k
    vec_reserve(out, stop - start)
    if dl == 0 and dm == 0:
        for i in range(start, stop):
            out.data[out.n] = c[i]
            out.n += 1
        return 0
    for i in range(start, stop):
        while nl > 0 and ls[nl - 1] <= i:
            nl -= 1
        while nm > 0 and ms[nm - 1] <= i:
            nm -= 1
        w = c[i]
        tag = w & 7
        if tag == T_BVAR:
            k = w >> 3
            if k >= nl:
                w = ((k + dl) << 3) | T_BVAR
        elif tag == T_BNAMED:
            k = w >> 3
            if k >= nm:
                w = ((k + dm) << 3) | T_BNAMED
        elif tag == T_LAM:
            ls[nl] = ends[i]
            nl += 1
        elif tag == T_MU:
            ms[nm] = ends[i]
            nm += 1
        out.data[out.n] = w
        out.n += 1
    return 0


cdef int emit_contract(Vec* out, const int* c, const int* ends, Py_ssize_t n,
                       Py_ssize_t p, int rule, int* scratch) except -1:
    # scratch holds 7 * (n + 1) ints: ls, ms, shift-ls, shift-ms, pending end/dl/dm
    cdef int* ls = scratch
    cdef int* ms = scratch + (n + 1)
    cdef int* sls = scratch + 2 * (n + 1)
    cdef int* sms = scratch + 3 * (n + 1)
    cdef int* pe = scratch + 4 * (n + 1)
    cdef int* pdl = scratch + 5 * (n + 1)
    cdef int* pdm = scratch + 6 * (n + 1)
    cdef int nl = 0, nm = 0, npend = 0, w, tag, k
    cdef Py_ssize_t i, b0, b1, a0, a1
    if rule == R_BETA:
        b0 = p + 2
        b1 = ends[p + 1]
        a0 = b1
        a1 = ends[p]
        for i in range(b0, b1):
            while nl > 0 and ls[nl - 1] <= i:
                nl -= 1
            while nm > 0 and ms[nm - 1] <= i:
                nm -= 1
            w = c[i]
            tag = w & 7
            if tag == T_BVAR:
                k = w >> 3
                if k == nl:
                    shift_into(out, c, ends, a0, a1, nl, nm, sls, sms)
                    continue
                if k > nl:
                    w = ((k - 1) << 3) | T_BVAR
            elif tag == T_LAM:
                ls[nl] = ends[i]
                nl += 1
            elif tag == T_MU:
                ms[nm] = ends[i]
                nm += 1
            vec_push(out, w)
    elif rule == R_MU:
        b0 = p + 2
        b1 = ends[p + 1]
        a0 = b1
        a1 = ends[p]
        vec_push(out, T_MU)
        for i in range(b0, b1):
            while npend > 0 and pe[npend - 1] <= i:
                npend -= 1
                shift_into(out, c, ends, a0, a1, pdl[npend], pdm[npend], sls, sms)
            while nl > 0 and ls[nl - 1] <= i:
                nl -= 1
            while nm > 0 and ms[nm - 1] <= i:
                nm -= 1
            w = c[i]
            tag = w & 7
            if tag == T_BNAMED and (w >> 3) == nm:
                vec_push(out, w)
                vec_push(out, T_APP)
                pe[npend] = ends[i]
                pdl[npend] = nl
                pdm[npend] = nm + 1
                npend += 1
                continue
            if tag == T_LAM:
                ls[nl] = ends[i]
                nl += 1
            elif tag == T_MU:
                ms[nm] = ends[i]
                nm += 1
            vec_push(out, w)
        while npend > 0:
            npend -= 1
            shift_into(out, c, ends, a0, a1, pdl[npend], pdm[npend], sls, sms)
    else:
        a0 = p + 1
        a1 = ends[a0]
        b0 = a1 + 1
        b1 = ends[p]
        vec_push(out, T_MU)
        for i in range(b0, b1):
            while nl > 0 and ls[nl - 1] <= i:
                nl -= 1
            while nm > 0 and ms[nm - 1] <= i:
                nm -= 1
            w = c[i]
            tag = w & 7
            if tag == T_BNAMED and (w >> 3) == nm:
                vec_push(out, w)
                vec_push(out, T_APP)
                shift_into(out, c, ends, a0, a1, nl, nm + 1, sls, sms)
                continue
            if tag == T_LAM:
                ls[nl] = ends[i]
                nl += 1
            elif tag == T_MU:
                ms[nm] = ends[i]
                nm += 1
            vec_push(out, w)
    return 0


cdef bytes build_reduct(const int* c, const int* ends, Py_ssize_t n, Py_ssize_t p,
                        int rule, int* scratch):
    cdef Vec out
    cdef Py_ssize_t i, e = ends[p]
    cdef bytes result
    vec_init(&out, n * 2)
    try:
        vec_reserve(&out, p)
        for i in range(p):
            out.data[i] = c[i]
        out.n = p
        emit_contract(&out, c, ends, n, p, rule, scratch)
        vec_reserve(&out, n - e)
        for i in range(e, n):
            out.data[out.n] = c[i]
            out.n += 1
        result = PyBytes_FromStringAndSize(<char*> out.data, out.n * sizeof(int))
    finally:
        free(out.data)
    return result


cdef list find_redexes(const int* c, const int* ends, Py_ssize_t n, int mask):
    cdef list out = []
    cdef Py_ssize_t p
    cdef int ft
    for p in range(n):
        if (c[p] & 7) != T_APP:
            continue
        ft = c[p + 1] & 7
        if ft == T_LAM and (mask & R_BETA):
            out.append((p, R_BETA))
        elif ft == T_MU and (mask & R_MU):
            out.append((p, R_MU))
        if (mask & R_MU_PRIME) and (c[ends[p + 1]] & 7) == T_MU:
            out.append((p, R_MU_PRIME))
    return out


def redexes(bytes code, int mask):
    """``(offset, rule)`` for every redex enabled by ``mask``, in pre-order."""
    cdef Py_ssize_t n = len(code) // 4
    cdef const int* c = <const int*> PyBytes_AS_STRING(code)
    cdef int* ends = compute_ends(c, n)
    try:
        return find_redexes(c, ends, n, mask)
    finally:
        free(ends)


def contract(bytes code, Py_ssize_t offset, int rule):
    """Contract the redex ``rule`` at word ``offset``; ``ValueError`` if absent."""
    cdef Py_ssize_t n = len(code) // 4
    cdef const int* c = <const int*> PyBytes_AS_STRING(code)
    cdef int* ends
    cdef int* scratch
    cdef int f, a
    if offset < 0 or offset >= n or (c[offset] & 7) != T_APP:
        raise ValueError("no application at offset")
    if rule != R_BETA and rule != R_MU and rule != R_MU_PRIME:
        raise ValueError("unknown rule")
    ends = compute_ends(c, n)
    try:
        f = c[offset + 1] & 7
        a = c[ends[offset + 1]] & 7
        if (rule == R_BETA and f != T_LAM) or (rule == R_MU and f != T_MU) or (rule == R_MU_PRIME and a != T_MU):
            raise ValueError("no such redex at offset")
        scratch = <int*> malloc(7 * (n + 1) * sizeof(int))
        if scratch == NULL:
            raise MemoryError()
        try:
            return build_reduct(c, ends, n, offset, rule, scratch)
        finally:
            free(scratch)
    finally:
        free(ends)


def successors(bytes code, int mask):
    """``(offset, rule, reduct)`` for every one-step reduct, in redex order."""
    cdef Py_ssize_t n = len(code) // 4
    cdef const int* c = <const int*> PyBytes_AS_STRING(code)
    cdef int* ends = compute_ends(c, n)
    cdef int* scratch = NULL
    cdef list out = []
    cdef list found
    cdef Py_ssize_t p
    cdef int r
    try:
        found = find_redexes(c, ends, n, mask)
        if not found:
            return out
        scratch = <int*> malloc(7 * (n + 1) * sizeof(int))
        if scratch == NULL:
            raise MemoryError()
        for p, r in found:
            out.append((p, r, build_reduct(c, ends, n, p, r, scratch)))
        return out
    finally:
        free(ends)
        free(scratch)
