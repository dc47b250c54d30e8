# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel implementations.

Mirrors gmlap._kernels._pure operation for operation; the build uses
-ffp-contract=off so floating-point results match the pure backend bit
for bit.  Keep the two files in sync when touching either.
"""

from libc.math cimport sqrt

import numpy as np

cdef extern from *:
    """
    #if defined(__GNUC__) || defined(__clang__)
    #define GMLAP_POPCOUNT(x) __builtin_popcountll(x)
    #else
    static int GMLAP_POPCOUNT(unsigned long long x) {
        int c = 0;
        while (x) { x &= x - 1; c++; }
        return c;
    }
    #endif
    #define GMLAP_COL_INF (1LL << 62)
    #define GMLAP_MAX_N 16
    """
    int GMLAP_POPCOUNT(unsigned long long x) nogil
    long long GMLAP_COL_INF
    enum: GMLAP_MAX_N

MAX_SWEEPS = 100


def jacobi_eigh(matrix):
    """Cyclic Jacobi diagonalization; see the pure backend for the contract."""
    mat = np.ascontiguousarray(matrix, dtype=np.float64)
    cdef Py_ssize_t n = mat.shape[0]
    if n == 0:
        return np.zeros(0), np.zeros((0, 0)), 0
    a_arr = np.array(mat, dtype=np.float64, copy=True)
    v_arr = np.eye(n)
    cdef double[:, ::1] a = a_arr
    cdef double[:, ::1] v = v_arr
    cdef double fro = 0.0, eps, off, apq, app, aqq, theta, t, c, s, akp, akq, vkp, vkq
    cdef Py_ssize_t i, j, p, q, k
    cdef int sweeps = 0

    for i in range(n):
        for j in range(n):
            fro += a[i, j] * a[i, j]
    eps = sqrt(fro)
    if eps < 1.0:
        eps = 1.0
    eps = 1e-12 * eps

    while True:
        off = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                off += 2.0 * a[i, j] * a[i, j]
        if sqrt(off) <= eps:
            break
        if sweeps >= MAX_SWEEPS:
            raise RuntimeError("Jacobi eigensolver failed to converge")
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                app = a[p, p]
                aqq = a[q, q]
                theta = (aqq - app) / (2.0 * apq)
                if theta >= 0.0:
                    t = 1.0 / (theta + sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + sqrt(theta * theta + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    if k != p and k != q:
                        akp = a[k, p]
                        akq = a[k, q]
                        a[k, p] = akp * c - akq * s
                        a[p, k] = a[k, p]
                        a[k, q] = akp * s + akq * c
                        a[q, k] = a[k, q]
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = vkp * c - vkq * s
                    v[k, q] = vkp * s + vkq * c

    w = np.diagonal(a_arr).copy()
    return w, v_arr, sweeps


cdef struct CanonState:
    int n
    unsigned int rows[GMLAP_MAX_N]
    int degs[GMLAP_MAX_N]
    int target[GMLAP_MAX_N]
    int order[GMLAP_MAX_N]
    long long best_cols[GMLAP_MAX_N]
    int placed[GMLAP_MAX_N]
    int best_perm[GMLAP_MAX_N]


cdef bint _twins(CanonState* st, int x, int y) noexcept nogil:
    cdef unsigned int drop = ~((1u << x) | (1u << y))
    return (st.rows[x] & drop) == (st.rows[y] & drop)


cdef void _search(CanonState* st, int p, unsigned int used) noexcept nogil:
    cdef int n = st.n
    cdef int ncand = 0, idx, i, k, u, tmpv
    cdef long long col, tmpc
    cdef long long cand_col[GMLAP_MAX_N]
    cdef int cand_v[GMLAP_MAX_N]
    cdef bint skip

    if p == n:
        for i in range(n):
            st.best_perm[i] = st.placed[i]
        return
    for idx in range(n):
        u = st.order[idx]
        if (used >> u) & 1u or st.degs[u] != st.target[p]:
            continue
        col = 0
        for i in range(p):
            col = (col << 1) | ((st.rows[u] >> st.placed[i]) & 1u)
        cand_col[ncand] = col
        cand_v[ncand] = u
        ncand += 1
    # insertion sort by (col, order position); order positions are already
    # ascending from the fill loop, so sorting by col alone is stable
    for i in range(1, ncand):
        tmpc = cand_col[i]
        tmpv = cand_v[i]
        k = i - 1
        while k >= 0 and cand_col[k] > tmpc:
            cand_col[k + 1] = cand_col[k]
            cand_v[k + 1] = cand_v[k]
            k -= 1
        cand_col[k + 1] = tmpc
        cand_v[k + 1] = tmpv
    for idx in range(ncand):
        col = cand_col[idx]
        u = cand_v[idx]
        if col > st.best_cols[p]:
            break
        skip = False
        for i in range(idx):
            if cand_col[i] == col and _twins(st, cand_v[i], u):
                skip = True
                break
        if skip:
            continue
        if col < st.best_cols[p]:
            st.best_cols[p] = col
            for k in range(p + 1, n):
                st.best_cols[k] = GMLAP_COL_INF
        st.placed[p] = u
        _search(st, p + 1, used | (1u << u))


cdef unsigned long long _canon_run(CanonState* st) noexcept nogil:
    cdef int i, j
    cdef unsigned long long bits = 0
    _search(st, 0, 0)
    for j in range(st.n):
        for i in range(j):
            if (st.rows[st.best_perm[i]] >> st.best_perm[j]) & 1u:
                bits |= 1ull << (j * (j - 1) // 2 + i)
    return bits


cdef void _init_order(CanonState* st) noexcept nogil:
    # sort vertices by (degree desc, index asc) via insertion sort
    cdef int i, k, u
    for i in range(st.n):
        st.order[i] = i
        st.best_cols[i] = GMLAP_COL_INF
    for i in range(1, st.n):
        u = st.order[i]
        k = i - 1
        while k >= 0 and (st.degs[st.order[k]] < st.degs[u] or
                          (st.degs[st.order[k]] == st.degs[u] and st.order[k] > u)):
            st.order[k + 1] = st.order[k]
            k -= 1
        st.order[k + 1] = u
    for i in range(st.n):
        st.target[i] = st.degs[st.order[i]]


def canon_bits(int n, rows):
    """Minimal column-major upper-triangle bitstring; see the pure backend."""
    cdef CanonState st
    cdef int v
    if n > GMLAP_MAX_N:
        raise ValueError("canonical search supports n <= %d" % GMLAP_MAX_N)
    st.n = n
    for v in range(n):
        st.rows[v] = rows[v]
        st.degs[v] = GMLAP_POPCOUNT(st.rows[v])
    _init_order(&st)
    return _canon_run(&st)


def canon_bits_batch(int n, masks):
    """Canonical bitstring for each packed upper-triangle mask."""
    masks_arr = np.ascontiguousarray(masks, dtype=np.uint64)
    out_arr = np.empty(len(masks_arr), dtype=np.uint64)
    cdef unsigned long long[::1] mv = masks_arr
    cdef unsigned long long[::1] out = out_arr
    cdef CanonState st
    cdef Py_ssize_t idx
    cdef int i, j, b
    cdef unsigned long long mask
    if n > GMLAP_MAX_N:
        raise ValueError("canonical search supports n <= %d" % GMLAP_MAX_N)
    st.n = n
    with nogil:
        for idx in range(mv.shape[0]):
            mask = mv[idx]
            for i in range(n):
                st.rows[i] = 0
            b = 0
            for j in range(n):
                for i in range(j):
                    if (mask >> b) & 1ull:
                        st.rows[i] |= 1u << j
                        st.rows[j] |= 1u << i
                    b += 1
            for i in range(n):
                st.degs[i] = GMLAP_POPCOUNT(st.rows[i])
            _init_order(&st)
            out[idx] = _canon_run(&st)
    return out_arr


def degree_sorted_masks(int n):
    """Ascending upper-triangle masks with non-increasing degree vectors."""
    cdef int nbits = n * (n - 1) // 2
    if n <= 1:
        return np.zeros(1, dtype=np.uint64)
    cdef unsigned long long vmasks[16]
    cdef int i, j, v
    for v in range(n):
        vmasks[v] = 0
    for j in range(n):
        for i in range(j):
            vmasks[i] |= 1ull << (j * (j - 1) // 2 + i)
            vmasks[j] |= 1ull << (j * (j - 1) // 2 + i)

    cdef unsigned long long total = 1ull << nbits
    cdef unsigned long long chunk = 1ull << 22
    cdef unsigned long long start, stop, m
    cdef Py_ssize_t fill
    cdef int prev, cur, ok
    keep_parts = []
    buf_arr = np.empty(min(chunk, total), dtype=np.uint64)
    cdef unsigned long long[::1] buf = buf_arr
    start = 0
    while start < total:
        stop = start + chunk
        if stop > total:
            stop = total
        fill = 0
        with nogil:
            for m in range(start, stop):
                prev = GMLAP_POPCOUNT(m & vmasks[0])
                ok = 1
                for v in range(1, n):
                    cur = GMLAP_POPCOUNT(m & vmasks[v])
                    if cur > prev:
                        ok = 0
                        break
                    prev = cur
                if ok:
                    buf[fill] = m
                    fill += 1
        keep_parts.append(buf_arr[:fill].copy())
        start = stop
    return np.concatenate(keep_parts)
