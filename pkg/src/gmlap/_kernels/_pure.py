"""Pure-Python kernel implementations.

These mirror the Cython versions in gmlap._kernels._fastcore operation for
operation (same formulas, same loop order) so the two backends agree on
every output bit.  Keep the two files in sync when touching either.
"""

from math import sqrt

import numpy as np

MAX_SWEEPS = 100

_COL_INF = 1 << 62


def jacobi_eigh(matrix):
    """Cyclic Jacobi diagonalization of a symmetric matrix.

    Returns (eigenvalues, eigenvectors, sweeps) with eigenvalues unsorted
    (diagonal order) and eigenvectors in matching columns.  Sweeps run in a
    fixed row-major order until the off-diagonal Frobenius norm drops below
    1e-12 * max(1, ||M||_F).
    """
    mat = np.asarray(matrix, dtype=np.float64)
    n = mat.shape[0]
    if n == 0:
        return np.zeros(0), np.zeros((0, 0)), 0
    a = [float(x) for x in mat.flat]
    v = [0.0] * (n * n)
    for i in range(n):
        v[i * n + i] = 1.0

    fro = 0.0
    for i in range(n * n):
        fro += a[i] * a[i]
    eps = 1e-12 * max(1.0, sqrt(fro))

    sweeps = 0
    while True:
        off = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                off += 2.0 * a[i * n + j] * a[i * n + j]
        if sqrt(off) <= eps:
            break
        if sweeps >= MAX_SWEEPS:
            raise RuntimeError("Jacobi eigensolver failed to converge")
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p * n + q]
                if apq == 0.0:
                    continue
                app = a[p * n + p]
                aqq = a[q * n + q]
                theta = (aqq - app) / (2.0 * apq)
                if theta >= 0.0:
                    t = 1.0 / (theta + sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + sqrt(theta * theta + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    if k != p and k != q:
                        akp = a[k * n + p]
                        akq = a[k * n + q]
                        a[k * n + p] = akp * c - akq * s
                        a[p * n + k] = a[k * n + p]
                        a[k * n + q] = akp * s + akq * c
                        a[q * n + k] = a[k * n + q]
                a[p * n + p] = app - t * apq
                a[q * n + q] = aqq + t * apq
                a[p * n + q] = 0.0
                a[q * n + p] = 0.0
                for k in range(n):
                    vkp = v[k * n + p]
                    vkq = v[k * n + q]
                    v[k * n + p] = vkp * c - vkq * s
                    v[k * n + q] = vkp * s + vkq * c

    w = np.array([a[i * n + i] for i in range(n)])
    vecs = np.array(v).reshape(n, n)
    return w, vecs, sweeps


def _twins(rows, x, y):
    # Swapping x and y is an automorphism iff their neighborhoods agree
    # away from the pair itself.
    drop = ~((1 << x) | (1 << y))
    return rows[x] & drop == rows[y] & drop


def canon_bits(n, rows):
    """Minimal column-major upper-triangle bitstring over all relabelings
    that respect degree classes.

    rows[v] is the neighbor bitmask of vertex v.  Positions are filled in
    order; candidate vertices for a position must match its target degree.
    The partial bitstring (earlier bits more significant) prunes the
    search, and twin vertices are tried only once per position.
    """
    degs = [r.bit_count() for r in rows]
    order = sorted(range(n), key=lambda u: (-degs[u], u))
    target = [degs[u] for u in order]
    best_cols = [_COL_INF] * n
    placed = [0] * n
    best_perm = None

    def search(p, used):
        nonlocal best_perm
        if p == n:
            best_perm = placed.copy()
            return
        cands = []
        for u in order:
            if (used >> u) & 1 or degs[u] != target[p]:
                continue
            col = 0
            for i in range(p):
                col = (col << 1) | ((rows[u] >> placed[i]) & 1)
            cands.append((col, u))
        cands.sort()
        tried = []
        for col, u in cands:
            if col > best_cols[p]:
                break
            if any(tc == col and _twins(rows, tu, u) for tc, tu in tried):
                continue
            tried.append((col, u))
            if col < best_cols[p]:
                best_cols[p] = col
                for k in range(p + 1, n):
                    best_cols[k] = _COL_INF
            placed[p] = u
            search(p + 1, used | (1 << u))

    search(0, 0)
    bits = 0
    for j in range(n):
        for i in range(j):
            if (rows[best_perm[i]] >> best_perm[j]) & 1:
                bits |= 1 << (j * (j - 1) // 2 + i)
    return bits


def canon_bits_batch(n, masks):
    """Canonical bitstring for each packed upper-triangle mask."""
    pair_bits = [(i, j) for j in range(n) for i in range(j)]
    out = np.empty(len(masks), dtype=np.uint64)
    for idx, mask in enumerate(masks):
        mask = int(mask)
        rows = [0] * n
        for b, (i, j) in enumerate(pair_bits):
            if (mask >> b) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
        out[idx] = canon_bits(n, rows)
    return out


def degree_sorted_masks(n):
    """All upper-triangle masks whose degree vector is non-increasing,
    ascending.  Every isomorphism class has at least one such labeling."""
    nbits = n * (n - 1) // 2
    if n <= 1:
        return np.zeros(1, dtype=np.uint64)
    vmasks = np.zeros(n, dtype=np.uint64)
    for j in range(n):
        for i in range(j):
            vmasks[i] |= np.uint64(1 << (j * (j - 1) // 2 + i))
            vmasks[j] |= np.uint64(1 << (j * (j - 1) // 2 + i))
    chunk = 1 << 22
    keep_parts = []
    for start in range(0, 1 << nbits, chunk):
        stop = min(start + chunk, 1 << nbits)
        arr = np.arange(start, stop, dtype=np.uint64)
        prev = np.bitwise_count(arr & vmasks[0])
        ok = np.ones(len(arr), dtype=bool)
        for vtx in range(1, n):
            cur = np.bitwise_count(arr & vmasks[vtx])
            ok &= prev >= cur
            prev = cur
        keep_parts.append(arr[ok])
    return np.concatenate(keep_parts)
