"""Numba-jitted kernels (hot path).

Same contracts as ``_numpyimpl``; see that module for the edge-id and
edge-key encodings.  Extraction kernels run two passes (count, then fill
at prefix-sum offsets) so the parallel fill writes each slot exactly once
and output order is independent of the thread schedule.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange

from ._tables import CUBE_CORNERS, CUBE_TETS, TET_CASE_EDGES, TET_CASE_NTRI

# padded (nseg, pairs) table covering all 16 marching-squares cases; the
# saddle entries (5, 10) hold the center-positive resolution and the fill
# code swaps to the complementary pairing when the center average is <= 0
_MS_NSEG = np.zeros(16, dtype=np.int64)
_MS_SEGS = np.full((16, 2, 2), -1, dtype=np.int64)
for _c, _pairs in {
    1: [(3, 0)], 2: [(0, 1)], 3: [(3, 1)], 4: [(1, 2)], 6: [(0, 2)],
    7: [(3, 2)], 8: [(2, 3)], 9: [(0, 2)], 11: [(1, 2)], 12: [(1, 3)],
    13: [(0, 1)], 14: [(3, 0)],
    5: [(0, 1), (2, 3)], 10: [(3, 0), (1, 2)],
}.items():
    _MS_NSEG[_c] = len(_pairs)
    for _s, (_a, _b) in enumerate(_pairs):
        _MS_SEGS[_c, _s, 0] = _a
        _MS_SEGS[_c, _s, 1] = _b

# complementary saddle pairings, used when the cell-center average is <= 0
_MS_SADDLE_NEG = np.full((16, 2, 2), -1, dtype=np.int64)
for _c, _pairs in {5: [(3, 0), (1, 2)], 10: [(0, 1), (2, 3)]}.items():
    for _s, (_a, _b) in enumerate(_pairs):
        _MS_SADDLE_NEG[_c, _s, 0] = _a
        _MS_SADDLE_NEG[_c, _s, 1] = _b


@njit(parallel=True, fastmath=True, cache=True)
def plane_wave_eval(points, wavevecs, amp_cos, amp_sin):
    m = points.shape[0]
    n = wavevecs.shape[0]
    d = points.shape[1]
    out = np.empty(m)
    for p in prange(m):
        acc = 0.0
        for j in range(n):
            ph = 0.0
            for k in range(d):
                ph += points[p, k] * wavevecs[j, k]
            acc += amp_cos[j] * np.cos(ph) + amp_sin[j] * np.sin(ph)
        out[p] = acc
    return out


@njit(cache=True, inline="always")
def _ms_cell(values, i, ip1, j):
    """Return (nseg, case, saddle_neg) for cell (i, j)."""
    vA = values[i, j]
    vB = values[ip1, j]
    vC = values[ip1, j + 1]
    vD = values[i, j + 1]
    case = 0
    if vA > 0.0:
        case += 1
    if vB > 0.0:
        case += 2
    if vC > 0.0:
        case += 4
    if vD > 0.0:
        case += 8
    saddle_neg = (case == 5 or case == 10) and (vA + vB + vC + vD) <= 0.0
    return _MS_NSEG[case], case, saddle_neg


@njit(parallel=True, cache=True)
def _ms_count(values, periodic_x):
    nx, ny = values.shape
    ncx = nx if periodic_x else nx - 1
    counts = np.zeros(ncx * (ny - 1), dtype=np.int64)
    for ci in prange(ncx):
        ip1 = (ci + 1) % nx if periodic_x else ci + 1
        for j in range(ny - 1):
            n, _, _ = _ms_cell(values, ci, ip1, j)
            counts[ci * (ny - 1) + j] = n
    return counts


@njit(parallel=True, cache=True)
def _ms_fill(values, periodic_x, offsets, out):
    nx, ny = values.shape
    ncx = nx if periodic_x else nx - 1
    for ci in prange(ncx):
        ip1 = (ci + 1) % nx if periodic_x else ci + 1
        for j in range(ny - 1):
            n, case, saddle_neg = _ms_cell(values, ci, ip1, j)
            if n == 0:
                continue
            e0 = 2 * (ci * ny + j)
            e1 = 2 * (ip1 * ny + j) + 1
            e2 = 2 * (ci * ny + (j + 1))
            e3 = 2 * (ci * ny + j) + 1
            at = offsets[ci * (ny - 1) + j]
            for s in range(n):
                if saddle_neg:
                    sa = _MS_SADDLE_NEG[case, s, 0]
                    sb = _MS_SADDLE_NEG[case, s, 1]
                else:
                    sa = _MS_SEGS[case, s, 0]
                    sb = _MS_SEGS[case, s, 1]
                a = e0 if sa == 0 else (e1 if sa == 1 else (e2 if sa == 2 else e3))
                b = e0 if sb == 0 else (e1 if sb == 1 else (e2 if sb == 2 else e3))
                out[at + s, 0] = a
                out[at + s, 1] = b


def ms_segments(values, periodic_x=False):
    counts = _ms_count(values, periodic_x)
    offsets = np.empty(counts.size, dtype=np.int64)
    np.cumsum(counts, out=offsets)
    total = int(offsets[-1]) if counts.size else 0
    offsets -= counts
    out = np.empty((total, 2), dtype=np.int64)
    if total:
        _ms_fill(values, periodic_x, offsets, out)
    return out


@njit(cache=True, inline="always")
def _cube_tet_ids(base, ny, nz, t):
    g0 = base
    c1 = CUBE_TETS[t, 1]
    c2 = CUBE_TETS[t, 2]
    g1 = base + (CUBE_CORNERS[c1, 0] * ny + CUBE_CORNERS[c1, 1]) * nz + CUBE_CORNERS[c1, 2]
    g2 = base + (CUBE_CORNERS[c2, 0] * ny + CUBE_CORNERS[c2, 1]) * nz + CUBE_CORNERS[c2, 2]
    g3 = base + (ny + 1) * nz + 1  # corner 7
    return g0, g1, g2, g3


@njit(cache=True, inline="always")
def _tet_case(flat, g0, g1, g2, g3):
    case = 0
    if flat[g0] > 0.0:
        case += 1
    if flat[g1] > 0.0:
        case += 2
    if flat[g2] > 0.0:
        case += 4
    if flat[g3] > 0.0:
        case += 8
    return case


@njit(parallel=True, cache=True)
def _mt_count(values):
    nx, ny, nz = values.shape
    flat = values.ravel()
    ncubes = (nx - 1) * (ny - 1) * (nz - 1)
    counts = np.zeros(ncubes, dtype=np.int64)
    for cube in prange(ncubes):
        i = cube // ((ny - 1) * (nz - 1))
        rem = cube % ((ny - 1) * (nz - 1))
        j = rem // (nz - 1)
        k = rem % (nz - 1)
        base = (i * ny + j) * nz + k
        n = 0
        for t in range(6):
            g0, g1, g2, g3 = _cube_tet_ids(base, ny, nz, t)
            n += TET_CASE_NTRI[_tet_case(flat, g0, g1, g2, g3)]
        counts[cube] = n
    return counts


@njit(parallel=True, cache=True)
def _mt_fill(values, offsets, out):
    nx, ny, nz = values.shape
    flat = values.ravel()
    ntot = nx * ny * nz
    ncubes = (nx - 1) * (ny - 1) * (nz - 1)
    for cube in prange(ncubes):
        i = cube // ((ny - 1) * (nz - 1))
        rem = cube % ((ny - 1) * (nz - 1))
        j = rem // (nz - 1)
        k = rem % (nz - 1)
        base = (i * ny + j) * nz + k
        at = offsets[cube]
        for t in range(6):
            g0, g1, g2, g3 = _cube_tet_ids(base, ny, nz, t)
            case = _tet_case(flat, g0, g1, g2, g3)
            for tr in range(TET_CASE_NTRI[case]):
                for v in range(3):
                    ea = TET_CASE_EDGES[case, tr, v, 0]
                    eb = TET_CASE_EDGES[case, tr, v, 1]
                    a = g0 if ea == 0 else (g1 if ea == 1 else (g2 if ea == 2 else g3))
                    b = g0 if eb == 0 else (g1 if eb == 1 else (g2 if eb == 2 else g3))
                    lo = min(a, b)
                    hi = max(a, b)
                    out[at, v] = lo * ntot + hi
                at += 1


def mt_triangles(values):
    counts = _mt_count(values)
    offsets = np.empty(counts.size, dtype=np.int64)
    np.cumsum(counts, out=offsets)
    total = int(offsets[-1]) if counts.size else 0
    offsets -= counts
    out = np.empty((total, 3), dtype=np.int64)
    if total:
        _mt_fill(values, offsets, out)
    return out


@njit(cache=True)
def cc_labels(n_nodes, edges_u, edges_v):
    """Min-index component labels by union-find (union onto smaller root)."""
    parent = np.arange(n_nodes, dtype=np.int64)
    for e in range(edges_u.size):
        a = edges_u[e]
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        b = edges_v[e]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a < b:
            parent[b] = a
        elif b < a:
            parent[a] = b
    out = np.empty(n_nodes, dtype=np.int64)
    for i in range(n_nodes):
        r = i
        while parent[r] != r:
            r = parent[r]
        c = i
        while parent[c] != r:
            nxt = parent[c]
            parent[c] = r
            c = nxt
        out[i] = r
    return out
