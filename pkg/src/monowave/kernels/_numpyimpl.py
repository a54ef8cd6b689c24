"""Pure-numpy fallback kernels.

Vectorized reference implementations of the hot loops.  Semantics must
match ``_numbaimpl`` exactly: the dispatch layer canonicalizes output
ordering, after which the two backends agree element-for-element.
"""

from __future__ import annotations

import numpy as np

from ._tables import (
    CUBE_CORNERS,
    CUBE_TETS,
    MS_CASE_SEGMENTS,
    MS_SADDLE_CENTER_NEG,
    MS_SADDLE_CENTER_POS,
    TET_TRIS,
)

_CHUNK = 1 << 16


def plane_wave_eval(points, wavevecs, amp_cos, amp_sin):
    out = np.empty(points.shape[0])
    for lo in range(0, points.shape[0], _CHUNK):
        hi = min(lo + _CHUNK, points.shape[0])
        phase = points[lo:hi] @ wavevecs.T
        out[lo:hi] = np.cos(phase) @ amp_cos + np.sin(phase) @ amp_sin
    return out


def _cell_edge_ids(nx, ny, periodic_x):
    ncx = nx if periodic_x else nx - 1
    i = np.arange(ncx)[:, None]
    ip1 = (i + 1) % nx if periodic_x else i + 1
    j = np.arange(ny - 1)[None, :]
    e0 = 2 * (i * ny + j)
    e1 = 2 * (ip1 * ny + j) + 1
    e2 = 2 * (i * ny + (j + 1))
    e3 = 2 * (i * ny + j) + 1
    return e0, e1, e2, e3


def ms_segments(values, periodic_x=False):
    """Zero-contour segments of a 2D grid, as pairs of grid-edge ids.

    Edge ids: x-edge from (i,j) to (i+1,j) -> 2*(i*ny+j); y-edge from
    (i,j) to (i,j+1) -> 2*(i*ny+j)+1.  Values must be free of exact zeros.
    """
    nx, ny = values.shape
    if periodic_x:
        vA = values[:, :-1]
        vB = np.roll(values, -1, axis=0)[:, :-1]
        vC = np.roll(values, -1, axis=0)[:, 1:]
        vD = values[:, 1:]
    else:
        vA = values[:-1, :-1]
        vB = values[1:, :-1]
        vC = values[1:, 1:]
        vD = values[:-1, 1:]
    case = (
        (vA > 0).astype(np.int8)
        + 2 * (vB > 0).astype(np.int8)
        + 4 * (vC > 0).astype(np.int8)
        + 8 * (vD > 0).astype(np.int8)
    )
    e = _cell_edge_ids(nx, ny, periodic_x)
    e = [np.broadcast_to(a, case.shape) for a in e]

    seg_a, seg_b = [], []

    def emit(mask, pairs):
        for ea, eb in pairs:
            seg_a.append(e[ea][mask])
            seg_b.append(e[eb][mask])

    for c, pairs in MS_CASE_SEGMENTS.items():
        emit(case == c, pairs)
    center = 0.25 * (vA + vB + vC + vD)
    for c in (5, 10):
        emit((case == c) & (center > 0), MS_SADDLE_CENTER_POS[c])
        emit((case == c) & (center <= 0), MS_SADDLE_CENTER_NEG[c])

    if not seg_a:
        return np.empty((0, 2), dtype=np.int64)
    return np.stack([np.concatenate(seg_a), np.concatenate(seg_b)], axis=1)


def mt_triangles(values):
    """Zero-isosurface triangles of a 3D grid, as triples of edge keys.

    An edge key is lo * ntot + hi for the two grid-vertex linear indices
    (lo < hi) it interpolates between.  Processed in x-slabs to bound the
    transient memory of the vectorized gather.
    """
    nx, ny, nz = values.shape
    ntot = nx * ny * nz
    flat = values.ravel()
    pos = flat > 0

    tris = []
    slab = max(1, (1 << 22) // max(1, (ny * nz)))
    jj, kk = np.meshgrid(np.arange(ny - 1), np.arange(nz - 1), indexing="ij")
    for i0 in range(0, nx - 1, slab):
        i1 = min(i0 + slab, nx - 1)
        ii = np.arange(i0, i1)[:, None, None]
        base = (ii * ny + jj[None]) * nz + kk[None]  # (si, ny-1, nz-1)
        base = base.ravel()
        corner_ids = np.empty((base.size, 8), dtype=np.int64)
        for c in range(8):
            dx, dy, dz = CUBE_CORNERS[c]
            corner_ids[:, c] = base + (dx * ny + dy) * nz + dz
        corner_pos = pos[corner_ids]
        for t in range(6):
            tet = CUBE_TETS[t]
            g = corner_ids[:, tet]  # (m, 4)
            p = corner_pos[:, tet]
            case = (
                p[:, 0].astype(np.int64)
                + 2 * p[:, 1]
                + 4 * p[:, 2]
                + 8 * p[:, 3]
            )
            live = (case > 0) & (case < 15)
            if not live.any():
                continue
            g = g[live]
            case = case[live]
            for c in range(1, 15):
                m = case == c
                if not m.any():
                    continue
                gc = g[m]
                for tri in TET_TRIS[c]:
                    keys = np.empty((gc.shape[0], 3), dtype=np.int64)
                    for v, (a, b) in enumerate(tri):
                        u = gc[:, a]
                        w = gc[:, b]
                        lo = np.minimum(u, w)
                        hi = np.maximum(u, w)
                        keys[:, v] = lo * ntot + hi
                    tris.append(keys)
    if not tris:
        return np.empty((0, 3), dtype=np.int64)
    return np.concatenate(tris, axis=0)


def cc_labels(n_nodes, edges_u, edges_v):
    """Min-index connected-component labels via label propagation.

    Each node ends with the smallest node index reachable from it, which
    is exactly what the union-find backend produces.
    """
    labels = np.arange(n_nodes, dtype=np.int64)
    if edges_u.size == 0:
        return labels
    while True:
        before = labels.copy()
        m = np.minimum(labels[edges_u], labels[edges_v])
        np.minimum.at(labels, edges_u, m)
        np.minimum.at(labels, edges_v, m)
        # pointer jumping: adopt the label of your current label
        while True:
            jumped = labels[labels]
            if np.array_equal(jumped, labels):
                break
            labels = np.minimum(labels, jumped)
        if np.array_equal(before, labels):
            return labels
