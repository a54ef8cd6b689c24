"""Case tables shared by both kernel backends.

2D cells: corners c0=(i,j), c1=(i+1,j), c2=(i+1,j+1), c3=(i,j+1); case bit k
set iff corner k is positive.  Cell edges: e0 bottom (c0-c1), e1 right
(c1-c2), e2 top (c3-c2), e3 left (c0-c3).  Saddle cases 5 and 10 are
resolved by the sign of the cell-center average (asymptotic decider) and
are therefore not in the static table.

3D cubes are split into six tetrahedra sharing the main diagonal c0-c7
(Kuhn/Freudenthal split, bit0=x, bit1=y, bit2=z of the corner index).  The
split is translation-invariant, so face diagonals agree between adjacent
cubes and the extracted surface is watertight away from the window
boundary.  Inside one tetrahedron the only sign patterns are 1-vs-3 (one
triangle) and 2-vs-2 (a quad, split deterministically), so no ambiguous
configurations exist.
"""

import numpy as np

# segments per marching-squares case, as (edge, edge) pairs; saddles excluded
MS_CASE_SEGMENTS = {
    1: [(3, 0)],
    2: [(0, 1)],
    3: [(3, 1)],
    4: [(1, 2)],
    6: [(0, 2)],
    7: [(3, 2)],
    8: [(2, 3)],
    9: [(0, 2)],
    11: [(1, 2)],
    12: [(1, 3)],
    13: [(0, 1)],
    14: [(3, 0)],
}
MS_SADDLE_CENTER_POS = {5: [(0, 1), (2, 3)], 10: [(3, 0), (1, 2)]}
MS_SADDLE_CENTER_NEG = {5: [(3, 0), (1, 2)], 10: [(0, 1), (2, 3)]}

# corner offsets (dx, dy, dz) for cube corner index c = x + 2y + 4z
CUBE_CORNERS = np.array(
    [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0),
     (0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)],
    dtype=np.int64,
)

# six tetrahedra of the Kuhn split, as cube-corner indices
CUBE_TETS = np.array(
    [(0, 1, 3, 7), (0, 1, 5, 7), (0, 2, 3, 7),
     (0, 2, 6, 7), (0, 4, 5, 7), (0, 4, 6, 7)],
    dtype=np.int64,
)


def _build_tet_tris():
    """Triangles per tet sign pattern; bit i of the case = vertex i positive.

    Each triangle is 3 crossing edges, each edge a (vertex, vertex) pair of
    local tet-vertex indices.  Winding is not meaningful here; orientation
    is assigned downstream from the field sign.
    """
    out = {}
    for case in range(1, 15):
        pos = [i for i in range(4) if case >> i & 1]
        neg = [i for i in range(4) if not case >> i & 1]
        if len(pos) == 1:
            i = pos[0]
            out[case] = [((i, neg[0]), (i, neg[1]), (i, neg[2]))]
        elif len(pos) == 3:
            i = neg[0]
            out[case] = [((i, pos[0]), (i, pos[1]), (i, pos[2]))]
        else:
            i, j = pos
            k, l = neg
            out[case] = [((i, k), (i, l), (j, l)), ((i, k), (j, l), (j, k))]
    return out


TET_TRIS = _build_tet_tris()

# flat array form consumed by the jit backend
TET_CASE_NTRI = np.zeros(16, dtype=np.int64)
TET_CASE_EDGES = np.full((16, 2, 3, 2), -1, dtype=np.int64)
for _case, _tris in TET_TRIS.items():
    TET_CASE_NTRI[_case] = len(_tris)
    for _t, _tri in enumerate(_tris):
        for _v, (_a, _b) in enumerate(_tri):
            TET_CASE_EDGES[_case, _t, _v, 0] = _a
            TET_CASE_EDGES[_case, _t, _v, 1] = _b
