"""Zero-set extraction and topology classification.

Pipeline: rasterize a field on a window -> extract the zero contour
(marching squares in 2D, per-tetrahedron contouring of the Kuhn-split grid
in 3D) -> split into connected components -> classify each closed
component (circle in 2D, closed surface with genus from the Euler
characteristic in 3D).

Determinism rules: grid values with |v| < 1e-14 are replaced by +1e-14
before extraction (exact zeros occur with probability zero but must not
crash the extractor); marching-squares saddles are resolved by the sign of
the cell-center average; the 3D tetrahedral split is fixed, making the
extracted surface watertight and edge-manifold away from the window
boundary by construction.  Components are returned sorted by their
canonical label (min vertex key), identically on both kernel backends.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import (
    BoundaryComponentError,
    DomainError,
    NonManifoldError,
    OpenMeshError,
    ResolutionError,
)

ZERO_JITTER = 1e-14
#: finest wavelength of a unit-band field is 2*pi; require >= 10 samples per it
MAX_FLAT_SPACING = 2.0 * np.pi / 10.0
DEFAULT_SPACING = 2.0 * np.pi / 16.0


@dataclass(frozen=True)
class TopologyType:
    """Diffeomorphism-type label of one closed nodal component."""

    tag: str  # "circle" | "closed_surface" | "unclassified"
    genus: int | None = None
    reason: str | None = None

    @staticmethod
    def circle() -> "TopologyType":
        return TopologyType("circle")

    @staticmethod
    def surface(genus: int) -> "TopologyType":
        return TopologyType("closed_surface", genus=genus)

    @staticmethod
    def unclassified(reason: str) -> "TopologyType":
        return TopologyType("unclassified", reason=reason)

    def label(self) -> str:
        if self.tag == "circle":
            return "circle"
        if self.tag == "closed_surface":
            return f"genus-{self.genus}"
        return f"unclassified({self.reason})"


@dataclass
class ScalarGrid:
    """Dense sampling of a field, flat window or lat/long chart of S^2.

    Flat grids: point(i, ...) = origin + index * spacing.  Sphere grids:
    axis 0 is phi in [0, 2*pi) (periodic), axis 1 is theta in (0, pi) with
    explicit row coordinates in ``axis_coords`` (the rows next to the
    poles sit at theta = eps, so only an eps-cap is unseen); the near-pole
    rows act as the "window boundary".
    """

    geometry: str  # "flat" | "sphere"
    origin: np.ndarray
    spacing: np.ndarray  # per-axis (nominal for non-uniform axes)
    values: np.ndarray
    axis_coords: tuple | None = None  # explicit per-axis coordinates

    @property
    def dim(self) -> int:
        return self.values.ndim

    @property
    def shape(self) -> tuple:
        return self.values.shape

    def axis_points(self, axis: int) -> np.ndarray:
        if self.axis_coords is not None:
            return self.axis_coords[axis]
        return self.origin[axis] + self.spacing[axis] * np.arange(self.shape[axis])

    def coords_from_index(self, axis: int, idx) -> np.ndarray:
        """Physical coordinate of a fractional grid index along an axis."""
        idx = np.asarray(idx, dtype=np.float64)
        if self.axis_coords is None:
            return self.origin[axis] + self.spacing[axis] * idx
        c = self.axis_coords[axis]
        xp = np.arange(c.size, dtype=np.float64)
        fp = c
        if self.geometry == "sphere" and axis == 0:
            # periodic axis: fractional indices may reach nx (wrap cell)
            xp = np.append(xp, c.size)
            fp = np.append(fp, c[0] + 2.0 * np.pi)
        return np.interp(idx, xp, fp)


@dataclass
class NodalComponent:
    """One connected piece of the extracted zero set."""

    dim: int
    geometry: str
    touches_boundary: bool
    closed: bool
    points: np.ndarray | None = None  # 2D polyline (closed: first == last)
    vertices: np.ndarray | None = None  # 3D mesh
    triangles: np.ndarray | None = None
    oriented: bool = True
    bounding_box: np.ndarray | None = None
    label: int = 0  # canonical extraction key, stable across backends

    @property
    def n_vertices(self) -> int:
        return len(self.points) if self.dim == 2 else len(self.vertices)


@dataclass
class CallableField:
    """Adapter giving plain functions the field interface."""

    dim: int
    fn: object

    def evaluate(self, points):
        return self.fn(np.atleast_2d(np.asarray(points, dtype=np.float64)))


def _apply_jitter(values: np.ndarray) -> np.ndarray:
    return np.where(np.abs(values) < ZERO_JITTER, ZERO_JITTER, values)


# ---------------------------------------------------------------------------
# Rasterization
# ---------------------------------------------------------------------------


def rasterize(field, window, spacing: float = DEFAULT_SPACING) -> ScalarGrid:
    """Dense evaluation of a flat-kind field on a rectangular window.

    window is ((lo, hi), ...) per axis.  Raises ResolutionError for
    degenerate windows or spacing coarser than 10 samples per wavelength.
    """
    window = [(float(lo), float(hi)) for lo, hi in window]
    dim = len(window)
    if dim != field.dim:
        raise DomainError(f"window has {dim} axes but the field lives in R^{field.dim}")
    if spacing <= 0:
        raise ResolutionError(f"spacing must be positive, got {spacing}")
    if spacing > MAX_FLAT_SPACING * (1 + 1e-9):
        raise ResolutionError(
            f"spacing {spacing:.4f} too coarse for a unit-band field "
            f"(need <= {MAX_FLAT_SPACING:.4f} for >= 10 samples per wavelength)"
        )
    counts = []
    axis_spacing = []
    for lo, hi in window:
        if not hi > lo:
            raise ResolutionError(f"degenerate window axis [{lo}, {hi}]")
        # cover the window exactly; the per-axis spacing shrinks to fit
        n = int(np.ceil((hi - lo) / spacing - 1e-9)) + 1
        if n < 2:
            raise ResolutionError(f"window axis [{lo}, {hi}] shorter than one spacing")
        counts.append(n)
        axis_spacing.append((hi - lo) / (n - 1))
    axes = [lo + h * np.arange(n) for (lo, _), h, n in zip(window, axis_spacing, counts)]
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=1)
    values = np.asarray(field.evaluate(pts), dtype=np.float64).reshape(counts)
    return ScalarGrid(
        geometry="flat",
        origin=np.array([lo for lo, _ in window]),
        spacing=np.array(axis_spacing),
        values=_apply_jitter(values),
    )


POLE_GAP = 1e-6


def rasterize_sphere(field, degree: int, oversample: int = 10) -> ScalarGrid:
    """Lat/long sampling of a field on S^2 resolving spherical degree `degree`.

    Spacing is the degree-ell wavelength 2*pi/(ell + 1/2) divided by
    `oversample`.  Theta rows are cell-centered plus two near-pole rows at
    theta = POLE_GAP and pi - POLE_GAP, so only an eps-cap around each
    pole is invisible; components reaching those rows are flagged as
    touching the (polar) boundary.
    """
    if oversample < 10:
        raise ResolutionError("need at least 10 samples per wavelength on the sphere")
    wavelength = 2.0 * np.pi / (degree + 0.5)
    spacing = wavelength / oversample
    n_phi = max(8, int(np.ceil(2.0 * np.pi / spacing)))
    dphi = 2.0 * np.pi / n_phi
    n_theta = max(4, int(np.ceil(np.pi / spacing)))
    dtheta = np.pi / n_theta
    phi = dphi * np.arange(n_phi)
    theta = np.concatenate(
        [[POLE_GAP], dtheta * (np.arange(n_theta) + 0.5), [np.pi - POLE_GAP]]
    )
    tt, pp = np.meshgrid(theta, phi, indexing="xy")  # shape (n_phi, n_theta+2)
    pts = np.stack(
        [np.sin(tt) * np.cos(pp), np.sin(tt) * np.sin(pp), np.cos(tt)], axis=-1
    ).reshape(-1, 3)
    values = np.asarray(field.evaluate(pts), dtype=np.float64).reshape(n_phi, theta.size)
    return ScalarGrid(
        geometry="sphere",
        origin=np.array([0.0, POLE_GAP]),
        spacing=np.array([dphi, dtheta]),
        values=_apply_jitter(values),
        axis_coords=(phi, theta),
    )


# ---------------------------------------------------------------------------
# 2D extraction
# ---------------------------------------------------------------------------


def _sphere_chart_to_xyz(phi, theta):
    st = np.sin(theta)
    return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)], axis=-1)


def extract_components_2d(grid: ScalarGrid) -> list[NodalComponent]:
    """Marching-squares contours stitched into ordered polylines."""
    if grid.dim != 2:
        raise DomainError(f"expected a 2D grid, got {grid.dim}D")
    values = grid.values
    nx, ny = values.shape
    periodic = grid.geometry == "sphere"
    segs = kernels.ms_segments(values, periodic_x=periodic)
    if segs.shape[0] == 0:
        return []

    edge_ids, inv = np.unique(segs, return_inverse=True)
    seg_v = inv.reshape(segs.shape)
    nv = edge_ids.size

    kind = edge_ids % 2  # 0: x-edge (axis 0), 1: y-edge (axis 1)
    cell = edge_ids // 2
    i = cell // ny
    j = cell % ny
    i2 = np.where(kind == 0, i + 1, i)
    if periodic:
        i2 = i2 % nx
    j2 = np.where(kind == 0, j, j + 1)
    v1 = values[i, j]
    v2 = values[i2, j2]
    t = v1 / (v1 - v2)
    px = i + np.where(kind == 0, t, 0.0)
    py = j + np.where(kind == 0, 0.0, t)
    if periodic:
        on_boundary = (kind == 0) & ((j == 0) | (j == ny - 1))
    else:
        on_boundary = np.where(kind == 0, (j == 0) | (j == ny - 1), (i == 0) | (i == nx - 1))

    labels = kernels.cc_labels(nv, seg_v[:, 0], seg_v[:, 1])

    # CSR adjacency over contour vertices (degree <= 2 everywhere)
    ends = np.concatenate([seg_v[:, 0], seg_v[:, 1]])
    other = np.concatenate([seg_v[:, 1], seg_v[:, 0]])
    order = np.argsort(ends, kind="stable")
    neighbors = other[order]
    degree = np.bincount(ends, minlength=nv)
    indptr = np.concatenate([[0], np.cumsum(degree)])

    def vert_neighbors(v):
        return neighbors[indptr[v]:indptr[v + 1]]

    comp_order = np.argsort(labels, kind="stable")
    comp_labels, comp_starts = np.unique(labels[comp_order], return_index=True)
    comp_starts = np.append(comp_starts, nv)

    components = []
    for c, lab in enumerate(comp_labels):
        members = comp_order[comp_starts[c]:comp_starts[c + 1]]
        deg1 = members[degree[members] == 1]
        if deg1.size == 0:
            start = members.min()
            closed = True
        else:
            start = deg1.min()
            closed = False
        path = [start]
        nbrs = vert_neighbors(start)
        prev = start
        cur = int(nbrs.min()) if closed else int(nbrs[0])
        while True:
            path.append(cur)
            if closed and cur == start:
                break
            nxt_opts = vert_neighbors(cur)
            nxt = -1
            for cand in nxt_opts:
                if cand != prev:
                    nxt = int(cand)
                    break
            if nxt < 0:  # open chain endpoint
                break
            prev, cur = cur, nxt
        path = np.asarray(path)
        cx = grid.coords_from_index(0, px[path])
        cy = grid.coords_from_index(1, py[path])
        if grid.geometry == "sphere":
            pts = _sphere_chart_to_xyz(np.mod(cx, 2.0 * np.pi), cy)
        else:
            pts = np.stack([cx, cy], axis=1)
        touches = bool(on_boundary[path].any()) or not closed
        components.append(
            NodalComponent(
                dim=2,
                geometry=grid.geometry,
                touches_boundary=touches,
                closed=closed,
                points=pts,
                bounding_box=np.stack([pts.min(axis=0), pts.max(axis=0)]),
                label=int(lab),
            )
        )
    return components


# ---------------------------------------------------------------------------
# 3D extraction
# ---------------------------------------------------------------------------


def extract_components_3d(grid: ScalarGrid) -> list[NodalComponent]:
    """Watertight zero-isosurface components of a 3D grid.

    Triangles are oriented so normals point from the negative side of the
    field to the positive side; on a closed component this orientation is
    globally consistent because it is inherited from the field sign.
    """
    if grid.dim != 3:
        raise DomainError(f"expected a 3D grid, got {grid.dim}D")
    values = grid.values
    nx, ny, nz = values.shape
    ntot = nx * ny * nz
    tris = kernels.mt_triangles(values)
    if tris.shape[0] == 0:
        return []

    keys, inv = np.unique(tris, return_inverse=True)
    tri_v = inv.reshape(tris.shape).astype(np.int64)
    nv = keys.size
    flat = values.ravel()

    a = keys // ntot
    b = keys % ntot
    va = flat[a]
    vb = flat[b]
    t = va / (va - vb)

    def decode(lin):
        ii = lin // (ny * nz)
        rem = lin % (ny * nz)
        return ii, rem // nz, rem % nz

    ia, ja, ka = decode(a)
    ib, jb, kb = decode(b)
    ca = np.stack([ia, ja, ka], axis=1).astype(np.float64)
    cb = np.stack([ib, jb, kb], axis=1).astype(np.float64)
    pos_idx = ca + t[:, None] * (cb - ca)
    verts = grid.origin[None, :] + grid.spacing[None, :] * pos_idx

    neg_is_a = va < 0
    pn = np.where(neg_is_a[:, None], ca, cb)  # negative-side endpoint
    pp = np.where(neg_is_a[:, None], cb, ca)  # positive-side endpoint

    on_boundary = np.zeros(nv, dtype=bool)
    for axis, (av, bv, hi) in enumerate(((ia, ib, nx), (ja, jb, ny), (ka, kb, nz))):
        on_boundary |= (av == 0) & (bv == 0)
        on_boundary |= (av == hi - 1) & (bv == hi - 1)

    # orient: normal . (pos centroid - neg centroid) > 0
    q0 = pos_idx[tri_v[:, 0]]
    q1 = pos_idx[tri_v[:, 1]]
    q2 = pos_idx[tri_v[:, 2]]
    normals = np.cross(q1 - q0, q2 - q0)
    drift = (
        pp[tri_v[:, 0]] + pp[tri_v[:, 1]] + pp[tri_v[:, 2]]
        - pn[tri_v[:, 0]] - pn[tri_v[:, 1]] - pn[tri_v[:, 2]]
    )
    side = np.einsum("ij,ij->i", normals, drift)
    flip = side < 0
    tri_v[flip] = tri_v[flip][:, [0, 2, 1]]
    orient_ok_tri = side != 0

    labels_v = kernels.cc_labels(
        nv,
        np.concatenate([tri_v[:, 0], tri_v[:, 1]]),
        np.concatenate([tri_v[:, 1], tri_v[:, 2]]),
    )
    tri_label = labels_v[tri_v[:, 0]]

    tri_order = np.argsort(tri_label, kind="stable")
    comp_labels, comp_starts = np.unique(tri_label[tri_order], return_index=True)
    comp_starts = np.append(comp_starts, tri_label.size)

    components = []
    for c, lab in enumerate(comp_labels):
        tsel = tri_order[comp_starts[c]:comp_starts[c + 1]]
        tv = tri_v[tsel]
        vids = np.unique(tv)
        local = np.searchsorted(vids, tv)

        und = np.concatenate([local[:, (0, 1)], local[:, (1, 2)], local[:, (2, 0)]])
        und = np.sort(und, axis=1)
        _, counts = np.unique(und[:, 0] * vids.size + und[:, 1], return_counts=True)
        if np.any(counts > 2):
            raise NonManifoldError(
                f"component {int(lab)}: {int((counts > 2).sum())} edges shared by >2 triangles"
            )
        open_edges = int((counts == 1).sum())
        touches = open_edges > 0 or bool(on_boundary[vids].any())
        closed = open_edges == 0
        oriented = bool(orient_ok_tri[tsel].all())
        if closed and oriented:
            # consistent orientation <=> no directed edge repeats
            dirg = np.concatenate([local[:, (0, 1)], local[:, (1, 2)], local[:, (2, 0)]])
            dkeys = dirg[:, 0] * vids.size + dirg[:, 1]
            oriented = np.unique(dkeys).size == dkeys.size
        vpts = verts[vids]
        components.append(
            NodalComponent(
                dim=3,
                geometry="flat",
                touches_boundary=touches,
                closed=closed,
                vertices=vpts,
                triangles=local,
                oriented=oriented,
                bounding_box=np.stack([vpts.min(axis=0), vpts.max(axis=0)]),
                label=int(lab),
            )
        )
    return components


def extract_components(grid: ScalarGrid) -> list[NodalComponent]:
    return extract_components_2d(grid) if grid.dim == 2 else extract_components_3d(grid)


# ---------------------------------------------------------------------------
# Topology
# ---------------------------------------------------------------------------


def euler_characteristic(vertices: np.ndarray, triangles: np.ndarray) -> int:
    """V - E + F for a closed edge-manifold triangle mesh.

    Raises OpenMeshError if any undirected edge is not in exactly two
    triangles.  Additive over disjoint unions.
    """
    triangles = np.asarray(triangles, dtype=np.int64)
    nv = len(vertices)
    und = np.concatenate([triangles[:, (0, 1)], triangles[:, (1, 2)], triangles[:, (2, 0)]])
    und = np.sort(und, axis=1)
    edges, counts = np.unique(und[:, 0] * nv + und[:, 1], return_counts=True)
    if np.any(counts != 2):
        raise OpenMeshError(
            f"mesh is not closed: {int((counts != 2).sum())} edges with triangle count != 2"
        )
    return int(nv - edges.size + len(triangles))


def classify(component: NodalComponent) -> TopologyType:
    """Topological type of a closed component.

    2D closed curves are circles.  3D closed surfaces get genus
    (2 - chi)/2; mesh defects surface as Unclassified, never silently.
    """
    if component.touches_boundary or not component.closed:
        raise BoundaryComponentError("cannot classify a boundary-touching component")
    if component.dim == 2:
        return TopologyType.circle()
    if not component.oriented:
        return TopologyType.unclassified("orientation")
    try:
        chi = euler_characteristic(component.vertices, component.triangles)
    except OpenMeshError as exc:
        return TopologyType.unclassified(f"open mesh: {exc}")
    if chi % 2 != 0:
        return TopologyType.unclassified(f"odd Euler characteristic {chi}")
    if chi > 2:
        return TopologyType.unclassified(f"Euler characteristic {chi} > 2")
    return TopologyType.surface((2 - chi) // 2)


def classify_all(components: list[NodalComponent]) -> tuple[list[TopologyType], int]:
    """Types of the closed interior components + count of boundary ones.

    Boundary-touching components are unclassifiable truncations; they are
    excluded from statistics but their count is reported so the exclusion
    bias stays visible.
    """
    types = []
    n_boundary = 0
    for comp in components:
        if comp.touches_boundary or not comp.closed:
            n_boundary += 1
        else:
            types.append(classify(comp))
    return types, n_boundary
