"""Hot-loop kernels with selectable backend.

Set ``MONOWAVE_BACKEND=numpy`` to force the pure-numpy fallback, or
``=numba`` to require the jit path (raises if numba is missing).  Unset,
numba is used when importable.  ``MONOWAVE_THREADS`` (or the CLI
``--threads`` flag via :func:`set_threads`) caps the jit thread pool.

Public kernels return identical arrays on both backends: extraction
outputs are canonicalized here (rows normalized and lexicographically
sorted) so everything downstream is backend-independent.
"""

from __future__ import annotations

import os
import warnings

import numpy as np

from . import _numpyimpl

_requested = os.environ.get("MONOWAVE_BACKEND", "").strip().lower()
if _requested not in ("", "numba", "numpy"):
    raise ValueError(f"MONOWAVE_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

_impl = _numpyimpl
_backend = "numpy"
if _requested in ("", "numba"):
    # the TBB probe warns on this image's older TBB; omp is present and quiet
    os.environ.setdefault("NUMBA_THREADING_LAYER", "omp")
    try:
        from . import _numbaimpl

        _impl = _numbaimpl
        _backend = "numba"
    except ImportError:
        if _requested == "numba":
            raise
        warnings.warn("numba unavailable; falling back to pure-numpy kernels")


def backend() -> str:
    """Name of the active kernel backend ('numba' or 'numpy')."""
    return _backend


def get_impl(name: str):
    """Implementation module for an explicit backend name (benchmarks)."""
    if name == "numpy":
        return _numpyimpl
    if name == "numba":
        from . import _numbaimpl

        return _numbaimpl
    raise ValueError(f"unknown backend {name!r}")


def set_threads(n: int) -> None:
    """Cap jit parallelism; no-op on the numpy backend."""
    if _backend == "numba":
        import numba

        numba.set_num_threads(max(1, int(n)))


if _backend == "numba" and os.environ.get("MONOWAVE_THREADS"):
    set_threads(int(os.environ["MONOWAVE_THREADS"]))


def plane_wave_eval(points, wavevecs, amp_cos, amp_sin):
    """Sum_j a_j cos<x, k_j> + b_j sin<x, k_j> at each point row."""
    points = np.ascontiguousarray(points, dtype=np.float64)
    wavevecs = np.ascontiguousarray(wavevecs, dtype=np.float64)
    amp_cos = np.ascontiguousarray(amp_cos, dtype=np.float64)
    amp_sin = np.ascontiguousarray(amp_sin, dtype=np.float64)
    return _impl.plane_wave_eval(points, wavevecs, amp_cos, amp_sin)


def _canonical_rows(arr):
    if arr.shape[0] == 0:
        return arr
    arr = np.sort(arr, axis=1)
    order = np.lexsort(tuple(arr[:, c] for c in range(arr.shape[1] - 1, -1, -1)))
    return arr[order]


def ms_segments(values, periodic_x=False):
    """Marching-squares zero-contour segments as sorted grid-edge id pairs."""
    values = np.ascontiguousarray(values, dtype=np.float64)
    return _canonical_rows(_impl.ms_segments(values, periodic_x))


def mt_triangles(values):
    """Marching-tetrahedra zero-isosurface triangles as sorted edge-key rows."""
    values = np.ascontiguousarray(values, dtype=np.float64)
    return _canonical_rows(_impl.mt_triangles(values))


def cc_labels(n_nodes, edges_u, edges_v):
    """Connected-component labels; label = min node index in the component."""
    edges_u = np.ascontiguousarray(edges_u, dtype=np.int64)
    edges_v = np.ascontiguousarray(edges_v, dtype=np.int64)
    return _impl.cc_labels(int(n_nodes), edges_u, edges_v)
