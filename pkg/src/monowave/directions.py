"""Antipodally symmetric direction sets on S^1 and S^2.

A "set of N pairs" is returned as the N representatives xi_1..xi_N; the
full symmetric set is {+-xi_j}.  The circle uses every other 2N-th root of
unity (so representatives plus antipodes tile all 2N roots); the sphere
uses a Fibonacci lattice, whose union with its antipodes equidistributes.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

_GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0


def equidistributed_directions(n: int, n_pairs: int) -> np.ndarray:
    """N antipodal-pair representatives on S^(n-1), shape (N, n)."""
    if n_pairs < 1:
        raise DomainError(f"need at least one direction pair, got {n_pairs}")
    if n == 2:
        theta = math.pi * np.arange(n_pairs) / n_pairs
        return np.stack([np.cos(theta), np.sin(theta)], axis=1)
    if n == 3:
        k = np.arange(n_pairs)
        z = 1.0 - (2.0 * k + 1.0) / n_pairs  # midpoint rule in z
        phi = 2.0 * math.pi * k / _GOLDEN
        s = np.sqrt(np.maximum(0.0, 1.0 - z * z))
        return np.stack([s * np.cos(phi), s * np.sin(phi), z], axis=1)
    raise DomainError(f"unsupported dimension {n}")


def iid_directions(n: int, n_pairs: int, rng: np.random.Generator) -> np.ndarray:
    """N i.i.d. uniform pair representatives on S^(n-1)."""
    if n_pairs < 1:
        raise DomainError(f"need at least one direction pair, got {n_pairs}")
    v = rng.standard_normal((n_pairs, n))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def cap_fraction_error(pairs: np.ndarray, caps: int, rng: np.random.Generator) -> float:
    """Worst relative cap-count error of the symmetrized set over random caps.

    Caps are drawn with uniform center and cap height in [0.2, 0.8] so the
    expected fraction is bounded away from 0.
    """
    full = np.concatenate([pairs, -pairs], axis=0)
    n = full.shape[1]
    worst = 0.0
    for _ in range(caps):
        c = rng.standard_normal(n)
        c /= np.linalg.norm(c)
        h = rng.uniform(0.2, 0.8)
        # cap {x : <x, c> > 1 - 2h} has normalized measure h on S^2 and
        # arccos(1-2h)/pi on S^1
        t = 1.0 - 2.0 * h
        frac = float(np.mean(full @ c > t))
        expected = h if n == 3 else math.acos(t) / math.pi
        worst = max(worst, abs(frac - expected) / expected)
    return worst
