"""Quadrature rules used by the verification suites.

S^1 uses the periodic trapezoid rule (spectrally accurate), S^2 a
Gauss-Legendre x trapezoid product grid.  Weights carry the unnormalized
surface measure: they sum to 2*pi and 4*pi respectively.
"""

from __future__ import annotations

import numpy as np


def gauss_legendre(a: float, b: float, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes/weights on [a, b]."""
    x, w = np.polynomial.legendre.leggauss(order)
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    return mid + half * x, half * w


def s1_quadrature(n_nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Equispaced nodes on the circle; points (n, 2), weights sum to 2*pi."""
    theta = 2.0 * np.pi * np.arange(n_nodes) / n_nodes
    pts = np.stack([np.cos(theta), np.sin(theta)], axis=1)
    w = np.full(n_nodes, 2.0 * np.pi / n_nodes)
    return pts, w


def s2_quadrature(n_theta: int = 64, n_phi: int = 160) -> tuple[np.ndarray, np.ndarray]:
    """Product Gauss-Legendre (in cos theta) x trapezoid (in phi) rule on S^2.

    Points (n_theta*n_phi, 3); weights sum to 4*pi.  Exact for harmonics of
    degree < n_theta and azimuthal order < n_phi/2.
    """
    ct, wt = np.polynomial.legendre.leggauss(n_theta)
    st = np.sqrt(1.0 - ct * ct)
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    wp = 2.0 * np.pi / n_phi
    pts = np.empty((n_theta * n_phi, 3))
    pts[:, 0] = np.outer(st, np.cos(phi)).ravel()
    pts[:, 1] = np.outer(st, np.sin(phi)).ravel()
    pts[:, 2] = np.repeat(ct, n_phi)
    w = np.repeat(wt * wp, n_phi)
    return pts, w


def sphere_quadrature(dim_sphere: int, min_nodes: int = 10000):
    """A rule on S^dim with at least min_nodes nodes."""
    if dim_sphere == 1:
        return s1_quadrature(max(min_nodes, 256))
    if dim_sphere == 2:
        n_theta = max(64, int(np.ceil(np.sqrt(min_nodes / 2.5))))
        n_phi = max(160, int(np.ceil(min_nodes / n_theta)))
        return s2_quadrature(n_theta, n_phi)
    raise ValueError(f"unsupported sphere dimension {dim_sphere}")
