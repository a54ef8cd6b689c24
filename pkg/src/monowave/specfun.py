"""Special functions: Bessel J of real order, Gegenbauer polynomials, real
spherical harmonics on S^1 and S^2, zonal functions, and the closed-form
Fourier transform of a spherical harmonic.

No external special-function dependency: Bessel values come from the
ascending power series in its cancellation-free zone (x^2 <= 4(nu+1)) and
from a backward (Miller) recurrence elsewhere, normalized with the Neumann
expansion  (x/2)^nu = sum_k (nu+2k) Gamma(nu+k)/k! * J_{nu+2k}(x)
(DLMF 10.23.1).  Everything is vectorized over the argument.

Conventions (fixed, part of the public contract):

* Spherical harmonics are real, orthonormal in L^2 of the *unnormalized*
  surface measure (total mass 2*pi on S^1, 4*pi on S^2), with no
  Condon-Shortley phase.  On S^1 the basis is 1/sqrt(2*pi),
  cos(l*t)/sqrt(pi), sin(l*t)/sqrt(pi).  On S^2, index m in 1..2l+1 maps
  to the signed order mu = m - l - 1: mu < 0 are the sin(|mu|*phi)
  harmonics, mu = 0 the zonal one, mu > 0 the cos(mu*phi) ones.
* ft_sph_harm integrates against the unnormalized surface measure, which
  reproduces the (2*pi)^(n/2) constant exactly; dividing by
  sphere_volume(n-1) converts to the normalized (probability) measure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

_SERIES_MAX_TERMS = 300
_RESCALE_LIMIT = 1e250


def sphere_volume(dim_sphere: int) -> float:
    """Surface measure of the unit sphere S^dim in R^(dim+1)."""
    n = dim_sphere + 1
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)


def harmonic_space_dim(dim_sphere: int, ell: int) -> int:
    """dim of the degree-ell spherical-harmonic space on S^1 or S^2."""
    if dim_sphere == 1:
        return 1 if ell == 0 else 2
    if dim_sphere == 2:
        return 2 * ell + 1
    raise DomainError(f"unsupported sphere dimension {dim_sphere}")


@dataclass(frozen=True)
class HarmonicIndex:
    """Index (dim_sphere, ell, m) of one real spherical harmonic, m in 1..d_ell."""

    dim_sphere: int
    ell: int
    m: int

    def __post_init__(self):
        if self.dim_sphere not in (1, 2):
            raise DomainError(f"dim_sphere must be 1 or 2, got {self.dim_sphere}")
        if self.ell < 0:
            raise DomainError(f"ell must be >= 0, got {self.ell}")
        d = harmonic_space_dim(self.dim_sphere, self.ell)
        if not 1 <= self.m <= d:
            raise DomainError(f"m must be in 1..{d} for ell={self.ell}, got {self.m}")


# ---------------------------------------------------------------------------
# Bessel J
# ---------------------------------------------------------------------------


def _series_scaled(mu: float, x: np.ndarray) -> np.ndarray:
    """J_mu(x)/x^mu by ascending series with compensated summation.

    Entire in x; accurate to a few ulp when x^2 <= 4(mu+1) (terms never
    grow, so there is no cancellation amplification).
    """
    q = 0.25 * x * x
    t = np.full(x.shape, math.exp(-mu * math.log(2.0) - math.lgamma(mu + 1.0)))
    acc = t.copy()
    comp = np.zeros_like(acc)
    for k in range(1, _SERIES_MAX_TERMS):
        t = -t * q / (k * (mu + k))
        y = t - comp
        s = acc + y
        comp = (s - acc) - y
        acc = s
        if np.all(np.abs(t) <= 1e-18 * np.abs(acc)):
            break
    return acc


def _neumann_weights(nu0: float, kmax: int) -> np.ndarray:
    """Weights w_k = (nu0+2k) Gamma(nu0+k)/k! of the normalization sum."""
    w = np.empty(kmax + 1)
    if nu0 == 0.0:
        w[0] = 1.0
        w[1:] = 2.0
        return w
    w[0] = math.gamma(nu0 + 1.0)
    for k in range(1, kmax + 1):
        w[k] = w[k - 1] * (nu0 + 2 * k) * (nu0 + k - 1) / ((nu0 + 2 * k - 2) * k)
    return w


def _miller_ladder(nu0: float, imax: int, x: np.ndarray) -> np.ndarray:
    """J_{nu0+i}(x) for i = 0..imax via backward recurrence, x > 0.

    Start order sits far enough above max(imax, x) that the contamination
    of the recessive solution is below 1e-17 at every requested order.
    """
    xmax = float(np.max(x))
    top = int(max(imax + 20, 1.8 * xmax + 30.0))
    ladder = np.empty((imax + 1,) + x.shape)
    jp = np.zeros_like(x)        # J~ at order nu0 + i + 2
    jc = np.full(x.shape, 1e-30)  # J~ at order nu0 + i + 1
    ssum = np.zeros_like(x)
    w = _neumann_weights(nu0, top // 2 + 1)
    for i in range(top - 1, -1, -1):
        jn = (2.0 * (nu0 + i + 1) / x) * jc - jp
        jp = jc
        jc = jn
        if i <= imax:
            ladder[i] = jc
        if i % 2 == 0:
            ssum += w[i // 2] * jc
        big = np.abs(jc) > _RESCALE_LIMIT
        if big.any():
            sc = np.where(big, 1.0 / _RESCALE_LIMIT, 1.0)
            jc = jc * sc
            jp = jp * sc
            ssum = ssum * sc
            if i <= imax:
                ladder[i:] *= sc
    scale = np.power(0.5 * x, nu0) / ssum
    return ladder * scale


def bessel_j_ladder(nu0: float, count: int, x) -> np.ndarray:
    """J_{nu0+i}(x) for i = 0..count-1, vectorized over x; requires nu0 in [0, 1).

    Shape of the result is (count,) + shape(x).
    """
    if not 0.0 <= nu0 < 1.0:
        raise DomainError(f"ladder base order must be in [0,1), got {nu0}")
    x = np.asarray(x, dtype=np.float64)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    if np.any(x < 0):
        raise DomainError("bessel_j requires x >= 0")
    imax = count - 1
    out = np.empty((count,) + x.shape)

    series_mask = x * x <= 4.0 * (nu0 + 1.0)
    if series_mask.any():
        xs = x[series_mask]
        for i in range(count):
            mu = nu0 + i
            out[i][series_mask] = _series_scaled(mu, xs) * np.power(xs, mu)
    miller_mask = ~series_mask
    if miller_mask.any():
        out[:, miller_mask] = _miller_ladder(nu0, imax, x[miller_mask])
    return out[:, 0] if scalar else out


def bessel_j(nu: float, x) -> float | np.ndarray:
    """Bessel function of the first kind, real order nu >= 0, x >= 0."""
    if nu < 0:
        raise DomainError(f"order must be >= 0, got {nu}")
    i_req = int(math.floor(nu))
    nu0 = nu - i_req
    res = bessel_j_ladder(nu0, i_req + 1, x)[-1]
    return res if np.ndim(x) else float(res)


def bessel_j_scaled(nu: float, r) -> float | np.ndarray:
    """J_nu(r)/r^nu with the removable singularity filled: value at 0 is
    1/(2^nu Gamma(nu+1)).  Continuous, entire in r^2."""
    if nu < 0:
        raise DomainError(f"order must be >= 0, got {nu}")
    r = np.asarray(r, dtype=np.float64)
    scalar = r.ndim == 0
    r = np.atleast_1d(r)
    if np.any(r < 0):
        raise DomainError("bessel_j_scaled requires r >= 0")
    out = np.empty(r.shape)
    small = r * r <= 4.0 * (nu + 1.0)
    if small.any():
        out[small] = _series_scaled(nu, r[small])
    big = ~small
    if big.any():
        rb = r[big]
        out[big] = bessel_j(nu, rb) / np.power(rb, nu)
    res = out[0] if scalar else out
    return float(res) if scalar else res


def bessel_first_zero(nu: float) -> float:
    """First positive zero of J_nu, by bisection on the series/Miller value."""
    lo = max(1e-8, math.sqrt(nu))  # J_nu > 0 on (0, first zero)
    hi = nu + 3.0
    while bessel_j(nu, hi) > 0:
        hi += 1.0
    while bessel_j(nu, lo) <= 0:
        lo *= 0.5
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if bessel_j(nu, mid) > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-14 * hi:
            break
    return 0.5 * (lo + hi)


def radial_profile(ell: int, n: int, r) -> np.ndarray:
    """J_{ell+nu}(r)/r^nu with nu = (n-2)/2, the degree-ell radial factor.

    Vanishes like r^ell at the origin for ell >= 1; equals
    1/(2^nu Gamma(nu+1)) at r = 0 for ell = 0.
    """
    nu = 0.5 * (n - 2)
    r = np.asarray(r, dtype=np.float64)
    scalar = r.ndim == 0
    rr = np.atleast_1d(r)
    out = np.power(rr, ell) * np.atleast_1d(bessel_j_scaled(ell + nu, rr))
    res = out[0] if scalar else out
    return float(res) if scalar else res


def radial_profile_ladder(ell_max: int, n: int, r: np.ndarray) -> np.ndarray:
    """radial_profile for all degrees 0..ell_max at once; shape (ell_max+1, ...)."""
    nu = 0.5 * (n - 2)
    r = np.atleast_1d(np.asarray(r, dtype=np.float64))
    if np.any(r < 0):
        raise DomainError("radii must be >= 0")
    out = np.empty((ell_max + 1,) + r.shape)
    # per-order series where the lowest order is still cancellation-free
    small = r * r <= 4.0 * (nu + 1.0)
    if small.any():
        rs = r[small]
        for ell in range(ell_max + 1):
            out[ell][small] = np.power(rs, ell) * _series_scaled(ell + nu, rs)
    big = ~small
    if big.any():
        rb = r[big]
        out[:, big] = _miller_ladder(nu, ell_max, rb) / np.power(rb, nu)
    return out


# ---------------------------------------------------------------------------
# Gegenbauer / zonal
# ---------------------------------------------------------------------------


def gegenbauer(ell: int, nu: float, t) -> float | np.ndarray:
    """Gegenbauer polynomial C_ell^nu(t) for nu > 0, |t| <= 1.

    nu = 0 selects the S^1 limit convention: the Chebyshev polynomial
    T_ell(t) (the rescaled limit of C_ell^nu/C_ell^nu(1) as nu -> 0),
    which is what the zonal function on the circle needs.
    """
    if ell < 0:
        raise DomainError(f"degree must be >= 0, got {ell}")
    if nu < 0:
        raise DomainError(f"Gegenbauer parameter must be >= 0, got {nu}")
    t = np.asarray(t, dtype=np.float64)
    scalar = t.ndim == 0
    tt = np.atleast_1d(t)
    if np.any(np.abs(tt) > 1.0 + 1e-12):
        raise DomainError("Gegenbauer argument must lie in [-1, 1]")
    tt = np.clip(tt, -1.0, 1.0)
    if nu == 0.0:
        c_prev = np.ones_like(tt)
        c_cur = tt.copy()
        if ell == 0:
            res = c_prev
        elif ell == 1:
            res = c_cur
        else:
            for k in range(2, ell + 1):
                c_prev, c_cur = c_cur, 2.0 * tt * c_cur - c_prev
            res = c_cur
    else:
        c_prev = np.ones_like(tt)
        c_cur = 2.0 * nu * tt
        if ell == 0:
            res = c_prev
        elif ell == 1:
            res = c_cur
        else:
            for k in range(2, ell + 1):
                c_prev, c_cur = c_cur, (2.0 * (k + nu - 1) * tt * c_cur - (k + 2 * nu - 2) * c_prev) / k
            res = c_cur
    return float(res[0]) if scalar else res


def zonal(ell: int, n: int, t) -> float | np.ndarray:
    """Zonal function of degree ell on S^(n-1): C_ell^nu(t)/C_ell^nu(1), nu=(n-2)/2.

    Normalized so the value at t = 1 (coincident points) is exactly 1.
    On S^1 this is the Chebyshev polynomial, on S^2 the Legendre one.
    """
    if n < 2:
        raise DomainError(f"ambient dimension must be >= 2, got {n}")
    nu = 0.5 * (n - 2)
    num = gegenbauer(ell, nu, t)
    if nu == 0.0:
        return num  # T_ell(1) = 1 already
    norm = gegenbauer(ell, nu, 1.0)
    if norm == 0.0:
        raise DomainError(f"degenerate zonal normalization at ell={ell}, nu={nu}")
    return num / norm


# ---------------------------------------------------------------------------
# Real spherical harmonics
# ---------------------------------------------------------------------------


def _check_unit(points: np.ndarray, dim: int) -> np.ndarray:
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    if pts.shape[1] != dim:
        raise DomainError(f"points must have {dim} components, got {pts.shape[1]}")
    norms = np.linalg.norm(pts, axis=1)
    if np.any(np.abs(norms - 1.0) > 1e-12):
        raise DomainError("points must lie on the unit sphere (|x| = 1 within 1e-12)")
    return pts


def _legendre_norm_column(ell: int, m: int, ct: np.ndarray, st: np.ndarray) -> np.ndarray:
    """Fully normalized associated Legendre P~_ell^m, no Condon-Shortley
    phase; the assembled real harmonics (with sqrt(2) on the m > 0 columns)
    are then orthonormal on S^2 w.r.t. the surface measure."""
    p = np.full(ct.shape, 1.0 / math.sqrt(4.0 * math.pi))
    for k in range(1, m + 1):
        p = math.sqrt((2.0 * k + 1.0) / (2.0 * k)) * st * p
    if ell == m:
        return p
    p_prev = p
    p = math.sqrt(2.0 * m + 3.0) * ct * p_prev
    for k in range(m + 2, ell + 1):
        a = math.sqrt((4.0 * k * k - 1.0) / (k * k - m * m))
        b = math.sqrt(((k - 1.0) ** 2 - m * m) / (4.0 * (k - 1.0) ** 2 - 1.0))
        p, p_prev = a * (ct * p - b * p_prev), p
    return p


def sph_harm_basis(dim_sphere: int, ell: int, points) -> np.ndarray:
    """All d_ell real harmonics of degree ell at unit points; shape (P, d_ell).

    Column order follows the m = 1..d_ell index convention of
    :class:`HarmonicIndex`.
    """
    if dim_sphere == 1:
        pts = _check_unit(points, 2)
        theta = np.arctan2(pts[:, 1], pts[:, 0])
        if ell == 0:
            return np.full((pts.shape[0], 1), 1.0 / math.sqrt(2.0 * math.pi))
        return np.stack(
            [np.cos(ell * theta) / math.sqrt(math.pi),
             np.sin(ell * theta) / math.sqrt(math.pi)],
            axis=1,
        )
    if dim_sphere == 2:
        pts = _check_unit(points, 3)
        ct = np.clip(pts[:, 2], -1.0, 1.0)
        st = np.hypot(pts[:, 0], pts[:, 1])
        phi = np.arctan2(pts[:, 1], pts[:, 0])
        cols = np.empty((pts.shape[0], 2 * ell + 1))
        p0 = _legendre_norm_column(ell, 0, ct, st)
        cols[:, ell] = p0
        for m in range(1, ell + 1):
            pm = _legendre_norm_column(ell, m, ct, st)
            cols[:, ell + m] = math.sqrt(2.0) * pm * np.cos(m * phi)
            cols[:, ell - m] = math.sqrt(2.0) * pm * np.sin(m * phi)
        return cols
    raise DomainError(f"unsupported sphere dimension {dim_sphere}")


def real_sph_harm(idx: HarmonicIndex, point) -> float | np.ndarray:
    """One real spherical harmonic Y^ell_m at unit point(s)."""
    pts = np.asarray(point, dtype=np.float64)
    scalar = pts.ndim == 1
    basis = sph_harm_basis(idx.dim_sphere, idx.ell, pts)
    col = basis[:, idx.m - 1]
    return float(col[0]) if scalar else col


# ---------------------------------------------------------------------------
# Fourier transform of a spherical harmonic
# ---------------------------------------------------------------------------


def ft_sph_harm(idx: HarmonicIndex, x) -> complex | np.ndarray:
    """Fourier transform of Y^ell_m over the unnormalized surface measure:

        int_{S^(n-1)} Y^ell_m(xi) e^{-i<x, xi>} dsigma(xi)
            = (2*pi)^(n/2) * (-i)^ell * Y^ell_m(x/|x|) * J_{ell+nu}(|x|)/|x|^nu

    with dsigma the surface (not probability) measure and nu = (n-2)/2.
    The classical i^ell phase belongs to the e^{+i<x,xi>} kernel; with the
    e^{-i<x,xi>} kernel used throughout this package (and real Y), the
    phase conjugates.  At x = 0 only ell = 0 is nonzero.
    """
    n = idx.dim_sphere + 1
    xs = np.asarray(x, dtype=np.float64)
    scalar = xs.ndim == 1
    pts = np.atleast_2d(xs)
    if pts.shape[1] != n:
        raise DomainError(f"x must have {n} components, got {pts.shape[1]}")
    r = np.linalg.norm(pts, axis=1)
    out = np.empty(pts.shape[0], dtype=np.complex128)
    const = (2.0 * math.pi) ** (n / 2.0) * (-1j) ** idx.ell

    at0 = r < 1e-300
    if at0.any():
        if idx.ell == 0:
            y0 = 1.0 / math.sqrt(sphere_volume(n - 1))
            out[at0] = const * y0 * radial_profile(0, n, 0.0)
        else:
            out[at0] = 0.0
    rest = ~at0
    if rest.any():
        u = pts[rest] / r[rest, None]
        yv = sph_harm_basis(idx.dim_sphere, idx.ell, u)[:, idx.m - 1]
        out[rest] = const * yv * radial_profile(idx.ell, n, r[rest])
    return complex(out[0]) if scalar else out
