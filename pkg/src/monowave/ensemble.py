"""Gaussian random-wave ensembles and their covariance.

Three samplers, all seeded through counter-based streams (see
:mod:`monowave.rng`) so a (seed, trial) pair fully determines the draw:

* plane-wave band-limited fields: f(x) = sqrt(1/N) * sum_j a_j cos<x,k_j>
  + b_j sin<x,k_j>, wavevectors k_j = s_j * xi_j with |xi_j| = 1 and shell
  radius s_j = 1 for alpha = 1, else drawn with density ~ s^(n-1) on
  [alpha, 1];
* spherical-harmonic/Bessel fields truncated at max_degree L:
  f(x) = A_n * sum_{l<=L} sum_m b_{lm} Y^l_m(x/|x|) J_{l+nu}(|x|)/|x|^nu,
  with A_n = sqrt(vol(S^(n-1))) * 2^nu * Gamma(nu+1) chosen so that the
  field has unit variance and exactly the same covariance as the
  plane-wave sampler (Gegenbauer addition theorem);
* degree-l random spherical harmonics on S^2: f = sum_m c_m Y^l_m.

Everything is normalized to unit variance: Cov(x, y) depends only on
r = |x - y| and equals 2^nu Gamma(nu+1) J_nu(r)/r^nu for alpha = 1, i.e.
J_0(r) in the plane and sin(r)/r in space.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import kernels, specfun
from .directions import equidistributed_directions, iid_directions
from .errors import DomainError, InvalidSpecError
from .quadrature import gauss_legendre
from .rng import stream_rng

SAMPLE_SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# Field specifications
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlaneWaveSpec:
    """Band-limited plane-wave field on R^dim."""

    dim: int
    n_pairs: int
    alpha: float = 1.0
    directions: str = "equidistributed"
    seed: int = 0
    kind: str = field(default="plane_wave", init=False)

    def validate(self):
        if self.dim not in (2, 3):
            raise InvalidSpecError(f"dim must be 2 or 3, got {self.dim}")
        if self.n_pairs < 1:
            raise InvalidSpecError(f"n_pairs must be >= 1, got {self.n_pairs}")
        if not 0.0 <= self.alpha <= 1.0:
            raise InvalidSpecError(f"alpha must lie in [0, 1], got {self.alpha}")
        if self.directions not in ("equidistributed", "iid"):
            raise InvalidSpecError(f"unknown direction mode {self.directions!r}")


@dataclass(frozen=True)
class P1Spec:
    """Spherical-harmonic/Bessel monochromatic field on R^dim, degree <= max_degree."""

    dim: int
    max_degree: int
    seed: int = 0
    kind: str = field(default="p1", init=False)

    def validate(self):
        if self.dim not in (2, 3):
            raise InvalidSpecError(f"dim must be 2 or 3, got {self.dim}")
        if self.max_degree < 0:
            raise InvalidSpecError(f"max_degree must be >= 0, got {self.max_degree}")


@dataclass(frozen=True)
class SphereSpec:
    """Degree-ell random spherical harmonic on S^2."""

    degree: int
    seed: int = 0
    kind: str = field(default="sphere", init=False)
    dim: int = field(default=3, init=False)  # ambient

    def validate(self):
        if self.degree < 0:
            raise InvalidSpecError(f"degree must be >= 0, got {self.degree}")


FieldSpec = PlaneWaveSpec | P1Spec | SphereSpec


def spec_to_dict(spec: FieldSpec) -> dict:
    return asdict(spec)


def spec_from_dict(d: dict) -> FieldSpec:
    kind = d.get("kind")
    args = {k: v for k, v in d.items() if k != "kind"}
    if kind == "sphere":
        args.pop("dim", None)  # derived field, not an init argument
    try:
        if kind == "plane_wave":
            spec = PlaneWaveSpec(**args)
        elif kind == "p1":
            spec = P1Spec(**args)
        elif kind == "sphere":
            spec = SphereSpec(**args)
        else:
            raise InvalidSpecError(f"unknown field kind {kind!r}")
    except TypeError as exc:
        raise InvalidSpecError(f"bad field spec: {exc}") from None
    spec.validate()
    return spec


def p1_amplitude(n: int) -> float:
    """A_n = sqrt(vol(S^(n-1))) 2^nu Gamma(nu+1): unit-variance normalization."""
    nu = 0.5 * (n - 2)
    return math.sqrt(specfun.sphere_volume(n - 1)) * 2.0**nu * math.gamma(nu + 1.0)


def p1_degree_for_radius(radius: float) -> int:
    """Truncation degree making the Bessel tail < ~1e-8 on |x| <= radius.

    Uses the turning-point rule L = ceil(R + 10 R^(1/3)) + 5: orders above
    R + O(R^(1/3)) are exponentially damped at argument R.
    """
    r = max(radius, 1.0)
    return int(math.ceil(r + 10.0 * r ** (1.0 / 3.0))) + 5


# ---------------------------------------------------------------------------
# Samples
# ---------------------------------------------------------------------------


@dataclass
class WaveSample:
    """One realization: spec + coefficients + (for plane waves) wavevectors.

    Evaluation is a pure function of the stored arrays; the spec is kept
    for provenance and replay.
    """

    spec: FieldSpec | None
    trial: int
    coefficients: np.ndarray  # plane_wave: (2, N) rows a, b; p1/sphere: flat
    wavevecs: np.ndarray | None = None  # plane_wave only, (N, dim)
    kind: str = "plane_wave"
    dim: int = 2
    max_degree: int | None = None  # p1 only
    degree: int | None = None  # sphere only

    def evaluate(self, points) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
        if self.kind == "plane_wave":
            scale = 1.0 / math.sqrt(self.wavevecs.shape[0])
            return kernels.plane_wave_eval(
                pts, self.wavevecs,
                scale * self.coefficients[0], scale * self.coefficients[1],
            )
        if self.kind == "p1":
            return p1_evaluate(self.dim, self.max_degree, self.coefficients, pts)
        if self.kind == "sphere":
            basis = specfun.sph_harm_basis(2, self.degree, pts)
            return basis @ self.coefficients
        raise InvalidSpecError(f"unknown sample kind {self.kind!r}")

    def to_json_dict(self) -> dict:
        doc = {
            "schema_version": SAMPLE_SCHEMA_VERSION,
            "kind": self.kind,
            "dim": self.dim,
            "trial": self.trial,
            "spec": spec_to_dict(self.spec) if self.spec is not None else None,
            "coefficients": self.coefficients.tolist(),
        }
        if self.wavevecs is not None:
            doc["wavevecs"] = self.wavevecs.tolist()
        if self.max_degree is not None:
            doc["max_degree"] = self.max_degree
        if self.degree is not None:
            doc["degree"] = self.degree
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=1, sort_keys=True)


def sample_from_json_dict(doc: dict) -> WaveSample:
    if doc.get("schema_version") != SAMPLE_SCHEMA_VERSION:
        raise InvalidSpecError(f"unsupported sample schema {doc.get('schema_version')!r}")
    spec = spec_from_dict(doc["spec"]) if doc.get("spec") else None
    return WaveSample(
        spec=spec,
        trial=int(doc.get("trial", 0)),
        coefficients=np.asarray(doc["coefficients"], dtype=np.float64),
        wavevecs=np.asarray(doc["wavevecs"], dtype=np.float64) if "wavevecs" in doc else None,
        kind=doc["kind"],
        dim=int(doc["dim"]),
        max_degree=doc.get("max_degree"),
        degree=doc.get("degree"),
    )


def sample(spec: FieldSpec, trial: int = 0) -> WaveSample:
    """Draw one realization; (spec.seed, trial) determines it completely."""
    spec.validate()
    rng = stream_rng(spec.seed, trial)
    if spec.kind == "plane_wave":
        coeffs = rng.standard_normal((2, spec.n_pairs))
        if spec.directions == "equidistributed":
            dirs = equidistributed_directions(spec.dim, spec.n_pairs)
        else:
            dirs = iid_directions(spec.dim, spec.n_pairs, rng)
        if spec.alpha < 1.0:
            u = rng.random(spec.n_pairs)
            radii = (spec.alpha**spec.dim + u * (1.0 - spec.alpha**spec.dim)) ** (1.0 / spec.dim)
        else:
            radii = np.ones(spec.n_pairs)
        return WaveSample(
            spec=spec, trial=trial, coefficients=coeffs,
            wavevecs=dirs * radii[:, None], kind="plane_wave", dim=spec.dim,
        )
    if spec.kind == "p1":
        total = sum(
            specfun.harmonic_space_dim(spec.dim - 1, ell)
            for ell in range(spec.max_degree + 1)
        )
        coeffs = rng.standard_normal(total)
        return WaveSample(
            spec=spec, trial=trial, coefficients=coeffs,
            kind="p1", dim=spec.dim, max_degree=spec.max_degree,
        )
    if spec.kind == "sphere":
        coeffs = rng.standard_normal(2 * spec.degree + 1)
        return WaveSample(
            spec=spec, trial=trial, coefficients=coeffs,
            kind="sphere", dim=3, degree=spec.degree,
        )
    raise InvalidSpecError(f"unknown field kind {spec.kind!r}")


def evaluate(sample: WaveSample, points) -> np.ndarray:
    """Field values at points (P, dim); flat kinds take R^dim, sphere unit vectors."""
    return sample.evaluate(points)


def p1_evaluate(dim: int, max_degree: int, coeffs: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """Evaluate A_n * sum b_lm Y^l_m(x/|x|) J_{l+nu}(|x|)/|x|^nu at pts."""
    r = np.linalg.norm(pts, axis=1)
    safe = np.where(r > 0, r, 1.0)
    u = pts / safe[:, None]
    u[r == 0] = 0.0
    u[r == 0, 0] = 1.0  # degree >= 1 profiles vanish at r = 0, direction moot
    profiles = specfun.radial_profile_ladder(max_degree, dim, r)
    out = np.zeros(pts.shape[0])
    at = 0
    for ell in range(max_degree + 1):
        d = specfun.harmonic_space_dim(dim - 1, ell)
        basis = specfun.sph_harm_basis(dim - 1, ell, u)
        out += (basis @ coeffs[at:at + d]) * profiles[ell]
        at += d
    return p1_amplitude(dim) * out


# ---------------------------------------------------------------------------
# Covariance
# ---------------------------------------------------------------------------


def unit_covariance(n: int, r) -> np.ndarray | float:
    """Monochromatic covariance 2^nu Gamma(nu+1) J_nu(r)/r^nu; equals 1 at r=0.

    J_0(r) for n = 2 and sin(r)/r for n = 3.
    """
    nu = 0.5 * (n - 2)
    return (2.0**nu) * math.gamma(nu + 1.0) * specfun.bessel_j_scaled(nu, r)


def covariance_exact(n: int, r, alpha: float = 1.0) -> np.ndarray | float:
    """Unit-variance covariance of the band [alpha, 1] at distance r.

    For alpha < 1 this is the radial average of the monochromatic kernel,
    int_alpha^1 s^(n-1) C_1(s r) ds / int_alpha^1 s^(n-1) ds, evaluated by
    Gauss-Legendre quadrature with order doubling to 1e-12.
    """
    if np.any(np.asarray(r) < 0):
        raise DomainError("distance must be >= 0")
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha}")
    if alpha == 1.0:
        return unit_covariance(n, r)
    rr = np.atleast_1d(np.asarray(r, dtype=np.float64))
    norm = (1.0 - alpha**n) / n
    prev = None
    for order in (32, 64, 128, 256):
        s, w = gauss_legendre(alpha, 1.0, order)
        vals = (w * s ** (n - 1)) @ unit_covariance(n, np.outer(s, rr)) / norm
        if prev is not None and np.max(np.abs(vals - prev)) < 1e-12:
            break
        prev = vals
    return float(vals[0]) if np.ndim(r) == 0 else vals


def covariance_empirical(
    spec: FieldSpec,
    r_values,
    trials: int,
    base_point=None,
    axis: int = 0,
) -> list[tuple[float, float, float]]:
    """Monte Carlo estimate of E[f(x0) f(x0 + r e_axis)] with standard errors.

    Returns [(r, mean, stderr), ...]; trial i draws from stream (seed, i).
    """
    if trials < 2:
        raise InvalidSpecError(f"need at least 2 trials, got {trials}")
    r_values = np.asarray(r_values, dtype=np.float64)
    x0 = np.zeros(spec.dim) if base_point is None else np.asarray(base_point, dtype=np.float64)
    pts = np.concatenate([x0[None, :], x0[None, :] + np.eye(spec.dim)[axis] * r_values[:, None]])
    prods = np.empty((trials, r_values.size))
    for t in range(trials):
        vals = sample(spec, trial=t).evaluate(pts)
        prods[t] = vals[0] * vals[1:]
    mean = prods.mean(axis=0)
    stderr = prods.std(axis=0, ddof=1) / math.sqrt(trials)
    return [(float(r), float(m), float(s)) for r, m, s in zip(r_values, mean, stderr)]
