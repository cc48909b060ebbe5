"""Grid-based numerical checks of the analytic statements about the family.

None of these checks is a proof.  Each samples a functional on a finite set of
points and compares the extremal sample against a threshold; the resulting
:class:`VerificationReport` records what was sampled and what was found.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import PoleProximityError
from .membership import (
    _base,
    coefficient_sum,
    distortion_lower,
    distortion_upper,
    has_sign_pattern,
    weight_vectors,
)
from .operators import FamilyParams, transformed_series
from .series import (
    HarmonicFunction,
    eval_analytic,
    eval_derivative,
    eval_harmonic,
    jacobian,
)

POLE_THRESHOLD = 1e-14
ANALYTIC_TOLERANCE = 1e-6
INCONCLUSIVE_FRACTION = 0.01
INJECTIVITY_RATIO = 1e-9
MAX_INJECTIVITY_POINTS = 10_000
DEFAULT_DISTORTION_RADII = tuple(round(0.1 + 0.05 * i, 2) for i in range(18))


@dataclass(frozen=True)
class GridSpec:
    """Polar grid: geometric radii in ``[r_min, r_max]`` times equispaced angles."""

    r_min: float = 0.05
    r_max: float = 0.98
    radial_count: int = 24
    angular_count: int = 72

    def __post_init__(self):
        if not (0.0 < self.r_min <= self.r_max < 1.0):
            raise ValueError("grid radii must satisfy 0 < r_min <= r_max < 1")
        if self.radial_count < 1 or self.angular_count < 4:
            raise ValueError("need radial_count >= 1 and angular_count >= 4")

    @property
    def size(self) -> int:
        return self.radial_count * self.angular_count

    def radii(self) -> np.ndarray:
        if self.radial_count == 1:
            return np.array([self.r_min])
        return np.geomspace(self.r_min, self.r_max, self.radial_count)

    def angles(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.angular_count) / self.angular_count

    def mesh(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Flattened ``(r, theta, z)`` arrays, radius-major."""
        r, t = np.meshgrid(self.radii(), self.angles(), indexing="ij")
        r, t = r.ravel(), t.ravel()
        return r, t, r * np.exp(1j * t)


@dataclass(frozen=True)
class VerificationReport:
    """Extremes of a sampled functional and the verdict against a threshold.

    For residual-type checks (``laplace``) the functional is a residual that
    must stay below ``threshold`` and ``argmin_point`` holds the worst sample;
    for all others the functional must stay above ``threshold - tolerance``.
    """

    name: str
    functional_min: float
    functional_max: float
    argmin_point: complex
    threshold: float
    passed: bool
    samples: int
    tolerance: float = 0.0
    excluded: int = 0
    inconclusive: bool = False
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        """JSON-ready mapping; non-finite values (e.g. from an all-excluded grid) become ``None``."""
        return {
            "name": self.name,
            "pass": self.passed,
            "inconclusive": self.inconclusive,
            "functional_min": _finite_or_none(self.functional_min),
            "functional_max": _finite_or_none(self.functional_max),
            "argmin_point": [
                _finite_or_none(self.argmin_point.real),
                _finite_or_none(self.argmin_point.imag),
            ],
            "threshold": self.threshold,
            "tolerance": self.tolerance,
            "samples": self.samples,
            "excluded": self.excluded,
            "details": self.details,
        }


def _finite_or_none(x):
    x = float(x)
    return x if math.isfinite(x) else None


# -- the starlikeness functional ----------------------------------------------


def _functional_parts(F: HarmonicFunction, z: np.ndarray):
    num = z * eval_derivative(F.h, z) - np.conj(z * eval_derivative(F.g, z))
    den = eval_analytic(F.h, z) + np.conj(eval_analytic(F.g, z))
    return num, den


def starlike_functional(f: HarmonicFunction, params: FamilyParams, z: complex) -> float:
    """``Re[(z F_z - conj(z) F_conj(z)) / F]`` for the transformed series ``F``."""
    z = complex(z)
    if not (0.0 < abs(z) < 1.0):
        raise ValueError("z must satisfy 0 < |z| < 1")
    F = transformed_series(f, params)
    num, den = _functional_parts(F, np.asarray(z))
    num, den = complex(num), complex(den)
    if abs(den) < POLE_THRESHOLD:
        raise PoleProximityError(z, den)
    return (num / den).real


def functional_samples(f: HarmonicFunction, params: FamilyParams, grid: GridSpec):
    """``(r, theta, value, near_pole)`` arrays of the functional on ``grid``."""
    F = transformed_series(f, params)
    r, t, z = grid.mesh()
    num, den = _functional_parts(F, z)
    near_pole = np.abs(den) < POLE_THRESHOLD
    safe = np.where(near_pole, 1.0, den)
    value = np.where(near_pole, np.nan, (num / safe).real)
    return r, t, value, near_pole


def samples_csv(f: HarmonicFunction, params: FamilyParams, grid: GridSpec) -> str:
    r, t, value, _ = functional_samples(f, params, grid)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["r", "theta", "value"])
    for row in zip(r, t, value):
        w.writerow([repr(float(x)) for x in row])
    return buf.getvalue()


def verify_analytic_condition(
    f: HarmonicFunction,
    params: FamilyParams,
    grid: GridSpec | None = None,
    tol: float = ANALYTIC_TOLERANCE,
) -> VerificationReport:
    grid = grid or GridSpec()
    r, t, value, near_pole = functional_samples(f, params, grid)
    excluded = int(near_pole.sum())
    inconclusive = excluded > INCONCLUSIVE_FRACTION * value.size
    good = ~near_pole
    if not good.any():
        return VerificationReport(
            "analytic_condition", math.nan, math.nan, 0j, params.gamma, False,
            int(value.size), tol, excluded, True,
        )
    idx = np.flatnonzero(good)
    vals = value[idx]
    i_min = idx[int(np.argmin(vals))]
    vmin = float(value[i_min])
    return VerificationReport(
        name="analytic_condition",
        functional_min=vmin,
        functional_max=float(vals.max()),
        argmin_point=complex(r[i_min] * np.exp(1j * t[i_min])),
        threshold=params.gamma,
        passed=(not inconclusive) and vmin >= params.gamma - tol,
        samples=int(value.size),
        tolerance=tol,
        excluded=excluded,
        inconclusive=inconclusive,
    )


def radial_quotient(f: HarmonicFunction, params: FamilyParams, r: float) -> float:
    """Necessity quotient along the positive real axis for a sign-pattern ``f``.

    Uses the binomial factor in numerator and denominator, and starts the
    co-analytic numerator sum at n = 1.  For the alternating sign pattern this
    equals ``starlike_functional(f, params, r) - gamma``.
    """
    if not (0.0 <= r < 1.0):
        raise ValueError(f"r must lie in [0, 1), got {r}")
    size = f.truncation
    g = params.gamma
    n = np.arange(1, size + 1)
    base = np.array([float(_base(j, params.k, params.lam)) for j in n])
    a = f.h.magnitudes().copy()
    a[0] = 0.0
    b = f.g.magnitudes()
    pw = float(r) ** (n - 1)
    num = (1.0 - g) - np.sum((n - g) * base * a * pw) - np.sum((n + g) * base * b * pw)
    den = 1.0 - np.sum(base * a * pw) + np.sum(base * b * pw)
    if abs(den) < POLE_THRESHOLD:
        raise ZeroDivisionError(f"radial quotient denominator vanishes at r = {r}")
    return float(num / den)


def radial_necessity_probe(f: HarmonicFunction, params: FamilyParams, r_list) -> float:
    """Minimum of :func:`radial_quotient` over ``r_list``."""
    if not has_sign_pattern(f, convention="literal"):
        raise ValueError("radial probe requires the alternating sign pattern")
    return min(radial_quotient(f, params, r) for r in r_list)


def verify_sense_preserving(f: HarmonicFunction, grid: GridSpec | None = None) -> VerificationReport:
    grid = grid or GridSpec()
    _, _, z = grid.mesh()
    J = jacobian(f, z)
    i = int(np.argmin(J))
    return VerificationReport(
        name="sense_preserving",
        functional_min=float(J[i]),
        functional_max=float(J.max()),
        argmin_point=complex(z[i]),
        threshold=0.0,
        passed=bool(J[i] > 0.0),
        samples=int(J.size),
    )


def _orient(p, q, r):
    return np.sign((q.real - p.real) * (r.imag - p.imag) - (q.imag - p.imag) * (r.real - p.real))


def count_self_crossings(curve: np.ndarray) -> int:
    """Proper crossings between non-adjacent edges of a closed polyline."""
    p = curve
    q = np.roll(curve, -1)
    m = len(p)
    i, j = np.triu_indices(m, k=2)
    keep = ~((i == 0) & (j == m - 1))
    i, j = i[keep], j[keep]
    d1 = _orient(p[i], q[i], p[j])
    d2 = _orient(p[i], q[i], q[j])
    d3 = _orient(p[j], q[j], p[i])
    d4 = _orient(p[j], q[j], q[i])
    return int(np.count_nonzero((d1 * d2 < 0) & (d3 * d4 < 0)))


def verify_injectivity(
    f: HarmonicFunction,
    grid: GridSpec | None = None,
    ratio: float = INJECTIVITY_RATIO,
    max_points: int = MAX_INJECTIVITY_POINTS,
) -> VerificationReport:
    """Pairwise distinctness of ``f`` on the grid plus simplicity of circle images.

    The pairwise test requires ``|f(z_i) - f(z_j)| > ratio * |z_i - z_j|`` for
    every pair.  Folds rarely bring two grid points together exactly, so the
    image of every grid circle is also checked for self-crossings.
    """
    grid = grid or GridSpec(radial_count=40, angular_count=40)
    if grid.size > max_points:
        raise ValueError(f"grid has {grid.size} points; injectivity check limited to {max_points}")
    _, _, z = grid.mesh()
    w = eval_harmonic(f, z)
    best = math.inf
    best_i = 0
    chunk = 512
    for start in range(0, z.size, chunk):
        zi = z[start : start + chunk, None]
        wi = w[start : start + chunk, None]
        dz = np.abs(zi - z[None, :])
        dw = np.abs(wi - w[None, :])
        with np.errstate(divide="ignore", invalid="ignore"):
            q = np.where(dz > 0, dw / np.where(dz > 0, dz, 1.0), np.inf)
        k = int(np.argmin(q))
        if q.flat[k] < best:
            best = float(q.flat[k])
            best_i = start + k // z.size
    m = grid.angular_count
    crossings = [count_self_crossings(w[i * m : (i + 1) * m]) for i in range(grid.radial_count)]
    total_crossings = int(sum(crossings))
    details = {"self_crossings": total_crossings}
    if total_crossings:
        details["first_crossing_radius"] = float(grid.radii()[next(i for i, c in enumerate(crossings) if c)])
    return VerificationReport(
        name="injectivity",
        functional_min=best,
        functional_max=best,
        argmin_point=complex(z[best_i]),
        threshold=ratio,
        passed=best > ratio and total_crossings == 0,
        samples=int(z.size),
        details=details,
    )


def verify_distortion(
    f: HarmonicFunction,
    params: FamilyParams,
    r_list=DEFAULT_DISTORTION_RADII,
    angular_count: int = 720,
    tol: float = 1e-9,
) -> VerificationReport:
    """Sampled ``|f|`` on each circle against the two distortion envelopes.

    The functional is the smaller of ``upper - max|f|`` and ``min|f| - lower``.
    """
    if not coefficient_sum(f, params).verdict:
        raise ValueError("distortion check requires f to satisfy the coefficient criterion")
    b1 = abs(f.g[1])
    theta = 2.0 * np.pi * np.arange(angular_count) / angular_count
    margins = []
    worst = (math.inf, 0j)
    for r in r_list:
        z = r * np.exp(1j * theta)
        mod = np.abs(eval_harmonic(f, z))
        up = distortion_upper(params, b1, r) - mod.max()
        lo = mod.min() - distortion_lower(params, b1, r)
        m = min(up, lo)
        margins.append(m)
        if m < worst[0]:
            at = z[int(np.argmax(mod))] if up <= lo else z[int(np.argmin(mod))]
            worst = (m, complex(at))
    mmin = float(min(margins))
    return VerificationReport(
        name="distortion",
        functional_min=mmin,
        functional_max=float(max(margins)),
        argmin_point=worst[1],
        threshold=0.0,
        passed=mmin >= -tol,
        samples=len(r_list) * angular_count,
        tolerance=tol,
    )


def laplacian_residuals(f: HarmonicFunction, points, h_step: float) -> np.ndarray:
    """Five-point Laplacian of ``Re f`` and ``Im f``; returns the larger per point."""
    z = np.asarray(points, dtype=complex)
    if np.any(np.abs(z) >= 1.0 - 2.0 * h_step):
        raise ValueError("stencil leaves the disk: points must satisfy |z| < 1 - 2*h_step")
    c = eval_harmonic(f, z)
    s = (
        eval_harmonic(f, z + h_step)
        + eval_harmonic(f, z - h_step)
        + eval_harmonic(f, z + 1j * h_step)
        + eval_harmonic(f, z - 1j * h_step)
        - 4.0 * c
    ) / (h_step * h_step)
    return np.maximum(np.abs(s.real), np.abs(s.imag))


def verify_laplace(
    f: HarmonicFunction,
    points,
    h_step: float = 1e-3,
    threshold: float | None = None,
) -> VerificationReport:
    """Harmonicity check; default threshold ``1e-3 * sum |coefficients|``."""
    z = np.asarray(points, dtype=complex).ravel()
    res = laplacian_residuals(f, z, h_step)
    if threshold is None:
        threshold = 1e-3 * f.coefficient_magnitude_sum()
    i = int(np.argmax(res))
    return VerificationReport(
        name="laplace",
        functional_min=float(res.min()),
        functional_max=float(res[i]),
        argmin_point=complex(z[i]),
        threshold=float(threshold),
        passed=bool(res[i] <= threshold),
        samples=int(z.size),
        details={"h_step": h_step},
    )


# -- seeded generators --------------------------------------------------------


def _magnitudes(params: FamilyParams, size: int, mass: float, rng: np.random.Generator):
    """Uniform raw magnitudes, rescaled so the weighted sum beyond a_1 is ``mass``."""
    ua = rng.uniform(0.0, 1.0, size)
    ua[0] = 0.0
    ub = rng.uniform(0.0, 1.0, size)
    wa, wb = weight_vectors(params, size)
    weighted = math.fsum(wa * ua) + math.fsum(wb * ub)
    scale = mass / weighted if weighted > 0 else 0.0
    return scale * ua, scale * ub


def _check_slack(slack: float) -> None:
    if not (0.0 <= slack <= 1.0):
        raise ValueError(f"slack must lie in [0, 1], got {slack}")


def random_member(params: FamilyParams, size: int = 16, slack: float = 0.5, seed: int = 0) -> HarmonicFunction:
    """Random complex coefficients with ``coefficient_sum == 1 + slack``."""
    _check_slack(slack)
    rng = np.random.default_rng(seed)
    ma, mb = _magnitudes(params, size, slack, rng)
    pa = np.exp(2j * np.pi * rng.uniform(0.0, 1.0, size))
    pb = np.exp(2j * np.pi * rng.uniform(0.0, 1.0, size))
    a = ma * pa
    a[0] = 1.0
    return HarmonicFunction.from_coeffs(a, mb * pb)


def random_sign_pattern(
    params: FamilyParams,
    size: int,
    total: float,
    seed: int,
    convention: str = "literal",
) -> HarmonicFunction:
    """Real coefficients with the given sign convention and ``coefficient_sum == total``.

    ``total`` may exceed 2, which produces non-members for necessity probes.
    """
    if total < 1.0:
        raise ValueError("total must be >= 1 (the a_1 term alone contributes 1)")
    rng = np.random.default_rng(seed)
    ma, mb = _magnitudes(params, size, total - 1.0, rng)
    n = np.arange(1, size + 1)
    if convention == "literal":
        sa, sb = (-1.0) ** n, (-1.0) ** (n - 1)
    elif convention == "extreme":
        sa, sb = -np.ones(size), np.ones(size)
    else:
        raise ValueError(f"unsupported sign convention {convention!r}")
    a = sa * ma
    a[0] = 1.0
    return HarmonicFunction.from_coeffs(a, sb * mb)


def random_subclass_member(
    params: FamilyParams,
    size: int = 16,
    slack: float = 0.5,
    seed: int = 0,
    convention: str = "literal",
) -> HarmonicFunction:
    _check_slack(slack)
    return random_sign_pattern(params, size, 1.0 + slack, seed, convention)
