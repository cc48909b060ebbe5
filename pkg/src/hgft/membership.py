"""Coefficient criteria for the family and its sign-pattern subfamily.

The central object is the weighted l1 sum

    S(f) = sum_{n>=1} w_a(n) |a_n| + w_b(n) |b_n|,   a_1 = 1,

with ``w_a(n) = binom(n+lam-1, lam) n^k (n - gamma) / ((1-gamma)(2n-1)(n-1)!)``
and ``w_b`` the same with ``n + gamma``.  ``S(f) <= 2`` is sufficient for
membership, and for the sign-pattern subfamily also necessary.  Everything
else in this module (distortion bounds, extreme points, decomposition,
convex combinations) is phrased in terms of coefficient magnitudes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import DecompositionInfeasible
from .operators import FamilyParams, c_multiplier
from .series import AnalyticSeries, HarmonicFunction

DEFAULT_TOLERANCE = 1e-9

SIGN_CONVENTIONS = ("literal", "extreme", "magnitude")
"""Sign conventions for the subfamily.

``literal``   a_n carries (-1)^n and b_n carries (-1)^(n-1), the form used by
              the necessity and closure statements.
``extreme``   a_n <= 0 and b_n >= 0 for every n, the signs carried by the
              extreme points h_n and g_n.
``magnitude`` no sign or reality constraint; only magnitudes matter.
"""


@lru_cache(maxsize=None)
def _base(n: int, k: int, lam: int) -> Fraction:
    return Fraction(c_multiplier(n, k, lam), (2 * n - 1) * math.factorial(n - 1))


@lru_cache(maxsize=None)
def weight_a(n: int, params: FamilyParams) -> float:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    g = params.gamma
    return float(_base(n, params.k, params.lam)) * (n - g) / (1.0 - g)


@lru_cache(maxsize=None)
def weight_b(n: int, params: FamilyParams) -> float:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    g = params.gamma
    return float(_base(n, params.k, params.lam)) * (n + g) / (1.0 - g)


def weight_vectors(params: FamilyParams, n_max: int) -> tuple[np.ndarray, np.ndarray]:
    wa = np.array([weight_a(n, params) for n in range(1, n_max + 1)])
    wb = np.array([weight_b(n, params) for n in range(1, n_max + 1)])
    return wa, wb


@dataclass(frozen=True)
class MembershipReport:
    sum: float
    terms_a: tuple[float, ...]
    terms_b: tuple[float, ...]
    verdict: bool
    margin: float
    dropped_tail: float
    tolerance: float = DEFAULT_TOLERANCE

    def to_dict(self) -> dict:
        return {
            "sum": self.sum,
            "verdict": self.verdict,
            "margin": self.margin,
            "tolerance": self.tolerance,
            "dropped_tail": self.dropped_tail,
            "terms_a": [{"n": i + 1, "value": v} for i, v in enumerate(self.terms_a)],
            "terms_b": [{"n": i + 1, "value": v} for i, v in enumerate(self.terms_b)],
        }


def coefficient_sum(
    f: HarmonicFunction,
    params: FamilyParams,
    tol: float = DEFAULT_TOLERANCE,
    truncation: int | None = None,
) -> MembershipReport:
    """Evaluate the weighted coefficient sum of ``f``.

    With ``truncation`` below the length of ``f`` only the leading terms are
    summed and ``dropped_tail`` holds the largest weighted term left out.
    """
    n_all = f.truncation
    n = n_all if truncation is None else min(truncation, n_all)
    wa, wb = weight_vectors(params, n_all)
    ta = wa * f.h.magnitudes()
    tb = wb * f.g.magnitudes()
    ta[0] = 1.0
    dropped = 0.0
    if n < n_all:
        dropped = float(max(ta[n:].max(), tb[n:].max()))
    ta, tb = ta[:n], tb[:n]
    total = float(math.fsum(ta) + math.fsum(tb))
    return MembershipReport(
        sum=total,
        terms_a=tuple(float(v) for v in ta),
        terms_b=tuple(float(v) for v in tb),
        verdict=total <= 2.0 + tol,
        margin=2.0 - total,
        dropped_tail=dropped,
        tolerance=tol,
    )


def _expected_signs(n_max: int, convention: str) -> tuple[np.ndarray, np.ndarray]:
    n = np.arange(1, n_max + 1)
    if convention == "literal":
        return (-1.0) ** n, (-1.0) ** (n - 1)
    if convention == "extreme":
        return -np.ones(n_max), np.ones(n_max)
    raise ValueError(f"unknown sign convention {convention!r}")


def has_sign_pattern(f: HarmonicFunction, tol: float = 1e-12, convention: str = "literal") -> bool:
    """True iff every nonzero coefficient is real with the prescribed sign.

    ``a_1`` is exempt (it is fixed at 1); zero coefficients always pass.
    """
    if convention == "magnitude":
        return True
    sa, sb = _expected_signs(f.truncation, convention)
    for coeffs, signs, start in ((f.h.array, sa, 1), (f.g.array, sb, 0)):
        c = coeffs[start:]
        s = signs[start:]
        nonzero = np.abs(c) > tol
        if np.any(np.abs(c.imag[nonzero]) > tol):
            return False
        if np.any(s[nonzero] * c.real[nonzero] <= 0):
            return False
    return True


def is_subclass_member(
    f: HarmonicFunction,
    params: FamilyParams,
    tol: float = DEFAULT_TOLERANCE,
    convention: str = "literal",
) -> bool:
    return has_sign_pattern(f, convention=convention) and coefficient_sum(f, params, tol).verdict


# -- distortion and covering --------------------------------------------------


def _quadratic_term(params: FamilyParams, b1_abs: float) -> float:
    g = params.gamma
    d = 2.0**params.k * (2.0 - g) * (1.0 + params.lam)
    return 3.0 * (1.0 - g) / d - 3.0 * (1.0 + g) / d * b1_abs


def _check_bounds_args(b1_abs: float, r: float) -> None:
    if not (0.0 <= b1_abs < 1.0):
        raise ValueError(f"|b_1| must lie in [0, 1), got {b1_abs}")
    # r = 1 is admitted so the covering radius can be read off as a limit.
    if not (0.0 <= r <= 1.0):
        raise ValueError(f"r must lie in [0, 1], got {r}")


def distortion_upper(params: FamilyParams, b1_abs: float, r: float) -> float:
    _check_bounds_args(b1_abs, r)
    return (1.0 + b1_abs) * r + _quadratic_term(params, b1_abs) * r * r


def distortion_lower(params: FamilyParams, b1_abs: float, r: float) -> float:
    _check_bounds_args(b1_abs, r)
    return (1.0 - b1_abs) * r - _quadratic_term(params, b1_abs) * r * r


def covering_radius(params: FamilyParams, b1_abs: float) -> float:
    """Radius of the disk about 0 covered by every subfamily member with this ``|b_1|``."""
    if not (0.0 <= b1_abs < 1.0):
        raise ValueError(f"|b_1| must lie in [0, 1), got {b1_abs}")
    k, lam, g = params.k, params.lam, params.gamma
    p = 2.0**k * (1.0 + lam)
    d = p * (2.0 - g)
    first = (2.0 * p - 3.0 - (p - 3.0) * g) / d
    second = (2.0 * p - 3.0 - (p + 3.0) * g) / d
    return first - second * b1_abs


# -- extreme points -----------------------------------------------------------


def _extreme_coefficient(n: int, params: FamilyParams, sign: float) -> float:
    g = params.gamma
    exact = Fraction((2 * n - 1) * math.factorial(n - 1), c_multiplier(n, params.k, params.lam))
    return float(exact) * (1.0 - g) / (n + sign * g)


def extreme_h_coefficient(n: int, params: FamilyParams) -> float:
    """Magnitude of the ``z**n`` coefficient of ``h_n``; equals ``1 / weight_a(n)``."""
    return _extreme_coefficient(n, params, -1.0)


def extreme_g_coefficient(n: int, params: FamilyParams) -> float:
    return _extreme_coefficient(n, params, +1.0)


def _check_index(n: int, size: int) -> None:
    if not (1 <= n <= size):
        raise ValueError(f"extreme point index must satisfy 1 <= n <= {size}, got {n}")


def extreme_h(n: int, params: FamilyParams, size: int) -> HarmonicFunction:
    _check_index(n, size)
    h = [1.0] + [0.0] * (size - 1)
    if n >= 2:
        h[n - 1] = -extreme_h_coefficient(n, params)
    return HarmonicFunction.from_coeffs(h, [0.0] * size)


def extreme_g(n: int, params: FamilyParams, size: int) -> HarmonicFunction:
    """``z + c conj(z)**n``.  At ``n = 1, gamma = 0`` the result has ``|b_1| = 1``
    and is returned with ``boundary=True``."""
    _check_index(n, size)
    coef = extreme_g_coefficient(n, params)
    g = [0.0] * size
    g[n - 1] = coef
    h = [1.0] + [0.0] * (size - 1)
    return HarmonicFunction.from_coeffs(h, g, boundary=(n == 1 and coef >= 1.0))


@dataclass(frozen=True)
class DecompositionWeights:
    X: tuple[float, ...]
    Y: tuple[float, ...]
    tol: float = field(default=1e-12, compare=False)

    def __post_init__(self):
        x = tuple(float(v) for v in self.X)
        y = tuple(float(v) for v in self.Y)
        if len(x) != len(y):
            raise ValueError("X and Y must have equal length")
        if min(x + y) < 0:
            raise ValueError("decomposition weights must be nonnegative")
        total = math.fsum(x + y)
        if abs(total - 1.0) > self.tol:
            raise ValueError(f"weights must sum to 1, got {total!r}")
        object.__setattr__(self, "X", x)
        object.__setattr__(self, "Y", y)

    def to_dict(self) -> dict:
        return {
            "X": [{"n": i + 1, "value": v} for i, v in enumerate(self.X)],
            "Y": [{"n": i + 1, "value": v} for i, v in enumerate(self.Y)],
        }


def decompose(f: HarmonicFunction, params: FamilyParams, tol: float = DEFAULT_TOLERANCE) -> DecompositionWeights:
    """Weights of ``f`` in the extreme points ``h_n``, ``g_n`` (by magnitudes)."""
    size = f.truncation
    ch = np.array([1.0] + [extreme_h_coefficient(n, params) for n in range(2, size + 1)])
    cg = np.array([extreme_g_coefficient(n, params) for n in range(1, size + 1)])
    x = f.h.magnitudes() / ch
    y = f.g.magnitudes() / cg
    rest = math.fsum(x[1:]) + math.fsum(y)
    x1 = 1.0 - rest
    if x1 < -tol:
        raise DecompositionInfeasible(f"leading weight X_1 = {x1:.6g} is negative; f is not a member")
    x[0] = max(x1, 0.0)
    # Clamping a tiny negative X_1 can move the total by up to tol.
    return DecompositionWeights(tuple(x), tuple(y), tol=max(tol, 1e-12))


def reconstruct(
    w: DecompositionWeights,
    params: FamilyParams,
    size: int | None = None,
    convention: str = "extreme",
) -> HarmonicFunction:
    """``sum X_n h_n + Y_n g_n``.

    With ``convention="literal"`` the extreme points are taken with the
    alternating signs instead; the magnitudes are identical.
    """
    size = len(w.X) if size is None else size
    if size < len(w.X):
        raise ValueError("size shorter than the weight vectors")
    x = np.zeros(size)
    y = np.zeros(size)
    x[: len(w.X)] = w.X
    y[: len(w.Y)] = w.Y
    mag_a = np.array([0.0] + [extreme_h_coefficient(n, params) for n in range(2, size + 1)]) * x
    mag_b = np.array([extreme_g_coefficient(n, params) for n in range(1, size + 1)]) * y
    if convention == "magnitude":
        convention = "extreme"
    sa, sb = _expected_signs(size, convention)
    h = sa * mag_a
    h[0] = 1.0
    g = sb * mag_b
    return HarmonicFunction.from_coeffs(h, g, boundary=abs(g[0]) >= 1.0)


def convex_combine(fs: Sequence[HarmonicFunction], ts: Sequence[float], tol: float = 1e-12) -> HarmonicFunction:
    if len(fs) == 0 or len(fs) != len(ts):
        raise ValueError("need matching, non-empty lists of functions and weights")
    t = np.asarray(ts, dtype=float)
    if np.any(t < 0) or np.any(t > 1):
        raise ValueError("convex weights must lie in [0, 1]")
    if abs(math.fsum(t) - 1.0) > tol:
        raise ValueError(f"convex weights must sum to 1, got {math.fsum(t)!r}")
    size = max(f.truncation for f in fs)
    h = sum(ti * f.h.padded(size).array for ti, f in zip(t, fs))
    g = sum(ti * f.g.padded(size).array for ti, f in zip(t, fs))
    h = np.array(h)
    h[0] = 1.0
    return HarmonicFunction(
        AnalyticSeries(tuple(h)),
        AnalyticSeries(tuple(g)),
        boundary=any(f.boundary for f in fs),
    )
