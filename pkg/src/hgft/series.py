"""Truncated power series and harmonic pairs ``f = h + conj(g)``.

Coefficient lists are stored 1-indexed in the mathematical sense: position 0
of ``coeffs`` holds the coefficient of ``z``, position ``n - 1`` the
coefficient of ``z**n``.  There is no constant term; every series vanishes at
the origin.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import InvariantError

DEFAULT_TRUNCATION = 16
# Slack on |z| <= 1 so that points generated as r*exp(i*theta) with r = 1 pass.
_DISK_SLACK = 1e-12


def _as_complex_tuple(values: Iterable) -> tuple[complex, ...]:
    out = tuple(complex(v) for v in values)
    for c in out:
        if not (math.isfinite(c.real) and math.isfinite(c.imag)):
            raise InvariantError(f"non-finite coefficient {c!r}")
    return out


def _check_points(z, closed: bool = True):
    arr = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(arr)):
        raise ValueError("non-finite evaluation point")
    bound = 1.0 + _DISK_SLACK
    mod = np.abs(arr)
    if closed:
        if np.any(mod > bound):
            raise ValueError("evaluation point outside the closed unit disk")
    elif np.any(mod >= 1.0):
        raise ValueError("evaluation point outside the open unit disk")
    return arr


@dataclass(frozen=True)
class AnalyticSeries:
    """Truncated series ``sum_{n=1}^{N} c_n z**n``."""

    coeffs: tuple[complex, ...]

    def __post_init__(self):
        coeffs = _as_complex_tuple(self.coeffs)
        if len(coeffs) < 1:
            raise InvariantError("a series needs at least one coefficient")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zeros(cls, n: int) -> "AnalyticSeries":
        return cls((0j,) * n)

    @property
    def truncation(self) -> int:
        return len(self.coeffs)

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array(self.coeffs, dtype=complex)
        arr.flags.writeable = False
        return arr

    def __getitem__(self, n: int) -> complex:
        """Coefficient of ``z**n`` (1-based); zero beyond the truncation."""
        if n < 1:
            raise IndexError("series coefficients are indexed from 1")
        return self.coeffs[n - 1] if n <= len(self.coeffs) else 0j

    def padded(self, n: int) -> "AnalyticSeries":
        if n < self.truncation:
            raise ValueError("padding cannot shorten a series")
        if n == self.truncation:
            return self
        return AnalyticSeries(self.coeffs + (0j,) * (n - self.truncation))

    def truncated(self, n: int) -> "AnalyticSeries":
        return AnalyticSeries(self.coeffs[:n])

    def scaled(self, multipliers: Sequence) -> "AnalyticSeries":
        """Coefficient ``n`` multiplied by ``multipliers[n - 1]``."""
        m = np.asarray(multipliers)
        return AnalyticSeries(tuple(self.array * m[: self.truncation]))

    def magnitudes(self) -> np.ndarray:
        return np.abs(self.array)


def _horner(coeffs: np.ndarray, z):
    # sum c_n z^n = z * (c_1 + z * (c_2 + ...))
    acc = np.zeros_like(z, dtype=complex)
    for c in coeffs[::-1]:
        acc = acc * z + c
    return acc * z


def eval_analytic(s: AnalyticSeries, z):
    """Evaluate ``s`` at a point or array of points in the closed disk."""
    arr = _check_points(z)
    out = _horner(s.array, arr)
    return complex(out) if np.ndim(out) == 0 else out


def derivative(s: AnalyticSeries) -> np.ndarray:
    """Raw coefficients of ``s'``, indexed from the constant term.

    The result is deliberately not an :class:`AnalyticSeries`: its constant
    term ``c_1`` would break the z-indexing convention.
    """
    n = np.arange(1, s.truncation + 1)
    return n * s.array


def eval_derivative(s: AnalyticSeries, z):
    """Evaluate ``s'(z)`` without materialising a normalized series."""
    arr = _check_points(z)
    d = derivative(s)
    acc = np.zeros_like(arr, dtype=complex)
    for c in d[::-1]:
        acc = acc * arr + c
    return complex(acc) if np.ndim(acc) == 0 else acc


def convolve(s: AnalyticSeries, t: AnalyticSeries) -> AnalyticSeries:
    """Hadamard (coefficient-wise) product; the shorter operand is zero-padded."""
    n = max(s.truncation, t.truncation)
    return AnalyticSeries(tuple(s.padded(n).array * t.padded(n).array))


@dataclass(frozen=True)
class HarmonicFunction:
    """Harmonic mapping ``f = h + conj(g)`` with ``h = z + ...``.

    ``boundary`` marks functions in the closure of the family, where
    ``|b_1| = 1`` is tolerated (the extreme point ``z + conj(z)`` at
    ``gamma = 0`` is the only one produced by this package).
    """

    h: AnalyticSeries
    g: AnalyticSeries
    boundary: bool = field(default=False, compare=False)

    def __post_init__(self):
        h = self.h if isinstance(self.h, AnalyticSeries) else AnalyticSeries(self.h)
        g = self.g if isinstance(self.g, AnalyticSeries) else AnalyticSeries(self.g)
        n = max(h.truncation, g.truncation)
        h, g = h.padded(n), g.padded(n)
        if h.coeffs[0] != 1:
            raise InvariantError(f"h must be normalized with a_1 = 1, got {h.coeffs[0]!r}")
        b1 = abs(g.coeffs[0])
        if b1 >= 1 and not (self.boundary and b1 <= 1 + 1e-12):
            raise InvariantError(f"|b_1| = {b1!r} must be < 1")
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "g", g)

    @classmethod
    def from_coeffs(cls, h: Sequence, g: Sequence = (0,), boundary: bool = False) -> "HarmonicFunction":
        return cls(AnalyticSeries(h), AnalyticSeries(g), boundary=boundary)

    @classmethod
    def identity(cls, n: int = 1) -> "HarmonicFunction":
        return cls.from_coeffs([1] + [0] * (n - 1), [0] * n)

    @property
    def truncation(self) -> int:
        return self.h.truncation

    def padded(self, n: int) -> "HarmonicFunction":
        return HarmonicFunction(self.h.padded(n), self.g.padded(n), boundary=self.boundary)

    def truncated(self, n: int) -> "HarmonicFunction":
        return HarmonicFunction(self.h.truncated(n), self.g.truncated(n), boundary=self.boundary)

    def with_length(self, n: int) -> "HarmonicFunction":
        return self.padded(n) if n >= self.truncation else self.truncated(n)

    def coefficient_magnitude_sum(self) -> float:
        return float(self.h.magnitudes().sum() + self.g.magnitudes().sum())


def eval_harmonic(f: HarmonicFunction, z):
    """``h(z) + conj(g(z))`` at a point or array of points."""
    arr = _check_points(z)
    out = _horner(f.h.array, arr) + np.conj(_horner(f.g.array, arr))
    return complex(out) if np.ndim(out) == 0 else out


def jacobian(f: HarmonicFunction, z):
    """``|h'(z)|**2 - |g'(z)|**2`` on the open disk."""
    arr = _check_points(z, closed=False)
    hp = eval_derivative(f.h, arr)
    gp = eval_derivative(f.g, arr)
    out = np.abs(hp) ** 2 - np.abs(gp) ** 2
    return float(out) if np.ndim(out) == 0 else out


# -- JSON interchange ---------------------------------------------------------


def series_to_json(s: AnalyticSeries) -> list[list[float]]:
    return [[c.real, c.imag] for c in s.coeffs]


def series_from_json(data) -> AnalyticSeries:
    """Parse ``[[re, im], ...]``; bare real numbers are accepted as well."""
    if not isinstance(data, list) or not data:
        raise ValueError("coefficient list must be a non-empty JSON array")
    coeffs = []
    for item in data:
        if isinstance(item, bool):
            raise ValueError(f"bad coefficient {item!r}")
        if isinstance(item, (int, float)):
            coeffs.append(complex(item))
        elif isinstance(item, list) and len(item) == 2 and all(
            isinstance(x, (int, float)) and not isinstance(x, bool) for x in item
        ):
            coeffs.append(complex(item[0], item[1]))
        else:
            raise ValueError(f"bad coefficient {item!r}; expected [re, im]")
    return AnalyticSeries(coeffs)


def harmonic_to_dict(f: HarmonicFunction) -> dict:
    return {"h": series_to_json(f.h), "g": series_to_json(f.g)}


def harmonic_from_dict(data) -> HarmonicFunction:
    if not isinstance(data, dict) or "h" not in data:
        raise ValueError('expected a JSON object {"h": [...], "g": [...]}')
    h = series_from_json(data["h"])
    g = series_from_json(data.get("g", [[0.0, 0.0]]))
    return HarmonicFunction(h, g)


def dumps(obj) -> str:
    """Canonical JSON text used for every file the package writes."""
    return json.dumps(obj, indent=2, sort_keys=False, allow_nan=False) + "\n"
