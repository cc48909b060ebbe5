"""Coefficient multipliers: error-function convolution, ``C_lambda^k``, Bernardi.

Every operator here acts diagonally on coefficients, so each is a map
``coefficient n -> m(n) * coefficient n`` applied to both parts of a
harmonic pair.  The multipliers are formed from exact integers (``math.comb``,
``math.factorial``) and converted to floating point once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ParameterRangeError
from .series import AnalyticSeries, HarmonicFunction, _horner

INT64_MAX = 2**63 - 1

# Smallest k and lambda accepted by FamilyParams.  The derivative operator
# itself is defined for k, lambda >= 0; set this to 0 for the looser reading.
MIN_FAMILY_ORDER = 1


@dataclass(frozen=True)
class FamilyParams:
    """The triple ``(k, lambda, gamma)`` indexing the family."""

    k: int
    lam: int
    gamma: float

    def __post_init__(self):
        for name in ("k", "lam"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
                raise ParameterRangeError(f"{name} must be an integer, got {v!r}")
            if v < MIN_FAMILY_ORDER:
                raise ParameterRangeError(f"{name} must be >= {MIN_FAMILY_ORDER}, got {v}")
            object.__setattr__(self, name, int(v))
        g = float(self.gamma)
        if not (0.0 <= g < 1.0):
            raise ParameterRangeError(f"gamma must lie in [0, 1), got {g}")
        object.__setattr__(self, "gamma", g)

    def as_dict(self) -> dict:
        return {"k": self.k, "lambda": self.lam, "gamma": self.gamma}


def _error_fraction(n: int) -> Fraction:
    return Fraction((-1) ** (n - 1), (2 * n - 1) * math.factorial(n - 1))


def error_coefficient(n: int) -> float:
    """Coefficient of ``z**n`` in the normalized error function series."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return float(_error_fraction(n))


def error_function_series(n: int) -> AnalyticSeries:
    return AnalyticSeries([error_coefficient(j) for j in range(1, n + 1)])


def _check_orders(k: int, lam: int) -> None:
    if k < 0 or lam < 0:
        raise ParameterRangeError(f"k and lambda must be >= 0, got k={k}, lambda={lam}")


def c_multiplier(n: int, k: int, lam: int) -> int:
    """``binom(n + lam - 1, lam) * n**k``, checked against the int64 range."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    _check_orders(k, lam)
    m = math.comb(n + lam - 1, lam) * n**k
    if m > INT64_MAX:
        raise ParameterRangeError(
            f"multiplier for n={n}, k={k}, lambda={lam} exceeds the 64-bit integer range"
        )
    return m


def _apply(f: HarmonicFunction, mult: np.ndarray) -> HarmonicFunction:
    return HarmonicFunction(f.h.scaled(mult), f.g.scaled(mult), boundary=f.boundary)


def apply_error_convolution(f: HarmonicFunction) -> HarmonicFunction:
    """Convolve both parts with the error-function series."""
    e = error_function_series(f.truncation).array.real
    return _apply(f, e)


def apply_c_operator(f: HarmonicFunction, k: int, lam: int) -> HarmonicFunction:
    mult = np.array([float(c_multiplier(n, k, lam)) for n in range(1, f.truncation + 1)])
    return _apply(f, mult)


def transformed_multipliers(n_max: int, k: int, lam: int) -> np.ndarray:
    """Combined multipliers of the error convolution followed by ``C_lambda^k``."""
    return np.array(
        [float(c_multiplier(n, k, lam) * _error_fraction(n)) for n in range(1, n_max + 1)]
    )


def transformed_series(f: HarmonicFunction, params: FamilyParams) -> HarmonicFunction:
    """``C_lambda^k`` applied to the error-function convolution of ``f``."""
    return _apply(f, transformed_multipliers(f.truncation, params.k, params.lam))


def bernardi_multipliers(n_max: int, c: float) -> np.ndarray:
    n = np.arange(1, n_max + 1)
    return (c + 1.0) / (c + n)


def bernardi(f: HarmonicFunction, c: float) -> HarmonicFunction:
    """Generalized Bernardi-Libera-Livingston operator in coefficient form."""
    c = float(c)
    if not (c >= 0.0 and math.isfinite(c)):
        raise ParameterRangeError(f"c must be >= 0, got {c}")
    return _apply(f, bernardi_multipliers(f.truncation, c))


def _simpson(values: np.ndarray, step: float):
    w = np.ones(values.shape[0])
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return step / 3.0 * (w @ values)


def _segment_integral(s: AnalyticSeries, c: float, z: complex, panels: int) -> complex:
    # (1+c) z^-c * int_0^z t^(c-1) s(t) dt along t = sigma*z, then sigma = u^2:
    #   2(1+c) * int_0^1 u^(2c+1) * phi(u^2) du,  phi(sigma) = s(sigma*z)/sigma.
    # The substitution keeps the integrand smooth at u = 0 for c in [0, 1).
    nodes = 2 * panels + 1
    u = np.linspace(0.0, 1.0, nodes)
    sigma = u * u
    zc = s.array * z ** np.arange(1, s.truncation + 1)
    phi = _horner(zc, sigma.astype(complex)) / np.where(sigma > 0, sigma, 1.0)
    phi[0] = zc[0]
    integrand = 2.0 * (1.0 + c) * u ** (2.0 * c + 1.0) * phi
    return complex(_simpson(integrand, 1.0 / (nodes - 1)))


def bernardi_quadrature_oracle(f: HarmonicFunction, c: float, z: complex, panels: int = 2048) -> complex:
    """Composite-Simpson evaluation of the integral form of the Bernardi operator.

    Intended only as an independent cross-check of :func:`bernardi`.  The
    analytic and co-analytic parts are integrated separately along the segment
    from 0 to ``z``; the co-analytic result is conjugated afterwards.
    ``panels`` counts Simpson panels of two subintervals each.
    """
    c = float(c)
    z = complex(z)
    if c < 0:
        raise ParameterRangeError(f"c must be >= 0, got {c}")
    if z == 0:
        raise ValueError("z = 0 is excluded; the operator's limit value there is 0")
    if not (abs(z) < 1):
        raise ValueError("z must lie in the open unit disk")
    if panels < 16:
        raise ValueError("panels must be >= 16")
    hz = _segment_integral(f.h, c, z, panels)
    gz = _segment_integral(f.g, c, z, panels)
    return hz + gz.conjugate()
