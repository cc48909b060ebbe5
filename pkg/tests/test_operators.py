import cmath

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hgft.errors import ParameterRangeError
from hgft.operators import (
    FamilyParams,
    apply_c_operator,
    apply_error_convolution,
    bernardi,
    bernardi_quadrature_oracle,
    c_multiplier,
    error_coefficient,
    transformed_series,
)
from hgft.series import HarmonicFunction, eval_harmonic
from hgft.verification import random_member

import oracles

P111 = FamilyParams(1, 1, 0.0)


def H(h, g=(0,)):
    return HarmonicFunction.from_coeffs(h, g)


def test_error_coefficient_against_rational_oracle():
    for n in range(1, 25):
        assert error_coefficient(n) == float(oracles.error_coef(n))
    assert error_coefficient(1) == 1
    assert error_coefficient(2) == pytest.approx(-1 / 3, rel=1e-15)
    assert error_coefficient(3) == pytest.approx(0.1, rel=1e-15)
    assert error_coefficient(4) == pytest.approx(-1 / 42, rel=1e-15)
    with pytest.raises(ValueError):
        error_coefficient(0)


def test_error_coefficients_alternate_and_decrease():
    for n in range(1, 30):
        a, b = error_coefficient(n), error_coefficient(n + 1)
        assert a * b < 0
        assert abs(b / a) == pytest.approx((2 * n - 1) / ((2 * n + 1) * n), rel=1e-14)
        assert abs(b) < abs(a)


def test_c_multiplier_examples():
    assert c_multiplier(1, 5, 7) == 1
    assert c_multiplier(2, 1, 1) == 4
    assert c_multiplier(3, 2, 2) == 54


def test_c_multiplier_exhaustive_against_big_integers():
    for n in range(1, 33):
        for k in range(0, 9):
            for lam in range(0, 9):
                exact = oracles.multiplier(n, k, lam)
                if exact <= 2**63 - 1:
                    assert c_multiplier(n, k, lam) == exact
                else:
                    with pytest.raises(ParameterRangeError):
                        c_multiplier(n, k, lam)


def test_c_multiplier_overflow_is_explicit():
    with pytest.raises(ParameterRangeError):
        c_multiplier(32, 13, 0)
    with pytest.raises(ParameterRangeError):
        c_multiplier(2, -1, 0)


def test_family_params_validation():
    for bad in [(0, 1, 0.0), (1, 0, 0.0), (1, 1, 1.0), (1, 1, -0.1), (1.5, 1, 0.0)]:
        with pytest.raises(ParameterRangeError):
            FamilyParams(*bad)


def test_apply_error_convolution_examples():
    assert apply_error_convolution(H([1])) == H([1])
    assert apply_error_convolution(H([1, 1])).h.coeffs == pytest.approx([1, -1 / 3])
    out = apply_error_convolution(H([1, 0], [0.3, 1]))
    assert out.g.coeffs == pytest.approx([0.3, -1 / 3])


def test_apply_c_operator_examples():
    f = H([1, 0.5 - 0.2j, 0.3], [0.2, 0.1j, -0.4])
    assert apply_c_operator(f, 0, 0) == f
    assert apply_c_operator(H([1, 1]), 1, 1).h.coeffs == (1, 4)
    assert apply_c_operator(H([1, 0, 0], [0.5, 0, 1]), 2, 2).g.coeffs == (0.5, 0, 54)


def test_transformed_series_examples():
    assert transformed_series(H([1]), P111) == H([1])
    assert transformed_series(H([1, 1]), P111).h.coeffs == pytest.approx([1, -4 / 3], rel=1e-15)
    assert transformed_series(H([1, 0, 1]), P111).h.coeffs == pytest.approx([1, 0, 0.9], rel=1e-15)


@settings(max_examples=30)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 1000))
def test_transformed_series_is_composition(k, lam, seed):
    params = FamilyParams(k, lam, 0.2)
    f = random_member(params, 12, 0.7, seed)
    direct = transformed_series(f, params)
    composed = apply_c_operator(apply_error_convolution(f), k, lam)
    np.testing.assert_allclose(direct.h.array, composed.h.array, rtol=1e-14)
    np.testing.assert_allclose(direct.g.array, composed.g.array, rtol=1e-14)
    # against the displayed closed form
    n = np.arange(1, 13)
    closed = np.array([float(oracles.multiplier(j, k, lam) * oracles.error_coef(j)) for j in n])
    np.testing.assert_allclose(direct.h.array, closed * f.h.array, rtol=1e-14)


def test_bernardi_examples():
    assert bernardi(H([1, -3 / 8]), 1).h.coeffs == pytest.approx([1, -0.25])
    assert bernardi(H([1, 0, 0], [0.3, 0, 0.1]), 0).g.coeffs == pytest.approx([0.3, 0, 0.1 / 3])
    for c in (0, 0.5, 3):
        assert bernardi(H([1, 2]), c).h.coeffs[0] == 1
    with pytest.raises(ParameterRangeError):
        bernardi(H([1]), -0.5)


@settings(max_examples=30)
@given(st.integers(0, 10_000), st.floats(0, 10))
def test_bernardi_never_grows_coefficients(seed, c):
    f = random_member(P111, 16, 1.0, seed)
    out = bernardi(f, c)
    assert np.all(out.h.magnitudes() <= f.h.magnitudes())
    assert np.all(out.g.magnitudes() <= f.g.magnitudes())


def test_bernardi_oracle_examples():
    assert bernardi_quadrature_oracle(H([1]), 1, 0.5) == pytest.approx(0.5, abs=1e-12)
    assert bernardi_quadrature_oracle(H([1, 1]), 1, 0.5) == pytest.approx(2 / 3, abs=1e-8)
    # co-analytic contribution alone: conj(0.5 * 0.4i)
    z = 0.4j
    got = bernardi_quadrature_oracle(H([1], [0.5]), 2, z) - z
    assert got == pytest.approx(-0.2j, abs=1e-8)


def test_bernardi_oracle_preconditions():
    with pytest.raises(ValueError):
        bernardi_quadrature_oracle(H([1]), 1, 0)
    with pytest.raises(ValueError):
        bernardi_quadrature_oracle(H([1]), 1, 0.5, panels=8)
    with pytest.raises(ValueError):
        bernardi_quadrature_oracle(H([1]), -1, 0.5)


@pytest.mark.parametrize("c", [0.0, 0.3, 1.0, 2.5, 7.0])
def test_bernardi_coefficient_and_quadrature_agree(c):
    rng = np.random.default_rng(11)
    for i in range(5):
        f = random_member(P111, 16, 0.9, 100 + i)
        z = 0.9 * np.sqrt(rng.uniform()) * cmath.exp(2j * np.pi * rng.uniform())
        assert abs(bernardi_quadrature_oracle(f, c, z) - eval_harmonic(bernardi(f, c), z)) < 1e-8
