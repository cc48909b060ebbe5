import cmath

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hgft.errors import InvariantError
from hgft.series import (
    AnalyticSeries,
    HarmonicFunction,
    convolve,
    derivative,
    dumps,
    eval_analytic,
    eval_derivative,
    eval_harmonic,
    harmonic_from_dict,
    harmonic_to_dict,
    jacobian,
    series_from_json,
)
from hgft.verification import laplacian_residuals

from oracles import poly_eval

complexes = st.complex_numbers(max_magnitude=2.0, allow_nan=False, allow_infinity=False)
coeff_lists = st.lists(complexes, min_size=1, max_size=12)
def _disk(radius):
    return st.builds(lambda r, t: r * cmath.exp(1j * t), st.floats(0, radius), st.floats(0, 2 * np.pi))


disk_points = _disk(0.95)


@pytest.mark.parametrize(
    "coeffs, z, expected",
    [
        ([1], 0.5, 0.5),
        ([1, -3 / 8], 1, 0.625),
        ([1, 0.5], 0.5j, -0.125 + 0.5j),
    ],
)
def test_eval_analytic_examples(coeffs, z, expected):
    assert eval_analytic(AnalyticSeries(coeffs), z) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize(
    "h, g, z, expected",
    [
        ([1], [0], 0.3 + 0.4j, 0.3 + 0.4j),
        ([1], [0.3], 1j, 0.7j),
        ([1, 0.25], [0], 1, 1.25),
    ],
)
def test_eval_harmonic_examples(h, g, z, expected):
    f = HarmonicFunction.from_coeffs(h, g)
    assert eval_harmonic(f, z) == pytest.approx(expected, abs=1e-15)


def test_eval_rejects_bad_points():
    s = AnalyticSeries([1])
    with pytest.raises(ValueError):
        eval_analytic(s, complex("nan"))
    with pytest.raises(ValueError):
        eval_analytic(s, 1.5)


@pytest.mark.parametrize(
    "coeffs, z, expected",
    [
        ([1], 0.7, 1.0),
        ([1, -3 / 8], 0.4, 1 - 0.75 * 0.4),
        ([1, 0, 0.1], 0.5j, 1 + 0.3 * (0.5j) ** 2),
    ],
)
def test_derivative_examples(coeffs, z, expected):
    s = AnalyticSeries(coeffs)
    assert eval_derivative(s, z) == pytest.approx(expected, abs=1e-15)
    assert list(derivative(s)) == [n * c for n, c in enumerate(coeffs, start=1)]


@pytest.mark.parametrize(
    "h, g, z, expected",
    [
        ([1], [0], 0.2 - 0.6j, 1.0),
        ([1], [0.3], 0.5 + 0.1j, 0.91),
        ([1, 0.5], [0], 0.5, 2.25),
    ],
)
def test_jacobian_examples(h, g, z, expected):
    assert jacobian(HarmonicFunction.from_coeffs(h, g), z) == pytest.approx(expected, abs=1e-15)


def test_convolve_examples():
    s = AnalyticSeries([1, -1 / 3, 1 / 10])
    assert convolve(s, AnalyticSeries([1, 1, 1])) == s
    assert convolve(AnalyticSeries([1, 2]), AnalyticSeries([1, 3])).coeffs == (1, 6)
    out = convolve(s, AnalyticSeries([1, 0, 5])).coeffs
    assert out == pytest.approx([1, 0, 0.5], abs=1e-16)


def test_convolve_pads_shorter_operand():
    out = convolve(AnalyticSeries([2]), AnalyticSeries([1, 3, 4]))
    assert out.coeffs == (2, 0, 0)


def test_harmonic_invariants():
    with pytest.raises(InvariantError):
        HarmonicFunction.from_coeffs([0.9, 0.1])
    with pytest.raises(InvariantError):
        HarmonicFunction.from_coeffs([1], [1.0])
    with pytest.raises(InvariantError):
        AnalyticSeries([1, float("inf")])
    f = HarmonicFunction.from_coeffs([1, 0.2, 0.1], [0.1])
    assert f.h.truncation == f.g.truncation == 3
    edge = HarmonicFunction.from_coeffs([1], [1.0], boundary=True)
    assert edge.boundary


@given(coeff_lists, disk_points)
def test_eval_matches_direct_power_sum(coeffs, z):
    got = eval_analytic(AnalyticSeries(coeffs), z)
    assert got == pytest.approx(poly_eval(coeffs, z), abs=1e-12)


@given(coeff_lists, st.integers(0, 10), disk_points)
def test_zero_padding_preserves_value_exactly(coeffs, extra, z):
    s = AnalyticSeries(coeffs)
    assert eval_analytic(s.padded(len(coeffs) + extra), z) == eval_analytic(s, z)


@given(st.integers(1, 10).flatmap(lambda n: st.tuples(*[st.lists(complexes, min_size=n, max_size=n)] * 3)))
def test_convolution_commutative_associative(lists):
    a, b, c = (AnalyticSeries(x) for x in lists)
    assert np.allclose(convolve(a, b).array, convolve(b, a).array, rtol=1e-15, atol=0)
    lhs = convolve(convolve(a, b), c).array
    rhs = convolve(a, convolve(b, c)).array
    assert np.allclose(lhs, rhs, rtol=1e-15, atol=1e-300)


@given(st.complex_numbers(max_magnitude=0.99, allow_nan=False))
def test_jacobian_at_origin(b1):
    f = HarmonicFunction.from_coeffs([1, 0.3], [b1, 0.2])
    assert jacobian(f, 0) == pytest.approx(1 - abs(b1) ** 2)
    assert jacobian(f, 0) > 0


@settings(max_examples=50)
@given(st.lists(complexes, min_size=2, max_size=16), st.lists(complexes, min_size=1, max_size=16), _disk(0.9))
def test_laplace_residual_bound(h, g, z):
    h = [1] + h[1:]
    g = [0.5 * g[0] / max(1.0, abs(g[0]))] + g[1:]
    f = HarmonicFunction.from_coeffs(h, g)
    step = 1e-3
    res = laplacian_residuals(f, [z], step)[0]
    n = f.truncation
    assert res <= 10 * n * n * step * step * f.coefficient_magnitude_sum() + 1e-8


def test_json_round_trip():
    f = HarmonicFunction.from_coeffs([1, -0.25 + 0.5j], [0.1j, 0.2])
    data = harmonic_to_dict(f)
    assert data == {"h": [[1.0, 0.0], [-0.25, 0.5]], "g": [[0.0, 0.1], [0.2, 0.0]]}
    assert harmonic_from_dict(data) == f
    assert dumps(data) == dumps(harmonic_to_dict(harmonic_from_dict(data)))


@pytest.mark.parametrize("bad", [[], "x", [[1, 2, 3]], [True], [["a", 0]]])
def test_series_json_rejects_malformed(bad):
    with pytest.raises(ValueError):
        series_from_json(bad)
