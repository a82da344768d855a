from __future__ import annotations

import cmath
import math

import numpy as np
import pytest

from zerogrowth.common.errors import DegenerateInputError, ParameterError, RangeError
from zerogrowth.efun import ZeroEntry
from zerogrowth.laplace import (
    Kernel,
    TransformZeroData,
    exponential_moment,
    kernel_moment,
    moment_identity_residual,
    obstruction_conditions,
    support_params,
    transform_degree,
    transform_derivative,
    transform_eval,
    zeros_in_disk,
)
from zerogrowth.laplace.kernel import exp_moment


@pytest.fixture
def box() -> Kernel:
    return Kernel.piecewise_constant([0.0, 1.0], [1.0])


@pytest.fixture
def ramp() -> Kernel:
    """phi(t) = 2t on [0, 1]."""

    return Kernel.samples([0.0, 1.0], [0.0, 2.0])


def _exponential_zero_data(n: int, radius: float = 60.0) -> TransformZeroData:
    """Zero data of the transform of e^{-t} on [0, n]: zeros 1 + 2 pi i k/n, k != 0."""

    top = int(radius * n / (2.0 * math.pi))
    zeros = tuple(
        ZeroEntry(complex(1.0, 2.0 * math.pi * k / n))
        for k in range(-top, top + 1)
        if k != 0 and abs(complex(1.0, 2.0 * math.pi * k / n)) <= radius
    )
    return TransformZeroData(zeros=zeros, C_n=1.0, alpha_n=0, sigma=0.0, mu=float(n), n=float(n), R=radius)


def test_exp_moment_matches_closed_forms():
    x = np.array([0.0, 0.5, -0.9, 3.0, 2j * math.pi, -7.5 + 1j])
    j0 = exp_moment(0, x)
    assert j0[0] == pytest.approx(1.0)
    np.testing.assert_allclose(j0[1:], np.expm1(x[1:]) / x[1:], rtol=1e-13, atol=1e-15)

    j1 = exp_moment(1, x)
    assert j1[0] == pytest.approx(0.5)
    closed = (np.exp(x[1:]) * (x[1:] - 1.0) + 1.0) / x[1:] ** 2
    np.testing.assert_allclose(j1[1:], closed, rtol=1e-12, atol=1e-14)


def test_exp_moment_is_continuous_across_series_radius():
    inside = exp_moment(2, np.array([0.999999]))[0]
    outside = exp_moment(2, np.array([1.000001]))[0]
    assert inside == pytest.approx(outside, rel=1e-5)


def test_box_transform_values(box):
    assert transform_eval(box, 0.0, 1.0) == pytest.approx(1.0)
    assert abs(transform_eval(box, 2j * math.pi, 1.0)) < 1e-12
    assert transform_eval(box, 1.0, 1.0) == pytest.approx(math.e - 1.0, rel=1e-13)


def test_transform_of_vector_keeps_shape(box):
    z = np.array([[0.0, 1.0], [2.0, -1.0]], dtype=complex)
    out = transform_eval(box, z, 1.0)
    assert out.shape == (2, 2)
    assert out[1, 1] == pytest.approx(1.0 - math.exp(-1.0))


def test_truncation_cuts_the_kernel(box):
    assert transform_eval(box, 0.0, 0.25) == pytest.approx(0.25)
    assert transform_eval(box, 0.0, 3.0) == pytest.approx(1.0)


def test_derivative_matches_finite_difference(ramp):
    z = 0.3 + 0.7j
    h = 1e-4
    numeric = (transform_eval(ramp, z + h, 1.0) - transform_eval(ramp, z - h, 1.0)) / (2 * h)
    assert transform_derivative(ramp, z, 1.0) == pytest.approx(numeric, rel=1e-6)


def test_transform_range_guard(box):
    with pytest.raises(RangeError) as info:
        transform_eval(box, 800.0, 1.0)
    assert info.value.operation == "transform_eval"


def test_kernel_validation():
    with pytest.raises(ParameterError):
        Kernel.piecewise_constant([0.0, 2.0, 1.0], [1.0, 1.0])
    with pytest.raises(ParameterError):
        Kernel.piecewise_constant([-1.0, 1.0], [1.0])
    with pytest.raises(ParameterError):
        Kernel.piecewise_constant([0.0, 1.0], [1.0, 2.0])
    with pytest.raises(ParameterError):
        Kernel.samples([0.0, 1.0], [0.0, math.inf])


def test_kernel_moments(box, ramp):
    assert kernel_moment(box, 0, 1.0) == pytest.approx(1.0)
    assert kernel_moment(box, 1, 1.0) == pytest.approx(0.5)
    assert kernel_moment(ramp, 0, 1.0) == pytest.approx(1.0)
    assert kernel_moment(ramp, 1, 1.0) == pytest.approx(2.0 / 3.0)


def test_exponential_moment(box):
    out = exponential_moment(box, [0.0, 1.0, -2.0], 1.0)
    assert out[0.0] == pytest.approx(1.0, rel=1e-13)
    assert out[1.0] == pytest.approx(math.e - 1.0, rel=1e-12)
    assert out[-2.0] == pytest.approx((math.exp(2.0) - 1.0) / 2.0, rel=1e-12)


def test_exponential_moment_uses_absolute_value():
    signed = Kernel.piecewise_constant([0.0, 1.0, 2.0], [1.0, -1.0])
    assert exponential_moment(signed, [0.0], 2.0)[0.0] == pytest.approx(2.0)


def test_support_params(box):
    full = support_params(box, 2.0)
    assert full.sigma == pytest.approx(0.0, abs=1e-9)
    assert full.mu_n == pytest.approx(1.0, abs=1e-9)

    shifted = support_params(Kernel.piecewise_constant([2.0, 3.0], [1.0]), 5.0)
    assert shifted.sigma == pytest.approx(2.0, abs=1e-9)
    assert shifted.mu_n == pytest.approx(3.0, abs=1e-9)


def test_support_params_of_vanishing_kernel():
    with pytest.raises(DegenerateInputError):
        support_params(Kernel.piecewise_constant([0.0, 1.0], [0.0]), 1.0)


def test_box_zeros(box):
    data = zeros_in_disk(box, 1.0, 7.0)
    locations = sorted((z.location for z in data.zeros), key=lambda z: z.imag)
    assert len(locations) == 2
    assert locations[0] == pytest.approx(-2j * math.pi, abs=1e-8)
    assert locations[1] == pytest.approx(2j * math.pi, abs=1e-8)
    assert all(z.multiplicity == 1 for z in data.zeros)
    assert data.alpha_n == 0
    assert data.C_n == pytest.approx(1.0)


@pytest.mark.parametrize("radius", [20.0, 40.0])
def test_box_zeros_match_integer_multiples_of_two_pi_i(box, radius):
    data = zeros_in_disk(box, 1.0, radius)
    top = int(radius // (2.0 * math.pi))
    expected = [2j * math.pi * k for k in range(-top, top + 1) if k != 0]
    found = sorted((z.location for z in data.zeros), key=lambda z: z.imag)
    assert len(found) == len(expected)
    for z, want in zip(found, expected):
        assert abs(z - want) <= 1e-8
    assert all(z.multiplicity == 1 for z in data.zeros)


def test_box_has_no_zeros_in_small_disk(box):
    assert zeros_in_disk(box, 1.0, 5.0).zeros == ()


def test_zeros_are_conjugate_symmetric(ramp):
    data = zeros_in_disk(ramp, 1.0, 30.0)
    assert data.zeros
    locations = [z.location for z in data.zeros]
    for z in locations:
        assert min(abs(w - z.conjugate()) for w in locations) < 1e-8
        assert abs(transform_eval(ramp, z, 1.0)) < 1e-8 * max(1.0, abs(z))


def test_zero_data_factorization_reproduces_transform(box):
    data = zeros_in_disk(box, 1.0, 40.0)
    f = data.to_function()
    assert f.expoly == pytest.approx((0.5,), abs=1e-9)
    assert f.factor_genus == 0
    assert len(data.zeros) == 12


def test_moment_identity_for_box(box):
    result = moment_identity_residual(box, 100.0)
    assert result.rhs == pytest.approx(0.0, abs=1e-10)
    assert result.residual < 1e-10
    assert result.zero_count == 30


def test_moment_identity_for_ramp_converges(ramp):
    results = [moment_identity_residual(ramp, R) for R in (25.0, 50.0, 100.0, 200.0)]
    assert results[-1].rhs == pytest.approx(-1.0 / 6.0, abs=1e-5)
    residuals = [r.residual for r in results]
    assert all(b < a for a, b in zip(residuals, residuals[1:]))
    assert residuals[-1] < 2e-2


def test_moment_identity_reuses_zero_data(box):
    data = zeros_in_disk(box, 1.0, 20.0)
    result = moment_identity_residual(box, 20.0, zero_data=data)
    assert result.zero_count == len(data.zeros)


def test_moment_identity_needs_nonzero_mass():
    odd = Kernel.piecewise_constant([0.0, 1.0, 2.0], [1.0, -1.0])
    with pytest.raises(DegenerateInputError):
        moment_identity_residual(odd, 10.0)


def test_transform_degree():
    data = TransformZeroData(
        zeros=(ZeroEntry(2j * math.pi), ZeroEntry(-2j * math.pi)),
        C_n=1.0,
        alpha_n=0,
        sigma=0.0,
        mu=1.0,
        n=1.0,
        R=7.0,
    )
    assert transform_degree(data, 1.5) == pytest.approx(1.0 + 2.0 * (2.0 * math.pi) ** -1.5)
    with pytest.raises(ParameterError):
        transform_degree(data, 2.0)


def test_obstruction_pattern_for_exponential_kernel():
    ns = [10, 20, 40, 80]
    seq = [_exponential_zero_data(n) for n in ns]
    report = obstruction_conditions(seq, [float(n) for n in ns], 1.5, [2.0, 4.0, 8.0])
    assert report.cond1_bounded
    assert report.cond2_decays
    assert report.cond3_bounded
    assert report.pattern_holds

    expected = (math.atan(math.sqrt(60.0**2 - 1.0)) - math.atan(math.sqrt(8.0**2 - 1.0))) / math.pi
    assert report.limits[8.0][1] == pytest.approx(expected, abs=0.02)
    assert len(report.rows) == len(ns) * 3


def test_obstruction_with_empty_tails():
    seq = [_exponential_zero_data(n, radius=20.0) for n in (10, 20)]
    report = obstruction_conditions(seq, [10.0, 20.0], 1.5, [100.0])
    assert report.limits[100.0] == (0.0, 0.0, 0.0)
    assert report.cond2_decays


def test_obstruction_on_imaginary_axis():
    zeros = tuple(ZeroEntry(complex(0.0, s * 2.0 * math.pi * k)) for k in range(1, 20) for s in (1, -1))
    data = TransformZeroData(zeros=zeros, C_n=1.0, alpha_n=0, sigma=0.0, mu=1.0, n=1.0, R=130.0)
    report = obstruction_conditions([data, data], [1.0, 1.0], 1.5, [5.0, 10.0])
    assert all(row.cond1 == 0.0 for row in report.rows)
    assert all(row.cond2 == pytest.approx(0.0, abs=1e-15) for row in report.rows)


def test_obstruction_validation():
    data = _exponential_zero_data(10)
    with pytest.raises(ParameterError):
        obstruction_conditions([data], [1.0, 2.0], 1.5, [2.0])
    with pytest.raises(ParameterError):
        obstruction_conditions([data], [1.0], 1.0, [2.0])
    with pytest.raises(ParameterError):
        obstruction_conditions([data], [1.0], 1.5, [])


def test_box_transform_matches_closed_form(box):
    z = 3.0 + 4.0j
    closed = (cmath.exp(z) - 1.0) / z
    assert transform_eval(box, z, 1.0) == pytest.approx(closed, rel=1e-13)
