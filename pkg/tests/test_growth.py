from __future__ import annotations

import math

import numpy as np
import pytest

from zerogrowth.common.errors import BoundaryZeroError, ParameterError
from zerogrowth.efun import FiniteOrderFunction, with_origin_factor, zero_count
from zerogrowth.growth import (
    CircleQuadrature,
    argument_principle_count,
    growth_indicators,
    jensen_rhs,
    log_mean,
    log_mean_estimate,
    sup_norm,
)


def _random_genus_zero(rng: np.random.Generator) -> FiniteOrderFunction:
    count = int(rng.integers(1, 21))
    moduli = rng.uniform(0.2, 10.0, count)
    roots = moduli * np.exp(2j * np.pi * rng.uniform(size=count))
    leading = complex(rng.uniform(0.5, 2.0), rng.uniform(-1.0, 1.0))
    return FiniteOrderFunction.from_roots(roots, leading=leading)


def _radii_off_zeros(f: FiniteOrderFunction, rng: np.random.Generator, count: int = 3) -> list[float]:
    radii: list[float] = []
    while len(radii) < count:
        R = float(rng.uniform(0.3, 12.0))
        if np.all(np.abs(f.moduli - R) >= 0.01 * R):
            radii.append(R)
    return radii


def test_log_mean_of_monomial():
    f = FiniteOrderFunction(origin_mult=3)
    assert log_mean(f, 2.0) == pytest.approx(3.0 * math.log(2.0), abs=1e-12)


def test_log_mean_with_zero_on_circle():
    f = FiniteOrderFunction.from_roots([1.0])
    est = log_mean_estimate(f, 1.0)
    assert est.value == pytest.approx(0.0, abs=1e-8)
    assert est.rotation != 0.0


def test_log_mean_outside_zero():
    f = FiniteOrderFunction.from_roots([1.0])
    assert log_mean(f, 2.0) == pytest.approx(math.log(2.0), abs=1e-8)


def test_jensen_oracle_on_random_functions(rng):
    q = CircleQuadrature(4096)
    for _ in range(500):
        f = _random_genus_zero(rng)
        for R in _radii_off_zeros(f, rng):
            assert log_mean(f, R, q) == pytest.approx(jensen_rhs(f, R), abs=1e-8)


def test_jensen_oracle_with_zeros_at_origin(rng):
    q = CircleQuadrature(4096)
    for m in (1, 2, 5):
        for _ in range(20):
            base = _random_genus_zero(rng)
            f = with_origin_factor(base, m)
            for R in _radii_off_zeros(f, rng):
                assert log_mean(f, R, q) == pytest.approx(jensen_rhs(f, R), abs=1e-8)
                assert log_mean(f, R, q) == pytest.approx(log_mean(base, R, q) + m * math.log(R), abs=1e-8)


def test_log_mean_is_nondecreasing_in_radius(rng):
    q = CircleQuadrature(4096)
    for _ in range(30):
        f = _random_genus_zero(rng)
        means = [log_mean(f, R, q) for R in sorted(_radii_off_zeros(f, rng, count=10))]
        assert all(b >= a - 1e-8 for a, b in zip(means, means[1:]))


def test_jensen_rhs_of_identically_zero():
    assert jensen_rhs(FiniteOrderFunction.zero(), 1.0) == -math.inf


def test_sup_norm_values():
    assert sup_norm(FiniteOrderFunction(origin_mult=1), 2.0) == pytest.approx(2.0, rel=1e-10)
    assert sup_norm(FiniteOrderFunction.from_roots([1.0]), 2.0) == pytest.approx(3.0, abs=1e-8)
    assert sup_norm(FiniteOrderFunction(leading=-4.0), 5.0) == pytest.approx(4.0, rel=1e-12)


def test_sup_norm_rejects_bad_radius():
    with pytest.raises(ParameterError):
        sup_norm(FiniteOrderFunction(), -1.0)


def test_argument_principle_counts():
    quadratic = FiniteOrderFunction.from_roots([1.0, 2.0])
    count = argument_principle_count(quadratic, 3.0)
    assert (count.total, count.eta_comparable) == (2, 2)

    cube = FiniteOrderFunction(origin_mult=3)
    count = argument_principle_count(cube, 1.0)
    assert (count.total, count.eta_comparable) == (3, 0)

    assert argument_principle_count(FiniteOrderFunction.from_roots([1.0]), 0.5).total == 0


def test_argument_principle_matches_zero_count(rng):
    for _ in range(500):
        f = _random_genus_zero(rng)
        for R in _radii_off_zeros(f, rng, count=2):
            if np.any(np.abs(f.moduli - R) < 1e-6 * R):
                continue
            assert argument_principle_count(f, R).eta_comparable == zero_count(f, R)


def test_argument_principle_with_zero_on_contour():
    with pytest.raises(BoundaryZeroError):
        argument_principle_count(FiniteOrderFunction.from_roots([1.0]), 1.0, CircleQuadrature(64))


def test_quadrature_nodes_must_be_power_of_two():
    with pytest.raises(ParameterError):
        CircleQuadrature(100)


def test_growth_indicators_bundle():
    f = FiniteOrderFunction.from_roots([0.5, 3.0])
    out = growth_indicators(f, 1.0)
    assert out.zero_count == 1
    assert out.log_mean == pytest.approx(math.log(2.0), abs=1e-8)
    assert out.sup_norm >= math.exp(out.log_mean)
