import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from byzsim.com import AttackerMajorityError, ConfigurationError, DomainError, InsufficientDataError, ShapeError
from byzsim.stats import (
    DimensionStats,
    compute_z_max,
    inverse_standard_normal_cdf,
    per_dimension_stats,
    required_seduced,
    stack_params,
    standard_normal_cdf,
)

from .util import make_updates


def test_z_table_lookup():
    budget = compute_z_max(50, 24)
    assert budget.s == 2
    assert budget.threshold == 0.96
    assert budget.z_max == 1.75


def test_fifty_workers_budget():
    budget = compute_z_max(51, 12)
    assert budget.s == 14
    assert standard_normal_cdf(budget.z_max) < budget.threshold <= standard_normal_cdf(budget.z_max + 0.01)


@pytest.mark.parametrize("n, m", [(3, 1), (10, 3), (50, 24), (51, 12), (101, 40), (1000, 499)])
def test_z_max_brackets_threshold(n, m):
    budget = compute_z_max(n, m)
    assert standard_normal_cdf(budget.z_max) < budget.threshold
    assert standard_normal_cdf(budget.z_max + 0.01) >= budget.threshold


def test_half_threshold_scans_below_zero():
    budget = compute_z_max(4, 1)
    assert budget.s == 2 and budget.threshold == 0.5
    assert budget.z_max == -0.01


def test_attacker_majority():
    assert required_seduced(5, 3) == 0
    with pytest.raises(AttackerMajorityError):
        compute_z_max(5, 3)


@pytest.mark.parametrize("n, m", [(5, 0), (5, 5), (5, 7), (1, 0)])
def test_z_max_rejects_bad_counts(n, m):
    with pytest.raises(ConfigurationError):
        compute_z_max(n, m)


@pytest.mark.parametrize("s", [1, 2, 3, 5])
def test_z_max_non_decreasing_in_n_for_fixed_s(s):
    z_values = []
    for n in range(2 * s + 1, 400):
        m = n // 2 + 1 - s
        if 1 <= m < n:
            z_values.append(compute_z_max(n, m).z_max)
    assert len(z_values) > 10
    assert all(a <= b for a, b in zip(z_values, z_values[1:]))


def test_continuous_budget_sits_just_below_threshold():
    budget = compute_z_max(50, 24)
    assert standard_normal_cdf(budget.z_continuous) < budget.threshold
    assert budget.threshold - standard_normal_cdf(budget.z_continuous) < 1e-8
    assert budget.z_max <= budget.z_continuous < budget.z_max + 0.01


def test_cdf_against_numeric_integration():
    fine = np.linspace(-6.0, 6.0, 120001)
    h = fine[1] - fine[0]
    density = np.exp(-0.5 * fine ** 2) / math.sqrt(2.0 * math.pi)
    cumulative = np.concatenate([[0.0], np.cumsum((density[1:] + density[:-1]) * h / 2.0)])
    oracle = 0.5 + cumulative - cumulative[60000]

    for z, expected in zip(fine[::12], oracle[::12]):
        assert abs(standard_normal_cdf(z) - expected) <= 1e-7


def test_cdf_known_values():
    assert standard_normal_cdf(0.0) == 0.5
    assert abs(standard_normal_cdf(1.96) - 0.9750021048517795) < 1e-12
    assert abs(standard_normal_cdf(-1.0) - 0.15865525393145707) < 1e-12


@pytest.mark.parametrize("z", [float("nan"), float("inf"), -float("inf")])
def test_cdf_domain(z):
    with pytest.raises(DomainError):
        standard_normal_cdf(z)


@given(st.floats(min_value=1e-12, max_value=1 - 1e-12))
def test_inverse_cdf_inverts(p):
    assert abs(standard_normal_cdf(inverse_standard_normal_cdf(p)) - p) <= 1e-12


def test_inverse_cdf_known_quantiles():
    assert inverse_standard_normal_cdf(0.5) == 0.0
    assert abs(inverse_standard_normal_cdf(0.975) - 1.959963984540054) < 1e-12
    assert abs(inverse_standard_normal_cdf(0.025) + 1.959963984540054) < 1e-12


@pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 1.5, float("nan")])
def test_inverse_cdf_domain(p):
    with pytest.raises(DomainError):
        inverse_standard_normal_cdf(p)


def test_per_dimension_stats_matches_two_pass(rng):
    matrix = rng.normal(size=(9, 3)) * [1.0, 10.0, 0.01] + [0.0, -3.0, 7.0]
    stats = per_dimension_stats(make_updates(matrix))

    for j in range(3):
        column = [float(value) for value in matrix[:, j]]
        mean = sum(column) / len(column)
        std = math.sqrt(sum((value - mean) ** 2 for value in column) / len(column))
        assert stats.mu[j] == pytest.approx(mean, abs=1e-12)
        assert stats.sigma[j] == pytest.approx(std, rel=1e-10, abs=1e-15)


def test_per_dimension_stats_identical_updates():
    stats = per_dimension_stats(make_updates([[1.5, -2.0]] * 4))
    np.testing.assert_array_equal(stats.mu, [1.5, -2.0])
    np.testing.assert_array_equal(stats.sigma, [0.0, 0.0])


def test_per_dimension_stats_needs_two_updates():
    with pytest.raises(InsufficientDataError):
        per_dimension_stats(make_updates([[1.0, 2.0]]))


def test_stack_params_errors():
    with pytest.raises(InsufficientDataError):
        stack_params([])
    with pytest.raises(ShapeError):
        stack_params([np.zeros(3), np.zeros(4)])


def test_dimension_stats_validation():
    with pytest.raises(ShapeError):
        DimensionStats(mu=np.zeros(3), sigma=np.zeros(2))
    with pytest.raises(DomainError):
        DimensionStats(mu=np.zeros(2), sigma=np.array([1.0, -1.0]))
    assert DimensionStats(mu=np.zeros(4), sigma=np.ones(4)).dim == 4


@settings(max_examples=50)
@given(st.integers(min_value=3, max_value=500), st.data())
def test_threshold_formula(n, data):
    m = data.draw(st.integers(min_value=1, max_value=n - 1))
    s = required_seduced(n, m)
    if s <= 0:
        with pytest.raises(AttackerMajorityError):
            compute_z_max(n, m)
        return
    budget = compute_z_max(n, m)
    assert budget.threshold == (n - s) / n
