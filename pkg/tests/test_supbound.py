"""Sup-certificate tests: domination, tail validity, derivative soundness."""

import json

import numpy as np
import pytest

from linnik.kernel import WeightKernel
from linnik.supbound import (A_eval, GridSpec, SupProblem, auto_grid,
                             derivative_bounds, domination_check, grid_max,
                             sup_bound, tail_bound)

KERN = WeightKernel(0.93)

# a representative problem of each flavour that actually occurs
PROBLEMS = [
    # pinned s1, swept s2 (second-zero tables)
    SupProblem(WeightKernel(1.058), k1=0.801, k2=1.392, k3=0.0,
               s11=0.903, s12=0.903, s21=0.34, s22=0.36),
    # swept s1, k3 term (second-zero tables, large lambda1)
    SupProblem(WeightKernel(0.99), k1=0.85, k2=0.0, k3=1.4725,
               s11=0.68, s12=0.70, s21=0.0, s22=0.0),
    # both boxes wide (second-character tables)
    SupProblem(WeightKernel(0.78), k1=0.25, k2=0.734, k3=0.0,
               s11=0.903, s12=1.69, s21=0.34, s22=0.36),
]
GRIDS = [GridSpec(0.0, 0.004, 0.004, 15.0),
         GridSpec(0.004, 0.0, 0.004, 15.0),
         GridSpec(0.015, 0.007, 0.015, 7.0)]


def test_A_zero_when_terms_cancel():
    prob = SupProblem(KERN, k1=0.7, k2=0.7, k3=0.0, s11=0.5, s12=0.9, s21=0.0, s22=0.0)
    t = np.linspace(0.0, 20.0, 101)
    assert np.max(np.abs(A_eval(prob, 0.7, 0.0, t))) < 1e-14


def test_A_even_in_t():
    prob = PROBLEMS[0]
    for t in (0.3, 1.7, 9.2):
        assert A_eval(prob, 0.903, 0.35, t) == pytest.approx(
            A_eval(prob, 0.903, 0.35, -t), abs=1e-13)


def test_A_decays_for_large_t():
    prob = PROBLEMS[1]
    gamma = prob.kernel.gamma
    t = np.linspace(100.0 * gamma, 100.0 * gamma + 50.0, 500)
    assert np.max(np.abs(A_eval(prob, 0.69, 0.0, t))) < 0.01


def test_tail_zero_without_k1_k2():
    prob = SupProblem(KERN, k1=0.0, k2=0.0, k3=2.0, s11=0.1, s12=0.5, s21=0.0, s22=0.0)
    assert tail_bound(prob, 6.0) == 0.0


def test_tail_requires_x1_at_least_4():
    with pytest.raises(ValueError):
        tail_bound(PROBLEMS[0], 3.9)


@pytest.mark.parametrize("prob,grid", list(zip(PROBLEMS, GRIDS)))
def test_tail_dominates_sampled_tail_values(prob, grid):
    rng = np.random.default_rng(21)
    x1 = grid.x1
    bound = tail_bound(prob, x1)
    t = rng.uniform(x1, x1 + 100.0, 10_000)
    s1 = rng.uniform(prob.s11, prob.s12, 10_000)
    s2 = rng.uniform(prob.s21, prob.s22, 10_000)
    kern = prob.kernel
    vals = (prob.k1 * np.real(kern.F(-s1 + 1j * t))
            - prob.k2 * np.real(kern.F(-(s1 - s2) + 1j * t))
            - prob.k3 * np.real(kern.F(1j * t)))
    assert np.max(vals) <= bound + 1e-12


def test_tail_nonincreasing_in_x1():
    prob = PROBLEMS[2]
    vals = [tail_bound(prob, x) for x in np.arange(4.0, 20.0, 0.5)]
    assert all(a >= b for a, b in zip(vals, vals[1:]))


def test_derivative_bounds_degenerate_cases():
    prob = SupProblem(KERN, k1=0.8, k2=0.0, k3=1.0, s11=0.1, s12=0.5, s21=0.0, s22=0.0)
    d1, d2, d3 = derivative_bounds(prob)
    assert d2 == 0.0
    assert d1 == pytest.approx(0.8 * prob.kernel.xf_exp_moment(0.5), rel=1e-12)
    prob2 = SupProblem(KERN, k1=0.6, k2=0.6, k3=0.5, s11=0.2, s12=0.4, s21=0.0, s22=0.0)
    d1b, _, d3b = derivative_bounds(prob2)
    assert d1b == 0.0  # d0 = max(0, k1 - k2 e^0) = 0
    assert d3b == pytest.approx(0.5 * prob2.kernel.xf_exp_moment(0.0), rel=1e-12)


@pytest.mark.parametrize("prob", PROBLEMS)
def test_derivative_bounds_dominate_finite_differences(prob):
    rng = np.random.default_rng(33)
    d1, d2, d3 = derivative_bounds(prob)
    h = 1e-6
    for _ in range(300):
        s1 = rng.uniform(prob.s11 + h, max(prob.s12 - h, prob.s11 + h))
        s2 = rng.uniform(prob.s21 + h, max(prob.s22 - h, prob.s21 + h))
        t = rng.uniform(h, 12.0)
        g1 = (A_eval(prob, s1 + h, s2, t) - A_eval(prob, s1 - h, s2, t)) / (2 * h)
        g2 = (A_eval(prob, s1, s2 + h, t) - A_eval(prob, s1, s2 - h, t)) / (2 * h)
        g3 = (A_eval(prob, s1, s2, t + h) - A_eval(prob, s1, s2, t - h)) / (2 * h)
        assert abs(g1) <= d1 * (1 + 1e-6) + 1e-9
        assert abs(g2) <= d2 * (1 + 1e-6) + 1e-9
        assert abs(g3) <= d3 * (1 + 1e-6) + 1e-9


def test_grid_max_degenerate_box():
    prob = SupProblem(KERN, k1=1.0, k2=0.5, k3=0.25, s11=0.4, s12=0.4, s21=0.1, s22=0.1)
    grid = GridSpec(0.0, 0.0, 0.0, 0.0)
    assert grid_max(prob, grid) == pytest.approx(float(A_eval(prob, 0.4, 0.1, 0.0)), rel=1e-14)


def test_zero_spacing_needs_degenerate_interval():
    prob = PROBLEMS[2]
    with pytest.raises(ValueError):
        grid_max(prob, GridSpec(0.0, 0.007, 0.015, 7.0))


@pytest.mark.parametrize("prob,grid", list(zip(PROBLEMS, GRIDS)))
def test_grid_max_below_bound(prob, grid):
    cert = sup_bound(prob, grid)
    assert grid_max(prob, grid) <= cert.bound
    assert cert.bound >= 0.0


@pytest.mark.parametrize("prob,grid", list(zip(PROBLEMS, GRIDS)))
def test_certificate_dominates_monte_carlo(prob, grid):
    cert = sup_bound(prob, grid)
    check = domination_check(cert, samples=100_000, seed=1234)
    assert check["max_excess"] <= 0.0


def test_determinism_across_parallel_schedules():
    prob, grid = PROBLEMS[2], GRIDS[2]
    certs = [sup_bound(prob, grid, jobs=j) for j in (1, 2, 7)]
    assert len({c.bound for c in certs}) == 1
    assert len({c.m0 for c in certs}) == 1


def test_sup_bound_rejects_small_x1():
    with pytest.raises(ValueError):
        sup_bound(PROBLEMS[0], GridSpec(0.0, 0.004, 0.004, 2.0))


def test_certificate_record_round_trips_to_json():
    cert = sup_bound(PROBLEMS[1], GRIDS[1])
    record = cert.as_record()
    blob = json.loads(json.dumps(record))
    assert blob["bound"] == cert.bound
    assert blob["m0"] == cert.m0
    assert set(blob) == {"problem", "grid", "m0", "d1", "d2", "d3", "tail", "bound"}


def test_problem_validation():
    with pytest.raises(ValueError):
        SupProblem(KERN, k1=1.0, k2=0.0, k3=0.0, s11=0.5, s12=0.4, s21=0.0, s22=0.0)
    with pytest.raises(ValueError):
        SupProblem(KERN, k1=-1.0, k2=0.0, k3=0.0, s11=0.1, s12=0.4, s21=0.0, s22=0.0)
    with pytest.raises(ValueError):
        SupProblem(KERN, k1=1.0, k2=0.0, k3=0.0, s11=0.1, s12=4.5, s21=0.0, s22=0.0)


def test_auto_grid_balances_slack():
    prob = PROBLEMS[2]
    grid = auto_grid(prob, x1=7.0, slack=0.01)
    d1, d2, d3 = derivative_bounds(prob)
    contributions = [0.5 * grid.ds1 * d1, 0.5 * grid.ds2 * d2, 0.5 * grid.dt * d3]
    total = sum(contributions)
    assert total == pytest.approx(0.01, rel=1e-9)
    active = [c for c in contributions if c > 0]
    assert max(active) == pytest.approx(min(active), rel=1e-9)
