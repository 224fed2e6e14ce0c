import math

import numpy as np
import pytest

from lgsieve import build_dickman_table, empirical_rho, rho


@pytest.fixture(scope="module")
def table():
    return build_dickman_table(max_u=6.0)


def test_rho_is_one_on_unit_interval(table):
    for u in (0.0, 0.25, 0.5, 1.0):
        assert rho(u, table) == 1.0


def test_rho_two_analytic(table):
    assert abs(rho(2.0, table) - (1 - math.log(2))) < 1e-6


def test_rho_analytic_on_1_2(table):
    # rho(u) = 1 - ln u on [1, 2], by integrating the delay equation
    for u in (1.1, 1.3, 1.5, 1.7, 1.9):
        assert abs(rho(u, table) - (1 - math.log(u))) < 1e-6


def test_rho_values_in_range(table):
    vals = table.values
    assert np.all(vals > 0) and np.all(vals <= 1)
    assert np.all(np.diff(vals) <= 1e-15)  # nonincreasing
    grid = np.arange(len(vals)) * table.step
    assert np.all(vals[grid <= 1.0] == 1.0)
    assert np.all(vals[grid > 1.0] < 1.0)


def test_grid_refinement(table):
    fine = build_dickman_table(step=2.0**-11, max_u=6.0)
    for u in (1.5, 2.0, 2.7, 3.3, 4.1, 5.0):
        assert abs(rho(u, table) - rho(u, fine)) < 1e-6


def test_rho_out_of_range(table):
    with pytest.raises(ValueError):
        rho(7.0, table)
    with pytest.raises(ValueError):
        rho(-0.1, table)


def test_bad_table_params():
    with pytest.raises(ValueError):
        build_dickman_table(step=0.0)
    with pytest.raises(ValueError):
        build_dickman_table(max_u=0.5)


def test_empirical_rho_u1(table10k):
    assert empirical_rho(10**4, 1.0, table10k) == 1.0


def test_empirical_rho_monotone_in_u(table10k):
    vals = [empirical_rho(10**4, u, table10k) for u in (1.0, 1.5, 2.0, 2.5, 3.0)]
    assert vals == sorted(vals, reverse=True)


def test_empirical_rho_requires_u_at_least_one(table10k):
    with pytest.raises(ValueError):
        empirical_rho(10**4, 0.5, table10k)
