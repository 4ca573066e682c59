"""Large-coupling expansion coefficients and eigenprojection drift."""

import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from robin_gap import asymptotics as asy
from robin_gap.errors import DomainError, IllConditionedWarning
from robin_gap.specfun import dirichlet_zero

K01 = 2.4048255576957728
TWO_K01_SQ = 11.566371925893569
# 1 - <u_beta, f>^2 from 40-digit quadrature (tests/oracle_gen.py)
DRIFT_REF = [(0, 1, 1.0e3, 2.2552748864512337e-06), (1, 1, 1.0e4, 4.8925216480511294e-08)]


@given(a=st.floats(-10, 10), b=st.floats(-10, 10), c=st.floats(-10, 10), h0=st.floats(1e-3, 1.0))
def test_richardson_exact_on_quadratics(a, b, c, h0):
    vals = [a + b * h + c * h * h for h in (h0 / 2 ** j for j in range(4))]
    table = asy.richardson_table(vals, 2.0)
    scale = abs(a) + abs(b) + abs(c) + 1.0
    assert abs(table[2][2] - a) <= 1e-12 * scale
    assert abs(table[3][3] - a) <= 1e-12 * scale


def test_stability_check_warns_on_divergence():
    with pytest.warns(IllConditionedWarning):
        assert not asy._check_stability("x", [1.0, 1.001, 1.0011, 2.0], 1e-12)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        # growth below the rounding floor is tolerated
        assert asy._check_stability("x", [1.0, 1.0 + 1e-15, 1.0 + 1e-15, 1.0 + 1e-13], 1e-12)


def test_extract_coefficients_fundamental():
    fit = asy.extract_coefficients(0, 1)
    assert fit.well_conditioned
    np.testing.assert_allclose(fit.c0, K01 ** 2, rtol=1e-12)
    np.testing.assert_allclose(fit.c1, -TWO_K01_SQ, rtol=1e-6)
    np.testing.assert_allclose(fit.c2, TWO_K01_SQ, rtol=1e-3)
    np.testing.assert_allclose(fit.c2_oracle, TWO_K01_SQ, rtol=1e-15)
    assert len(fit.beta_grid) == 6 and set(fit.stability) == {"c0", "c1", "c2"}


@pytest.mark.parametrize("beta0,ratio", [(1e3, 2.0), (1e4, 2.0), (1e3, 4.0)])
def test_c2_stable_under_grid_change(beta0, ratio):
    fit = asy.extract_coefficients(2, 2, beta0=beta0, ratio=ratio, with_alpha=False)
    np.testing.assert_allclose(fit.c2, fit.c2_oracle, rtol=1e-4)
    assert math.isnan(fit.c2_predicted)


def test_extract_domain():
    with pytest.raises(DomainError):
        asy.extract_coefficients(0, 1, beta0=10.0)
    with pytest.raises(DomainError):
        asy.extract_coefficients(0, 1, levels=9)


@pytest.mark.parametrize("n", [0, 1, 4])
@pytest.mark.parametrize("p", [1, 2, 3])
def test_rayleigh_sums(n, p):
    zeros = np.array([dirichlet_zero(n, q) for q in range(1, 201)])
    head = math.fsum(zeros ** (-2 * p))
    # remaining terms are below sum_{x > k_200} x^{-2p} / pi
    rest = zeros[-1] ** (1 - 2 * p) / ((2 * p - 1) * 3.0)
    assert head < asy.rayleigh_sum(n, p) <= head + rest


@pytest.mark.parametrize("n,m", [(0, 1), (0, 2), (1, 1), (3, 2)])
def test_alpha_equals_twice_dirichlet_eigenvalue(n, m):
    value, tail = asy.alpha_series(n, m)
    k2 = dirichlet_zero(n, m) ** 2
    assert tail < 1e-6 * k2
    np.testing.assert_allclose(value, 2.0 * k2, rtol=1e-8)


def test_alpha_tail_bounds_are_consistent():
    v64, t64 = asy.alpha_series(1, 2, 64)
    v128, t128 = asy.alpha_series(1, 2, 128)
    assert abs(v64 - v128) <= t64 + t128
    terms = asy.alpha_summands(1, 2, 64)
    # the raw truncated sum is far from converged; the tail estimate carries it
    assert abs(terms.cross_tail) > 100 * terms.tail_bound


def test_alpha_domain():
    with pytest.raises(DomainError):
        asy.alpha_series(0, 1, q_trunc=16)
    with pytest.raises(DomainError):
        asy.rayleigh_sum(0, 4)


@pytest.mark.parametrize("n,m", [(0, 1), (2, 1), (1, 3)])
def test_n_matrix_matches_alpha(n, m):
    rep = asy.n_matrix_entry(n, m)
    k2 = dirichlet_zero(n, m) ** 2
    np.testing.assert_allclose(rep.m_entry, 2.0 * k2, rtol=1e-13)
    terms = asy.alpha_summands(n, m)
    np.testing.assert_allclose(rep.truncated_entry,
                               terms.rharm + terms.same_space + terms.cross_space, rtol=1e-10)
    np.testing.assert_allclose(rep.n_entry, asy.alpha_series(n, m)[0], rtol=1e-10)
    assert rep.off_diagonal <= 1e-10 * abs(rep.n_entry)


@pytest.mark.parametrize("n,m,beta,ref", DRIFT_REF)
def test_projection_drift_reference(n, m, beta, ref):
    np.testing.assert_allclose(asy.projection_drift(n, m, beta), ref, rtol=1e-8)
    lo, hi = asy.projection_drift_bounds(n, m, beta)
    assert lo <= ref * (1 + 1e-12) and ref <= hi * (1 + 1e-12)


def test_projection_drift_scales_like_inverse_square():
    betas = np.array([1e3, 1e4, 1e5])
    d = np.array([asy.projection_drift(0, 2, b) for b in betas])
    slope = np.polyfit(np.log(betas), np.log(d), 1)[0]
    assert -2.1 < slope < -1.9


def test_direct_overlap_agrees_at_moderate_beta():
    np.testing.assert_allclose(asy.projection_overlap_direct(0, 1, 100.0),
                               asy.projection_drift(0, 1, 100.0), rtol=1e-6)
    with pytest.raises(DomainError):
        asy.projection_drift(0, 1, 50.0)


def test_coefficient_comparison_has_no_flags():
    rows = asy.coefficient_comparison([0, 1], [1])
    assert len(rows) == 2
    for row in rows:
        assert row.flag == ""
        assert row.c1_relerr < 1e-6 and row.c2_relerr < 1e-3 and row.alpha_relgap < 1e-3
    with pytest.raises(DomainError):
        asy.coefficient_comparison(range(5), [1])
