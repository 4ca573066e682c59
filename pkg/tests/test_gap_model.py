"""Diagonal model of the resolvent gap: norms, tails and rate fits."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from robin_gap import dtn_circle as dtn
from robin_gap import gap_model as gm
from robin_gap.errors import DegenerateGridError, DivergenceWarning, DomainError, TailCertificateError

RTOL = 1e-13


@pytest.fixture(scope="module")
def small():
    return gm.build_model(200)


@given(n=st.integers(0, 3000), beta=st.floats(1e-2, 1e10))
def test_gap_is_difference_of_dinf_and_dbeta(n, beta):
    mode = dtn.dtn_mode(n)
    lam, w = mode.lambda_check, mode.weight
    d_inf = w / lam
    d_beta = w / (lam * (1 + lam / beta))
    gap = gm.gap_mode_eigenvalue(mode, beta)
    assert gap > 0
    assert abs((d_inf - d_beta) - gap) <= 8 * np.finfo(float).eps * d_inf


def test_operator_norm_is_sector_zero(model):
    for beta in (1.0, 1e3, 1e6):
        ref = dtn.weight(0) / (beta + dtn.dtn_eigenvalue(0))
        np.testing.assert_allclose(gm.operator_norm_gap(model, beta), ref, rtol=RTOL)
        val, tail = gm.schatten_norm_gap(model, beta, math.inf)
        assert tail == 0.0 and val == gm.operator_norm_gap(model, beta)


def test_operator_norm_tail_certificate_failure():
    # weights far below the analytic envelope cannot beat the tail bound
    modes = tuple(dtn.DtnMode(n, n + 0.25, 1e-9, 0.0, 1e-9) for n in range(3))
    with pytest.raises(TailCertificateError):
        gm.operator_norm_gap(gm.DiagonalModel(modes, 2), 10.0)


@pytest.mark.parametrize("p", [1.0, 2.0, 1.5])
@pytest.mark.parametrize("beta", [10.0, 1e4])
def test_schatten_enclosures_nest(model, small, p, beta):
    lo_s, t_s = gm.schatten_norm_gap(small, beta, p)
    lo_b, t_b = gm.schatten_norm_gap(model, beta, p)
    assert t_b < t_s
    # larger truncation gives a tighter interval inside the coarser one
    assert lo_s <= lo_b * (1 + 1e-12)
    assert lo_b + t_b <= (lo_s + t_s) * (1 + 1e-12)


def test_schatten_dinf_nests(model, small):
    lo_s, t_s = gm.schatten_norm_dinf(small, 1.0)
    lo_b, t_b = gm.schatten_norm_dinf(model, 1.0)
    assert lo_s <= lo_b <= lo_b + t_b <= lo_s + t_s
    assert t_b < 1e-3


def test_schatten_p1_grows_like_log(model):
    # beta S_1 ~ 2 pi log(beta): sectors n < beta each give ~ 2 pi / n
    b = np.array([1e3, 1e4, 1e5])
    vals = np.array([beta * gm.schatten_norm_gap(model, beta, 1.0)[0] for beta in b])
    slopes = np.diff(vals) / np.diff(np.log(b))
    np.testing.assert_allclose(slopes, 2 * math.pi, rtol=0.05)


def test_schatten_domain(model):
    with pytest.warns(DivergenceWarning):
        _, tail = gm.schatten_norm_gap(model, 10.0, 0.5)
    assert tail == math.inf
    with pytest.raises(DomainError):
        gm.schatten_norm_gap(model, 10.0, 0.3)
    with pytest.raises(DomainError):
        gm.schatten_norm_gap(model, -1.0, 1.0)


def test_remainder_identity(small):
    beta = 50.0
    gap = small.w / (beta + small.lam)
    expansion = small.w / beta - small.w * small.lam / beta ** 2
    np.testing.assert_allclose(gap - expansion, gm.remainder_per_mode(small, beta), rtol=1e-9, atol=1e-18)


@pytest.mark.parametrize("beta", [1e2, 1e4, 1e6])
def test_expansion_remainder_report(model, beta):
    rep = gm.expansion_remainder(model, beta)
    assert rep.bound_holds
    assert rep.kprime_envelope == math.pi
    assert rep.remainder <= rep.kprime_bound / beta ** 2


def test_rate_fit_recovers_power_law():
    grid = gm.beta_grid(1e2, 1e6, 9)
    fit = gm.rate_fit([(b, 3.0 * b ** -1.5) for b in grid])
    np.testing.assert_allclose(fit.exponent, -1.5, rtol=1e-12)
    np.testing.assert_allclose(math.exp(fit.log_constant), 3.0, rtol=1e-10)
    np.testing.assert_allclose(fit.r_squared, 1.0)


def test_rate_fit_constant_data():
    grid = gm.beta_grid(1.0, 1e4, 5)
    fit = gm.log_linear_fit([(b, 2.0) for b in grid])
    assert fit.r_squared == 1.0 and abs(fit.slope) < 1e-15


@pytest.mark.parametrize("pairs", [
    [(1.0, 1.0), (10.0, 1.0), (1e4, 1.0)],
    [(1.0, 1.0), (10.0, 1.0), (50.0, 1.0), (100.0, 1.0)],
    [(1.0, 1.0), (1e2, 1.0), (1e2, 1.0), (1e4, 1.0)],
])
def test_degenerate_grids(pairs):
    with pytest.raises(DegenerateGridError):
        gm.rate_fit(pairs)


def test_beta_grid_endpoints():
    g = gm.beta_grid(1e2, 1e6, 9)
    assert g[0] == 1e2 and g[-1] == 1e6 and len(g) == 9
    with pytest.raises(DegenerateGridError):
        gm.beta_grid(10.0, 1.0, 5)


def test_build_model_theta_route_encloses_closed_form():
    a = gm.build_model(20)
    b = gm.build_model(20, m_trunc=64)
    for ma, mb in zip(a.modes, b.modes):
        assert mb.gamma_sq <= ma.gamma_sq * (1 + 1e-14)
        assert ma.gamma_sq <= mb.gamma_sq + mb.gamma_sq_tail_bound
