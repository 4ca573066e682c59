"""Robin, Dirichlet and Neumann eigenvalues of the unit disc."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from robin_gap import disc_spectrum as ds
from robin_gap.errors import DomainError

RTOL = 1e-13

# mpmath references (tests/oracle_gen.py)
ROBIN_REF = [
    (0, 1, 10.0, 4.7502054148719532),
    (0, 1, 1.0e3, 5.771631171904605),
    (0, 1, 1.0e5, 5.7830703003841774),
    (2, 3, 50.0, 129.81184970810999),
]
K01 = 2.4048255576957728


@pytest.mark.parametrize("n,m,beta,ref", ROBIN_REF)
def test_robin_reference(n, m, beta, ref):
    ev = ds.robin_eigenvalue(n, m, beta)
    np.testing.assert_allclose(ev.lam, ref, rtol=RTOL)
    assert ev.residual <= 1e-11 * (1 + beta)


def test_beta_zero_is_neumann():
    ev = ds.robin_eigenvalue(1, 1, 0.0)
    assert ev.lam == ev.mode.neumann_eigenvalue
    np.testing.assert_allclose(ev.lam, 1.8411837813406593 ** 2, rtol=RTOL)
    assert ds.robin_eigenvalue(0, 1, 0.0).lam == 0.0


def test_large_beta_approaches_dirichlet():
    ev = ds.robin_eigenvalue(0, 1, 1.0e8)
    # lambda = k^2 - 2 k^2 / beta + O(beta^-2)
    np.testing.assert_allclose(ev.dirichlet_shift, -2 * K01 ** 2 / 1e8, rtol=1e-7)


@pytest.mark.parametrize("beta", [-1.0, float("nan"), float("inf"), 2.0e12])
def test_beta_domain(beta):
    with pytest.raises(DomainError):
        ds.robin_eigenvalue(0, 1, beta)


def test_mode_domain():
    with pytest.raises(DomainError):
        ds.disc_mode(-1, 1)
    with pytest.raises(DomainError):
        ds.disc_mode(0, 0)


def test_multiplicity():
    assert ds.disc_mode(0, 2).multiplicity == 1
    assert ds.disc_mode(3, 2).multiplicity == 2


def test_lommel_integrals_reference():
    np.testing.assert_allclose(ds.normalization_integral(0, 1.0), 0.38958600876406155, rtol=RTOL)
    np.testing.assert_allclose(ds.cross_overlap(0, 1.0, 2.0), 0.26136456961610158, rtol=RTOL)
    np.testing.assert_allclose(ds.cross_overlap(3, 5.0, 7.0), 0.030448070005615786, rtol=1e-12)
    np.testing.assert_allclose(ds.normalization_integral(0, K01), 0.13475706197095846, rtol=RTOL)


def test_cross_overlap_coincident_limit():
    a = 3.3
    np.testing.assert_allclose(ds.cross_overlap(2, a, a + 1e-9), ds.normalization_integral(2, a), rtol=1e-8)
    np.testing.assert_allclose(ds.cross_overlap(2, a, a + 1e-6), ds.normalization_integral(2, a), rtol=1e-5)


def test_orthogonality_of_dirichlet_modes():
    k1, k2 = ds.disc_mode(4, 1).dirichlet_k, ds.disc_mode(4, 3).dirichlet_k
    assert abs(ds.cross_overlap(4, k1, k2)) < 1e-14


def test_boundary_pairing():
    assert ds.boundary_normal_derivative(0, 1) == -ds.disc_mode(0, 1).dirichlet_k
    np.testing.assert_allclose(ds.boundary_pairing(0, 1), 11.566371925893569, rtol=RTOL)


@given(n=st.integers(0, 12), m=st.integers(1, 6),
       b1=st.floats(0.0, 1e6), b2=st.floats(0.0, 1e6))
def test_monotone_in_beta_and_bracketed(n, m, b1, b2):
    lo, hi = sorted((b1, b2))
    e1, e2 = ds.robin_eigenvalue(n, m, lo), ds.robin_eigenvalue(n, m, hi)
    mode = e1.mode
    assert mode.neumann_eigenvalue <= e1.lam <= e2.lam < mode.dirichlet_eigenvalue


@given(n=st.integers(0, 10), m=st.integers(1, 5), beta=st.floats(1e-3, 1e9))
def test_robin_roots_interlace(n, m, beta):
    # the next radial root sits above the current Dirichlet zero
    a = ds.robin_eigenvalue(n, m, beta)
    b = ds.robin_eigenvalue(n, m + 1, beta)
    assert a.s < a.mode.dirichlet_k < b.s
