import math

import numpy as np
import pytest
from numpy.polynomial import hermite as nph
from scipy.special import eval_hermite

from zetaflow import gfun, hermite
from zetaflow.errors import DomainError


def test_phi_matches_scipy_hermite():
    x = np.linspace(-4, 4, 17)
    for n in (0, 1, 2, 5, 12, 30):
        ref = eval_hermite(n, x) * np.exp(-x * x / 2)
        assert np.allclose(hermite.phi(n, x), ref, rtol=1e-11, atol=1e-12 * np.abs(ref).max())


def test_norms():
    for n in (0, 1, 5, 20):
        assert hermite.norm_sq(n) == pytest.approx(2**n * math.factorial(n) * math.sqrt(math.pi), rel=1e-15)
    assert hermite.log_norm_sq(400) == pytest.approx(400 * math.log(2) + math.lgamma(401) + 0.5 * math.log(math.pi))
    with pytest.raises(OverflowError):
        hermite.norm_sq(200)


def test_orthonormal_gauss_hermite():
    # Gauss-Hermite with 80 nodes integrates psi_m psi_n exactly for m + n < 160
    xg, wg = nph.hermgauss(80)
    tab = hermite.psi_table(30, xg) * np.exp(xg * xg / 2)
    gram = (tab * wg) @ tab.T
    assert np.max(np.abs(gram - np.eye(31))) <= 1e-12


def test_high_order_no_overflow():
    x = np.array([0.0, 5.0, 40.0, 90.0])
    v = hermite.phi_orthonormal(4000, x)
    assert np.all(np.isfinite(v))
    assert abs(v[0]) < 1 and abs(v[-1]) < 1
    with pytest.raises(OverflowError):
        hermite.phi(300, 25.0)


def test_fourier_eigen_relation_numeric():
    x = np.arange(-30.0, 30.0, 0.01)
    for n in (0, 3, 7):
        for t in (0.0, 1.3, -2.2):
            ft = 0.01 * np.sum(np.exp(-1j * t * x) * hermite.phi(n, x)) / math.sqrt(2 * math.pi)
            assert abs(ft - hermite.fourier_phi(n, t)) <= 1e-9 * math.sqrt(hermite.norm_sq(n))


def test_expand_converges():
    x = np.linspace(-6, 3, 50)
    exact = gfun.v_sigma(1.0, x)
    errs = [np.max(np.abs(hermite.reconstruct(hermite.expand(1.0, n), x) - exact)) for n in (20, 40, 80)]
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 1e-6


def test_coeff_relation():
    hc = hermite.expand(0.75, 30)
    for n in range(31):
        assert hc.coeffs[n] == pytest.approx(hc.ortho[n] / math.sqrt(hermite.norm_sq(n)), rel=1e-12)
    assert not hc.coeffs.flags.writeable


def test_bessel_inequality():
    for s in (0.75, 1.5):
        hc = hermite.expand(s, 150)
        sums = hermite.bessel_partial_sums(hc)
        total = hermite.kernel_l2_sq(s)
        assert np.all(np.diff(sums) >= 0)
        assert sums[-1] <= total * (1 + 1e-12)
        assert total - sums[-1] < 1e-6


def test_reconstruct_hat_matches_g():
    hc = hermite.expand(0.75, 120)
    approx = math.sqrt(2 * math.pi) * hermite.reconstruct_hat(hc, -5.0)
    assert abs(approx - gfun.g_identity(0.75 + 5j).value) <= 5e-5


def test_domains():
    with pytest.raises(DomainError):
        hermite.expand(0.1, 10)
    with pytest.raises(DomainError):
        hermite.expand(1.0, 500)
    with pytest.raises(DomainError):
        hermite.phi(-1, 0.0)
