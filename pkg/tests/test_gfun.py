import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zetaflow import gfun
from zetaflow.errors import DomainError

G_REF = {
    0.75 + 5j: -0.002204347250368742 - 0.0009206583231255524j,
    0.3 + 2j: 0.07273800498220727 - 0.030150994958093796j,
    2.5 - 10j: -2.8749684840338636e-05 + 1.564553138725572e-05j,
}


@pytest.mark.parametrize("z,ref", G_REF.items())
def test_both_routes_frozen(z, ref):
    a = gfun.g_identity(z)
    b = gfun.g_integral(z)
    assert abs(a.value - ref) <= 1e-13
    assert abs(b.value - ref) <= 1e-12


def test_exact_values():
    assert abs(gfun.g_integral(1.0).value - math.log(2)) <= 1e-12
    assert abs(gfun.g_integral(2.0).value - math.pi**2 / 12) <= 1e-12
    assert abs(gfun.g_identity(1.0).value - math.log(2)) <= 1e-12


def test_integral_against_mpmath_quad():
    z = mpmath.mpc(0.4, 3)
    with mpmath.workdps(25):
        ref = mpmath.quad(lambda x: mpmath.exp(z * x) / (1 + mpmath.exp(mpmath.exp(x))),
                          [-120, -20, 0, 3, 7])
    assert abs(gfun.g_integral(complex(z)).value - complex(ref)) <= 1e-10


def test_error_estimate_covers_actual():
    for z in (0.2 + 1j, 1.3 - 12j, 2.9 + 25j):
        a = gfun.g_integral(z)
        ref = gfun.g_identity(z)
        assert abs(a.value - ref.value) <= a.abs_err + ref.abs_err + 1e-15


def test_coarse_quadrature_degrades_but_bound_holds():
    z = 0.7 + 4j
    qs = gfun.QuadratureSpec(-80.0, 7.5, 0.5)
    a = gfun.g_integral(z, qs)
    ref = gfun.g_identity(z)
    assert abs(a.value - ref.value) <= a.abs_err + 1e-15


def test_v_sigma_shape():
    x = np.array([-50.0, 0.0, 3.0, 8.0])
    v = gfun.v_sigma(1.0, x)
    assert v[0] > 0 and v[-1] == 0.0
    assert abs(v[1] - 1 / (1 + math.e)) <= 1e-15


def test_density_normalizer_is_mass():
    for s in (0.5, 1.0, 2.0):
        x = np.arange(-120.0, 8.0, 0.01)
        mass = np.trapezoid(gfun.v_sigma(s, x), x)
        assert abs(gfun.density_normalizer(s) - mass) <= 1e-9


def test_vhat_zero_is_positive_mass():
    # V_sigma >= 0, so its transform at t = 0 is the positive total mass over sqrt(2 pi)
    for s in (0.55, 1.5):
        v = gfun.v_hat(s, 0.0).value
        assert abs(v.imag) <= 1e-15 and v.real > 0


def test_vhat_conjugate_symmetry():
    a = gfun.v_hat(0.8, 3.0).value
    b = gfun.v_hat(0.8, -3.0).value
    assert abs(a - b.conjugate()) <= 1e-15


def test_domain_errors():
    with pytest.raises(DomainError):
        gfun.g_integral(-0.1 + 1j)
    with pytest.raises(DomainError):
        gfun.v_hat(0.5, 500.0)
    with pytest.raises(ValueError):
        gfun.QuadratureSpec(1.0, 2.0, 0.1)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.1, 3.0), st.floats(-30.0, 30.0))
def test_routes_agree_property(sigma, t):
    z = complex(sigma, t)
    assert abs(gfun.g_integral(z).value - gfun.g_identity(z).value) <= 1e-9
