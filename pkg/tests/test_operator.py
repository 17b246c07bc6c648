import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from singzeta.errors import ConfigError, DExtensionError, DomainError, PoleError
from singzeta.operator import (
    D_EXTENSION,
    N_EXTENSION,
    Extension,
    check_coupling,
    has_zero_mode,
    interlacing_ok,
    negative_eigenvalues,
    phase,
    positive_eigenvalues,
    rho,
    secular_F,
    spectrum,
)
from singzeta.special import bessel_zeros

# mpmath roots of the secular equation, 40 digits
EIG_PLUS = [1.0844524960218968316, 4.2062476536654363375, 7.346332928804629452]
EIG_FLIPPED = [0.66159425542530937835, 4.078868956956660097, 7.2600955426510857436]
RHO_REF = -3.1064844453343856933


def shoot_phi1(lam, g, ext, x0=1e-7):
    """phi_1(1) for the solution with alpha C_1 + beta C_2 = 0 at the origin."""
    c1, c2 = ext.beta, -ext.alpha
    y0 = [c1 * x0**g + lam * c2 * x0 ** (1 - g) / (2 * g - 1),
          c2 * x0 ** (-g) + lam * c1 * x0 ** (g + 1) / (2 * g + 1)]

    def rhs(x, y):
        return [g * y[0] / x - lam * y[1], -g * y[1] / x + lam * y[0]]

    sol = solve_ivp(rhs, (x0, 1.0), y0, method="DOP853", rtol=1e-12, atol=1e-14)
    return sol.y[0, -1]


def test_extension_normalisation():
    e = Extension(-3.0, -4.0)
    assert (e.alpha, e.beta) == pytest.approx((0.6, 0.8))
    assert Extension(0, -2) == D_EXTENSION
    assert Extension(5, 0) == N_EXTENSION
    assert Extension(1, 1).flipped() == Extension(1, -1)
    e = Extension(2, 1)
    assert Extension(e.alpha, e.beta) == e
    assert e.flipped().flipped() == e
    assert Extension.from_angle(math.pi / 2) == D_EXTENSION
    with pytest.raises(ConfigError):
        Extension(0, 0)


def test_coupling_validation():
    for g in (0.5, -0.5, float("nan"), 2.0):
        with pytest.raises(ConfigError):
            check_coupling(g)


def test_rho_value_and_sign_flip():
    assert rho(Extension(1, 1), -1 / 3) == pytest.approx(RHO_REF, rel=1e-14)
    e = Extension(1, 0.4)
    assert rho(e.flipped(), 0.25) == pytest.approx(-rho(e, 0.25))
    assert rho(N_EXTENSION, 0.2) == 0.0
    with pytest.raises(DExtensionError):
        rho(D_EXTENSION, 0.2)


def test_secular_function_pole():
    j1 = bessel_zeros(-0.2, [1])[0]
    with pytest.raises(PoleError):
        secular_F(j1, 0.3)


def test_reference_eigenvalues():
    ext = Extension(1, 1)
    assert positive_eigenvalues(ext, -1 / 3, 3) == pytest.approx(EIG_PLUS, rel=1e-14)
    neg = negative_eigenvalues(ext, -1 / 3, 3)
    assert -neg == pytest.approx(EIG_FLIPPED, rel=1e-14)


@pytest.mark.parametrize("ext,g", [(Extension(1, 1), -1 / 3), (Extension(1, -1), 0.3),
                                   (Extension(2, 1), 0.1)])
def test_eigenvalues_by_shooting(ext, g):
    lam = positive_eigenvalues(ext, g, 3)
    for x in lam:
        root = brentq(lambda t: shoot_phi1(t, g, ext), x * (1 - 1e-3), x * (1 + 1e-3), xtol=1e-13)
        assert root == pytest.approx(x, abs=1e-10)


def test_limiting_spectra_are_bessel_zeros():
    n = np.arange(1, 51)
    assert np.max(np.abs(positive_eigenvalues(D_EXTENSION, 0.3, 50)
                         - bessel_zeros(-0.2, n))) <= 1e-12
    assert np.max(np.abs(positive_eigenvalues(N_EXTENSION, 0.3, 50)
                         - bessel_zeros(0.2, n))) <= 1e-12
    lam = positive_eigenvalues(D_EXTENSION, 0.0, 5)
    assert lam == pytest.approx((n[:5] - 0.5) * np.pi, rel=1e-14)


def test_zero_mode_and_symmetry():
    assert has_zero_mode(N_EXTENSION)
    assert not has_zero_mode(D_EXTENSION)
    sp = spectrum(D_EXTENSION, 0.2, 5)
    assert np.allclose(sp.negative, -sp.positive)
    assert sp.n == 5


@pytest.mark.parametrize("g", [0.3, -0.3])
def test_interlacing_large_n(g):
    sp = spectrum(Extension(1, 1), g, 1000)
    assert interlacing_ok(sp.positive, g)
    assert interlacing_ok(-sp.negative, g)


def test_many_eigenvalues_are_roots():
    g, ext = -1 / 3, Extension(1, 1)
    lam = positive_eigenvalues(ext, g, 100000)
    assert np.all(np.diff(lam) > 0)
    low = secular_F(lam[:1000], g)
    assert np.max(np.abs(low - rho(ext, g))) <= 1e-9 * abs(rho(ext, g))
    # F is ill-conditioned for large lam; the counting phase is not
    th, _ = phase(lam[1000:], ext, g)
    m = th / np.pi
    assert np.max(np.abs(m - np.round(m))) < 1e-9
    assert np.all(np.diff(np.round(m)) == 1)


def test_phase_counts_eigenvalues():
    g, ext = 0.2, Extension(1, 2)
    lam = positive_eigenvalues(ext, g, 200)[50:]
    th, dth = phase(lam, ext, g)
    m = th / np.pi
    assert np.max(np.abs(m - np.round(m))) < 1e-10
    assert np.all(np.diff(np.round(m)) == 1)
    h = 1e-4
    fd = (phase(lam[:3] + h, ext, g)[0] - phase(lam[:3] - h, ext, g)[0]) / (2 * h)
    assert fd == pytest.approx(dth[:3], rel=1e-8)
    with pytest.raises(DomainError):
        phase(np.array([5.0]), ext, g)


@pytest.mark.parametrize("c", [0.5, 2.0])
def test_scaling_of_interval(c):
    g, ext = -1 / 3, Extension(1, 1)
    scaled = Extension(c ** (-g) * ext.alpha, c**g * ext.beta)
    a = positive_eigenvalues(ext, g, 20)
    b = positive_eigenvalues(scaled, g, 20, length=1 / c)
    assert b == pytest.approx(c * a, rel=1e-13)


def test_bad_counts():
    with pytest.raises(ConfigError):
        positive_eigenvalues(Extension(1, 1), 0.1, 0)
    with pytest.raises(ConfigError):
        positive_eigenvalues(Extension(1, 1), 0.1, 3, length=-1)


@settings(max_examples=12, deadline=None)
@given(theta=st.floats(0.05, math.pi - 0.05), g=st.floats(-0.45, 0.45))
def test_roots_solve_secular_equation(theta, g):
    ext = Extension.from_angle(theta)
    if ext.kind != "general":
        return
    lam = positive_eigenvalues(ext, g, 8)
    r = rho(ext, g)
    F = secular_F(lam, g)
    assert np.all(np.abs(F - r) <= 1e-9 * np.maximum(1, abs(r)))
    assert interlacing_ok(lam, g)


@settings(max_examples=12, deadline=None)
@given(theta=st.floats(0.05, math.pi - 0.05), g=st.floats(-0.45, 0.45))
def test_sign_of_representative_irrelevant(theta, g):
    e1 = Extension(math.cos(theta), math.sin(theta))
    e2 = Extension(-math.cos(theta), -math.sin(theta))
    assert np.array_equal(positive_eigenvalues(e1, g, 4), positive_eigenvalues(e2, g, 4))


@pytest.mark.parametrize("g", [-0.3, -0.45])
def test_relative_deviation_from_bessel_zeros(g):
    # lam_n - j_n ~ lam^(2g)/rho, so the relative deviation decays like lam^(2g-1)
    n = np.array([1000, 2000, 5000, 10000])
    j = bessel_zeros(g - 0.5, n)
    lam = positive_eigenvalues(Extension(1, 1), g, 10000)[n - 1]
    slope = np.polyfit(np.log(j), np.log(np.abs(lam - j) / j), 1)[0]
    assert abs(slope - (2 * g - 1)) < 0.1


@pytest.mark.parametrize("g", [0.3, -0.3])
def test_eigenvalues_increase_with_rho(g):
    for b in (1.0, -1.0, 2.5):
        e = Extension(1, b)
        r = rho(e, g)
        up = Extension(1, b * (r + 1e-3) / r)
        assert rho(up, g) == pytest.approx(r + 1e-3, rel=1e-9)
        assert np.all(positive_eigenvalues(up, g, 20) > positive_eigenvalues(e, g, 20))


def test_negative_spectrum_is_flipped_extension():
    ext, g = Extension(1, 1), -0.3
    np.testing.assert_array_equal(negative_eigenvalues(ext, g, 10),
                                  -positive_eigenvalues(Extension(1, -1), g, 10))


def test_N_extension_spectrum():
    g = 0.3
    sp = spectrum(N_EXTENSION, g, 5)
    z = bessel_zeros(0.5 - g, np.arange(1, 6))
    assert sp.positive == pytest.approx(z, rel=1e-14)
    assert sp.negative == pytest.approx(-z, rel=1e-14)
