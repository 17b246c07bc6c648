import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from singzeta.asymptotics import anomalous_residue, closed_form_A
from singzeta.errors import AccuracyLossError, OutOfStripError, PoleError, ToleranceError
from singzeta.operator import D_EXTENSION, N_EXTENSION, Extension, positive_eigenvalues
from singzeta.zeta import (
    ZetaContinuation,
    anomalous_residue_on_interval,
    continuation,
    eta,
    pole_table_eta_full,
    pole_table_plus,
    pole_table_zeta,
    residue,
    scaled_extension,
    scaling_covariance,
    zeta_full,
    zeta_plus_continued,
    zeta_plus_sum,
)


def rayleigh(nu):
    """Sums of j_{nu,n}^-2 and j_{nu,n}^-4."""
    return 1 / (4 * (nu + 1)), 1 / (16 * (nu + 1) ** 2 * (nu + 2))


@pytest.mark.parametrize("g", [0.3, -0.3, 0.1])
def test_rayleigh_sums(g):
    for ext, nu in ((D_EXTENSION, g - 0.5), (N_EXTENSION, 0.5 - g)):
        want = np.array(rayleigh(nu))
        got = zeta_plus_continued(ext, g, np.array([2.0, 4.0]))
        np.testing.assert_allclose(got, want, rtol=1e-12, atol=1e-15)
        direct = zeta_plus_sum(ext, g, np.array([2.0, 4.0]), n_eigs=20000)
        np.testing.assert_allclose(direct, want, rtol=1e-10)


def test_rayleigh_frozen_values():
    z = zeta_plus_continued(D_EXTENSION, 0.3, np.array([2.0, 4.0]))
    np.testing.assert_allclose(z.real, [0.3125, 0.0542534722222222], rtol=1e-12)


@pytest.mark.parametrize("g", [0.3, -1 / 3, 0.0])
def test_value_at_zero(g):
    # s = 0 is a removable point of zeta_+
    assert zeta_plus_continued(D_EXTENSION, g, 0.0) == pytest.approx(-g / 2, abs=1e-10)
    assert zeta_plus_continued(N_EXTENSION, g, 0.0) == pytest.approx(-0.5 + g / 2, abs=1e-10)


def test_sum_and_continuation_agree():
    s = np.array([1.2, 1.5, 2.0, 3.0, 1.4 + 2j])
    for ext, g in ((Extension(1, 1), -1 / 3), (Extension(2, 1), 0.3), (Extension(1, -1), 0.1)):
        a = zeta_plus_sum(ext, g, s)
        b = continuation(ext, g)(s)
        np.testing.assert_allclose(a, b, atol=1e-10)


def test_explicit_eigenvalues_in_direct_sum():
    lam = positive_eigenvalues(D_EXTENSION, 0.3, 50000)
    a = zeta_plus_sum(D_EXTENSION, 0.3, 2.0, eigenvalues=lam)
    assert a == pytest.approx(0.3125, rel=1e-10)


def test_residues_of_zeta_plus():
    g = -1 / 3
    c = continuation(Extension(1, 1), g)
    assert c.residue(1.0) == pytest.approx(1 / math.pi, abs=1e-9)
    for k in (1, 2):
        assert c.residue(2 * g * k) == pytest.approx(anomalous_residue(Extension(1, 1), g, k),
                                                     abs=1e-9)
    assert c.residue(2 * g * k) == pytest.approx(0.0190436913, abs=1e-9)
    gD = 0.3
    A3 = closed_form_A(gD, 1)[3]
    res = continuation(D_EXTENSION, gD).residue(-1.0)
    assert res == pytest.approx(-gD * (gD - 1) / (2 * math.pi), abs=1e-9)
    assert res == pytest.approx((1j * A3).real / (2 * math.pi), abs=1e-9)


def test_positive_g_residues():
    g, ext = 0.3, Extension(2, 1)
    c = continuation(ext, g)
    for k in (1, 2):
        assert c.residue(-2 * g * k) == pytest.approx(anomalous_residue(ext, g, k), abs=1e-9)


def test_full_zeta_and_eta():
    g = 0.3
    for s0 in (1.0, -1.0):
        assert abs(residue(lambda z: zeta_full(D_EXTENSION, g, z), s0)) < 1e-10
    s = np.array([0.3, 1.5, -0.7])
    assert np.max(np.abs(eta(N_EXTENSION, g, s))) < 1e-10
    ext, g = Extension(1, 1), -1 / 3
    r1 = residue(lambda z: eta(ext, g, z), 2 * g)
    want = anomalous_residue(ext, g, 1) - anomalous_residue(ext.flipped(), g, 1)
    assert r1 == pytest.approx(want, abs=1e-9)
    assert abs(residue(lambda z: eta(ext, g, z), 4 * g)) < 1e-10


def test_full_zeta_identity():
    ext, g, s = Extension(1, 1), -1 / 3, 0.4 + 0.3j
    want = zeta_plus_continued(ext, g, s) + np.exp(-1j * math.pi * s) * zeta_plus_continued(
        ext.flipped(), g, s)
    assert zeta_full(ext, g, s) == pytest.approx(want, rel=1e-14)


def test_errors():
    c = continuation(Extension(1, 1), -1 / 3)
    with pytest.raises(OutOfStripError):
        c(-5.0)
    with pytest.raises(PoleError):
        c(1.0005)
    with pytest.raises(PoleError):
        c(-2 / 3 + 1e-4)
    with pytest.raises(OutOfStripError):
        zeta_plus_sum(D_EXTENSION, 0.3, 1.0)
    with pytest.raises(ToleranceError):
        ZetaContinuation(Extension(1, 1), -1 / 3, quad_tol=1e-20)(0.5, check=True)
    with pytest.raises(AccuracyLossError):
        ZetaContinuation(Extension(100, 1), -0.05)
    with pytest.raises(PoleError):
        eta(Extension(1, 1), -1 / 3, -2 / 3)


def test_error_estimate_small():
    c = continuation(Extension(1, 1), -1 / 3)
    assert c.error_estimate(0.5) < 1e-12
    assert np.all(c.error_estimate(np.array([-1.5, 2.5j])) < 1e-10)
    # the mu^(1-s) weight amplifies rounding noise as Re s decreases
    est = c.error_estimate(np.array([0.5, -2.5, -4.5]))
    assert est[0] < est[1] < est[2]


def test_strip_for_positive_g():
    assert continuation(D_EXTENSION, 0.45).strip == -5.0
    assert continuation(Extension(1, 1), 0.1).strip == pytest.approx(-1.4)


def test_pole_tables():
    table = pole_table_plus(Extension(1, 1), -1 / 3, 6)
    hits = sorted((p.origin, p.k) for p in table if p.collision)
    assert hits == [("D-series", 4), ("D-series", 6), ("anomalous", 3), ("anomalous", 6)]
    assert table[0].s == 1.0 and table[0].residue == pytest.approx(1 / math.pi)
    z = pole_table_zeta(D_EXTENSION, 0.3, 5)
    assert all(abs(p.residue) < 1e-15 for p in z)
    e = pole_table_eta_full(Extension(1, 1), -1 / 3, 4)
    even = [p for p in e if p.origin == "anomalous" and p.k % 2 == 0]
    assert all(abs(p.residue) < 1e-15 for p in even)


def test_scaling():
    ext, g = Extension(1, 1), -1 / 3
    for c in (0.5, 2.0):
        e2 = scaled_extension(ext, g, c)
        for k in (1, 2, 3):
            lhs = anomalous_residue_on_interval(e2, g, k, 1 / c)
            rhs = c ** (2 * abs(g) * k) * anomalous_residue(ext, g, k)
            assert lhs == pytest.approx(rhs, rel=1e-12)
        rep = scaling_covariance(ext, g, c, 1)
        assert rep.root_error < 1e-12
        assert rep.residue_error < 1e-12
        assert rep.rho_identity_error < 1e-12
    assert anomalous_residue_on_interval(ext, g, 1, 1.0) == pytest.approx(
        anomalous_residue(ext, g, 1))


@settings(max_examples=15, deadline=None)
@given(x=st.floats(-4.0, 3.0), y=st.floats(0.05, 3.0))
def test_reflection_symmetry(x, y):
    c = continuation(Extension(1, 1), -1 / 3)
    s = complex(x, y)
    assert c(s.conjugate()) == pytest.approx(np.conj(c(s)), rel=1e-12, abs=1e-13)


@settings(max_examples=15, deadline=None)
@given(x=st.floats(-4.1, 3.0))
def test_real_on_real_axis(x):
    c = continuation(Extension(2, 1), -0.3)
    poles = [p for p, _ in c._pole_list()]
    if min(abs(x - p) for p in poles) < 2e-3:
        return
    v = c(x)
    assert abs(v.imag) <= 1e-12 * max(1.0, abs(v))
