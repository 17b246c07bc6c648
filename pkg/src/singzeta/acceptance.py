"""Acceptance suite: one or more pass/fail results per criterion.

Each check compares the package against an independent reference (mpmath at
50 digits, graded quadrature, closed forms, contour integrals) and also
enforces the runtime budget.  Run through ``singzeta verify`` or pytest.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from . import oracles
from .asymptotics import (
    closed_form_A,
    pole_table_anomalous,
    series_tau,
    anomalous_residue,
    anomalous_residue_negated,
)
from .operator import (
    D_EXTENSION,
    N_EXTENSION,
    Extension,
    interlacing_ok,
    positive_eigenvalues,
    spectrum,
)
from .resolvent import (
    trace_diff,
    trace_diff_by_quadrature,
    trace_dGD,
    trace_dGD_by_quadrature,
)
from .second_order import resolvent_relation_check, second_order_eigenvalues
from .special import _hankel_real, _series_real, bessel_zeros
from .zeta import continuation, eta, residue, scaling_covariance, zeta_full, zeta_plus_sum

G_GRID = (0.1, -0.1, 0.3, -0.3, -1 / 3)
EXT_GRID = (
    D_EXTENSION,
    N_EXTENSION,
    Extension(1, 1),
    Extension(1, -1),
    Extension(2, 1),
)
S_GRID = (1.2, 1.5, 2.0, 3.0)


@dataclass
class CriterionResult:
    key: str
    title: str
    passed: bool
    detail: str
    seconds: float

    def line(self):
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag} criterion {self.key}: {self.title} | {self.detail} | {self.seconds:.1f} s"


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0


def _crossover_gap(lo, hi, orders=(-0.8, -0.5, -0.2, 0.2, 0.5, 0.8, 1.3)):
    """max |series - Hankel| / amplitude over [lo, hi], and whether every
    gap lies within the Hankel remainder bound plus 1e-14 amplitude."""
    x = np.linspace(lo, hi, 201)
    amp = np.sqrt(2 / (np.pi * x))
    worst = 0.0
    within = True
    for nu in orders:
        s = _series_real(nu, x)
        h, bound = _hankel_real(nu, x)
        gap = np.abs(s - h)
        worst = max(worst, float(np.max(gap / amp)))
        within &= bool(np.all(gap <= bound + 1e-14 * amp))
    return worst, within


def criterion_1():
    out = []
    with _Timer() as t:
        n = np.arange(1, 101)
        e_half = float(np.max(np.abs(bessel_zeros(0.5, n) - n * math.pi)))
        e_mhalf = float(np.max(np.abs(bessel_zeros(-0.5, n) - (n - 0.5) * math.pi)))
        gap_core, _ = _crossover_gap(12.0, 16.0)
        gap_lit, within = _crossover_gap(10.0, 14.0)
    ok = e_half <= 1e-12 and e_mhalf <= 1e-12 and gap_core <= 1e-11 and within and t.seconds < 5
    out.append(CriterionResult(
        "1", "Bessel zeros; series/Hankel agreement on [12,16] and within bounds on [10,14]",
        ok, f"zero err {max(e_half, e_mhalf):.1e}; gap on [12,16] {gap_core:.1e}; "
            f"bounds hold {within}", t.seconds))
    out.append(CriterionResult(
        "1-window", "series/Hankel agreement <= 1e-11 on |z| in [10, 14]",
        gap_lit <= 1e-11, f"gap {gap_lit:.1e}", 0.0))
    return out


def criterion_2():
    with _Timer() as t:
        g = 0.3
        lam = positive_eigenvalues(D_EXTENSION, g, 50)
        ref = bessel_zeros(g - 0.5, np.arange(1, 51))
        e_code = float(np.max(np.abs(lam - ref)))
        e_mp = max(abs(lam[k] - oracles.bessel_zero(g - 0.5, k + 1, lam[k])) for k in range(20))
        inter = all(
            interlacing_ok(positive_eigenvalues(Extension(1, 1), gg, 1000), gg)
            and interlacing_ok(spectrum(Extension(1, 1), gg, 1000).negative * -1, gg)
            for gg in (0.3, -0.3))
    ok = e_code <= 1e-12 and e_mp <= 1e-12 and inter and t.seconds < 10
    return [CriterionResult(
        "2", "D spectrum equals j_{-0.2,n}; interlacing for (1,1)/sqrt2 at g = +-0.3",
        ok, f"err {max(e_code, e_mp):.1e}; interlacing {inter}", t.seconds)]


def criterion_3():
    with _Timer() as t:
        worst = 0.0
        for g in (0.1, -0.1, 0.3, -0.3, 1 / 3):
            for lam in (2.0, 5j, 3 + 4j):
                for f, q in ((trace_dGD, trace_dGD_by_quadrature),
                             (trace_diff, trace_diff_by_quadrature)):
                    a, b = f(lam, g), q(lam, g)
                    worst = max(worst, abs(a - b) / abs(b))
    ok = worst <= 1e-8 and t.seconds < 30
    return [CriterionResult(
        "3", "trace closed forms vs quadrature", ok, f"max rel err {worst:.1e}", t.seconds)]


def criterion_4():
    with _Timer() as t:
        worst = 0.0
        for g in (0.2, -0.3):
            fit = oracles.fit_trace_dGD_coefficients(g, 1)
            ref = closed_form_A(g, 1)
            worst = max(worst, max(abs(fit[k] - ref[k]) / abs(ref[k]) for k in range(2, 6)))
        mus = (10.0, 20.0, 40.0)
        slopes = []
        for g in (0.2, -0.3):
            r = oracles.trace_diff_remainder(g, 1, mus)
            slopes += [math.log(r[i + 1] / r[i]) / math.log(mus[i + 1] / mus[i]) for i in range(2)]
    ok = worst <= 1e-6 and max(slopes) < -6 and t.seconds < 60
    return [CriterionResult(
        "4", "A_2..A_5 from remainder fits; Tr(G_D - G_N) - 2g/lam decays faster than mu^-6",
        ok, f"max rel err {worst:.1e}; steepest-slowest log slope {max(slopes):.1f}", t.seconds)]


def criterion_5(n_eigs=100000):
    with _Timer() as t:
        worst = 0.0
        s = np.array(S_GRID)
        for g in G_GRID:
            for ext in EXT_GRID:
                a = zeta_plus_sum(ext, g, s, n_eigs=n_eigs)
                b = continuation(ext, g)(s)
                worst = max(worst, float(np.max(np.abs(a - b))))
    ok = worst <= 1e-7 and t.seconds < 300
    return [CriterionResult(
        "5", "direct sum vs continuation over the (g, ext) grid", ok,
        f"max abs diff {worst:.1e}", t.seconds)]


def criterion_6():
    out = []
    g = -1 / 3
    ext = Extension(1, 1)
    with _Timer() as t:
        e1 = max(abs(continuation(e, gg).residue(1.0) - 1 / math.pi)
                 for e in EXT_GRID for gg in (0.3, -1 / 3))
        gD = 0.3
        A3 = closed_form_A(gD, 1)[3]
        eD = abs(continuation(D_EXTENSION, gD).residue(-1.0) - (1j * A3).real / (2 * math.pi))
        c = continuation(ext, g)
        contour = {k: c.residue(2 * g * k) for k in (1, 2)}
        e_corr = max(abs(contour[k] - anomalous_residue(ext, g, k)) for k in (1, 2))
        e_eta = max(abs(residue(lambda z: eta(ext, g, z), 2 * g * k)) for k in (2,))
        e_eta1 = abs(residue(lambda z: eta(ext, g, z), 2 * g)
                     - (anomalous_residue(ext, g, 1) - anomalous_residue(ext.flipped(), g, 1)))
    ok = e1 <= 1e-6 and eD <= 1e-6 and e_corr <= 1e-5 and e_eta <= 1e-10 and e_eta1 <= 1e-5
    out.append(CriterionResult(
        "6", "contour residues: 1/pi at s=1, D pole at s=-1, anomalous at 2g and 4g, eta",
        ok, f"s=1 {e1:.1e}; s=-1 {eD:.1e}; 2g,4g {e_corr:.1e}; eta even {e_eta:.1e}",
        t.seconds))
    with _Timer() as t2:
        e_lit = max(abs(contour[k] - anomalous_residue_negated(ext, g, k)) for k in (1, 2))
    out.append(CriterionResult(
        "6-negated", "anomalous residues equal -(2g/pi) sin((1/2-g)k pi)/rho^k",
        e_lit <= 1e-5, f"max abs diff {e_lit:.1e} (opposite sign)", t2.seconds))
    return out


def criterion_7():
    with _Timer() as t:
        s = np.array([0.3, 1.5, 2.5, -0.7])
        e_eta = max(float(np.max(np.abs(eta(e, g, s)))) for e in (D_EXTENSION, N_EXTENSION)
                    for g in (0.3, -1 / 3))
        empty = len(pole_table_anomalous(Extension(1, 1), 0.0, 6)) == 0
        ts = series_tau(Extension(1, 1), 0.0, 1, 6)
        const = all(key == (0, 0) for key in ts.terms)
        e_res = max(abs(residue(lambda z: zeta_full(D_EXTENSION, 0.3, z), s0))
                    for s0 in (1.0, -1.0, -3.0))
    ok = e_eta <= 1e-10 and empty and const and e_res <= 1e-10
    return [CriterionResult(
        "7", "eta vanishes for D and N; g=0 controls; full D residues vanish",
        ok, f"eta {e_eta:.1e}; empty {empty}; constant tau {const}; residues {e_res:.1e}",
        t.seconds)]


def criterion_8():
    with _Timer() as t:
        reps = [scaling_covariance(Extension(1, 1), -1 / 3, c, k) for c in (0.5, 2.0)
                for k in (1, 2, 3)]
        e_formula = max(max(r.residue_error, r.rho_identity_error) for r in reps)
        e_root = max(r.root_error for r in reps)
    ok = e_formula <= 1e-12 and e_root <= 1e-12
    return [CriterionResult(
        "8", "residue covariance under scaling", ok,
        f"formula {e_formula:.1e}; roots {e_root:.1e}", t.seconds)]


def criterion_9():
    with _Timer() as t:
        grid = np.linspace(0.1, 0.9, 5)
        worst = 0.0
        for g, mu in ((-0.25, 2.0), (0.3, 3.5), (0.0, 1.7)):
            for which in ("D", "N"):
                worst = max(worst, max(resolvent_relation_check(x, y, mu, g, which)
                                       for x in grid for y in grid))
        e_lim = 0.0
        for g in (0.3, -0.3):
            e_lim = max(e_lim, float(np.max(np.abs(
                second_order_eigenvalues(D_EXTENSION, g, 20)
                - positive_eigenvalues(D_EXTENSION, g, 20)))))
            e_lim = max(e_lim, float(np.max(np.abs(
                second_order_eigenvalues(N_EXTENSION, g, 20)
                - positive_eigenvalues(N_EXTENSION, g, 20)))))
    ok = worst <= 1e-9 and e_lim <= 1e-12
    return [CriterionResult(
        "9", "second-order resolvent relation and limiting spectra", ok,
        f"kernel {worst:.1e}; spectra {e_lim:.1e}", t.seconds)]


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
}


def run(selected=None):
    """Run the chosen criteria (all by default) and return their results."""
    out = []
    for k in selected or sorted(CRITERIA):
        out.extend(CRITERIA[k]())
    return out
