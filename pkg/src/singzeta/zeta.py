"""Spectral zeta functions: direct sums and the contour continuation.

zeta_+(s) sums lam_n^(-s) over the positive eigenvalues.  Its continuation is

    zeta_+(s) = 1/(2 pi i (s-1)) int lam^(1-s) Tr G^2(lam) dlam

along an upward path crossing the positive real axis to the left of the
first eigenvalue: the rays lam = -+ i mu (mu >= r) joined by the arc
|lam| = r, Re lam > 0.  On mu >= 1 the order-N asymptotic series is
subtracted and integrated analytically, which produces the poles.  Beyond
mu_D = 25 the remainder is itself known in closed form: higher Hankel
terms for the D part and an exact geometric tail for the tau part.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import jv

from .asymptotics import (
    F_ray_constant,
    Pole,
    anomalous_pole_location,
    anomalous_residue,
    pole_table_anomalous,
    pole_table_D,
    pole_table_eta,
    pole_table_full_minus_D,
    residues_from_series,
    series_T,
    trace_dGD_coefficients,
    validity_strip,
)
from .errors import (
    AccuracyLossError,
    ConfigError,
    OutOfStripError,
    PoleError,
    ToleranceError,
)
from .operator import Extension, check_coupling, phase, positive_eigenvalues, rho
from .quadrature import contour_residue, log_panels, panel_rule
from .resolvent import trace_G2

MU_D = 25.0
POLE_GAP = 1e-3
REMOVABLE_RADIUS = 1e-2
K_HIGH = 40


def _s_array(s):
    scalar = np.ndim(s) == 0
    return np.atleast_1d(np.asarray(s, dtype=complex)), scalar


def _ipow(sigma, w):
    """(sigma i)^w on the principal branch, w complex array."""
    return np.exp(1j * sigma * 0.5 * math.pi * w)


# ---------------------------------------------------------------------------
# direct sums


def zeta_tail(lam_N, ext, g, s):
    """sum_{n > N} lam_n^(-s) from the counting phase and Euler-Maclaurin.

    With theta(lam_n) = m_n pi and theta increasing, the continuous index
    t(lam) = theta(lam)/pi turns the tail into
        (1/pi) int_{lam_N}^inf lam^(-s) theta'(lam) dlam - f(N)/2 - f'(N)/12.
    """
    s, scalar = _s_array(s)
    lam_N = float(lam_N)
    _, dth_N = phase(np.array([lam_N]), ext, g)
    lam, w = log_panels(lam_N, lam_N * math.exp(40.0), per_unit=2.0, n=16)
    _, dth = phase(lam, ext, g)
    corr = (dth - 1.0)[:, None] * np.exp(-np.log(lam)[:, None] * s[None, :])
    integral = lam_N ** (1 - s) / (math.pi * (s - 1)) + (w[:, None] * corr).sum(axis=0) / math.pi
    f_N = lam_N ** (-s)
    df_N = -s * lam_N ** (-s - 1) * math.pi / dth_N[0]
    out = integral - 0.5 * f_N - df_N / 12.0
    return complex(out[0]) if scalar else out


def zeta_plus_sum(ext, g, s, n_eigs=100000, eigenvalues=None):
    """Direct sum over the first n_eigs positive eigenvalues plus the tail.

    Valid for Re s > 1.  The zero mode of the N-extension is excluded.
    """
    g = check_coupling(g)
    s, scalar = _s_array(s)
    if np.any(s.real <= 1):
        raise OutOfStripError("the direct sum needs Re s > 1")
    lam = eigenvalues if eigenvalues is not None else positive_eigenvalues(ext, g, n_eigs)
    lam = np.asarray(lam, dtype=float)
    logl = np.log(lam)
    head = np.array([np.sum(np.exp(-sk * logl)) for sk in s])
    out = head + zeta_tail(lam[-1], ext, g, s)
    return complex(out[0]) if scalar else out


# ---------------------------------------------------------------------------
# contour continuation


def _anomalous_tail_terms(ext, g, sigma, N, kmax):
    """(exponent, coefficient) of the tau-part remainder beyond order N."""
    if ext.kind in ("D", "N") or g == 0:
        return []
    r = rho(ext, g)
    f = F_ray_constant(g, sigma)
    out = []
    if g < 0:
        c = f / r
        for k in range(N + 1, kmax + 1):
            out.append((2 * g * k - 2, 2 * g * c**k * (2 * g * k - 1)))
    else:
        d = r / f
        for k in range(N + 1, kmax + 1):
            out.append((-2 * g * k - 2, 2 * g * d**k * (2 * g * k + 1)))
    return out


def _anomalous_remainder(ext, g, sigma, N, lam):
    """Exact tau-part remainder T_A - S_A on the sigma ray (closed form)."""
    r = rho(ext, g)
    f = F_ray_constant(g, sigma)
    if g < 0:
        x = f / r * lam ** (2 * g)
        return 2 * g * x ** (N + 1) / lam**2 * (
            (2 * g * (N + 1) - 1) / (1 - x) + 2 * g * x / (1 - x) ** 2)
    y = r / f * lam ** (-2 * g)
    return 2 * g * y ** (N + 1) / lam**2 * (
        (2 * g * (N + 1) + 1) / (1 - y) + 2 * g * y / (1 - y) ** 2)


@dataclass
class ZetaContinuation:
    """zeta_+ of one extension, continued to Re s > validity_strip(g, N).

    Parameters
    ----------
    ext, g : extension and coupling.
    N : subtraction order (number of asymptotic terms removed on mu >= 1).
    mu_max : largest mu allowed before the tau expansion must be convergent.
    quad_tol : tolerated quadrature error estimate.
    """

    ext: object
    g: float
    N: int = 6
    mu_max: float = 1e4
    quad_tol: float = 1e-10
    _nodes: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.g = check_coupling(self.g)
        if not (1 <= self.N <= 12):
            raise ConfigError("N must lie in 1..12")
        if self.ext.kind in ("D", "N") or self.g == 0:
            # no tau expansion: only the A_k remainder limits the strip
            self.strip = 1.0 - self.N
        else:
            self.strip = validity_strip(self.g, self.N)
        lam1 = positive_eigenvalues(self.ext, self.g, 1)[0]
        self.radius = min(0.5, 0.5 * lam1)
        self._build()
        self._poles = self._pole_list()

    # -- setup -----------------------------------------------------------------

    def _mu_A(self):
        if self.ext.kind in ("D", "N") or self.g == 0:
            return MU_D
        r = abs(rho(self.ext, self.g))
        g = self.g
        # |tau ratio| <= 1/2 on [mu_A, inf)
        mu = (0.5 * r) ** (1 / (2 * g)) if g < 0 else (2 * r) ** (1 / (2 * g))
        mu = max(MU_D, mu)
        if mu > self.mu_max:
            raise AccuracyLossError(
                f"tau expansion converges only beyond mu = {mu:.3g} > mu_max", mu)
        return mu

    def _build(self, coarse=False):
        g, ext, N = self.g, self.ext, self.N
        n = 8 if coarse else 16
        nd = {}
        # arc
        th, wth = panel_rule(np.linspace(-0.5 * math.pi, 0.5 * math.pi, 13), n)
        lam = self.radius * np.exp(1j * th)
        nd["arc"] = (lam, wth, trace_G2(lam, g, ext))
        # short rays and region B
        mu_s, w_s = log_panels(self.radius, 1.0, per_unit=8.0, n=n)
        mu_b, w_b = log_panels(1.0, MU_D, per_unit=4.0, n=n)
        self.series = {sg: series_T(ext, g, sg, N) for sg in (1, -1)}
        for sg in (1, -1):
            T_s = trace_G2(sg * 1j * mu_s, g, ext)
            lb = sg * 1j * mu_b
            R_b = trace_G2(lb, g, ext) - self.series[sg].evaluate(lb)
            nd[("short", sg)] = (mu_s, w_s, T_s)
            nd[("B", sg)] = (mu_b, w_b, R_b)
        # region C, tau part between MU_D and mu_A
        self.mu_A = self._mu_A()
        if self.mu_A > MU_D:
            mu_c, w_c = log_panels(MU_D, self.mu_A, per_unit=4.0, n=n)
            for sg in (1, -1):
                nd[("C", sg)] = (mu_c, w_c, _anomalous_remainder(ext, g, sg, N, sg * 1j * mu_c))
        self._nodes = nd
        self.d_tail = {sg: trace_dGD_coefficients(g, sg, K_HIGH) for sg in (1, -1)}
        self.a_tail = {sg: _anomalous_tail_terms(ext, g, sg, N, self._kmax_tail()) for sg in (1, -1)}

    def _kmax_tail(self):
        # ratio at mu_A is at most 1/2: 70 terms reach 1e-21
        return self.N + 70

    # -- evaluation --------------------------------------------------------------

    def _check_s(self, s):
        if np.any(s.real <= self.strip):
            raise OutOfStripError(
                f"s must satisfy Re s > {self.strip:.6g} for N = {self.N}")

    def _pole_list(self):
        """(location, summed residue) of every singular point of the formula."""
        acc = {1.0: 1 / math.pi}
        for s0, res in residues_from_series(self.series[1], self.series[-1]).values():
            key = round(float(s0), 12)
            acc[key] = acc.get(key, 0) + res
        return list(acc.items())

    def _numeric(self, s, nodes):
        """Quadrature part of (s - 1) zeta_+(s)."""
        acc = np.zeros(s.shape, dtype=complex)
        lam, w, T = nodes["arc"]
        # lam^(2-s) on the arc, principal branch
        acc += (w[:, None] * T[:, None] * np.exp(np.log(lam)[:, None] * (2 - s)[None, :])).sum(0)
        for key, (mu, wm, vals) in nodes.items():
            if key == "arc":
                continue
            sg = key[1]
            logl = np.log(mu)[:, None] + 1j * sg * 0.5 * math.pi
            acc += (wm[:, None] * vals[:, None] * np.exp(logl * (1 - s)[None, :])).sum(0)
        return acc / (2 * math.pi)

    def _analytic(self, s):
        """Integrals of the subtracted series and of the closed-form tails."""
        acc = np.zeros(s.shape, dtype=complex)
        for sg in (1, -1):
            for key, c in self.series[sg].terms.items():
                e = self.series[sg].exponent(key)
                den = s - e - 2
                if np.any(den == 0):
                    raise PoleError(f"s = {e + 2} is a pole of zeta_+")
                acc += c * _ipow(sg, 1 + e - s) / den
            A = self.d_tail[sg]
            for k in range(self.N + 1, K_HIGH + 1):
                e = -k
                acc += A[k] * _ipow(sg, 1 + e - s) * MU_D ** (2 + e - s) / (s - e - 2)
            for e, c in self.a_tail[sg]:
                acc += c * _ipow(sg, 1 + e - s) * self.mu_A ** (2 + e - s) / (s - e - 2)
        return acc / (2 * math.pi)

    def _raw(self, s):
        self._check_s(s)
        return (self._numeric(s, self._nodes) + self._analytic(s)) / (s - 1)

    def __call__(self, s, check=False):
        """zeta_+(s).

        Within POLE_GAP of a pole a PoleError is raised; near a removable
        singularity (zero residue) the value is the mean over a small circle.
        With check=True a ToleranceError is raised if the quadrature error
        estimate exceeds quad_tol.
        """
        s, scalar = _s_array(s)
        self._check_s(s)
        out = np.empty(s.shape, dtype=complex)
        todo = np.ones(s.shape, dtype=bool)
        for s0, res in self._poles:
            near = np.abs(s - s0) < POLE_GAP
            if not np.any(near):
                continue
            if abs(res) > 1e-13:
                raise PoleError(f"s is within {POLE_GAP} of the pole at {s0:.15g}")
            z = s0 + REMOVABLE_RADIUS * np.exp(2j * math.pi * np.arange(32) / 32)
            out[near] = np.mean(self._raw(z))
            todo &= ~near
        if np.any(todo):
            out[todo] = self._raw(s[todo])
        if check:
            est = np.max(self.error_estimate(s[todo])) if np.any(todo) else 0.0
            if est > self.quad_tol:
                raise ToleranceError(f"quadrature error estimate {est:.3g} exceeds {self.quad_tol:.3g}")
        return complex(out[0]) if scalar else out

    def error_estimate(self, s):
        """|difference| between the 16-point and 8-point panel rules."""
        s, scalar = _s_array(s)
        self._check_s(s)
        if s.size == 0:
            return 0.0 if scalar else np.zeros(0)
        fine = self._nodes
        self._build(coarse=True)
        coarse = self._nodes
        self._build()

        def est(z):
            return np.abs(self._numeric(z, fine) - self._numeric(z, coarse)) / np.abs(z - 1)

        out = np.empty(s.shape)
        todo = np.ones(s.shape, dtype=bool)
        # near a singular point the value is a circle mean, so estimate there
        ring = REMOVABLE_RADIUS * np.exp(2j * math.pi * np.arange(8) / 8)
        for s0, _ in self._poles:
            near = np.abs(s - s0) < POLE_GAP
            if np.any(near):
                out[near] = np.max(est(s0 + ring))
                todo &= ~near
        if np.any(todo):
            out[todo] = est(s[todo])
        return float(out[0]) if scalar else out

    def residue(self, s0, radius=0.02, nodes=64):
        """Residue of zeta_+ at s0 by the trapezoid rule on a small circle."""
        return contour_residue(self._raw, s0, radius, nodes)


_CACHE = {}


def continuation(ext, g, N=6, mu_max=1e4, quad_tol=1e-10):
    """Cached ZetaContinuation for (ext, g, N, mu_max)."""
    key = (ext, float(g), int(N), float(mu_max), float(quad_tol))
    if key not in _CACHE:
        _CACHE[key] = ZetaContinuation(ext, g, N, mu_max, quad_tol)
    return _CACHE[key]


def zeta_plus_continued(ext, g, s, N=6, mu_max=1e4, quad_tol=1e-10, check=False):
    """Analytic continuation of zeta_+ to Re s > validity_strip(g, N)."""
    return continuation(ext, g, N, mu_max, quad_tol)(s, check=check)


def _combine(parts, s):
    """sum_j w_j(s) zeta_j(s) for continuations zeta_j and entire weights w_j.

    Points within POLE_GAP of a singularity of some zeta_j are resolved by
    the combined residue: nonzero raises PoleError, zero gives the circle mean.
    """
    s, scalar = _s_array(s)

    def raw(z):
        return sum(w(z) * c._raw(z) for w, c in parts)

    out = np.empty(s.shape, dtype=complex)
    todo = np.ones(s.shape, dtype=bool)
    for s0 in sorted({p for _, c in parts for p, _ in c._poles}):
        near = np.abs(s - s0) < POLE_GAP
        if not np.any(near):
            continue
        if abs(contour_residue(raw, s0, 0.02, 64)) > 1e-9:
            raise PoleError(f"s is within {POLE_GAP} of the pole at {s0:.15g}")
        z = s0 + REMOVABLE_RADIUS * np.exp(2j * math.pi * np.arange(32) / 32)
        out[near] = np.mean(raw(z))
        todo &= ~near
    if np.any(todo):
        out[todo] = raw(s[todo])
    return complex(out[0]) if scalar else out


def zeta_full(ext, g, s, N=6, mu_max=1e4):
    """zeta(s) = zeta_+^(a,b)(s) + exp(-i pi s) zeta_+^(a,-b)(s)."""
    return _combine([(np.ones_like, continuation(ext, g, N, mu_max)),
                     (lambda z: np.exp(-1j * math.pi * z), continuation(ext.flipped(), g, N, mu_max))], s)


def eta(ext, g, s, N=6, mu_max=1e4):
    """eta(s) = zeta_+^(a,b)(s) - zeta_+^(a,-b)(s)."""
    return _combine([(np.ones_like, continuation(ext, g, N, mu_max)),
                     (lambda z: -np.ones_like(z), continuation(ext.flipped(), g, N, mu_max))], s)


def residue(func, s0, radius=0.02, nodes=64):
    """Contour residue of an arbitrary function of s (vectorised)."""
    return contour_residue(func, s0, radius, nodes)


# ---------------------------------------------------------------------------
# pole tables


def _flag_collisions(poles, tol=1e-6):
    out = []
    for p in poles:
        hit = any(q is not p and abs(q.s - p.s) < tol and q.origin != p.origin for q in poles)
        out.append(Pole(p.s, p.residue, p.origin, p.k, p.collision or hit))
    return sorted(out, key=lambda p: (-p.s, p.origin))


def pole_table_plus(ext, g, K):
    """Poles of zeta_+: s = 1, the D-series s = 2 - k and the anomalous set.

    Coinciding locations are flagged, not merged.
    """
    return _flag_collisions(pole_table_D(g, K) + pole_table_anomalous(ext, g, K))


def pole_table_zeta(ext, g, K):
    """Poles of zeta = zeta_+^(a,b) + exp(-i pi s) zeta_+^(a,-b).

    The s = 1 and D-series residues cancel between the two halves.
    """
    base = []
    for p in pole_table_D(g, K):
        res = p.residue * (1 + cmath.exp(-1j * math.pi * p.s))
        base.append(Pole(p.s, complex(res), p.origin, p.k))
    if ext.kind in ("D", "N") or g == 0:
        return _flag_collisions(base)
    return _flag_collisions(base + pole_table_full_minus_D(ext, g, K))


def pole_table_eta_full(ext, g, K):
    """Poles of eta = zeta_+^(a,b) - zeta_+^(a,-b); only odd anomalous k survive."""
    base = [Pole(p.s, 0j, p.origin, p.k) for p in pole_table_D(g, K)]
    if ext.kind in ("D", "N") or g == 0:
        return _flag_collisions(base)
    return _flag_collisions(base + pole_table_eta(ext, g, K))


# ---------------------------------------------------------------------------
# scaling covariance


def scaled_extension(ext, g, c):
    """(c^-g alpha, c^g beta): the image of ext under u(x) -> c^(1/2) u(cx)."""
    return Extension(c ** (-g) * ext.alpha, c**g * ext.beta)


def anomalous_residue_on_interval(ext, g, k, length):
    """Residue of zeta_+ on (0, length) at the anomalous pole of index k.

    On (0, L) the secular equation depends on rho L^(2g) and lam L, so the
    zeta function is L^s times that of (0, 1) with rho replaced by rho L^(2g).
    """
    r = rho(ext, g) * length ** (2 * g)
    s0 = anomalous_pole_location(g, k)
    sk = math.sin((0.5 - g) * k * math.pi)
    base = 2 * g / math.pi * sk * (r ** (-k) if g < 0 else r**k)
    return length**s0 * base


@dataclass
class ScalingReport:
    c: float
    k: int
    lhs: float
    rhs: float
    residue_error: float
    rho_identity_error: float
    root_error: float


def scaling_covariance(ext, g, c, k, n_roots=50):
    """Check residue covariance under the scaling isometry.

    lhs: residue for the scaled extension on (0, 1/c); rhs: c^(2|g|k) times
    the residue on (0, 1).  Also checks the rho transformation and that
    c times the eigenvalues on (0, 1) equal those of the scaled problem.
    """
    g = check_coupling(g)
    ext2 = scaled_extension(ext, g, c)
    lhs = anomalous_residue_on_interval(ext2, g, k, 1.0 / c)
    rhs = c ** (2 * abs(g) * k) * anomalous_residue(ext, g, k)
    sg = 1 if g > 0 else -1
    r1 = rho(ext, g) ** (k * sg)
    r2 = c ** (-2 * abs(g) * k) * rho(ext2, g) ** (k * sg)
    # c lam_n must solve the secular equation of the scaled problem on (0, 1/c);
    # residual evaluated with scipy's Bessel functions, relative to term size
    mu = c * positive_eigenvalues(ext, g, n_roots)
    x = mu / c
    a = mu ** (2 * g) * jv(0.5 - g, x)
    b = rho(ext2, g) * jv(g - 0.5, x)
    h = a - b
    scale = np.abs(a) + np.abs(b)
    # rescale by the derivative so the residual reads as a relative root error
    dh = (2 * g / mu) * a + mu ** (2 * g) * (jv(-0.5 - g, x) - jv(1.5 - g, x)) / (2 * c) \
        - rho(ext2, g) * (jv(g - 1.5, x) - jv(g + 0.5, x)) / (2 * c)
    root_err = float(np.max(np.abs(h / dh) / mu)) if np.all(scale > 0) else float("nan")
    return ScalingReport(
        c, k, lhs, rhs,
        abs(lhs - rhs) / max(abs(rhs), 1e-300),
        abs(r1 - r2) / abs(r1),
        root_err,
    )
