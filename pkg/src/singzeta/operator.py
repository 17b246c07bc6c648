"""The first-order operator with a regular singular coefficient and its spectrum.

D_x = [[0, d/dx + g/x], [-d/dx + g/x, 0]] on L2(0, 1), with phi_1(1) = 0 and a
boundary condition alpha*C_1 + beta*C_2 = 0 at the singular end, where
phi_1 ~ C_1 x^g and phi_2 ~ C_2 x^(-g).  Positive eigenvalues solve

    F(lam) = lam^(2g) J_{1/2-g}(lam) / J_{g-1/2}(lam) = rho(alpha, beta),

and negative ones are minus the positive eigenvalues of (alpha, -beta).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gamma

from .errors import ConfigError, DExtensionError, DomainError, PoleError, StructuralError
from .special import _EPS, bessel_j, bessel_j_prime_alt, bessel_ratio, bessel_zeros, hankel_symbol

G_MAX = 0.5


def check_coupling(g):
    """Validate the coupling constant, -1/2 < g < 1/2."""
    g = float(g)
    if not (math.isfinite(g) and abs(g) < G_MAX):
        raise ConfigError(f"coupling g must satisfy |g| < 1/2, got {g}")
    return g


@dataclass(frozen=True)
class Extension:
    """Self-adjoint extension (alpha, beta), stored as a unit vector.

    (alpha, beta) and (-alpha, -beta) define the same extension; the stored
    representative has alpha > 0, or alpha = 0 and beta > 0.
    """

    alpha: float
    beta: float

    def __post_init__(self):
        a, b = float(self.alpha), float(self.beta)
        if not (math.isfinite(a) and math.isfinite(b)):
            raise ConfigError("extension parameters must be finite")
        r = math.hypot(a, b)
        if r == 0:
            raise ConfigError("alpha and beta cannot both vanish")
        # leave unit vectors untouched so that normalisation is idempotent
        if abs(r - 1.0) > 4e-16:
            a, b = a / r, b / r
        if abs(a) < 1e-15:
            a = 0.0
        if abs(b) < 1e-15:
            b = 0.0
        if a < 0 or (a == 0 and b < 0):
            a, b = -a, -b
        object.__setattr__(self, "alpha", a + 0.0)
        object.__setattr__(self, "beta", b + 0.0)

    @classmethod
    def from_angle(cls, theta):
        return cls(math.cos(theta), math.sin(theta))

    @property
    def kind(self):
        if self.alpha == 0:
            return "D"
        if self.beta == 0:
            return "N"
        return "general"

    def flipped(self):
        """The extension (alpha, -beta) that carries the negative spectrum."""
        if self.alpha == 0:
            return self
        out = object.__new__(Extension)
        object.__setattr__(out, "alpha", self.alpha)
        object.__setattr__(out, "beta", -self.beta + 0.0)
        return out


D_EXTENSION = Extension(0.0, 1.0)
N_EXTENSION = Extension(1.0, 0.0)


def rho(ext, g):
    """rho(alpha, beta) = -4^g Gamma(1/2+g)/Gamma(1/2-g) * beta/alpha."""
    g = check_coupling(g)
    if ext.alpha == 0:
        raise DExtensionError("alpha = 0 is the D-extension; rho is infinite")
    return -(4.0**g) * gamma(0.5 + g) / gamma(0.5 - g) * ext.beta / ext.alpha


def rho_ratio_prefactor(g):
    """-4^g Gamma(1/2+g)/Gamma(1/2-g), so that rho = prefactor * beta/alpha."""
    return -(4.0**check_coupling(g)) * gamma(0.5 + g) / gamma(0.5 - g)


def secular_F(lam, g):
    """F(lam) = lam^(2g) J_{1/2-g}(lam) / J_{g-1/2}(lam), principal branch.

    Real lam > 0 uses the real-axis evaluator; complex lam needs Re lam >= 0.
    A scalar argument at a zero of J_{g-1/2} raises PoleError.
    """
    g = check_coupling(g)
    scalar = np.ndim(lam) == 0
    lam_arr = np.atleast_1d(np.asarray(lam))
    if np.iscomplexobj(lam_arr) and np.any(lam_arr.imag != 0):
        val = lam_arr ** (2 * g) * bessel_ratio(0.5 - g, g - 0.5, lam_arr)
    else:
        x = lam_arr.real.astype(float)
        num = bessel_j(0.5 - g, x)
        den = bessel_j(g - 0.5, x)
        if scalar and abs(den[0]) <= 4 * _EPS * max(1.0, abs(num[0])):
            raise PoleError(f"F has a pole at lam = {x[0]}")
        with np.errstate(divide="ignore"):
            val = x ** (2 * g) * num / den
    return val[0] if scalar else val


def _H(lam, g, r, L):
    """lam^(2g) J_{1/2-g}(lam L) - rho J_{g-1/2}(lam L) and its lam-derivative."""
    x = lam * L
    a, b = 0.5 - g, g - 0.5
    Ja, Jb = bessel_j(a, x), bessel_j(b, x)
    Jpa, Jpb = bessel_j_prime_alt(a, x), bessel_j_prime_alt(b, x)
    p = lam ** (2 * g)
    h = p * Ja - r * Jb
    dh = 2 * g * p / lam * Ja + p * L * Jpa - r * L * Jpb
    return h, dh


def positive_eigenvalues(ext, g, n, length=1.0):
    """First n positive eigenvalues on the interval (0, length).

    D and N extensions give Bessel zeros divided by the length.  Otherwise
    one root of F = rho lies in each interval between consecutive zeros of
    J_{g-1/2}(lam*length), plus one in (0, j_1) when rho > 0; each root is
    bisected on its certified bracket and polished by Newton steps.
    """
    g = check_coupling(g)
    n = int(n)
    if n < 1:
        raise ConfigError("n must be >= 1")
    L = float(length)
    if not (L > 0):
        raise ConfigError("length must be positive")
    if ext.kind == "D":
        return bessel_zeros(g - 0.5, np.arange(1, n + 1)) / L
    if ext.kind == "N":
        return bessel_zeros(0.5 - g, np.arange(1, n + 1)) / L
    # on (0, L) the condition is lam^(2g) J_{1/2-g}(lam L) = rho J_{g-1/2}(lam L)
    r = rho(ext, g)
    j = bessel_zeros(g - 0.5, np.arange(1, n + 2)) / L
    if r > 0:
        lo = np.concatenate([[1e-12 * j[0]], j[: n - 1]])
        hi = j[:n]
    else:
        lo, hi = j[:n], j[1 : n + 1]
    out = np.empty(n)
    far = lo * L > 60.0
    if np.any(far):
        out[far] = _phase_roots(g, r, lo[far], hi[far], L)
    if not np.all(far):
        out[~far] = _solve_secular(g, r, lo[~far], hi[~far], L)
    return out


def _phase_roots(g, r, lo, hi, L):
    """Roots on high brackets: Newton on the counting phase, then on H.

    On (j_k, j_{k+1}) the phase u = x + psi(x) - g pi/2 runs from
    pi/2 + M pi to 3 pi/2 + M pi, so the root has theta = (M + 1) pi.
    """
    c, s = math.cos(g * math.pi), math.sin(g * math.pi)

    def theta(x):
        psi, dpsi = _hankel_phase(g - 0.5, x)
        w = (r * (x / L) ** (-2 * g) - s) / c
        dw = -2 * g * r * (x / L) ** (-2 * g - 1) / (c * L)
        return x + psi - 0.5 * g * math.pi - np.arctan(w), 1.0 + dpsi - dw / (1 + w * w)

    xlo, xhi = lo * L, hi * L
    psi_lo, _ = _hankel_phase(g - 0.5, xlo)
    M = np.round((xlo + psi_lo - 0.5 * g * math.pi - 0.5 * math.pi) / math.pi)
    target = (M + 1) * math.pi
    x = 0.5 * (xlo + xhi)
    for _ in range(6):
        th, dth = theta(x)
        x = np.clip(x - (th - target) / dth, xlo, xhi)
    lam = x / L
    for _ in range(2):
        h, dh = _H(lam, g, r, L)
        lam = np.clip(lam - h / dh, lo, hi)
    return lam


def _solve_secular(g, r, lo, hi, L):
    flo = _H(lo, g, r, L)[0]
    fhi = _H(hi, g, r, L)[0]
    if np.any(np.sign(flo) == np.sign(fhi)):
        raise StructuralError("secular function does not change sign on a bracket")
    lo, hi = lo.copy(), hi.copy()
    for _ in range(26):
        mid = 0.5 * (lo + hi)
        fm = _H(mid, g, r, L)[0]
        left = np.sign(fm) == np.sign(flo)
        lo = np.where(left, mid, lo)
        flo = np.where(left, fm, flo)
        hi = np.where(left, hi, mid)
    x = 0.5 * (lo + hi)
    for _ in range(8):
        h, dh = _H(x, g, r, L)
        xn = np.clip(x - h / dh, lo, hi)
        done = np.all(np.abs(xn - x) <= 8 * _EPS * xn)
        x = xn
        if done:
            break
    return x


def negative_eigenvalues(ext, g, n, length=1.0):
    """First n negative eigenvalues, ordered by increasing modulus."""
    return -positive_eigenvalues(ext.flipped(), g, n, length)


def has_zero_mode(ext):
    """Only the N-extension (beta = 0) has a zero eigenvalue."""
    return ext.kind == "N"


@dataclass(frozen=True)
class Spectrum:
    """Positive and negative eigenvalues of one extension, ordered by modulus."""

    g: float
    extension: Extension
    positive: np.ndarray = field(repr=False)
    negative: np.ndarray = field(repr=False)
    zero_mode: bool

    @property
    def n(self):
        return len(self.positive)


def spectrum(ext, g, n, length=1.0):
    """Compute a Spectrum with n eigenvalues of each sign."""
    g = check_coupling(g)
    return Spectrum(
        g=g,
        extension=ext,
        positive=positive_eigenvalues(ext, g, n, length),
        negative=negative_eigenvalues(ext, g, n, length),
        zero_mode=has_zero_mode(ext),
    )


def interlacing_ok(eigs, g):
    """True if each eigenvalue lies in its slot between zeros of J_{g-1/2}.

    For rho > 0 the first eigenvalue lies in (0, j_1); each later interval
    (j_k, j_{k+1}) holds exactly one eigenvalue.
    """
    eigs = np.asarray(eigs)
    j = bessel_zeros(g - 0.5, np.arange(1, len(eigs) + 2))
    slots = np.searchsorted(j, eigs)
    return bool(np.all(np.diff(slots) == 1) and np.all(np.isin(eigs, j, invert=True)))


# ---------------------------------------------------------------------------
# large-eigenvalue phase


def _hankel_phase(nu, x, kmax=12):
    """Phase psi = atan(Q/P) and its derivative for real x >= ~20."""
    x = np.asarray(x, dtype=float)
    P = np.zeros_like(x)
    Q = np.zeros_like(x)
    dP = np.zeros_like(x)
    dQ = np.zeros_like(x)
    for k in range(kmax + 1):
        c = hankel_symbol(nu, k) / 2.0**k
        t = c * x ** (-float(k))
        dt = -k * t / x
        if k % 2 == 0:
            s = (-1) ** (k // 2)
            P, dP = P + s * t, dP + s * dt
        else:
            s = (-1) ** ((k - 1) // 2)
            Q, dQ = Q + s * t, dQ + s * dt
    return np.arctan2(Q, P), (dQ * P - Q * dP) / (P * P + Q * Q)


def phase(lam, ext, g):
    """Counting phase theta(lam) and theta'(lam) for large real lam.

    For lam beyond the Hankel regime the eigenvalue condition reads
    theta(lam) = m*pi with

        theta = lam + psi(lam) - g*pi/2 - atan(w),
        w = (rho lam^(-2g) - sin(g pi)) / cos(g pi),

    psi being the common Hankel phase of J_{+-(1/2-g)}.  The D-extension
    has atan(w) = pi/2, the N-extension w = -tan(g pi).
    """
    g = check_coupling(g)
    lam = np.asarray(lam, dtype=float)
    if np.any(lam < 20):
        raise DomainError("phase is only defined in the Hankel regime lam >= 20")
    psi, dpsi = _hankel_phase(g - 0.5, lam)
    base = lam + psi - 0.5 * g * math.pi
    if ext.kind == "D":
        return base - 0.5 * math.pi, 1.0 + dpsi
    r = 0.0 if ext.kind == "N" else rho(ext, g)
    c, s = math.cos(g * math.pi), math.sin(g * math.pi)
    w = (r * lam ** (-2 * g) - s) / c
    dw = -2 * g * r * lam ** (-2 * g - 1) / c
    return base - np.arctan(w), 1.0 + dpsi - dw / (1.0 + w * w)
