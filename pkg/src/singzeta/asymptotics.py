"""Large-|lam| expansions of the traces along the rays lam = sigma*i*mu.

Exponents of the form a + 2g*b (a, b integers) are kept as integer pairs so
that coincidences such as 2g*3 - 2 = -4 at g = -1/3 are detected exactly
rather than by comparing floats.  Coefficients depend on the ray through
sigma = +1 (upper) or -1 (lower); powers lam^e use the principal branch,
lam^e = mu^e exp(i sigma pi e / 2) on the ray.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError
from .operator import check_coupling, rho
from .special import _symbols


def _check_sigma(sigma):
    if sigma not in (1, -1):
        raise ConfigError(f"sigma must be +1 or -1, got {sigma}")
    return int(sigma)


# ---------------------------------------------------------------------------
# generalized power series


@dataclass
class GeneralizedSeries:
    """Finite sum  sum_{(a,b)} c_{a,b} lam^(a + 2 g b)."""

    g: float
    terms: dict = field(default_factory=dict)

    def exponent(self, key):
        a, b = key
        return a + 2 * self.g * b

    def copy(self):
        return GeneralizedSeries(self.g, dict(self.terms))

    def _merge(self, other, sign):
        if other.g != self.g:
            raise ConfigError("series with different g cannot be combined")
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + sign * c
        return GeneralizedSeries(self.g, {k: c for k, c in out.items() if c != 0})

    def __add__(self, other):
        return self._merge(other, 1)

    def __sub__(self, other):
        return self._merge(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        return GeneralizedSeries(self.g, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, GeneralizedSeries):
            return self.scale(other)
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, 0) + c1 * c2
        return GeneralizedSeries(self.g, {k: c for k, c in out.items() if c != 0})

    __rmul__ = scale

    def derivative(self):
        out = {}
        for (a, b), c in self.terms.items():
            e = a + 2 * self.g * b
            if e != 0:
                out[(a - 1, b)] = out.get((a - 1, b), 0) + e * c
        return GeneralizedSeries(self.g, out)

    def items(self):
        """(key, exponent, coefficient) sorted by decreasing exponent."""
        rows = [(k, self.exponent(k), c) for k, c in self.terms.items()]
        return sorted(rows, key=lambda r: -r[1])

    def evaluate(self, lam):
        lam = np.asarray(lam, dtype=complex)
        out = np.zeros(lam.shape, dtype=complex)
        for k, c in self.terms.items():
            out = out + c * lam ** self.exponent(k)
        return out

    def collisions(self):
        """Groups of distinct keys whose exponents coincide."""
        groups = {}
        for k in self.terms:
            groups.setdefault(round(self.exponent(k), 12), []).append(k)
        return [sorted(v) for v in groups.values() if len(v) > 1]


# ---------------------------------------------------------------------------
# power series in w = 1/lam


def _ps_mul(a, b, K):
    return np.convolve(a, b)[: K + 1]


def _ps_div(a, b, K):
    """a/b for power series with b[0] != 0, truncated at degree K."""
    q = np.zeros(K + 1, dtype=complex)
    a = np.concatenate([a, np.zeros(max(0, K + 1 - len(a)))]).astype(complex)
    for n in range(K + 1):
        acc = a[n] - sum(q[m] * b[n - m] for m in range(max(0, n - len(b) + 1), n))
        q[n] = acc / b[0]
    return q


def _hankel_series(nu, sigma, K):
    """Coefficients of P - i sigma Q = sum_k (nu,k)(-i sigma/2)^k w^k."""
    a = _symbols(nu, K)
    return np.array([a[k] * (-1j * sigma / 2) ** k for k in range(K + 1)], dtype=complex)


def _t_series(nu, sigma, K):
    """Coefficients of T_{-sigma} = sum_{k>=1} (2k-1)(nu,k-1)(-i sigma/2)^k w^k."""
    a = _symbols(nu, K)
    out = np.zeros(K + 1, dtype=complex)
    for k in range(1, K + 1):
        out[k] = (2 * k - 1) * a[k - 1] * (-1j * sigma / 2) ** k
    return out


def log_derivative_series(nu, sigma, K):
    """J'_nu/J_nu ~ -i sigma (1 + T_{-sigma}/(P - i sigma Q)) in powers of 1/lam."""
    sigma = _check_sigma(sigma)
    ratio = _ps_div(_t_series(nu, sigma, K), _hankel_series(nu, sigma, K), K)
    out = -1j * sigma * ratio
    out[0] += -1j * sigma
    return out


def trace_dGD_coefficients(g, sigma, K):
    """A_0..A_K with Tr dG_D/dlam ~ sum_k A_k lam^(-k) on the sigma ray.

    Composed as 1 - g^2 w^2 + (w/2 + J'_{g-1/2}/J_{g-1/2})^2.  A_0 = A_1 = 0.
    """
    g = check_coupling(g)
    L = log_derivative_series(g - 0.5, _check_sigma(sigma), K)
    L[1] += 0.5
    out = _ps_mul(L, L, K)
    out[0] += 1.0
    if K >= 2:
        out[2] -= g * g
    return out


def trace_dGD_coefficients_by_ratio(g, sigma, K):
    """Same coefficients via d/dlam of q = J_{g+1/2}/J_{g-1/2} = i sigma U1/U2."""
    g = check_coupling(g)
    sigma = _check_sigma(sigma)
    q = 1j * sigma * _ps_div(_hankel_series(g + 0.5, sigma, K), _hankel_series(g - 0.5, sigma, K), K)
    # d/dlam w^k = -k w^(k+1)
    out = np.zeros(K + 1, dtype=complex)
    for k in range(1, K):
        out[k + 1] = -k * q[k]
    return out


def closed_form_A(g, sigma):
    """A_2..A_5 in closed form, keyed by k."""
    s = _check_sigma(sigma)
    return {
        2: -g + 0j,
        3: 1j * s * g * (g - 1),
        4: -1.5 * g * (g - 1) + 0j,
        5: 1j * s * (g - 3) * (g - 1) * g * (g + 2) / 2,
    }


def series_trace_dGD(g, sigma, K):
    """GeneralizedSeries sum_{k=2..K} A_k lam^(-k)."""
    A = trace_dGD_coefficients(g, sigma, K)
    return GeneralizedSeries(g, {(-k, 0): A[k] for k in range(2, K + 1) if A[k] != 0})


def series_trace_diff(g):
    """Tr(G_D - G_N) ~ 2g/lam on both rays, up to exponentially small terms."""
    g = check_coupling(g)
    return GeneralizedSeries(g, {(-1, 0): 2 * g} if g != 0 else {})


def F_ray_constant(g, sigma):
    """F(lam) ~ exp(i sigma pi (1/2 - g)) lam^(2g) on the sigma ray."""
    return cmath.exp(1j * _check_sigma(sigma) * math.pi * (0.5 - g))


def series_tau(ext, g, sigma, K):
    """Expansion of tau = F/(F - rho) on the sigma ray.

    g < 0:  tau ~ -sum_{k=1..K} (c lam^(2g))^k,   c = exp(i sigma pi (1/2-g)) / rho
    g > 0:  tau ~  sum_{k=0..K} (d lam^(-2g))^k,  d = rho exp(-i sigma pi (1/2-g))
    g = 0:  tau tends to the constant (i sigma)/(i sigma - rho).
    """
    g = check_coupling(g)
    sigma = _check_sigma(sigma)
    if ext.kind == "D":
        return GeneralizedSeries(g, {})
    if ext.kind == "N":
        return GeneralizedSeries(g, {(0, 0): 1.0 + 0j})
    r = rho(ext, g)
    f = F_ray_constant(g, sigma)
    if g == 0:
        return GeneralizedSeries(g, {(0, 0): f / (f - r)})
    if g < 0:
        c = f / r
        return GeneralizedSeries(g, {(0, k): -(c**k) for k in range(1, K + 1)})
    d = r / f
    return GeneralizedSeries(g, {(0, -k): d**k for k in range(0, K + 1)})


def series_product_derivative(ext, g, sigma, K):
    """d/dlam [tau * Tr(G_D - G_N)] from the series product."""
    return (series_tau(ext, g, sigma, K) * series_trace_diff(g)).derivative()


def series_T(ext, g, sigma, N):
    """Subtraction series for Tr G^2 on the sigma ray at order N.

    D part: A_2..A_N; anomalous part: the tau expansion through N terms.
    """
    return series_trace_dGD(g, sigma, N) - series_product_derivative(ext, g, sigma, N)


def validity_strip(g, N):
    """Left edge of the half-plane where the order-N subtraction converges."""
    return max(1.0 - N, -2.0 * abs(g) * (N + 1))


# ---------------------------------------------------------------------------
# pole tables


@dataclass(frozen=True)
class Pole:
    s: float
    residue: complex
    origin: str
    k: int
    collision: bool = False


def residues_from_series(upper, lower, origin="series"):
    """Poles of zeta_+ produced by subtracting the given ray series.

    A term c_sigma lam^e integrates to c_sigma (sigma i)^(1+e-s)/(2 pi (s-1)(s-e-2))
    on [1, inf) of the sigma ray, so the pole at s = e + 2 has residue
    (-i c_+ + i c_-) / (2 pi (e + 1)).
    """
    out = {}
    for key in set(upper.terms) | set(lower.terms):
        e = upper.exponent(key)
        cp = upper.terms.get(key, 0)
        cm = lower.terms.get(key, 0)
        res = (-1j * cp + 1j * cm) / (2 * math.pi * (e + 1))
        out[key] = (e + 2, res)
    return out


def pole_table_D(g, K):
    """Poles of zeta_+^D: s = 1 with residue 1/pi, and s = 2 - k, k = 2..K,

    with residue Re(i A_k)/((k-1) pi) = -Im A_k/((k-1) pi) (sigma = +1).
    """
    g = check_coupling(g)
    A = trace_dGD_coefficients(g, 1, K)
    poles = [Pole(1.0, 1 / math.pi + 0j, "s=1", 0)]
    for k in range(2, K + 1):
        poles.append(Pole(2.0 - k, complex(-A[k].imag / ((k - 1) * math.pi)), "D-series", k))
    return poles


def anomalous_residue(ext, g, k):
    """Residue of zeta_+ at the g-dependent pole of index k.

    g < 0: s = 2gk,   residue (2g/pi) sin((1/2-g) k pi) / rho^k
    g > 0: s = -2gk,  residue (2g/pi) rho^k sin((1/2-g) k pi)
    """
    g = check_coupling(g)
    if ext.kind in ("D", "N") or g == 0:
        return 0.0
    r = rho(ext, g)
    sk = math.sin((0.5 - g) * k * math.pi)
    if g < 0:
        return 2 * g / math.pi * sk / r**k
    return 2 * g / math.pi * r**k * sk


def anomalous_residue_negated(ext, g, k):
    """The same residue with the opposite overall sign.

    This is the form obtained when Tr(G_D - G_N) is taken to decay like
    -2g/lam; it is kept only for comparison against that convention.
    """
    return -anomalous_residue(ext, g, k)


def anomalous_pole_location(g, k):
    return 2 * g * k if g < 0 else -2 * g * k


def anomalous_exponent_key(g, k):
    """(a, b) key of the lam^(2gk-2) (g<0) or lam^(-2gk-2) (g>0) term."""
    return (-2, k) if g < 0 else (-2, -k)


def pole_table_anomalous(ext, g, K):
    """g-dependent poles k = 1..K; collisions with s = 2 - m are flagged."""
    g = check_coupling(g)
    if ext.kind in ("D", "N") or g == 0:
        return []
    out = []
    for k in range(1, K + 1):
        s0 = anomalous_pole_location(g, k)
        hit = abs(s0 - round(s0)) < 1e-12 and round(s0) <= 0
        out.append(Pole(s0, complex(anomalous_residue(ext, g, k)), "anomalous", k, hit))
    return out


def pole_table_full_minus_D(ext, g, K):
    """Residues of zeta - zeta^D at the g-dependent poles.

    zeta(s) = zeta_+^(a,b)(s) + exp(-i pi s) zeta_+^(a,-b)(s), so the residue
    at s0 is R_k(a,b) + exp(-i pi s0) R_k(a,-b), which equals
    -(-1)^k (2g/pi) sin(2 g k pi) exp(i(1/2-g) k pi) / rho^k for g < 0.
    """
    out = []
    for k in range(1, K + 1):
        s0 = anomalous_pole_location(g, k)
        res = anomalous_residue(ext, g, k) + cmath.exp(-1j * math.pi * s0) * anomalous_residue(
            ext.flipped(), g, k)
        out.append(Pole(s0, complex(res), "anomalous", k))
    return out


def pole_table_eta(ext, g, K):
    """Residues of eta = zeta_+^(a,b) - zeta_+^(a,-b) at the g-dependent poles.

    They equal (1 - (-1)^k) times the zeta_+ residue, so even k vanish.
    """
    return [Pole(anomalous_pole_location(g, k),
                 complex(anomalous_residue(ext, g, k) - anomalous_residue(ext.flipped(), g, k)),
                 "anomalous", k)
            for k in range(1, K + 1)]
