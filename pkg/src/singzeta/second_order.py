"""Second-order companion operator -d^2/dx^2 + g(g-1)/x^2 on (0, 1).

Functions in its domain vanish at x = 1 and behave as C1 x^g + C2 x^(1-g)
at the origin, with (C1, C2) constrained by the same (alpha, beta) as the
first-order problem.  Eigenvalues are lam = mu^2 with F(mu)/mu = varrho.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq
from scipy.special import gamma

from .errors import ConfigError, DExtensionError, StructuralError
from .operator import check_coupling, secular_F
from .resolvent import kernel
from .special import bessel_j, bessel_j_prime, bessel_zeros


def varrho(ext, g):
    """(beta/alpha) 2^(2g-1) Gamma(1/2+g)/Gamma(3/2-g)."""
    g = check_coupling(g)
    if ext.alpha == 0:
        raise DExtensionError("alpha = 0 is the D-extension; varrho is infinite")
    return ext.beta / ext.alpha * 2.0 ** (2 * g - 1) * gamma(0.5 + g) / gamma(1.5 - g)


def script_F(mu, g):
    """F(mu)/mu, computed directly as mu^(2g-1) J_{1/2-g}(mu)/J_{g-1/2}(mu)."""
    g = check_coupling(g)
    mu = np.asarray(mu, dtype=float)
    return mu ** (2 * g - 1) * bessel_j(0.5 - g, mu) / bessel_j(g - 0.5, mu)


def _h2(mu, g, vr):
    return mu ** (2 * g - 1) * bessel_j(0.5 - g, mu) - vr * bessel_j(g - 0.5, mu)


def second_order_eigenvalues(ext, g, n_max):
    """First n_max roots mu of F(mu)/mu = varrho; the eigenvalues are mu^2.

    Returns the array of mu.  Roots lie one per interval between zeros of
    J_{g-1/2}; F/mu rises from its mu -> 0 limit to +inf on (0, j_1), which
    therefore holds a root only if varrho exceeds that limit.
    """
    g = check_coupling(g)
    if n_max < 1:
        raise ConfigError("n_max must be at least 1")
    if ext.kind == "D":
        return bessel_zeros(g - 0.5, np.arange(1, n_max + 1))
    if ext.kind == "N":
        return bessel_zeros(0.5 - g, np.arange(1, n_max + 1))
    vr = varrho(ext, g)
    j = bessel_zeros(g - 0.5, np.arange(1, n_max + 2))
    # F(mu)/mu at mu -> 0 equals 2^(2g-1) Gamma(1/2+g)/Gamma(3/2-g)
    f0 = 2.0 ** (2 * g - 1) * gamma(0.5 + g) / gamma(1.5 - g)
    roots = []
    if vr > f0:
        roots.append(brentq(lambda m: float(script_F(m, g)) - vr, 1e-8 * j[0], j[0] * (1 - 1e-14),
                            xtol=1e-15, rtol=1e-15, maxiter=200))
    for a, b in zip(j[:-1], j[1:]):
        if len(roots) == n_max:
            break
        fa, fb = _h2(a, g, vr), _h2(b, g, vr)
        if fa * fb > 0:
            raise StructuralError("second-order secular function has no sign change on a bracket")
        roots.append(brentq(lambda m: float(_h2(m, g, vr)), a, b, xtol=1e-15, rtol=1e-15, maxiter=200))
    return np.array(roots[:n_max])


def second_order_tau(mu, ext, g):
    """1/(1 - varrho/script_F(mu)) in the pole-free form Fs/(Fs - varrho)."""
    g = check_coupling(g)
    mu = np.asarray(mu, dtype=float)
    if ext.kind == "D":
        return np.zeros_like(mu)[()]
    if ext.kind == "N":
        return np.ones_like(mu)[()]
    vr = varrho(ext, g)
    num = mu ** (2 * g - 1) * bessel_j(0.5 - g, mu)
    out = num / (num - vr * bessel_j(g - 0.5, mu))
    return np.reshape(out, mu.shape)[()]


def _u(nu, x, mu):
    """sqrt(x) J_nu(mu x) and its x-derivative."""
    j = bessel_j(nu, mu * x)
    dj = bessel_j_prime(nu, mu * x)
    return math.sqrt(x) * j, 0.5 / math.sqrt(x) * j + math.sqrt(x) * mu * dj


def second_order_kernel(x, y, mu, g, which):
    """Green function of the D or N second-order operator at lam = mu^2.

    Built from u_L = sqrt(x) J_{+-(g-1/2)}(mu x) (x^g for D, x^(1-g) for N)
    and u_R vanishing at x = 1, as -u_L(min) u_R(max) / W(u_L, u_R).
    """
    g = check_coupling(g)
    nu_L = g - 0.5 if which == "D" else 0.5 - g
    nu_o = -nu_L

    def uR(t):
        a, da = _u(nu_L, t, mu)
        b, db = _u(nu_o, t, mu)
        cL, co = float(bessel_j(nu_L, mu)), float(bessel_j(nu_o, mu))
        return a * co - b * cL, da * co - db * cL

    x0 = 0.5
    uL0, duL0 = _u(nu_L, x0, mu)
    uR0, duR0 = uR(x0)
    W = uL0 * duR0 - duL0 * uR0
    lo, hi = min(x, y), max(x, y)
    return -float(_u(nu_L, lo, mu)[0] * uR(hi)[0] / W)


def resolvent_relation_check(x, y, mu, g, which="D"):
    """|script_G(x, y; mu^2) - G_11(x, y; mu)/mu| for the D or N extension."""
    from .operator import D_EXTENSION, N_EXTENSION

    ext = D_EXTENSION if which == "D" else N_EXTENSION
    G11 = kernel(x, y, mu, g, ext)[0, 0]
    return abs(second_order_kernel(x, y, mu, g, which) - complex(G11) / mu)


def predicted_pole_locations(g, K):
    """s = -(1/2 - g) k, k = 1..K (locations only)."""
    g = check_coupling(g)
    if K < 0:
        raise ConfigError("K must be non-negative")
    return [-(0.5 - g) * k for k in range(1, K + 1)]


def check_script_F(g, mu):
    """max |script_F - F/mu| relative, on a grid avoiding the poles."""
    mu = np.asarray(mu, dtype=float)
    a = script_F(mu, g)
    b = secular_F(mu, g) / mu
    return float(np.max(np.abs(a - b) / np.maximum(1.0, np.abs(b))))
