"""Resolvent kernels and the traces entering the zeta function.

With X = lam*x the homogeneous solutions are

    L1D = sqrt(X) J_{g-1/2}(X),   L2D = sqrt(X) J_{g+1/2}(X),
    L1N = sqrt(X) J_{1/2-g}(X),   L2N = sqrt(X) J_{-g-1/2}(X),
    R1  = sqrt(X) [J_{g-1/2}(lam) J_{1/2-g}(X) - J_{1/2-g}(lam) J_{g-1/2}(X)],
    R2  = sqrt(X) [J_{g-1/2}(lam) J_{-g-1/2}(X) + J_{1/2-g}(lam) J_{g+1/2}(X)].

Wronskians use W[f, h] = f'h - fh' with respect to X.  The resolvent of a
general extension is G = (1 - tau) G_D + tau G_N with tau = F / (F - rho).

The trace identities used below (L_nu = J'_nu / J_nu):

    Tr dG_D/dlam        = 1 - g^2/lam^2 + (1/(2 lam) + L_{g-1/2})^2
    Tr (G_D - G_N)      = 2g/lam + L_{1/2-g} - L_{g-1/2}     (= F'/F)
    d/dlam Tr(G_D-G_N)  = -2g/lam^2 - (L_{1/2-g} - L_{g-1/2})/lam
                          - L_{1/2-g}^2 + L_{g-1/2}^2
"""

from __future__ import annotations

import math

import numpy as np

from .errors import PoleError
from .operator import check_coupling, rho
from .quadrature import integrate_graded
from .special import bessel_j, bessel_ratio, log_derivative_ratio


def _complex_array(lam):
    scalar = np.ndim(lam) == 0
    return np.atleast_1d(np.asarray(lam, dtype=complex)), scalar


def _ret(val, scalar):
    return complex(val[0]) if scalar else val


# ---------------------------------------------------------------------------
# homogeneous solutions and kernels


def _J(nu, z):
    z = np.asarray(z, dtype=complex)
    return np.asarray(bessel_j(nu, z), dtype=complex)


def _J0(nu, lam):
    return complex(np.ravel(_J(nu, lam))[0])


def homogeneous_solutions(X, lam, g):
    """Dict with L1D, L2D, L1N, L2N, R1, R2 evaluated at X (array)."""
    g = check_coupling(g)
    X = np.asarray(X, dtype=complex)
    lam = complex(lam)
    sq = np.sqrt(X)
    a, b = g - 0.5, 0.5 - g
    Ja_l, Jb_l = _J0(a, lam), _J0(b, lam)
    return {
        "L1D": sq * _J(a, X),
        "L2D": sq * _J(g + 0.5, X),
        "L1N": sq * _J(b, X),
        "L2N": sq * _J(-g - 0.5, X),
        "R1": sq * (Ja_l * _J(b, X) - Jb_l * _J(a, X)),
        "R2": sq * (Ja_l * _J(-g - 0.5, X) + Jb_l * _J(g + 0.5, X)),
    }


def wronskians(lam, g):
    """Closed-form Wronskians (W[L1D,R1], W[L2D,R2], W[L1N,R1], W[L2N,R2])."""
    g = check_coupling(g)
    c = 2.0 / math.pi * math.cos(g * math.pi)
    Ja, Jb = _J0(g - 0.5, lam), _J0(0.5 - g, lam)
    return (-c * Ja, c * Ja, -c * Jb, -c * Jb)


def _inverse_wronskian(w, lam, g):
    scale = 2.0 / math.pi * math.cos(g * math.pi) * math.sqrt(2.0 / (math.pi * abs(lam)))
    if abs(w) <= 1e-14 * scale:
        raise PoleError(f"vanishing Wronskian at lam = {lam}: lam is a Bessel zero")
    return 1.0 / w


def gamma_D(lam, g):
    """1 / W[L1D, R1]; PoleError at zeros of J_{g-1/2}."""
    return _inverse_wronskian(wronskians(lam, g)[0], lam, g)


def gamma_N(lam, g):
    """1 / W[L1N, R1]; PoleError at zeros of J_{1/2-g}."""
    return _inverse_wronskian(wronskians(lam, g)[2], lam, g)


def _kernel_limit(x, y, lam, g, which):
    lam = complex(lam)
    X, Y = lam * x, lam * y
    sx = {k: complex(np.ravel(v)[0]) for k, v in homogeneous_solutions(X, lam, g).items()}
    sy = {k: complex(np.ravel(v)[0]) for k, v in homogeneous_solutions(Y, lam, g).items()}
    if which == "D":
        gm = gamma_D(lam, g)
        L1, L2 = "L1D", "L2D"
        s22, s21 = -1.0, 1.0
    else:
        gm = gamma_N(lam, g)
        L1, L2 = "L1N", "L2N"
        s22, s21 = 1.0, -1.0
    G = np.empty((2, 2), dtype=complex)
    if x <= y:
        G[0, 0] = gm * sx[L1] * sy["R1"]
        G[1, 1] = s22 * gm * sx[L2] * sy["R2"]
        G[1, 0] = s21 * gm * sx[L2] * sy["R1"]
        G[0, 1] = -gm * sx[L1] * sy["R2"]
    else:
        G[0, 0] = gm * sx["R1"] * sy[L1]
        G[1, 1] = s22 * gm * sx["R2"] * sy[L2]
        G[1, 0] = -gm * sx["R2"] * sy[L1]
        G[0, 1] = s21 * gm * sx["R1"] * sy[L2]
    return G


def kernel(x, y, lam, g, ext):
    """2x2 resolvent kernel G(x, y; lam) of the extension ext."""
    g = check_coupling(g)
    if ext.kind == "D":
        return _kernel_limit(x, y, lam, g, "D")
    if ext.kind == "N":
        return _kernel_limit(x, y, lam, g, "N")
    t = tau(lam, g, ext)
    return (1 - t) * _kernel_limit(x, y, lam, g, "D") + t * _kernel_limit(x, y, lam, g, "N")


def diagonal_trace_density(x, lam, g, which):
    """G_11(x,x) + G_22(x,x) for the D or N extension, vectorised in x."""
    g = check_coupling(g)
    lam = complex(lam)
    X = lam * np.asarray(x, dtype=float)
    s = homogeneous_solutions(X, lam, g)
    if which == "D":
        return gamma_D(lam, g) * (s["L1D"] * s["R1"] - s["L2D"] * s["R2"])
    return gamma_N(lam, g) * (s["L1N"] * s["R1"] + s["L2N"] * s["R2"])


def boundary_coefficients(lam, g, f1, f2, which, **quad):
    """C_1^D (which='D') or C_2^N (which='N') for the data (f1, f2).

    phi = G_D f behaves as C_1^D x^g near 0 and phi = G_N f as C_2^N x^(-g),
    with
        C_1^D = -pi lam^g / (2^(1/2+g) cos(g pi) J_{g-1/2}(lam) Gamma(1/2+g)) * I,
        C_2^N =  pi lam^(-g) / (2^(1/2-g) cos(g pi) J_{1/2-g}(lam) Gamma(1/2-g)) * I,
        I = int_0^1 [R1(lam y) f1(y) - R2(lam y) f2(y)] dy.
    """
    g = check_coupling(g)
    lam = complex(lam)

    def integrand(y):
        s = homogeneous_solutions(lam * y, lam, g)
        return s["R1"] * f1(y) - s["R2"] * f2(y)

    I = integrate_graded(integrand, **quad)
    c = math.cos(g * math.pi)
    if which == "D":
        den = 2 ** (0.5 + g) * c * _J0(g - 0.5, lam) * math.gamma(0.5 + g)
        return -math.pi * lam**g / den * I
    den = 2 ** (0.5 - g) * c * _J0(0.5 - g, lam) * math.gamma(0.5 - g)
    return math.pi * lam ** (-g) / den * I


# ---------------------------------------------------------------------------
# traces


def _logders(lam, g):
    L1 = log_derivative_ratio(0.5 - g, lam)
    L2 = log_derivative_ratio(g - 0.5, lam)
    return L1, L2


def trace_GD(lam, g):
    """Tr G_D = J_{g+1/2}(lam) / J_{g-1/2}(lam)."""
    g = check_coupling(g)
    lam, scalar = _complex_array(lam)
    return _ret((g - 0.5) / lam - log_derivative_ratio(g - 0.5, lam), scalar)


def trace_GN(lam, g):
    """Tr G_N = -2g/lam - J_{-g-1/2}(lam) / J_{1/2-g}(lam)."""
    g = check_coupling(g)
    lam, scalar = _complex_array(lam)
    p = (0.5 - g) / lam + log_derivative_ratio(0.5 - g, lam)
    return _ret(-2 * g / lam - p, scalar)


def trace_dGD(lam, g):
    """Tr dG_D/dlam = 1 - g^2/lam^2 + (1/(2 lam) + J'_{g-1/2}/J_{g-1/2})^2."""
    g = check_coupling(g)
    lam, scalar = _complex_array(lam)
    L2 = log_derivative_ratio(g - 0.5, lam)
    return _ret(1 - g * g / lam**2 + (0.5 / lam + L2) ** 2, scalar)


def trace_diff(lam, g):
    """Tr(G_D - G_N) = 2g/lam + J'_{1/2-g}/J_{1/2-g} - J'_{g-1/2}/J_{g-1/2}."""
    g = check_coupling(g)
    lam, scalar = _complex_array(lam)
    L1, L2 = _logders(lam, g)
    return _ret(2 * g / lam + L1 - L2, scalar)


def trace_diff_deriv(lam, g):
    """d/dlam Tr(G_D - G_N)."""
    g = check_coupling(g)
    lam, scalar = _complex_array(lam)
    L1, L2 = _logders(lam, g)
    return _ret(-2 * g / lam**2 - (L1 - L2) / lam - L1 * L1 + L2 * L2, scalar)


def _F(lam, g):
    return lam ** (2 * g) * bessel_ratio(0.5 - g, g - 0.5, lam)


def tau(lam, g, ext):
    """tau = F/(F - rho); 0 for the D-extension, 1 for the N-extension."""
    g = check_coupling(g)
    lam, scalar = _complex_array(lam)
    if ext.kind == "D":
        return _ret(np.zeros(lam.shape, dtype=complex), scalar)
    if ext.kind == "N":
        return _ret(np.ones(lam.shape, dtype=complex), scalar)
    F = _F(lam, g)
    den = F - rho(ext, g)
    if scalar and abs(den[0]) <= 1e-14 * max(1.0, abs(F[0])):
        raise PoleError(f"lam = {lam[0]} is an eigenvalue")
    return _ret(F / den, scalar)


def trace_G(lam, g, ext):
    """Tr G = Tr G_D - tau Tr(G_D - G_N)."""
    g = check_coupling(g)
    lam, scalar = _complex_array(lam)
    t = np.atleast_1d(tau(lam, g, ext))
    return _ret(np.atleast_1d(trace_GD(lam, g)) - t * np.atleast_1d(trace_diff(lam, g)), scalar)


def trace_G2(lam, g, ext):
    """Tr G^2 = Tr dG/dlam = Tr dG_D - d/dlam[tau Tr(G_D - G_N)].

    With d = Tr(G_D - G_N) = F'/F one has tau' = -rho F d / (F - rho)^2.
    """
    g = check_coupling(g)
    lam, scalar = _complex_array(lam)
    L1, L2 = _logders(lam, g)
    dgd = 1 - g * g / lam**2 + (0.5 / lam + L2) ** 2
    if ext.kind == "D":
        return _ret(dgd, scalar)
    d = 2 * g / lam + L1 - L2
    dd = -2 * g / lam**2 - (L1 - L2) / lam - L1 * L1 + L2 * L2
    if ext.kind == "N":
        return _ret(dgd - dd, scalar)
    r = rho(ext, g)
    F = _F(lam, g)
    den = F - r
    if scalar and abs(den[0]) <= 1e-14 * max(1.0, abs(F[0])):
        raise PoleError(f"lam = {lam[0]} is an eigenvalue")
    t = F / den
    tp = -r * F * d / den**2
    return _ret(dgd - (tp * d + t * dd), scalar)


# ---------------------------------------------------------------------------
# quadrature oracles


def trace_by_quadrature(lam, g, which, levels=60, n=16):
    """int_0^1 tr G(x, x; lam) dx on a mesh graded towards x = 0."""
    return complex(
        integrate_graded(lambda x: diagonal_trace_density(x, lam, g, which), levels=levels, n=n)
    )


def trace_dGD_by_quadrature(lam, g, nodes=40):
    """d/dlam of the quadrature Tr G_D by a Cauchy integral on a small circle.

    The radius is 0.4 times the distance to the nearest pole +-j_{g-1/2,n},
    so the trapezoid rule converges like 0.4^nodes.
    """
    from .special import bessel_zeros

    lam = complex(lam)
    j = bessel_zeros(g - 0.5, np.arange(1, int(abs(lam) / 3) + 4))
    dist = min(np.min(np.abs(lam - j)), np.min(np.abs(lam + j)), abs(lam))
    r = min(0.25, 0.4 * dist)
    th = 2 * math.pi * np.arange(nodes) / nodes
    e = np.exp(1j * th)
    vals = [trace_by_quadrature(lam + r * ek, g, "D") for ek in e]
    return complex(np.mean(np.asarray(vals) / (r * e)))


def trace_diff_by_quadrature(lam, g):
    return trace_by_quadrature(lam, g, "D") - trace_by_quadrature(lam, g, "N")
