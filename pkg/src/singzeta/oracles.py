"""Extended-precision reference values built on mpmath.

These are independent of the double-precision engines and are used by the
acceptance suite and the tests.
"""

from __future__ import annotations

import mpmath as mp

DPS = 50


def _mpc(z):
    if isinstance(z, (mp.mpc, mp.mpf)):
        return mp.mpc(z)
    z = complex(z)
    return mp.mpc(z.real, z.imag)


def bessel_zero(nu, n, guess):
    """n-th positive zero of J_nu near guess (any real nu > -1)."""
    with mp.workdps(DPS):
        return float(mp.findroot(lambda x: mp.besselj(nu, x), mp.mpf(guess)))


def log_derivative(nu, lam):
    """J'_nu(lam)/J_nu(lam) at DPS digits (mpc)."""
    lam = _mpc(lam)
    return mp.besselj(nu, lam, derivative=1) / mp.besselj(nu, lam)


def trace_dGD(lam, g):
    """1 - g^2/lam^2 + (1/(2 lam) + J'_{g-1/2}/J_{g-1/2})^2 at DPS digits (mpc)."""
    with mp.workdps(DPS):
        g = mp.mpf(g)
        lam = _mpc(lam)
        L2 = log_derivative(g - mp.mpf(1) / 2, lam)
        return 1 - g**2 / lam**2 + (1 / (2 * lam) + L2) ** 2


def trace_diff(lam, g):
    """2g/lam + J'_{1/2-g}/J_{1/2-g} - J'_{g-1/2}/J_{g-1/2} at DPS digits (mpc)."""
    with mp.workdps(DPS):
        g = mp.mpf(g)
        lam = _mpc(lam)
        half = mp.mpf(1) / 2
        return 2 * g / lam + log_derivative(half - g, lam) - log_derivative(g - half, lam)


def fit_trace_dGD_coefficients(g, sigma=1, mu_lo=1e2, mu_hi=1e4, K=16, points=48):
    """A_2..A_K by least squares on trace_dGD(sigma i mu), mu in [mu_lo, mu_hi].

    The unknowns are scaled as B_k = A_k mu_lo^-k to keep the system well
    conditioned.  Returns {k: complex}.
    """
    with mp.workdps(DPS):
        mus = [mp.mpf(mu_lo) * (mp.mpf(mu_hi) / mu_lo) ** (mp.mpf(j) / (points - 1))
               for j in range(points)]
        rows, rhs = [], []
        for mu in mus:
            lam = mp.mpc(0, sigma * mu)
            w = mp.mpf(mu_lo) / lam
            rows.append([w**k for k in range(2, K + 1)])
            rhs.append(trace_dGD(lam, g))
        # real least squares on stacked real and imaginary parts
        n = K - 1
        A = mp.matrix(2 * points, 2 * n)
        b = mp.matrix(2 * points, 1)
        for i, (row, r) in enumerate(zip(rows, rhs)):
            for j, c in enumerate(row):
                A[2 * i, j] = mp.re(c)
                A[2 * i, n + j] = -mp.im(c)
                A[2 * i + 1, j] = mp.im(c)
                A[2 * i + 1, n + j] = mp.re(c)
            b[2 * i] = mp.re(r)
            b[2 * i + 1] = mp.im(r)
        x, _ = mp.qr_solve(A, b)
        return {k: complex(x[k - 2] + 1j * x[n + k - 2]) * mu_lo**k for k in range(2, K + 1)}


def trace_diff_remainder(g, sigma, mus):
    """|Tr(G_D - G_N)(sigma i mu) - 2g/(sigma i mu)| at each mu (floats)."""
    out = []
    with mp.workdps(DPS):
        for mu in mus:
            lam = complex(0, sigma * mu)
            out.append(float(abs(trace_diff(lam, g) - 2 * mp.mpf(g) / _mpc(lam))))
    return out


def varrho(beta_over_alpha, g):
    """(beta/alpha) 2^(2g-1) Gamma(1/2+g)/Gamma(3/2-g) at DPS digits."""
    with mp.workdps(DPS):
        g = mp.mpf(g)
        return float(mp.mpf(beta_over_alpha) * 2 ** (2 * g - 1)
                     * mp.gamma(mp.mpf(1) / 2 + g) / mp.gamma(mp.mpf(3) / 2 - g))
