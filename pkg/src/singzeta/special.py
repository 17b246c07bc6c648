"""Bessel functions of real order, built for the regular singular problem.

J_nu is evaluated from its ascending series below a crossover radius and
from the Hankel expansion, optimally truncated, above it.  On the real axis
the series is summed in double-double arithmetic so that the cancellation
between terms of size e^x does not leak into the result; off the axis the
series is summed in ordinary complex arithmetic.

Away from the real axis the functions grow like e^{|Im z|}, so most
routines work with the scaled function

    Jhat_nu(z) = exp(i*sigma*z) * J_nu(z),    sigma = sign(Im z) (+1 on the axis),

which is bounded on the right half-plane.  Ratios of Bessel functions and
logarithmic derivatives are unaffected by the scaling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import rgamma

from .errors import AccuracyLossError, DomainError, StructuralError

CROSSOVER = 14.0
"""Real-axis switch between the double-double series and Hankel."""

CROSSOVER_COMPLEX = 12.0
"""Off-axis switch between the complex series and the scaled Hankel form."""

CF_RADIUS = 40.0
"""Below this modulus the logarithmic derivative uses a continued fraction."""

_HANKEL_KMAX = 64
_EPS = np.finfo(float).eps


def _is_scalar(x):
    return np.ndim(x) == 0


def _out(value, scalar):
    return np.reshape(value, ())[()] if scalar else value


def _check_order(nu):
    nu = float(nu)
    if not math.isfinite(nu):
        raise DomainError(f"order must be finite, got {nu}")
    return nu


def _neg_int(nu):
    """Return n if nu == -n for a positive integer n, else None."""
    if nu < 0 and float(nu).is_integer():
        return int(-nu)
    return None


# ---------------------------------------------------------------------------
# double-double arithmetic (vectorised, error-free transformations)

_SPLITTER = 134217729.0  # 2**27 + 1


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _fast_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _dd_add(ah, al, bh, bl):
    s, e = _two_sum(ah, bh)
    return _fast_two_sum(s, e + (al + bl))


def _dd_mul(ah, al, bh, bl):
    p, e = _two_prod(ah, bh)
    return _fast_two_sum(p, e + (ah * bl + al * bh))


def _dd_div(ah, al, bh, bl):
    q1 = ah / bh
    ph, pl = _dd_mul(q1, 0.0 * q1, bh, bl)
    rh, rl = _two_sum(ah, -ph)
    rl = rl - pl + al
    return _fast_two_sum(q1, (rh + rl) / bh)


# ---------------------------------------------------------------------------
# ascending series


def _series_real(nu, x):
    """J_nu(x), x > 0 real array, series summed in double-double."""
    x = np.asarray(x, dtype=float)
    yh, yl = _two_prod(x, x)
    yh, yl = -0.25 * yh, -0.25 * yl
    t0 = float(rgamma(nu + 1.0))
    th = np.full_like(x, t0)
    tl = np.zeros_like(x)
    sh, sl = th.copy(), tl.copy()
    peak = np.abs(th)
    xmax = float(np.max(x)) if x.size else 0.0
    for k in range(1, 400):
        dh, dl = _two_sum(float(k), nu)
        dh, dl = _dd_mul(dh, dl, float(k), 0.0)
        th, tl = _dd_mul(th, tl, yh, yl)
        th, tl = _dd_div(th, tl, dh, dl)
        sh, sl = _dd_add(sh, sl, th, tl)
        peak = np.maximum(peak, np.abs(th))
        if k > xmax and np.all(np.abs(th) <= 1e-34 * peak):
            break
    return (sh + sl) * np.power(0.5 * x, nu)


def _series_complex(nu, z):
    """J_nu(z) for complex z, principal branch, ordinary precision."""
    z = np.asarray(z, dtype=complex)
    y = -0.25 * z * z
    t = np.full(z.shape, complex(rgamma(nu + 1.0)))
    s = t.copy()
    peak = np.abs(t)
    zmax = float(np.max(np.abs(z))) if z.size else 0.0
    for k in range(1, 600):
        t = t * y / (k * (k + nu))
        s = s + t
        peak = np.maximum(peak, np.abs(t))
        if k > 0.5 * zmax and np.all(np.abs(t) <= 1e-18 * peak):
            break
    return s * np.power(0.5 * z, nu)


# ---------------------------------------------------------------------------
# Hankel symbols and the large-argument sums


def hankel_symbol(nu, k):
    """Hankel symbol (nu, k) = Gamma(1/2+nu+k) / (k! Gamma(1/2+nu-k)).

    Evaluated as the finite product prod_{j=1..k} (4 nu^2 - (2j-1)^2) / (4j),
    which is exact for half-integer nu where the Gamma form is 0/0.
    """
    nu = _check_order(nu)
    if k < 0 or int(k) != k:
        raise DomainError(f"k must be a non-negative integer, got {k}")
    out = 1.0
    mu = 4.0 * nu * nu
    for j in range(1, int(k) + 1):
        out *= (mu - (2 * j - 1) ** 2) / (4.0 * j)
    return out


def _symbols(nu, kmax):
    mu = 4.0 * nu * nu
    j = np.arange(1, kmax + 1, dtype=float)
    return np.concatenate([[1.0], np.cumprod((mu - (2 * j - 1) ** 2) / (4 * j))])


def _optimal_mask(mags):
    """Boolean mask (kmax+1, n) of the terms kept by optimal truncation.

    Terms are kept up to (not including) the smallest one; the smallest
    term is returned as the remainder estimate.  A zero term ends the
    series exactly.
    """
    kmax = mags.shape[0] - 1
    tail = mags[1:]
    kmin = 1 + np.argmin(tail, axis=0)
    kidx = np.arange(kmax + 1)[:, None]
    keep = kidx < kmin[None, :]
    rem = np.take_along_axis(mags, kmin[None, :], axis=0)[0]
    return keep, rem, kmin


def _hankel_kmax(absz):
    """Smallest K with K!/(2|z|)^K below 1e-18 at the smallest |z| (capped)."""
    zmin = float(np.min(absz)) if np.size(absz) else 1.0
    t, k = 1.0, 0
    while k < _HANKEL_KMAX and t > 1e-18:
        k += 1
        t *= k / (2.0 * zmin)
    return max(k + 2, 6)


def _hankel_U(nu, z):
    """U_pm = P +- iQ = sum_k (nu,k) (+-i/2z)^k with optimal truncation.

    Returns (U_plus, U_minus, remainder, kstop).
    """
    z = np.asarray(z, dtype=complex)
    kmax = _hankel_kmax(np.abs(z))
    a = _symbols(nu, kmax)
    w = 1j / (2.0 * z)
    k = np.arange(kmax + 1)[:, None]
    terms = a[:, None] * w[None, :] ** k
    keep, rem, kstop = _optimal_mask(np.abs(terms))
    terms = np.where(keep, terms, 0.0)
    sign = (-1.0) ** k
    return terms.sum(axis=0), (terms * sign).sum(axis=0), rem, kstop


def _hankel_real(nu, x):
    """J_nu(x) for real x from P cos(chi) - Q sin(chi).  Returns (J, bound)."""
    x = np.asarray(x, dtype=float)
    kmax = _hankel_kmax(x)
    a = _symbols(nu, kmax)
    k = np.arange(kmax + 1)[:, None]
    inv = (0.5 / x[None, :]) ** k
    mags = np.abs(a)[:, None] * inv
    keep, rem, _ = _optimal_mask(mags)
    # (i)^k: real for even k with sign (-1)^{k/2}, imaginary for odd k
    sgn = np.where(k % 2 == 0, (-1.0) ** (k // 2), (-1.0) ** ((k - 1) // 2))
    terms = np.where(keep, sgn * a[:, None] * inv, 0.0)
    even = (k % 2 == 0)
    P = np.where(even, terms, 0.0).sum(axis=0)
    Q = np.where(~even, terms, 0.0).sum(axis=0)
    # expand cos(x - phi) so that x is reduced by the accurate libm routines
    phi = (0.5 * nu + 0.25) * math.pi
    c, s = np.cos(x), np.sin(x)
    cchi = c * math.cos(phi) + s * math.sin(phi)
    schi = s * math.cos(phi) - c * math.sin(phi)
    amp = np.sqrt(2.0 / (math.pi * x))
    return amp * (P * cchi - Q * schi), amp * rem


def _hankel_scaled_upper(nu, z):
    """Jhat_nu(z) for Im z >= 0 from the two-exponential Hankel form."""
    up, um, rem, _ = _hankel_U(nu, z)
    phi = (0.5 * nu + 0.25) * math.pi
    half_amp = 0.5 * np.sqrt(2.0 / (math.pi * z))
    val = half_amp * (np.exp(2j * z - 1j * phi) * up + np.exp(1j * phi) * um)
    return val, 2.0 * np.abs(half_amp) * rem


@dataclass(frozen=True)
class HankelSums:
    """Truncated P and Q with the size of the first omitted term."""

    P: complex
    Q: complex
    remainder: float
    flagged: bool


@dataclass(frozen=True)
class HankelRST:
    R: complex
    S: complex
    T_plus: complex
    T_minus: complex
    remainder: float
    flagged: bool


def _check_K(K):
    if K < 0 or int(K) != K:
        raise DomainError(f"K must be a non-negative integer, got {K}")
    return int(K)


def hankel_PQ(nu, z, K):
    """P_nu(z), Q_nu(z) summed through order k = K of the (i/2z)^k series.

    ``flagged`` is set when the terms start growing before K, in which case
    the sum stops at the smallest term (optimal truncation).
    """
    nu = _check_order(nu)
    K = _check_K(K)
    z = complex(z)
    if z == 0:
        raise DomainError("z must be non-zero")
    a = _symbols(nu, K + 1)
    mags = np.abs(a) / abs(2 * z) ** np.arange(K + 2)
    stop, flagged = K + 1, False
    for k in range(2, K + 1):
        if mags[k] > mags[k - 1]:
            stop, flagged = k - 1, True
            break
    P = Q = 0j
    for k in range(stop):
        t = a[k] / (2 * z) ** k
        if k % 2 == 0:
            P += (-1) ** (k // 2) * t
        else:
            Q += (-1) ** ((k - 1) // 2) * t
    return HankelSums(P, Q, float(mags[stop]), flagged)


def hankel_RST(nu, z, K):
    """R, S and T_pm of the derivative expansion, through order K.

    The paired ratio in R and S is simplified to (nu, 2k-1)/(2k) and
    (nu, 2k)/(2k+1), removing the 0/0 at |nu| = 1/2.
    """
    nu = _check_order(nu)
    K = _check_K(K)
    z = complex(z)
    if z == 0:
        raise DomainError("z must be non-zero")
    a = _symbols(nu, K + 1)
    nu2 = nu * nu
    R = S = Tp = Tm = 0j
    mags = []
    for k in range(K + 1):
        if k % 2 == 0:
            m = k // 2
            c = 1.0 if m == 0 else (nu2 + 4 * m * m - 0.25) * a[2 * m - 1] / (2 * m)
            R += (-1) ** m * c / (2 * z) ** k
        else:
            m = (k - 1) // 2
            c = (nu2 + (2 * m + 1) ** 2 - 0.25) * a[2 * m] / (2 * m + 1)
            S += (-1) ** m * c / (2 * z) ** k
        if k >= 1:
            c = (2 * k - 1) * a[k - 1]
            Tp += c * (1j / (2 * z)) ** k
            Tm += c * (-1j / (2 * z)) ** k
        mags.append(abs(c) / abs(2 * z) ** k)
    flagged = any(mags[k] > mags[k - 1] for k in range(2, len(mags)))
    rem = abs((2 * K + 1) * a[K]) / abs(2 * z) ** (K + 1)
    return HankelRST(R, S, Tp, Tm, float(rem), flagged)


# ---------------------------------------------------------------------------
# public evaluators


def bessel_j_with_bound(nu, x):
    """J_nu(x) for real x > 0 together with an absolute error bound."""
    nu = _check_order(nu)
    scalar = _is_scalar(x)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(~(x > 0)):
        raise DomainError("bessel_j needs x > 0 on the real axis")
    n = _neg_int(nu)
    if n is not None:
        val, bound = bessel_j_with_bound(float(n), x)
        return (-1) ** n * val, bound
    val = np.empty_like(x)
    bound = np.empty_like(x)
    lo = x < CROSSOVER
    if np.any(lo):
        val[lo] = _series_real(nu, x[lo])
        bound[lo] = 4 * _EPS * np.abs(val[lo]) + 1e-300
    # group by size so that large arguments use few Hankel terms
    for a, b in ((CROSSOVER, 60.0), (60.0, 1e3), (1e3, np.inf)):
        m = (x >= a) & (x < b)
        if np.any(m):
            val[m], bound[m] = _hankel_real(nu, x[m])
            bound[m] += 4 * _EPS * np.sqrt(2.0 / (math.pi * x[m]))
    return _out(val, scalar), _out(bound, scalar)


def bessel_j(nu, z, rtol=None):
    """Bessel function of the first kind J_nu(z), principal branch.

    Parameters
    ----------
    nu : float
        Real order.
    z : float, complex or array
        Real arguments must be positive; complex arguments must lie off
        the closed negative real axis.
    rtol : float, optional
        If given and the achieved error bound relative to the local
        amplitude sqrt(2/(pi|z|)) exceeds it, AccuracyLossError is raised.
    """
    nu = _check_order(nu)
    if np.iscomplexobj(z):
        zz = np.asarray(z, dtype=complex)
        if np.all(zz.imag == 0) and np.all(zz.real > 0):
            return bessel_j(nu, zz.real, rtol)
        scalar = _is_scalar(z)
        zz = np.atleast_1d(zz)
        sig = np.where(zz.imag >= 0, 1.0, -1.0)
        val = bessel_j_scaled(nu, zz) * np.exp(-1j * sig * zz)
        return _out(val, scalar)
    val, bound = bessel_j_with_bound(nu, z)
    if rtol is not None:
        amp = np.minimum(1.0, np.sqrt(2.0 / (math.pi * np.asarray(z, float))))
        worst = float(np.max(np.asarray(bound) / amp))
        if worst > rtol:
            raise AccuracyLossError(
                f"J_{nu}: achieved bound {worst:.2e} exceeds rtol {rtol:.2e}", worst)
    return val


def bessel_j_scaled(nu, z):
    """exp(i sigma z) J_nu(z), sigma = sign(Im z), off the cut (-inf, 0]."""
    nu = _check_order(nu)
    scalar = _is_scalar(z)
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if np.any((z.imag == 0) & (z.real <= 0)):
        raise DomainError("Bessel evaluation needs z off the cut (-inf, 0]")
    n = _neg_int(nu)
    if n is not None:
        return _out((-1) ** n * np.atleast_1d(bessel_j_scaled(float(n), z)), scalar)
    lower = z.imag < 0
    w = np.where(lower, np.conj(z), z)
    out = np.empty(w.shape, dtype=complex)
    axis = w.imag == 0
    if np.any(axis):
        x = w.real[axis]
        out[axis] = np.exp(1j * x) * bessel_j_with_bound(nu, x)[0]
    # the series loses about exp(|z| - |Im z|) to cancellation
    absw = np.abs(w)
    small = ~axis & ((absw < CROSSOVER_COMPLEX) | ((absw - w.imag < 6.0) & (absw < CF_RADIUS)))
    if np.any(small):
        out[small] = np.exp(1j * w[small]) * _series_complex(nu, w[small])
    big = ~axis & ~small
    if np.any(big):
        out[big] = _hankel_scaled_upper(nu, w[big])[0]
    out = np.where(lower, np.conj(out), out)
    return _out(out, scalar)


def bessel_j_prime(nu, z):
    """J'_nu(z) from J'_nu = J_{nu-1} - (nu/z) J_nu."""
    return bessel_j(nu - 1.0, z) - nu / np.asarray(z) * bessel_j(nu, z)


def bessel_j_prime_alt(nu, z):
    """J'_nu(z) from the other recurrence, (nu/z) J_nu - J_{nu+1}."""
    return nu / np.asarray(z) * bessel_j(nu, z) - bessel_j(nu + 1.0, z)


def bessel_ratio(nu1, nu2, lam):
    """J_{nu1}(lam) / J_{nu2}(lam), overflow-free, lam off the cut (-inf, 0]."""
    return bessel_j_scaled(nu1, lam) / bessel_j_scaled(nu2, lam)


def _cf_ratio(nu, z):
    """J_{nu+1}(z)/J_nu(z) by the modified Lentz algorithm.

    z / (2(nu+1) - z^2 / (2(nu+2) - z^2 / ...)); J_nu is the minimal solution
    of the three-term recurrence in the order, so this converges for all z.
    Lentz runs on the denominator, whose leading term 2(nu+1) is nonzero.
    """
    tiny = 1e-300
    z = np.asarray(z, dtype=complex)
    z2 = z * z
    f = np.full(z.shape, 2.0 * (nu + 1.0), dtype=complex)
    C = f.copy()
    D = np.zeros_like(f)
    done = np.zeros(z.shape, dtype=bool)
    for j in range(2, 5000):
        b = 2.0 * (nu + j)
        D = b - z2 * D
        D = np.where(D == 0, tiny, D)
        C = b - z2 / C
        C = np.where(C == 0, tiny, C)
        D = 1.0 / D
        delta = C * D
        f = np.where(done, f, f * delta)
        done |= np.abs(delta - 1.0) < 1e-16
        if np.all(done):
            return z / f
    raise AccuracyLossError("continued fraction did not converge")


def log_derivative_ratio(nu, lam):
    """J'_nu(lam) / J_nu(lam).

    For |lam| < CF_RADIUS a continued fraction for J_{nu+1}/J_nu is used.
    Beyond it, within 10 degrees of the imaginary axis, the expansion
    J'/J ~ -i sigma (1 + T_{-sigma} / (P - i sigma Q)) is used; elsewhere the
    scaled Hankel values of J_nu and J_{nu+1} are divided.
    """
    nu = _check_order(nu)
    scalar = _is_scalar(lam)
    lam = np.atleast_1d(np.asarray(lam, dtype=complex))
    if np.any((lam.imag == 0) & (lam.real <= 0)):
        raise DomainError("log_derivative_ratio needs lam off the cut (-inf, 0]")
    out = np.empty(lam.shape, dtype=complex)
    near = np.abs(lam) < CF_RADIUS
    if np.any(near):
        out[near] = nu / lam[near] - _cf_ratio(nu, lam[near])
    ray = ~near & (np.abs(lam.real) <= math.tan(math.radians(10)) * np.abs(lam.imag))
    if np.any(ray):
        w = lam[ray]
        sig = np.where(w.imag > 0, 1.0, -1.0)
        up = np.where(sig > 0, w, np.conj(w))
        # on the upper ray: -i (1 + T_-/(P - iQ)); the lower ray is the conjugate
        val = -1j * (1.0 + _t_minus(nu, up) / _hankel_U(nu, up)[1])
        out[ray] = np.where(sig > 0, val, np.conj(val))
    rest = ~near & ~ray
    if np.any(rest):
        w = lam[rest]
        out[rest] = nu / w - bessel_j_scaled(nu + 1.0, w) / bessel_j_scaled(nu, w)
    return _out(out, scalar)


def _t_minus(nu, z):
    """T_-(z) = sum_{k>=1} (2k-1)(nu,k-1)(-i/2z)^k, optimally truncated."""
    kmax = _hankel_kmax(np.abs(z))
    a = _symbols(nu, kmax)
    k = np.arange(1, kmax + 1)[:, None]
    terms = ((2 * k - 1) * a[:-1, None]) * (-1j / (2.0 * z[None, :])) ** k
    mags = np.vstack([np.ones(z.shape), np.abs(terms)])
    keep, _, _ = _optimal_mask(mags)
    return np.where(keep[1:], terms, 0.0).sum(axis=0)


# ---------------------------------------------------------------------------
# zeros


def _mcmahon(nu, n):
    b = (np.asarray(n, dtype=float) + 0.5 * nu - 0.25) * math.pi
    mu = 4.0 * nu * nu
    return b - (mu - 1) / (8 * b) - 4 * (mu - 1) * (7 * mu - 31) / (3 * (8 * b) ** 3)


def _jp(nu, x):
    return nu / x * bessel_j(nu, x) - bessel_j(nu + 1.0, x)


def bessel_zeros(nu, n):
    """Positive zeros j_{nu,n} for an array of indices n >= 1.

    Low zeros are bracketed around their McMahon estimate, bisected, then
    polished with bracket-safeguarded Newton steps; high zeros start Newton
    from McMahon directly.  Orders are limited to
    -1 < nu < 3/2, where every zero is real and the McMahon index is exact.
    """
    nu = _check_order(nu)
    if not (-1.0 < nu < 1.5):
        raise DomainError(f"bessel_zero needs -1 < nu < 3/2, got {nu}")
    n = np.atleast_1d(np.asarray(n))
    if np.any(n < 1) or np.any(n != np.floor(n)):
        raise DomainError("zero indices must be integers >= 1")
    n = n.astype(float)
    c = _mcmahon(nu, n)
    # the McMahon estimate is already close for large n: Newton only
    far = c > 60.0
    out = np.empty_like(c)
    if np.any(far):
        out[far] = _newton_zeros(nu, c[far], c[far] - 0.5, c[far] + 0.5)
    if np.all(far):
        return out
    out[~far] = _bracketed_zeros(nu, c[~far])
    return out


def _newton_zeros(nu, x, lo, hi):
    for _ in range(10):
        step = bessel_j(nu, x) / _jp(nu, x)
        xn = np.clip(x - step, lo, hi)
        if np.all(np.abs(xn - x) <= 8 * _EPS * xn):
            x = xn
            break
        x = xn
    f, fp = bessel_j(nu, x), _jp(nu, x)
    if np.any(np.abs(f) > 1e-13 * np.abs(fp) * x):
        raise StructuralError(f"zero refinement of J_{nu} failed")
    return x


def _bracketed_zeros(nu, c):
    half = np.full_like(c, math.pi / 4)
    lo = np.maximum(c - half, 1e-8)
    hi = c + half
    for _ in range(4):
        flo, fhi = bessel_j(nu, lo), bessel_j(nu, hi)
        bad = np.sign(flo) == np.sign(fhi)
        if not np.any(bad):
            break
        half = np.where(bad, 1.5 * half, half)
        lo = np.where(bad, np.maximum(c - half, 1e-8), lo)
        hi = np.where(bad, c + half, hi)
    else:
        raise StructuralError(f"could not bracket zeros of J_{nu}")
    flo = bessel_j(nu, lo)
    for _ in range(22):
        mid = 0.5 * (lo + hi)
        fm = bessel_j(nu, mid)
        left = np.sign(fm) == np.sign(flo)
        lo = np.where(left, mid, lo)
        flo = np.where(left, fm, flo)
        hi = np.where(left, hi, mid)
    return _newton_zeros(nu, 0.5 * (lo + hi), lo, hi)


def bessel_zero(nu, n):
    """n-th positive zero j_{nu,n} (scalar n) or array of zeros."""
    out = bessel_zeros(nu, n)
    return float(out[0]) if _is_scalar(n) else out


# ---------------------------------------------------------------------------
# primitives of Bessel products


def product_primitive(nu, lam, x, kind):
    """Primitive in x of x*J_nu(lam x)*J_{+-nu}(lam x), vanishing at x = 0.

    kind = "nu-nu" gives (x^2/2)(J_nu^2 - J_{nu-1}J_{nu+1}); kind =
    "nu-minus-nu" gives the closed form of x J_nu J_{-nu}, which needs
    nu not an integer.
    """
    nu = _check_order(nu)
    lam = complex(lam)
    if lam == 0:
        raise DomainError("lam must be non-zero")
    z = lam * np.asarray(x, dtype=float)

    def J(order):
        return np.asarray(bessel_j(order, z.astype(complex)), dtype=complex)

    if kind == "nu-nu":
        return 0.5 * np.asarray(x) ** 2 * (J(nu) ** 2 - J(nu - 1) * J(nu + 1))
    if kind == "nu-minus-nu":
        if float(nu).is_integer():
            raise DomainError("nu-minus-nu primitive needs non-integer nu")
        brace = J(-1 - nu) * J(nu - 1) + 2 * J(-nu) * J(nu) + J(1 - nu) * J(1 + nu)
        return 0.25 * np.asarray(x) ** 2 * brace + nu * math.sin(nu * math.pi) / (math.pi * lam**2)
    raise DomainError(f"unknown primitive kind {kind!r}")
