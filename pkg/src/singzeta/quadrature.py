"""Quadrature helpers: graded Gauss-Legendre meshes and contour residues."""

from __future__ import annotations

import math

import numpy as np


def gauss_legendre(n):
    """Nodes and weights on [-1, 1] (numpy's Golub-Welsch implementation)."""
    return np.polynomial.legendre.leggauss(n)


def panel_rule(edges, n=16):
    """Composite Gauss-Legendre nodes and weights on consecutive panels."""
    t, w = gauss_legendre(n)
    edges = np.asarray(edges, dtype=float)
    a, b = edges[:-1, None], edges[1:, None]
    x = 0.5 * (b - a) * t[None, :] + 0.5 * (a + b)
    wx = 0.5 * (b - a) * w[None, :]
    return x.ravel(), wx.ravel()


def graded_rule(a=0.0, b=1.0, levels=60, ratio=0.15, n=16):
    """Nodes/weights geometrically graded towards the endpoint a.

    Panels [a + h r^(j+1), a + h r^j] resolve integrable x^p singularities
    at a with exponential convergence; the leftover [a, a + h r^levels] is
    dropped, which costs O(r^(levels(1+p))).
    """
    h = b - a
    edges = a + h * ratio ** np.arange(levels, -1, -1, dtype=float)
    return panel_rule(edges, n)


def integrate_graded(f, a=0.0, b=1.0, levels=60, ratio=0.15, n=16):
    """Integrate a vectorised f with an endpoint singularity at a."""
    x, w = graded_rule(a, b, levels, ratio, n)
    return np.sum(w * f(x))


def log_panels(mu0, mu1, per_unit=4.0, n=16):
    """Gauss-Legendre rule in t = log(mu) on [mu0, mu1]; returns (mu, weight dmu)."""
    t0, t1 = math.log(mu0), math.log(mu1)
    m = max(1, int(math.ceil((t1 - t0) * per_unit)))
    t, wt = panel_rule(np.linspace(t0, t1, m + 1), n)
    mu = np.exp(t)
    return mu, wt * mu


def contour_residue(func, s0, radius=0.02, nodes=64):
    """Residue at s0 by the trapezoid rule on a circle of the given radius.

    func must accept a complex array.  The rule is spectrally accurate for
    functions analytic in an annulus around the circle.
    """
    th = 2 * math.pi * np.arange(nodes) / nodes
    z = np.exp(1j * th)
    vals = np.asarray(func(s0 + radius * z), dtype=complex)
    return complex(np.mean(vals * radius * z))
