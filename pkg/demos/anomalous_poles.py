"""Walk through the g-dependent poles of zeta_+ for one extension.

Run with:  python3 demos/anomalous_poles.py
"""

import math

import numpy as np

from singzeta import Extension, positive_eigenvalues
from singzeta.zeta import continuation, zeta_plus_sum
from singzeta.asymptotics import anomalous_residue
from singzeta.operator import rho

g = -1 / 3
ext = Extension(1, 1)
print(f"g = {g:.6f}, extension (alpha, beta) = ({ext.alpha:.6f}, {ext.beta:.6f})")
print(f"rho = {rho(ext, g):.15f}")
print("first eigenvalues:", np.round(positive_eigenvalues(ext, g, 5), 12))

zp = continuation(ext, g)
print(f"\ncontinuation valid for Re s > {zp.strip:.4f}")
for s in (3.0, 2.0, 1.5):
    print(f"  s = {s}: continued {zp(s).real:.14f}   direct sum {zeta_plus_sum(ext, g, s).real:.14f}")

print("\nresidues by contour integration vs closed form")
print(f"  s = 1      : {zp.residue(1.0).real:+.12f}   1/pi = {1 / math.pi:+.12f}")
for k in (1, 2, 4, 5):
    s0 = 2 * g * k
    print(f"  s = {s0:+.4f}: {zp.residue(s0).real:+.12f}   formula {anomalous_residue(ext, g, k):+.12f}")
print("\nk = 3 lands on s = -2, where the D-series pole (residue 0 here) also sits;")
print(f"  combined residue there: {zp.residue(-2.0).real:+.12f}")
