"""Compare the second-order companion operator with the first-order one.

Run with:  python3 demos/second_order.py
"""

import numpy as np

from singzeta import D_EXTENSION, N_EXTENSION, Extension, positive_eigenvalues
from singzeta.second_order import (
    predicted_pole_locations,
    resolvent_relation_check,
    second_order_eigenvalues,
    varrho,
)

g = 1 / 3
ext = Extension(1, 3)
print(f"varrho = {varrho(ext, g):.15f}")
mu = second_order_eigenvalues(ext, g, 5)
print("mu_n      :", np.round(mu, 12))
print("lam = mu^2:", np.round(mu**2, 10))
print("predicted pole locations:", predicted_pole_locations(g, 4))

for name, e in (("D", D_EXTENSION), ("N", N_EXTENSION)):
    d = np.max(np.abs(second_order_eigenvalues(e, g, 10) - positive_eigenvalues(e, g, 10)))
    print(f"{name}: first-order and second-order roots differ by at most {d:.1e}")

grid = np.linspace(0.1, 0.9, 5)
err = max(resolvent_relation_check(x, y, 2.0, g, "D") for x in grid for y in grid)
print(f"kernel relation G_second = G_11/mu at mu = 2: max deviation {err:.1e}")
