"""Sample F(lam) = lam^(2g) J_{1/2-g}(lam)/J_{g-1/2}(lam) and read off eigenvalues.

Writes secular_function.csv next to the working directory; plot it with any
tool.  Run with:  python3 demos/secular_function.py
"""

import sys

from singzeta.cli import main

g, rho_line = 1 / 3, 3.0
code = main(["figure1", "--g", str(g), "--rho", str(rho_line), "--out", "secular_function.csv"])
if code:
    sys.exit(code)

from singzeta import Extension, positive_eigenvalues  # noqa: E402
from singzeta.operator import rho  # noqa: E402

# beta/alpha chosen so that rho equals the plotted horizontal line
ratio = rho_line / rho(Extension(1, 1), g)
ext = Extension(1, ratio)
print("wrote secular_function.csv")
print(f"extension with rho = {rho(ext, g):.12f}: crossings at", positive_eigenvalues(ext, g, 4))
