# %% [markdown]
# # Which parameters give cyclotomic zeta functions?
# A scan over a rational (p, q) grid, using exact arithmetic at every point.
# The same scan is available as `qips scan --n 2 --step 1/4`.

# %%
from fractions import Fraction

from qips.cli import scan_grid

points = scan_grid(Fraction(1, 4), 2)
for r in points:
    form = r["cyclotomic_form"]
    print(f"({r['p']:>3}, {r['q']:>3})", form if form else r["failure"])
