# %% [markdown]
# # The zeta function of the coin
# det(I - uU) factors through the characteristic polynomial of S. Both sides
# are computed independently and compared coefficientwise.

# %%
from fractions import Fraction

import numpy as np

from qips import corollary4_spectrum, quantize, symmetrize, verify_theorem2
from qips.pipeline import combined_reciprocal, dk_chains, quiet_quantize

for c, chain in dk_chains(3, 0.4, 0.9).items():
    rep = verify_theorem2(chain)
    print(f"component {c}: n={chain.n} m={chain.m} gap={rep.max_coefficient_gap:.1e}")

# %% [markdown]
# Exact arithmetic keeps rational models exact end to end.

# %%
coins = [quiet_quantize(c) for c in dk_chains(2, Fraction(1, 2), 0, mode="exact").values()]
print("det(I - uU) =", combined_reciprocal(coins))

# %% [markdown]
# The eigenvalues of U are predicted from those of S: each mu gives
# mu +- i sqrt(1 - mu^2), plus eigenvalues at -1 and +1.

# %%
chain = dk_chains(3, 1 / 3, 0.5)[2]
rep = corollary4_spectrum(symmetrize(chain), chain.n, chain.m)
print("multiplicity of -1:", rep.minus_one_mult, "of +1:", rep.plus_one_mult)
print("predicted:", np.round(np.sort_complex(rep.eigenvalues), 4))
print("eigensolver:", np.round(np.sort_complex(np.linalg.eigvals(quantize(chain).U)), 4))
