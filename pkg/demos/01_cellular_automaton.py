# %% [markdown]
# # Domany-Kinzel automaton as a Markov operator
# The local rule maps a neighbour pair (i, j) to a pair (k, l) while the
# right site is carried over. Tensoring the rule along a ring-free line of
# N sites gives a column-stochastic global operator.

# %%
from fractions import Fraction

import numpy as np

from qips import Configuration, DKParams, build_dk_local, classify_local, global_from_local, split_blocks
from qips.ips_core import sample_next_states, total_variation

op = build_dk_local(DKParams(Fraction(1, 3), Fraction(1, 2)), mode="exact")
print(classify_local(op))
print(op.entries)

# %% [markdown]
# The global operator splits into two blocks, one for each value of the
# last bit, because the rightmost site never changes.

# %%
g = global_from_local(op, 3)
b1, b2 = split_blocks(g)
print("block for last bit 0:\n", b1)
print("block for last bit 1:\n", b2)

# %% [markdown]
# Sampling one step of the dynamics reproduces the columns of the global
# operator.

# %%
op_f = build_dk_local(DKParams(0.5, 0.5))
G = np.asarray(global_from_local(op_f, 2).entries, dtype=float)
for k in range(4):
    init = Configuration.from_index(k, 2)
    idx = sample_next_states(op_f, init, 100_000, seed=k)
    emp = np.bincount(idx, minlength=4) / 100_000
    print(init, "TV distance", round(total_variation(emp, G[:, k]), 4))
