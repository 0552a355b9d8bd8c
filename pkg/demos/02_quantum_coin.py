# %% [markdown]
# # From a Markov chain to a quantum coin
# Each block of the automaton is a Markov chain on a complete graph with one
# loop per vertex. The coin U = 2 K L^T - J acts on the arcs.

# %%
import numpy as np

from qips import quantize, symmetrize, unitarity_defect, walk_evolve
from qips.pipeline import dk_chains

chains = dk_chains(2, 0.3, 0.7)
for c, chain in chains.items():
    coin = quantize(chain)
    print(f"component {c}: arcs {chain.arcs.arcs}")
    print(np.round(coin.U, 4))
    print("unitarity defect", unitarity_defect(coin))

# %% [markdown]
# The symmetrized matrix S has entries sqrt(p(u->v) p(v->u)); its spectrum
# controls the spectrum of U.

# %%
for c, chain in chains.items():
    print(f"S for component {c}:\n", np.round(symmetrize(chain).S, 4))

# %% [markdown]
# The walk preserves the norm of any state.

# %%
chain = dk_chains(3, 0.21, 0.74)[1]
coin = quantize(chain)
psi = np.ones(coin.dim) / np.sqrt(coin.dim)
print("norm after 1000 steps", np.linalg.norm(walk_evolve(coin, psi, 1000)))
