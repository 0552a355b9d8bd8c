"""Quantization of a loop-decorated Markov chain.

For a chain with arc probabilities p the coin acts on the arc space and is
built two ways: entry by entry,

    U[e, f] = 2 sqrt(p(e) p(f^-1)) - [f == e^-1]   when t(f) == o(e),

and as ``2 K L^T - J`` from the coupling matrices. ``quantize`` computes
both and refuses to return if they differ.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _scalar
from .errors import ExactnessWarning, InternalConsistencyError
from .graph_markov import ArcSet, MarkovChain

CONSISTENCY_TOL = 1e-14
NORM_TOL = 1e-12


@dataclass(frozen=True)
class CouplingMatrices:
    K: np.ndarray
    L: np.ndarray
    J: np.ndarray

    @property
    def exact(self) -> bool:
        return _scalar.is_exact(self.K)


@dataclass(frozen=True)
class QuantumCoin:
    U: np.ndarray
    arcs: ArcSet

    @property
    def exact(self) -> bool:
        return _scalar.is_exact(self.U)

    @property
    def dim(self) -> int:
        return self.U.shape[0]


@dataclass(frozen=True)
class SymmetrizedMatrix:
    S: np.ndarray

    @property
    def exact(self) -> bool:
        return _scalar.is_exact(self.S)


def _sqrt_table(values, exact: bool, what: str):
    """Square roots of ``values``; ``None`` means exact roots do not exist."""
    if not exact:
        return [float(np.sqrt(max(float(v), 0.0))) for v in values]
    roots = [_scalar.exact_sqrt(v) for v in values]
    if any(r is None for r in roots):
        warnings.warn(
            f"{what} needs irrational square roots; computing in binary64",
            ExactnessWarning,
            stacklevel=3,
        )
        return None
    return roots


def _fill(shape, exact):
    return _scalar.zeros(shape, exact)


def _involution(arcs: ArcSet, exact: bool) -> np.ndarray:
    J = _fill((len(arcs), len(arcs)), exact)
    one = Fraction(1) if exact else 1.0
    for e, f in enumerate(arcs.inverse):
        J[e, f] = one
    return J


def build_coupling(chain: MarkovChain) -> CouplingMatrices:
    """Matrices K, L (arcs x vertices) and the arc-reversal involution J.

    K[e, v] = sqrt(p(e)) when e leaves v; L[e, v] = sqrt(p(e^-1)) when e
    enters v.
    """
    arcs = chain.arcs
    exact = chain.exact
    roots = _sqrt_table(chain.prob, exact, "K and L")
    if roots is None:
        exact = False
        roots = _sqrt_table(chain.prob, False, "")
    nv, na = chain.n, len(arcs)
    K = _fill((na, nv), exact)
    L = _fill((na, nv), exact)
    for e, (u, v) in enumerate(arcs.arcs):
        K[e, u] = roots[e]
        L[e, v] = roots[arcs.inverse[e]]
    return CouplingMatrices(K, L, _involution(arcs, exact))


def _entrywise(chain: MarkovChain, exact: bool) -> np.ndarray | None:
    arcs = chain.arcs
    na = len(arcs)
    prob = chain.prob if exact else _scalar.float_array(chain.prob)
    pairs = []
    for e in range(na):
        for f in range(na):
            if arcs.terminus(f) == arcs.origin(e):
                pairs.append((e, f, prob[e] * prob[arcs.inverse[f]]))
    roots = _sqrt_table([w for _, _, w in pairs], exact, "the quantization")
    if roots is None:
        return None
    U = _fill((na, na), exact)
    for (e, f, _), r in zip(pairs, roots):
        U[e, f] = 2 * r - (1 if f == arcs.inverse[e] else 0)
    return U


def quantize(chain: MarkovChain) -> QuantumCoin:
    """Orthogonal coin on the arcs of ``chain``.

    In exact mode the result is exact whenever every product
    p(e) p(f^-1) that enters U is a rational square; otherwise the whole
    computation drops to binary64 with an ``ExactnessWarning``.
    """
    exact = chain.exact
    U = _entrywise(chain, exact)
    if U is None:
        exact = False
        U = _entrywise(chain, False)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ExactnessWarning)
        cm = build_coupling(chain)
    U2 = 2 * (cm.K @ cm.L.T) - cm.J
    if exact and cm.exact:
        if not np.array_equal(U, U2):
            raise InternalConsistencyError("entrywise and factorized quantizations differ")
    else:
        gap = float(np.max(np.abs(_scalar.float_array(U) - _scalar.float_array(U2))))
        if gap > CONSISTENCY_TOL:
            raise InternalConsistencyError(
                f"entrywise and factorized quantizations differ by {gap:.3e}"
            )
    return QuantumCoin(U, chain.arcs)


def unitarity_defect(U) -> float:
    """Max-norm of ``U U^T - I`` (zero means exactly orthogonal)."""
    a = U.U if isinstance(U, QuantumCoin) else np.asarray(U)
    if _scalar.is_exact(a):
        d = a @ a.T - _scalar.eye(a.shape[0], True)
        return float(max((abs(x) for x in d.ravel()), default=0))
    a = np.asarray(a)
    return float(np.max(np.abs(a @ a.conj().T - np.eye(a.shape[0]))))


def symmetrize(chain: MarkovChain) -> SymmetrizedMatrix:
    """Symmetric n x n matrix with entry sqrt(p(u -> v) p(v -> u))."""
    arcs = chain.arcs
    exact = chain.exact
    prob = chain.prob
    products = [prob[e] * prob[arcs.inverse[e]] for e in range(len(arcs))]
    roots = _sqrt_table(products, exact, "S")
    if roots is None:
        exact = False
        roots = _sqrt_table([float(x) for x in products], False, "")
    S = _fill((chain.n, chain.n), exact)
    for e, (u, v) in enumerate(arcs.arcs):
        S[u, v] = roots[e]
    return SymmetrizedMatrix(S)


def walk_evolve(U, state: np.ndarray, steps: int) -> np.ndarray:
    """Apply the coin ``steps`` times to a unit vector of arc amplitudes."""
    a = U.U if isinstance(U, QuantumCoin) else U
    a = _scalar.float_array(a)
    psi = np.asarray(state)
    psi = psi.astype(complex) if np.iscomplexobj(psi) else psi.astype(float)
    if psi.shape != (a.shape[0],):
        raise ValueError(f"state has shape {psi.shape}, expected ({a.shape[0]},)")
    if abs(np.linalg.norm(psi) - 1) > NORM_TOL:
        raise ValueError("walk state must have unit norm")
    if steps < 0:
        raise ValueError("steps must be non-negative")
    out = psi.copy()
    for _ in range(steps):
        out = a @ out
    return out


def basis_state(coin: QuantumCoin, arc: tuple[int, int]) -> np.ndarray:
    psi = np.zeros(coin.dim)
    psi[coin.arcs.index(*arc)] = 1.0
    return psi


def coin_to_json(coin: QuantumCoin, labels=None) -> dict:
    exact = coin.exact
    arcs = [list(a) for a in coin.arcs.arcs]
    if labels is not None:
        arcs = [[labels[u], labels[v]] for u, v in coin.arcs.arcs]
    rows = [
        [_scalar.fraction_str(x) if exact else float(x) for x in row] for row in coin.U
    ]
    return {"mode": "exact" if exact else "float", "arc_order": arcs, "U": rows}
