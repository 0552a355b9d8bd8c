"""End-to-end runs from a local operator to per-component zeta data.

The configuration graph splits into two components (last bit 0 and last
bit 1), so the coin is a direct sum and the combined zeta reciprocal is
the product of the component reciprocals.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _scalar
from .abszeta import CyclotomicForm, detect_automorphy, to_cyclotomic_form
from .errors import ExactnessWarning, NotAutomorphic, NotCyclotomic
from .graph_markov import MarkovChain, build_component_graph, chain_from_block
from .ips_core import (
    DKParams,
    LocalOperator,
    build_dk_local,
    direct_sum,
    global_from_local,
    split_blocks,
)
from .polynomial import Polynomial, RationalFunction, product
from .quantizer import QuantumCoin, quantize
from .zeta import zeta_reciprocal

COMPONENTS = (1, 2)


@dataclass(frozen=True)
class ModelSpec:
    N: int
    local: LocalOperator
    mode: str = _scalar.FLOAT
    tol: float = 1e-9
    source: str = "local"

    def __post_init__(self):
        _scalar.check_mode(self.mode)
        if self.N < 2:
            raise ValueError(f"N must be at least 2, got {self.N}")
        if not self.tol > 0:
            raise ValueError("tolerance must be positive")

    @classmethod
    def dk(cls, N: int, p, q, mode: str = _scalar.FLOAT, tol: float = 1e-9) -> "ModelSpec":
        conv = _scalar.to_fraction if mode == _scalar.EXACT else float
        params = DKParams(conv(p), conv(q))
        return cls(N, build_dk_local(params, mode), mode, tol, source=f"dk({p},{q})")


def component_blocks(spec: ModelSpec) -> dict[int, np.ndarray]:
    g = global_from_local(spec.local, spec.N)
    b0, b1 = split_blocks(g)
    return {1: b0, 2: b1}


def component_chains(spec: ModelSpec, components: Sequence[int] = COMPONENTS) -> dict[int, MarkovChain]:
    blocks = component_blocks(spec)
    return {
        c: chain_from_block(build_component_graph(spec.N, c), blocks[c], mode=spec.mode)
        for c in components
    }


def dk_chains(N: int, p, q, mode: str = _scalar.FLOAT) -> dict[int, MarkovChain]:
    return component_chains(ModelSpec.dk(N, p, q, mode))


def quiet_quantize(chain: MarkovChain) -> QuantumCoin:
    """``quantize`` with the exact-to-float notice silenced."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ExactnessWarning)
        return quantize(chain)


def combined_reciprocal(coins: Sequence[QuantumCoin]) -> Polynomial:
    """det(I - u U) of the direct sum, as a product over components."""
    recips = [zeta_reciprocal(c) for c in coins]
    mode = _scalar.EXACT if all(r.exact for r in recips) else _scalar.FLOAT
    return product((r if mode == _scalar.EXACT else r.to_float() for r in recips), mode)


def direct_sum_reciprocal(coins: Sequence[QuantumCoin]) -> Polynomial:
    blocks = [c.U for c in coins]
    if not all(c.exact for c in coins):
        blocks = [_scalar.float_array(b) for b in blocks]
    return zeta_reciprocal(direct_sum(*blocks))


@dataclass(frozen=True)
class AbsZetaOutcome:
    """Automorphy and cyclotomic recognition of one zeta function."""

    zeta: RationalFunction
    C: int | None
    D: int | None
    form: CyclotomicForm | None
    failure: str | None

    def to_json(self) -> dict:
        return {
            "automorphy": None if self.C is None else {"C": self.C, "D": self.D},
            "cyclotomic_form": None if self.form is None else self.form.to_json(),
            "failure": self.failure,
        }


def recognise(recip: Polynomial) -> AbsZetaOutcome:
    """Run automorphy detection and cyclotomic recognition on 1/recip."""
    zeta = RationalFunction(Polynomial([1], recip.mode), recip)
    try:
        wit = detect_automorphy(zeta)
    except NotAutomorphic as exc:
        return AbsZetaOutcome(zeta, None, None, None, f"{type(exc).__name__}: {exc}")
    try:
        form = to_cyclotomic_form(zeta)
    except NotCyclotomic as exc:
        return AbsZetaOutcome(zeta, wit.C, wit.D, None, f"{type(exc).__name__}: {exc}")
    return AbsZetaOutcome(zeta, wit.C, wit.D, form, None)
