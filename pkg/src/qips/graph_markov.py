"""Loop-decorated graphs, their arc sets, and Markov chains on them.

Every vertex carries exactly one loop. The arc set holds one diloop per
vertex and both orientations of every non-loop edge, sorted by
(origin, terminus). Chains are stored row-stochastically: ``prob[e]`` is
the probability of stepping from ``origin(e)`` to ``terminus(e)``.
"""
from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _scalar
from .errors import DomainError, StructureError

FLOAT_SUM_TOL = 1e-12


@dataclass(frozen=True)
class Graph:
    """Connected graph on ``n`` vertices with one loop per vertex."""

    n: int
    edges: tuple[tuple[int, int], ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise StructureError("a graph needs at least one vertex")
        norm = []
        for u, v in self.edges:
            if u == v:
                raise StructureError("loops are implicit; list only non-loop edges")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise StructureError(f"edge ({u}, {v}) references a missing vertex")
            norm.append((min(u, v), max(u, v)))
        norm = tuple(sorted(set(norm)))
        if len(norm) != len(self.edges):
            raise StructureError("duplicate edges are not supported")
        object.__setattr__(self, "edges", norm)
        labels = tuple(self.labels) or tuple(str(i) for i in range(self.n))
        if len(labels) != self.n:
            raise StructureError("one label per vertex required")
        object.__setattr__(self, "labels", labels)
        if not self._connected():
            raise StructureError("graph is not connected")
        object.__setattr__(self, "_edge_set", frozenset(norm))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def loops(self) -> tuple[int, ...]:
        return tuple(range(self.n))

    def _connected(self) -> bool:
        adj = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        seen = {0}
        todo = deque([0])
        while todo:
            u = todo.popleft()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    todo.append(v)
        return len(seen) == self.n

    def has_edge(self, u: int, v: int) -> bool:
        return u == v or (min(u, v), max(u, v)) in self._edge_set

    @classmethod
    def complete(cls, n: int, labels: Sequence[str] = ()) -> "Graph":
        return cls(n, tuple((u, v) for u in range(n) for v in range(u + 1, n)), tuple(labels))


@dataclass(frozen=True)
class ArcSet:
    arcs: tuple[tuple[int, int], ...]
    inverse: tuple[int, ...]
    _index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {a: i for i, a in enumerate(self.arcs)})

    @classmethod
    def of(cls, graph: Graph) -> "ArcSet":
        arcs = [(u, u) for u in range(graph.n)]
        for u, v in graph.edges:
            arcs += [(u, v), (v, u)]
        arcs.sort()
        index = {a: i for i, a in enumerate(arcs)}
        inverse = tuple(index[(v, u)] for u, v in arcs)
        return cls(tuple(arcs), inverse)

    def __len__(self) -> int:
        return len(self.arcs)

    def index(self, u: int, v: int) -> int:
        return self._index[(u, v)]

    def origin(self, e: int) -> int:
        return self.arcs[e][0]

    def terminus(self, e: int) -> int:
        return self.arcs[e][1]

    def is_loop(self, e: int) -> bool:
        return self.arcs[e][0] == self.arcs[e][1]


@dataclass(frozen=True)
class MarkovChain:
    graph: Graph
    arcs: ArcSet
    prob: np.ndarray

    def __post_init__(self):
        if len(self.prob) != len(self.arcs):
            raise StructureError("one probability per arc required")
        exact = self.exact
        for e, pe in enumerate(self.prob):
            if pe < 0 or pe > 1 + (0 if exact else FLOAT_SUM_TOL):
                raise DomainError(f"arc {self.arcs.arcs[e]} has probability {pe} outside [0, 1]")
        sums = _out_sums(self.arcs, self.prob, self.graph.n, exact)
        for u, s in enumerate(sums):
            if (s != 1) if exact else abs(s - 1) > FLOAT_SUM_TOL:
                raise DomainError(f"probabilities leaving vertex {u} sum to {s}, not 1")

    @property
    def exact(self) -> bool:
        return _scalar.is_exact(self.prob)

    @property
    def mode(self) -> str:
        return _scalar.EXACT if self.exact else _scalar.FLOAT

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.graph.m

    def p(self, u: int, v: int):
        return self.prob[self.arcs.index(u, v)]

    def in_mode(self, mode: str) -> "MarkovChain":
        if mode == self.mode:
            return self
        return MarkovChain(self.graph, self.arcs, _scalar.in_mode(self.prob, mode))


def _out_sums(arcs: ArcSet, prob, n: int, exact: bool) -> list:
    groups = [[] for _ in range(n)]
    for e, (u, _) in enumerate(arcs.arcs):
        groups[u].append(prob[e])
    if exact:
        return [sum(g, Fraction(0)) for g in groups]
    return [math.fsum(float(v) for v in g) for g in groups]


def configuration_labels(N: int, last_bit: int) -> tuple[str, ...]:
    """Labels of configurations ending in ``last_bit``, by prefix value."""
    width = N - 1
    return tuple(format(k, f"0{width}b") + str(last_bit) for k in range(2**width))


def build_component_graph(N: int, component: int = 1) -> Graph:
    """Complete graph plus loops on the 2^(N-1) configurations of one block.

    ``component`` 1 collects configurations ending in 0, component 2 those
    ending in 1.
    """
    if N < 2:
        raise DomainError(f"N must be at least 2, got {N}")
    if component not in (1, 2):
        raise DomainError("component must be 1 or 2")
    n = 2 ** (N - 1)
    return Graph.complete(n, configuration_labels(N, component - 1))


def chain_from_block(
    graph: Graph, block, convention: str = "column-stochastic", mode: str | None = None
) -> MarkovChain:
    """Markov chain whose step u -> v has the probability read from ``block``.

    With ``convention="column-stochastic"`` entry (v, u) is the weight of
    u -> v; with ``"row-stochastic"`` it is entry (u, v).
    """
    a = np.asarray(block)
    if a.shape != (graph.n, graph.n):
        raise StructureError(f"block has shape {a.shape}, graph has {graph.n} vertices")
    if mode is None:
        mode = _scalar.EXACT if _scalar.is_exact(a) else _scalar.FLOAT
    a = _scalar.in_mode(a, mode)
    if convention == "column-stochastic":
        rows = a.T
    elif convention == "row-stochastic":
        rows = a
    else:
        raise DomainError(f"unknown convention {convention!r}")
    exact = mode == _scalar.EXACT
    for u in range(graph.n):
        for v in range(graph.n):
            if not graph.has_edge(u, v):
                val = rows[u, v]
                if (val != 0) if exact else abs(val) > FLOAT_SUM_TOL:
                    raise StructureError(f"nonzero weight {val} on missing arc ({u}, {v})")
    arcs = ArcSet.of(graph)
    prob = np.empty(len(arcs), dtype=object if exact else float)
    for e, (u, v) in enumerate(arcs.arcs):
        prob[e] = rows[u, v]
    return MarkovChain(graph, arcs, prob)


def transition_matrix(chain: MarkovChain) -> np.ndarray:
    """Row-stochastic n x n matrix with entry (u, v) = prob(u -> v)."""
    out = _scalar.zeros((chain.n, chain.n), chain.exact)
    for e, (u, v) in enumerate(chain.arcs.arcs):
        out[u, v] = chain.prob[e]
    return out


def random_chain(
    rng: np.random.Generator,
    n: int,
    edge_prob: float = 0.5,
    zero_prob: float = 0.0,
) -> MarkovChain:
    """Random connected loop-decorated graph with random arc probabilities.

    A random spanning tree guarantees connectivity; other edges are kept
    with probability ``edge_prob``. Each arc weight is set to zero with
    probability ``zero_prob`` (loops always keep positive weight so every
    row can be normalised).
    """
    order = rng.permutation(n)
    edges = set()
    for k in range(1, n):
        u, v = int(order[k]), int(order[rng.integers(0, k)])
        edges.add((min(u, v), max(u, v)))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < edge_prob:
                edges.add((u, v))
    graph = Graph(n, tuple(sorted(edges)))
    arcs = ArcSet.of(graph)
    w = rng.random(len(arcs))
    for e in range(len(arcs)):
        if not arcs.is_loop(e) and rng.random() < zero_prob:
            w[e] = 0.0
    sums = np.zeros(n)
    for e, (u, _) in enumerate(arcs.arcs):
        sums[u] += w[e]
    prob = np.array([w[e] / sums[u] for e, (u, _) in enumerate(arcs.arcs)])
    return MarkovChain(graph, arcs, prob)


def _num(x, exact: bool):
    return _scalar.fraction_str(x) if exact else float(x)


def chain_to_json(chain: MarkovChain) -> dict:
    return {
        "mode": chain.mode,
        "vertices": list(chain.graph.labels),
        "edges": [list(e) for e in chain.graph.edges],
        "arcs": [list(a) for a in chain.arcs.arcs],
        "prob": [_num(x, chain.exact) for x in chain.prob],
    }


def chain_from_json(doc: dict | str) -> MarkovChain:
    if isinstance(doc, str):
        doc = json.loads(doc)
    labels = tuple(doc["vertices"])
    graph = Graph(len(labels), tuple(tuple(e) for e in doc["edges"]), labels)
    arcs = ArcSet.of(graph)
    mode = doc.get("mode", _scalar.FLOAT)
    prob = _scalar.in_mode(np.array(doc["prob"], dtype=object), mode)
    if "arcs" in doc and [tuple(a) for a in doc["arcs"]] != list(arcs.arcs):
        raise StructureError("arc list does not follow (origin, terminus) order")
    return MarkovChain(graph, arcs, prob)


def graph_to_json(graph: Graph) -> dict:
    return {"vertices": list(graph.labels), "edges": [list(e) for e in graph.edges]}
