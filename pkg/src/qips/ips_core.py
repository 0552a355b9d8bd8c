"""Interacting particle systems on the finite segment {0, ..., N-1}.

A local operator is a 4x4 matrix acting on pair states ordered
00, 01, 10, 11; column (i, j) holds the weights of the transitions
(i, j) -> (k, l). Only operators that never change the right site are
supported. The global operator for N sites is the ordered product of the
local operator placed on every neighbouring pair, leftmost pair first.

Configurations are indexed with site 0 as the most significant bit, so
``|011>`` is basis vector 3.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from . import _scalar
from .errors import DomainError, StructureError

DEFAULT_TOL = 1e-10
PCA_ENTRY_TOL = 1e-12
MAX_SITES = 12

PAIR_LABELS = ("00", "01", "10", "11")


@dataclass(frozen=True)
class Configuration:
    """Occupation pattern of N >= 2 sites."""

    bits: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if len(bits) < 2:
            raise DomainError("a configuration needs at least two sites")
        if any(b not in (0, 1) for b in bits):
            raise DomainError(f"bits must be 0 or 1, got {self.bits}")
        object.__setattr__(self, "bits", bits)

    @property
    def N(self) -> int:
        return len(self.bits)

    @property
    def index(self) -> int:
        idx = 0
        for b in self.bits:
            idx = 2 * idx + b
        return idx

    @classmethod
    def from_index(cls, index: int, N: int) -> "Configuration":
        if not 0 <= index < 2**N:
            raise DomainError(f"index {index} out of range for N={N}")
        return cls(tuple((index >> (N - 1 - i)) & 1 for i in range(N)))

    @classmethod
    def from_string(cls, s: str) -> "Configuration":
        return cls(tuple(int(c) for c in s))

    def __str__(self) -> str:
        return "".join(map(str, self.bits))


@dataclass(frozen=True)
class DKParams:
    p: float | Fraction
    q: float | Fraction

    def __post_init__(self):
        for name in ("p", "q"):
            v = getattr(self, name)
            if not 0 <= v <= 1:
                raise DomainError(f"{name}={v} outside [0, 1]")


@dataclass(frozen=True)
class LocalOperator:
    entries: np.ndarray

    def __post_init__(self):
        a = self.entries
        if not isinstance(a, np.ndarray):
            a = np.asarray(a)
            if a.dtype != object and not np.iscomplexobj(a):
                a = a.astype(float)
            object.__setattr__(self, "entries", a)
        if a.shape != (4, 4):
            raise StructureError(f"local operator must be 4x4, got {a.shape}")

    @property
    def exact(self) -> bool:
        return _scalar.is_exact(self.entries)

    def weight(self, i: int, j: int, k: int, l: int):
        """Transition weight from pair (i, j) to pair (k, l)."""
        return self.entries[2 * k + l, 2 * i + j]


@dataclass(frozen=True)
class GlobalOperator:
    entries: np.ndarray
    N: int

    @property
    def exact(self) -> bool:
        return _scalar.is_exact(self.entries)


@dataclass(frozen=True)
class Classification:
    right_preserving: bool
    is_pca: bool
    is_qca: bool
    tolerance: float


def build_dk_local(params: DKParams, mode: str = _scalar.FLOAT) -> LocalOperator:
    """Domany-Kinzel local operator.

    A left site becomes occupied with probability ``p`` when exactly one
    site of the pair is occupied and with probability ``q`` when both are.
    """
    _scalar.check_mode(mode)
    if mode == _scalar.EXACT:
        p, q = _scalar.to_fraction(params.p), _scalar.to_fraction(params.q)
    else:
        p, q = float(params.p), float(params.q)
    one, zero = (Fraction(1), Fraction(0)) if mode == _scalar.EXACT else (1.0, 0.0)
    rows = [
        [one, zero, 1 - p, zero],
        [zero, 1 - p, zero, 1 - q],
        [zero, zero, p, zero],
        [zero, p, zero, q],
    ]
    arr = np.array(rows, dtype=object if mode == _scalar.EXACT else float)
    return LocalOperator(arr)


def _right_preserving(a: np.ndarray, tol: float) -> bool:
    for r in range(4):
        for c in range(4):
            if r % 2 != c % 2 and abs(a[r, c]) > tol:
                return False
    return True


def classify_local(op: LocalOperator, tol: float = DEFAULT_TOL) -> Classification:
    a = op.entries
    af = _scalar.float_array(a) if op.exact else np.asarray(a)
    rp = _right_preserving(af, tol)

    is_real = not np.iscomplexobj(af) or bool(np.all(np.abs(af.imag) <= PCA_ENTRY_TOL))
    if op.exact:
        is_pca = all(0 <= v <= 1 for v in a.ravel()) and all(
            sum(a[:, c]) == 1 for c in range(4)
        )
    else:
        re = af.real
        is_pca = (
            is_real
            and bool(np.all(re >= -PCA_ENTRY_TOL))
            and bool(np.all(re <= 1 + PCA_ENTRY_TOL))
            and bool(np.all(np.abs(re.sum(axis=0) - 1) <= tol))
        )
    ac = af.astype(complex)
    is_qca = bool(np.max(np.abs(ac.conj().T @ ac - np.eye(4))) <= tol)
    return Classification(rp, bool(is_pca), is_qca, tol)


def _check_sites(N: int, max_sites: int | None) -> None:
    if N < 2:
        raise DomainError(f"N must be at least 2, got {N}")
    cap = MAX_SITES if max_sites is None else max_sites
    if N > cap:
        raise DomainError(f"N={N} exceeds the cap of {cap} sites; pass max_sites to override")


def global_from_local(
    op: LocalOperator, N: int, max_sites: int | None = None, tol: float = DEFAULT_TOL
) -> GlobalOperator:
    _check_sites(N, max_sites)
    a = op.entries
    exact = op.exact
    if not _right_preserving(_scalar.float_array(a) if exact else a, tol):
        raise StructureError("local operator changes the right site")
    dim = 2**N
    result = _scalar.eye(dim, exact) if exact else np.eye(dim, dtype=a.dtype)
    for x in range(N - 1):
        left = _scalar.eye(2**x, exact) if exact else np.eye(2**x)
        right = _scalar.eye(2 ** (N - 2 - x), exact) if exact else np.eye(2 ** (N - 2 - x))
        factor = np.kron(np.kron(left, a), right)
        result = factor @ result
    return GlobalOperator(result, N)


def split_blocks(g: GlobalOperator, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Split into the blocks of configurations ending in 0 and ending in 1.

    Within a block rows and columns follow the integer value of the first
    N-1 bits, which for N=2 gives the order 00, 10 | 01, 11.
    """
    a = g.entries
    af = _scalar.float_array(a) if g.exact else a
    dim = a.shape[0]
    r = np.arange(dim)
    cross = (r[:, None] % 2) != (r[None, :] % 2)
    if np.any(np.abs(af[cross]) > tol):
        raise StructureError("global operator has weight between the two last-bit blocks")
    even, odd = r[r % 2 == 0], r[r % 2 == 1]
    return a[np.ix_(even, even)], a[np.ix_(odd, odd)]


def direct_sum(*blocks: np.ndarray) -> np.ndarray:
    exact = any(_scalar.is_exact(b) for b in blocks)
    n = sum(b.shape[0] for b in blocks)
    out = _scalar.zeros((n, n), exact)
    if not exact:
        out = out.astype(np.result_type(*blocks))
    k = 0
    for b in blocks:
        d = b.shape[0]
        out[k : k + d, k : k + d] = b
        k += d
    return out


def block_permutation(N: int) -> np.ndarray:
    """Index order that lists even configurations first, then odd ones."""
    r = np.arange(2**N)
    return np.concatenate([r[r % 2 == 0], r[r % 2 == 1]])


def _left_occupation_probs(op: LocalOperator) -> np.ndarray:
    """prob[i, j] that the left site becomes 1 given the pair (i, j)."""
    a = _scalar.float_array(op.entries).real
    return np.array([[a[2 + j, 2 * i + j] for j in (0, 1)] for i in (0, 1)])


def _require_pca(op: LocalOperator) -> None:
    if not classify_local(op).is_pca:
        raise DomainError("sampling needs a stochastic (PCA) local operator")


def sample_trajectory(
    op: LocalOperator, init: Configuration, steps: int, seed: int
) -> list[Configuration]:
    """Sample a trajectory of length ``steps + 1`` starting at ``init``.

    The sweep over pairs only ever rewrites the left site using the old
    right neighbour, so every site is updated independently from the old
    configuration and site N-1 never changes.
    """
    _require_pca(op)
    if steps < 0:
        raise DomainError("steps must be non-negative")
    probs = _left_occupation_probs(op)
    rng = np.random.default_rng(seed)
    state = np.array(init.bits)
    out = [init]
    for _ in range(steps):
        pr = probs[state[:-1], state[1:]]
        new = state.copy()
        new[:-1] = (rng.random(len(pr)) < pr).astype(int)
        state = new
        out.append(Configuration(tuple(state)))
    return out


def sample_next_states(
    op: LocalOperator, init: Configuration, samples: int, seed: int
) -> np.ndarray:
    """Basis indices of ``samples`` independent one-step successors."""
    _require_pca(op)
    probs = _left_occupation_probs(op)
    rng = np.random.default_rng(seed)
    bits = np.array(init.bits)
    pr = probs[bits[:-1], bits[1:]]
    new_left = (rng.random((samples, len(pr))) < pr).astype(np.int64)
    N = init.N
    weights = 2 ** np.arange(N - 1, 0, -1)
    return new_left @ weights + bits[-1]


def empirical_step_distribution(
    op: LocalOperator, init: Configuration, samples: int, seed: int
) -> np.ndarray:
    idx = sample_next_states(op, init, samples, seed)
    return np.bincount(idx, minlength=2**init.N) / samples


def total_variation(p: np.ndarray, q: np.ndarray) -> float:
    return 0.5 * float(np.sum(np.abs(np.asarray(p, float) - np.asarray(q, float))))


def _parse_entry(v):
    if isinstance(v, str):
        s = v.strip()
        try:
            return Fraction(s)
        except ValueError:
            return complex(s.replace(" ", ""))
    if isinstance(v, dict):
        return complex(v.get("re", 0.0), v.get("im", 0.0))
    if isinstance(v, list) and len(v) == 2:
        return complex(v[0], v[1])
    return v


def local_from_json(doc: dict | str | Path, mode: str = _scalar.FLOAT) -> LocalOperator:
    """Read a local operator description.

    Accepted shapes: ``{"local": [16 entries, row-major]}`` and
    ``{"model": "dk", "p": ..., "q": ...}``. Entries may be numbers,
    ``"num/den"`` strings, or complex numbers as ``[re, im]``.
    """
    if isinstance(doc, (str, Path)):
        path = Path(doc)
        try:
            doc = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise DomainError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise DomainError("local operator document must be a JSON object")
    if doc.get("model") == "dk":
        try:
            p, q = doc["p"], doc["q"]
        except KeyError as exc:
            raise DomainError(f"dk model missing key {exc.args[0]!r}") from exc
        conv = _scalar.to_fraction if mode == _scalar.EXACT else float
        return build_dk_local(DKParams(conv(p), conv(q)), mode)
    if "local" not in doc:
        raise DomainError("expected key 'local' or 'model'")
    vals = doc["local"]
    if not isinstance(vals, list) or len(vals) != 16:
        raise DomainError("'local' must hold exactly 16 entries")
    parsed = []
    for k, v in enumerate(vals):
        try:
            parsed.append(_parse_entry(v))
        except (ValueError, TypeError) as exc:
            raise DomainError(f"'local'[{k}]: cannot parse {v!r}") from exc
    if any(isinstance(v, complex) for v in parsed):
        if mode == _scalar.EXACT:
            raise DomainError("exact mode does not accept complex entries")
        return LocalOperator(np.array(parsed, dtype=complex).reshape(4, 4))
    return LocalOperator(_scalar.in_mode(np.array(parsed, dtype=object).reshape(4, 4), mode))


def brute_force_global(op: LocalOperator, N: int) -> np.ndarray:
    """Global operator entry by entry from products of local weights.

    Every left site x moves from old[x] to new[x] looking at the old right
    neighbour, so the weight of old -> new is the product over x of
    a^{old[x] old[x+1]}_{new[x] old[x+1]}.
    """
    a = op.entries
    exact = op.exact
    dim = 2**N
    out = _scalar.zeros((dim, dim), exact) if exact else np.zeros((dim, dim), dtype=a.dtype)
    for c in range(dim):
        old = Configuration.from_index(c, N).bits
        for r in range(dim):
            new = Configuration.from_index(r, N).bits
            if new[-1] != old[-1]:
                continue
            w = Fraction(1) if exact else 1.0
            for x in range(N - 1):
                w = w * op.weight(old[x], old[x + 1], new[x], old[x + 1])
            out[r, c] = w
    return out


__all__: Sequence[str] = [
    "Configuration",
    "DKParams",
    "LocalOperator",
    "GlobalOperator",
    "Classification",
    "build_dk_local",
    "classify_local",
    "global_from_local",
    "split_blocks",
    "direct_sum",
    "sample_trajectory",
    "sample_next_states",
    "empirical_step_distribution",
    "total_variation",
    "local_from_json",
    "brute_force_global",
]
