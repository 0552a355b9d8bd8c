"""Characteristic polynomials, the coin zeta function and its factorization.

The zeta function of a coin U is ``1 / det(I - u U)``. For a chain on a
graph with n vertices and m non-loop edges its reciprocal factors as

    (1 + u)^n (1 - u^2)^(m - n) det((1 + u^2) I - 2 u S),

with S the symmetrized transition matrix. This module computes both sides
independently and the spectrum that follows from the factorization.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import _scalar
from .errors import DomainError, ReconstructionError, TheoremViolation
from .graph_markov import MarkovChain
from .polynomial import Polynomial, RationalFunction
from .quantizer import QuantumCoin, SymmetrizedMatrix, quantize, symmetrize

MAX_DIM = 1024
FLOAT_GAP_TOL = 1e-9
MU_SNAP_TOL = 1e-13
UNIT_MATCH_TOL = 1e-6


def charpoly(A) -> Polynomial:
    """Monic ``det(x I - A)`` by the Faddeev-LeVerrier recursion.

    Object arrays of ``Fraction`` give an exact result; numeric arrays run
    the same recursion in binary64 with compensated trace sums.
    """
    a = A.U if isinstance(A, QuantumCoin) else A.S if isinstance(A, SymmetrizedMatrix) else A
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"charpoly needs a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n > MAX_DIM:
        raise DomainError(f"dimension {n} exceeds the cap of {MAX_DIM}")
    exact = _scalar.is_exact(a)
    if exact:
        return _charpoly_rational(a)
    a = a.astype(complex) if np.iscomplexobj(a) else a.astype(float)
    coeffs = [None] * (n + 1)
    coeffs[n] = Fraction(1) if exact else 1.0
    ident = _scalar.eye(n, exact)
    M = _scalar.zeros((n, n), exact)
    for k in range(1, n + 1):
        M = a @ M + coeffs[n - k + 1] * ident
        AM = a @ M
        if exact:
            tr = sum((AM[i, i] for i in range(n)), Fraction(0))
        elif np.iscomplexobj(AM):
            d = np.diag(AM)
            tr = complex(math.fsum(d.real), math.fsum(d.imag))
        else:
            tr = math.fsum(np.diag(AM))
        coeffs[n - k] = -tr / k
    if not exact and any(isinstance(c, complex) for c in coeffs):
        if max(abs(c.imag) for c in coeffs if isinstance(c, complex)) > 1e-12:
            raise DomainError("complex characteristic polynomial is not supported")
        coeffs = [c.real if isinstance(c, complex) else c for c in coeffs]
    return Polynomial(coeffs, _scalar.EXACT if exact else _scalar.FLOAT)


def _charpoly_rational(a: np.ndarray) -> Polynomial:
    """Faddeev-LeVerrier over the integers.

    With B = L A integral, the recursion stays in Z (each division by k is
    exact) and det(x I - A) = L^-n det(L x I - B). Rows of B are used
    sparsely, which matters for coins, where a row has only deg(o(e))
    nonzero entries.
    """
    n = a.shape[0]
    fr = [[Fraction(x) for x in row] for row in a]
    L = math.lcm(*(x.denominator for row in fr for x in row)) if n else 1
    rows = [[(j, int(x * L)) for j, x in enumerate(row) if x] for row in fr]

    def times(M: np.ndarray) -> np.ndarray:
        out = np.zeros((n, n), dtype=object)
        for i, row in enumerate(rows):
            acc = 0
            for j, v in row:
                acc = acc + v * M[j]
            out[i] = acc
        return out

    c = [0] * (n + 1)
    c[n] = 1
    M = np.zeros((n, n), dtype=object)
    for k in range(1, n + 1):
        M = times(M)
        for i in range(n):
            M[i, i] += c[n - k + 1]
        tr = sum(int(v) for v in np.diag(times(M)))
        q, r = divmod(-tr, k)
        if r:
            raise ArithmeticError("Faddeev-LeVerrier division is not exact")
        c[n - k] = q
    return Polynomial([Fraction(c[k], L ** (n - k)) for k in range(n + 1)], _scalar.EXACT)


def zeta_reciprocal(U) -> Polynomial:
    """``det(I - u U)``: the characteristic polynomial of U, reversed."""
    chi = charpoly(U)
    return chi.reversed(chi.degree)


def zeta_function(U) -> RationalFunction:
    recip = zeta_reciprocal(U)
    return RationalFunction(Polynomial([1], recip.mode), recip)


def theorem2_rhs(n: int, m: int, chiS: Polynomial) -> RationalFunction:
    """Factorized form of det(I - u U) from the characteristic polynomial of S.

    With chi_S(x) = sum_k c_k x^k the determinant det((1+u^2) I - 2u S)
    equals sum_k c_k (1+u^2)^k (2u)^(n-k). When m < n the negative power of
    (1 - u^2) stays in the denominator; exact mode cancels it.
    """
    if chiS.degree != n or chiS[n] != 1:
        raise DomainError("chiS must be monic of degree n")
    if not chiS.exact:
        return _theorem2_rhs_binary64(n, m, chiS)
    mode = chiS.mode
    one_plus_u2 = Polynomial([1, 0, 1], mode)
    two_u = Polynomial([0, 2], mode)
    core = Polynomial([], mode)
    for k, c in enumerate(chiS.coeffs):
        core = core + c * one_plus_u2**k * two_u ** (n - k)
    one_plus_u = Polynomial([1, 1], mode)
    one_minus_u2 = Polynomial([1, 0, -1], mode)
    num = one_plus_u**n * core * one_minus_u2 ** max(m - n, 0)
    den = one_minus_u2 ** max(n - m, 0)
    return RationalFunction(num, den)


def _int_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _int_pow(a: list[int], k: int) -> list[int]:
    out = [1]
    for _ in range(k):
        out = _int_mul(out, a)
    return out


def _theorem2_rhs_binary64(n: int, m: int, chiS: Polynomial) -> RationalFunction:
    """Float-mode right side expanded without intermediate rounding.

    Every binary64 coefficient is a dyadic rational, so scaling by a common
    power of two makes the whole expansion integer arithmetic; only the
    final coefficients are rounded. Rounding inside the expansion would be
    amplified by the binomial-sized coefficients of (1 - u^2)^(m - n).
    """
    ratios = [float(c).as_integer_ratio() for c in chiS.coeffs]
    scale = max(den for _, den in ratios)
    ints = [num * (scale // den) for num, den in ratios]
    core = [0] * (2 * n + 1)
    for k, c in enumerate(ints):
        term = _int_mul(_int_pow([1, 0, 1], k), [0] * (n - k) + [2 ** (n - k)])
        for j, t in enumerate(term):
            core[j] += c * t
    num = _int_mul(_int_mul(_int_pow([1, 1], n), core), _int_pow([1, 0, -1], max(m - n, 0)))
    den = _int_pow([1, 0, -1], max(n - m, 0))
    num_f = Polynomial([x / scale for x in num], _scalar.FLOAT)
    return RationalFunction(num_f, Polynomial([float(x) for x in den], _scalar.FLOAT))


@dataclass(frozen=True)
class Theorem2Report:
    lhs: Polynomial
    rhs: Polynomial
    max_coefficient_gap: float
    relative_gap: float
    mode: str


def verify_theorem2(chain: MarkovChain, tol: float = FLOAT_GAP_TOL) -> Theorem2Report:
    """Compare det(I - uU) with its factorized form for ``chain``.

    The left side comes from the characteristic polynomial of the
    (n+2m)-dimensional coin; the right side only from the n x n matrix S.
    ``relative_gap`` divides by ``max(1, largest |coefficient|)``.
    """
    coin = quantize(chain)
    lhs = zeta_reciprocal(coin)
    S = symmetrize(chain)
    rhs_rf = theorem2_rhs(chain.n, chain.m, charpoly(S.S))
    try:
        rhs = rhs_rf.as_polynomial(tol)
    except ArithmeticError as exc:
        raise TheoremViolation(str(exc)) from exc
    if lhs.exact != rhs.exact:
        lhs, rhs = lhs.to_float(), rhs.to_float()
    if lhs.exact:
        gap = 0.0 if lhs == rhs else lhs.max_gap(rhs)
    else:
        gap = lhs.max_gap(rhs)
    scale = max(1.0, lhs.max_abs(), rhs.max_abs())
    return Theorem2Report(lhs, rhs, gap, gap / scale, lhs.mode)


@dataclass(frozen=True)
class SpectrumReport:
    mu_list: np.ndarray
    unit_circle_pairs: np.ndarray
    minus_one_mult: int
    plus_one_mult: int
    cancelled: int
    eigenvalues: np.ndarray = field(repr=False)

    @property
    def total(self) -> int:
        return len(self.eigenvalues)


def corollary4_spectrum(S, n: int, m: int) -> SpectrumReport:
    """Eigenvalues of the coin predicted from the spectrum of S.

    Each eigenvalue mu of S contributes mu +- i sqrt(1 - mu^2); -1 has
    multiplicity m and +1 multiplicity m - n. When m < n the missing +1
    values are removed from the pairs generated by mu = 1.
    """
    s = S.S if isinstance(S, SymmetrizedMatrix) else S
    s = _scalar.float_array(np.asarray(s))
    if s.shape != (n, n):
        raise DomainError(f"S has shape {s.shape}, expected ({n}, {n})")
    mu = np.linalg.eigvalsh(s)
    if np.max(np.abs(mu), initial=0.0) > 1 + 1e-9:
        raise TheoremViolation(f"spectral radius of S is {np.max(np.abs(mu)):.12g} > 1")
    mu = np.where(np.abs(mu - 1) <= MU_SNAP_TOL, 1.0, mu)
    mu = np.where(np.abs(mu + 1) <= MU_SNAP_TOL, -1.0, mu)
    mu = np.clip(mu, -1.0, 1.0)
    im = np.sqrt(1 - mu**2)
    pairs = np.concatenate([mu + 1j * im, mu - 1j * im])
    eig = list(pairs) + [-1.0 + 0j] * m
    deficit = n - m
    if deficit > 0:
        for _ in range(deficit):
            dist = [abs(z - 1) for z in eig]
            k = int(np.argmin(dist))
            if dist[k] > UNIT_MATCH_TOL:
                raise TheoremViolation("no eigenvalue +1 left to cancel the negative multiplicity")
            eig.pop(k)
    else:
        eig += [1.0 + 0j] * (m - n)
    return SpectrumReport(
        mu_list=mu,
        unit_circle_pairs=pairs,
        minus_one_mult=m,
        plus_one_mult=max(m - n, 0),
        cancelled=max(n - m, 0),
        eigenvalues=np.array(eig, dtype=complex),
    )


def multiset_distance(a, b) -> float:
    """Largest pairing distance under the optimal matching of two multisets."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        return math.inf
    if a.size == 0:
        return 0.0
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def _rational(x: float, tol: float, max_den: int) -> Fraction:
    cand = Fraction(x).limit_denominator(max_den)
    if abs(x - float(cand)) > tol:
        raise ReconstructionError(f"no rational with denominator <= {max_den} within {tol} of {x!r}")
    return cand


def rationalize_poly(P: Polynomial, tol: float = 1e-9, max_den: int = 10**6) -> Polynomial:
    """Recover exact rational coefficients from a float polynomial."""
    if P.exact:
        return P
    out = Polynomial([_rational(float(c), tol, max_den) for c in P.coeffs], _scalar.EXACT)
    if out.to_float().max_gap(P) > tol:
        raise ReconstructionError("reconstructed polynomial drifts from its input")
    return out


@dataclass(frozen=True)
class PSComparison:
    chi_P: Polynomial
    chi_S: Polynomial
    gap: float

    def equal(self, tol: float) -> bool:
        return self.gap <= tol


def compare_p_s(P, S) -> PSComparison:
    """Characteristic polynomials of a transition block and of its S."""
    cp = charpoly(P)
    cs = charpoly(S.S if isinstance(S, SymmetrizedMatrix) else S)
    if cp.exact and cs.exact:
        gap = 0.0 if cp == cs else cp.max_gap(cs)
    else:
        gap = cp.to_float().max_gap(cs.to_float())
    return PSComparison(cp, cs, gap)


def coin_and_s(chain: MarkovChain) -> tuple[QuantumCoin, SymmetrizedMatrix]:
    return quantize(chain), symmetrize(chain)
