"""Helpers for the two arithmetic modes.

Exact mode stores matrices as numpy object arrays of ``Fraction``; float
mode uses ``float64`` (or ``complex128`` where complex input is allowed).
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

import numpy as np

EXACT = "exact"
FLOAT = "float"


def check_mode(mode: str) -> str:
    if mode not in (EXACT, FLOAT):
        raise ValueError(f"mode must be 'exact' or 'float', got {mode!r}")
    return mode


def is_exact(a) -> bool:
    return isinstance(a, np.ndarray) and a.dtype == object


def to_fraction(x) -> Fraction:
    """Convert a scalar or a ``"num/den"`` string to ``Fraction``.

    Floats are converted through their shortest repr so that ``0.1``
    becomes ``1/10`` rather than its binary expansion.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer, Rational)):
        return Fraction(int(x)) if isinstance(x, (int, np.integer)) else Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, (float, np.floating)):
        if not math.isfinite(x):
            raise ValueError(f"cannot convert {x!r} to a fraction")
        return Fraction(repr(float(x)))
    raise TypeError(f"cannot convert {type(x).__name__} to Fraction")


def exact_array(a) -> np.ndarray:
    arr = np.asarray(a, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = to_fraction(v)
    return out


def float_array(a) -> np.ndarray:
    arr = np.asarray(a)
    if arr.dtype == object:
        return np.vectorize(float, otypes=[float])(arr) if arr.size else arr.astype(float)
    if np.iscomplexobj(arr):
        return arr.astype(complex)
    return arr.astype(float)


def in_mode(a, mode: str) -> np.ndarray:
    return exact_array(a) if check_mode(mode) == EXACT else float_array(a)


def eye(n: int, exact: bool) -> np.ndarray:
    if not exact:
        return np.eye(n)
    out = np.full((n, n), Fraction(0), dtype=object)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def zeros(shape, exact: bool) -> np.ndarray:
    if not exact:
        return np.zeros(shape)
    return np.full(shape, Fraction(0), dtype=object)


def exact_sqrt(x: Fraction) -> Fraction | None:
    """Square root of a non-negative rational, or ``None`` if irrational."""
    if x < 0:
        raise ValueError("square root of a negative number")
    num, den = x.numerator, x.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def fraction_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
