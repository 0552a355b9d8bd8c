"""Multiple Hurwitz zeta, multiple gamma and multiple sine functions.

The order-r zeta sums (n . omega + x)^(-s) over n in N^r. It is evaluated
by peeling off the last period and applying Euler-Maclaurin summation to

    zeta_r(s, x) = sum_k zeta_{r-1}(s, x + k omega_r),

with the tail integral and derivatives expressed through zeta_{r-1} again:

    int_X^inf zeta_{r-1}(s, y) dy = zeta_{r-1}(s-1, X) / (s-1),
    d/dy zeta_{r-1}(s, y) = -s zeta_{r-1}(s+1, y).

The recursion ends at zeta_0(s, x) = x^(-s) and continues analytically to
every s except the poles s = 1, ..., r.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, PoleError

POLE_TOL = 1e-8
REMOVABLE_TOL = 1e-9
REMOVABLE_STEP = 1e-3
EM_REL_TOL = 1e-15
COMPLEX_STEP = 1e-30
ROUNDING = 2.0**-52

# B_2, B_4, ..., B_10 divided by (2j)!
_EM_COEFFS = tuple(
    float(Fraction(b) / math.factorial(2 * j))
    for j, b in enumerate(
        [Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30), Fraction(5, 66)],
        start=1,
    )
)
_FIRST_OMITTED = abs(691 / 2730) / math.factorial(12)


def _check_omega(omega: Sequence[float]) -> tuple[float, ...]:
    om = tuple(float(w) for w in omega)
    if any(not w > 0 for w in om):
        raise DomainError(f"periods must be positive, got {omega}")
    return om


def _pochhammer(s, j: int):
    out = 1
    for k in range(j):
        out *= s + k
    return out


def _lattice_scale(X: float, sigma: float, om: tuple[float, ...]) -> float:
    """Crude size of zeta_r(sigma, X) used only to choose the cut-off."""
    out = X ** (-sigma)
    for w in om:
        out *= 1 + X / w
    return out


def _cutoff(s, x: float, om: tuple[float, ...], deriv: bool = False) -> int:
    """Number of explicit terms before switching to Euler-Maclaurin.

    Grows until the first omitted Bernoulli term is negligible, or until it
    drops below the rounding error of the explicit partial sum, which for
    Re(s) < 0 grows with the number of terms. With ``deriv`` the estimate
    bounds the s-derivative near s = 0, where the Pochhammer factor s itself
    vanishes but its derivative does not.
    """
    sigma = s.real if isinstance(s, complex) else s
    w = om[-1]
    inner = om[:-1]
    poch = 1.0
    for k in range(11):
        poch *= max(abs(s + k), 1.0) if deriv and k == 0 else abs(s + k)
    base = _lattice_scale(x, sigma, inner)
    M = 4
    while True:
        X = x + M * w
        est = _FIRST_OMITTED * w**11 * poch * _lattice_scale(X, sigma + 11, inner)
        partial = M * max(base, _lattice_scale(X, sigma, inner))
        if est <= max(EM_REL_TOL * base, ROUNDING * partial) or M > 100000:
            return M
        M = int(M * 1.5) + 1


def _zeta(s, x: float, om: tuple[float, ...], deriv: bool = False):
    if not om:
        return x ** (-s)
    inner = om[:-1]
    w = om[-1]
    M = _cutoff(s, x, om, deriv)
    total = 0
    for k in range(M):
        total += _zeta(s, x + k * w, inner, deriv)
    X = x + M * w
    total += _zeta(s - 1, X, inner, deriv) / ((s - 1) * w)
    total += 0.5 * _zeta(s, X, inner, deriv)
    for j, c in enumerate(_EM_COEFFS, start=1):
        order = 2 * j - 1
        total += c * w**order * _pochhammer(s, order) * _zeta(s + order, X, inner, deriv)
    return total


def _nearest_int(s) -> tuple[int, float]:
    re = s.real if isinstance(s, complex) else s
    k = round(re)
    return k, abs(s - k)


def multiple_hurwitz_zeta(s, x: float, omega: Sequence[float]):
    """Order-r Hurwitz zeta ``sum (n . omega + x)^(-s)``, continued in s.

    Raises ``PoleError`` within ``POLE_TOL`` of s = 1, ..., r. At
    non-positive integers, where the recursion meets removable
    singularities, the value is recovered from symmetric samples around s.
    For Re(s) < 0 the explicit partial sum cancels against the tail, so the
    absolute error is about 2^-52 times the size of the largest summand.
    """
    om = _check_omega(omega)
    x = float(x)
    if not x > 0:
        raise DomainError(f"x must be positive, got {x}")
    r = len(om)
    k, dist = _nearest_int(s)
    if 1 <= k <= r and dist < POLE_TOL:
        raise PoleError(f"s={s} is within {POLE_TOL} of the pole s={k}")
    if r > 1 and k <= 0 and dist < REMOVABLE_TOL:
        h = REMOVABLE_STEP
        avg = lambda d: 0.5 * (_zeta(k + d, x, om) + _zeta(k - d, x, om))  # noqa: E731
        return (4 * avg(h / 2) - avg(h)) / 3
    return _zeta(s, x, om)


def multiple_hurwitz_zeta_direct(s: float, x: float, omega: Sequence[float], cutoff: float) -> float:
    """Truncated lattice sum over all points with n . omega + x <= cutoff."""
    om = _check_omega(omega)

    def rec(partial: float, idx: int) -> float:
        if idx == len(om):
            return partial ** (-s)
        acc = 0.0
        v = partial
        while v <= cutoff:
            acc += rec(v, idx + 1)
            v += om[idx]
        return acc

    return rec(float(x), 0) if x <= cutoff else 0.0


def log_multiple_gamma(x: float, omega: Sequence[float]) -> float:
    """s-derivative of zeta_r(s, x) at s = 0."""
    om = _check_omega(omega)
    if not om:
        if x == 0:
            raise PoleError("Gamma_0 has a pole at 0")
        return -math.log(abs(x))
    if not x > 0:
        raise DomainError(f"x must be positive, got {x}")
    # complex step: zeta is real on the real axis, so Im zeta(ih) / h is the
    # derivative without subtractive cancellation
    return _zeta(complex(0.0, COMPLEX_STEP), x, om, deriv=True).imag / COMPLEX_STEP


def multiple_gamma(x: float, omega: Sequence[float]) -> float:
    """Order-r multiple gamma: exp of the s-derivative of zeta_r at s = 0.

    Order 0 reduces to 1/x, which is also defined for negative x.
    """
    if len(omega) == 0:
        if x == 0:
            raise PoleError("Gamma_0 has a pole at 0")
        return 1.0 / x
    return math.exp(log_multiple_gamma(x, omega))


def multiple_sine(x: float, omega: Sequence[float]) -> float:
    """Gamma_r(x)^-1 * Gamma_r(sum(omega) - x)^((-1)^r) on 0 < x < sum(omega)."""
    om = _check_omega(omega)
    r = len(om)
    total = sum(om)
    if r == 0:
        if x == 0:
            raise PoleError("S_0 has a pole at 0")
        return multiple_gamma(-x, ()) / multiple_gamma(x, ())
    if not 0 < x < total:
        raise DomainError(f"x={x} outside the principal window (0, {total})")
    sign = 1 if r % 2 == 0 else -1
    return math.exp(-log_multiple_gamma(x, om) + sign * log_multiple_gamma(total - x, om))


def gamma1_closed_form(x: float, w: float) -> float:
    """Gamma_1(x, (w)) = w^(x/w - 1/2) Gamma(x/w) / sqrt(2 pi)."""
    return w ** (x / w - 0.5) * math.gamma(x / w) / math.sqrt(2 * math.pi)


__all__ = [
    "multiple_hurwitz_zeta",
    "multiple_hurwitz_zeta_direct",
    "log_multiple_gamma",
    "multiple_gamma",
    "multiple_sine",
    "gamma1_closed_form",
]
