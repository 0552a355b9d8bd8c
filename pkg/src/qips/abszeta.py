"""Absolute automorphic forms and their absolute zeta functions.

A rational function f is automorphic of weight D when
f(1/x) = C x^(-D) f(x) with C = +-1. When f also has the shape

    f(x) = x^(l/2) prod_i (x^m_i - 1) / prod_j (x^n_j - 1),

its absolute zeta function is a finite product of multiple gamma values,

    zeta_f(s) = prod_{I subset of m-indices} Gamma_b(s - deg f + m(I), n)^((-1)^|I|),

and satisfies zeta_f(D - s)^C = eps_f(s) zeta_f(s) with eps_f built the
same way from multiple sines. This module recognises that shape, expands
the product symbolically, and evaluates every piece numerically.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from scipy import integrate

from . import _scalar
from .errors import (
    DomainError,
    FormMismatch,
    NotAutomorphic,
    NotCyclotomic,
    SignMismatch,
)
from .multiple_zeta import log_multiple_gamma, multiple_hurwitz_zeta, multiple_sine
from .polynomial import Polynomial, RationalFunction

AUTOMORPHY_TOL = 1e-9
INTEGER_TOL = 1e-9
INTEGER_REL_TOL = 1e-13
INTEGRAND_FLOOR = 1e-16


@dataclass(frozen=True)
class AutomorphyWitness:
    C: int
    D: int


@dataclass(frozen=True)
class CyclotomicForm:
    ell: int
    m_list: tuple[int, ...]
    n_list: tuple[int, ...]

    def __post_init__(self):
        if self.ell % 2:
            raise FormMismatch(f"ell={self.ell} is odd")
        if any(k < 1 for k in self.m_list + self.n_list):
            raise DomainError("cyclotomic exponents must be positive integers")
        object.__setattr__(self, "m_list", tuple(sorted(self.m_list)))
        object.__setattr__(self, "n_list", tuple(sorted(self.n_list)))

    @property
    def a(self) -> int:
        return len(self.m_list)

    @property
    def b(self) -> int:
        return len(self.n_list)

    @property
    def deg_f(self) -> Fraction:
        return Fraction(self.ell, 2) + sum(self.m_list) - sum(self.n_list)

    def to_rational_function(self) -> RationalFunction:
        num = Polynomial([0] * (self.ell // 2) + [1]) if self.ell >= 0 else Polynomial([1])
        den = Polynomial([0] * (-self.ell // 2) + [1]) if self.ell < 0 else Polynomial([1])
        for m in self.m_list:
            num = num * _x_power_minus_one(m)
        for n in self.n_list:
            den = den * _x_power_minus_one(n)
        return RationalFunction(num, den)

    def log_value_at_exp(self, t: float) -> float:
        """log f(e^t) for t > 0, stable for small and large t."""
        out = 0.5 * self.ell * t
        for m in self.m_list:
            out += _log_expm1(m * t)
        for n in self.n_list:
            out -= _log_expm1(n * t)
        return out

    def to_json(self) -> dict:
        return {"ell": self.ell, "m": list(self.m_list), "n": list(self.n_list)}


def _log_expm1(y: float) -> float:
    if y > 30:
        return y + math.log1p(-math.exp(-y))
    return math.log(math.expm1(y))


def _x_power_minus_one(k: int) -> Polynomial:
    return Polynomial([-1] + [0] * (k - 1) + [1])


@lru_cache(maxsize=None)
def cyclotomic_polynomial(d: int) -> Polynomial:
    """Phi_d from x^d - 1 divided by Phi_k for every proper divisor k."""
    if d < 1:
        raise DomainError("cyclotomic index must be positive")
    out = _x_power_minus_one(d)
    for k in range(1, d):
        if d % k == 0:
            out = out // cyclotomic_polynomial(k)
    return out


@lru_cache(maxsize=8)
def _phi_table(bound: int) -> tuple[int, ...]:
    """Euler totients 0..bound by sieve."""
    phi = list(range(bound + 1))
    for k in range(2, bound + 1):
        if phi[k] == k:
            for j in range(k, bound + 1, k):
                phi[j] -= phi[j] // k
    return tuple(phi)


def _mobius(n: int) -> int:
    out = 1
    k = 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            out = -out
        k += 1
    return -out if n > 1 else out


def _integral(p: Polynomial) -> Polynomial:
    """Integer coefficients of p, or NotCyclotomic.

    Float coefficients are rounded when the rounding noise, which scales with
    the largest coefficient, is clearly below 1/2.
    """
    if p.exact:
        if any(Fraction(c).denominator != 1 for c in p.coeffs):
            raise NotCyclotomic("coefficients are not integers")
        return p
    vals = [complex(c) for c in p.coeffs]
    if any(abs(v.imag) > INTEGER_TOL for v in vals):
        raise NotCyclotomic("coefficients are not real")
    slack = max(INTEGER_TOL, INTEGER_REL_TOL * max((abs(v) for v in vals), default=0.0))
    if slack >= 0.25:
        raise NotCyclotomic("coefficients too large to resolve as integers in binary64")
    ints = [round(v.real) for v in vals]
    if any(abs(v.real - k) > slack for v, k in zip(vals, ints)):
        raise NotCyclotomic("coefficients are not integers")
    return Polynomial([Fraction(k) for k in ints], _scalar.EXACT)


def _exact(f: RationalFunction) -> RationalFunction:
    # with a monic denominator a cyclotomic form has integer coefficients
    return RationalFunction(_integral(f.numerator), _integral(f.denominator))


def _strip_x(p: Polynomial) -> tuple[int, Polynomial]:
    v = p.valuation()
    return v, p.shift_down(v)


def detect_automorphy(f: RationalFunction, tol: float = AUTOMORPHY_TOL) -> AutomorphyWitness:
    """Find (C, D) with f(1/x) = C x^(-D) f(x).

    Writing f = x^(a - b) N0 / D0 with N0(0), D0(0) nonzero, the identity
    holds iff rev(N0) D0 = C N0 rev(D0), and then
    D = 2 (a - b) + deg N0 - deg D0.
    """
    if f.numerator.is_zero():
        raise DomainError("the zero function is not an automorphic form")
    a, n0 = _strip_x(f.numerator)
    b, d0 = _strip_x(f.denominator)
    lhs = n0.reversed() * d0
    for C in (1, -1):
        rhs = n0 * d0.reversed() * C
        same = lhs == rhs if f.exact else lhs.max_gap(rhs) <= tol * max(1.0, lhs.max_abs())
        if same:
            return AutomorphyWitness(C, 2 * (a - b) + n0.degree - d0.degree)
    raise NotAutomorphic("f(1/x) is not +-x^-D f(x)")


@lru_cache(maxsize=None)
def _phi_ints(d: int) -> tuple[int, ...]:
    return tuple(int(c) for c in cyclotomic_polynomial(d).coeffs)


def _divide_monic(a: list[int], b: tuple[int, ...]) -> list[int] | None:
    """Exact quotient a / b for monic integer b, or None if b does not divide a."""
    rem = list(a)
    nb = len(b) - 1
    quot = [0] * (len(a) - nb)
    for k in range(len(quot) - 1, -1, -1):
        c = rem[k + nb]
        quot[k] = c
        if c:
            for j in range(nb + 1):
                rem[k + j] -= c * b[j]
    return quot if not any(rem[:nb]) else None


def _vanishes_at_unit_root(a: list[int], d: int) -> bool:
    # float prefilter: a true zero leaves only rounding, far below this bound
    z = cmath.exp(2j * math.pi / d)
    val = 0j
    for c in reversed(a):
        val = val * z + c
    return abs(val) <= 1e-8 * sum(abs(c) for c in a)


def _cyclotomic_counts(p: Polynomial, bound: int) -> tuple[dict[int, int], Polynomial]:
    """Multiplicity of each Phi_d, d <= bound, in an integer polynomial."""
    a = [int(c) for c in p.coeffs]
    phi = _phi_table(bound)
    counts: dict[int, int] = {}
    for d in range(1, bound + 1):
        while phi[d] <= len(a) - 1 and _vanishes_at_unit_root(a, d):
            q = _divide_monic(a, _phi_ints(d))
            if q is None:
                break
            counts[d] = counts.get(d, 0) + 1
            a = q
    return counts, Polynomial([Fraction(c) for c in a], _scalar.EXACT)


def to_cyclotomic_form(f: RationalFunction) -> CyclotomicForm:
    """Recognise f as x^(l/2) prod (x^m - 1) / prod (x^n - 1).

    The exponent e_d of every cyclotomic factor Phi_d in the denominator
    (minus the numerator) determines the net multiplicity g(k) of x^k - 1
    by Moebius inversion over multiples, g(k) = sum_t mu(t) e_(kt), which
    is also the representation with the fewest factors.
    """
    f = _exact(f)
    if f.numerator.is_zero():
        raise DomainError("the zero function has no cyclotomic form")
    a, num = _strip_x(f.numerator)
    b, den = _strip_x(f.denominator)
    # phi(d) >= sqrt(d) for d > 6, so no factor Phi_d with d > deg^2 fits
    bound = max(6, max(num.degree, den.degree) ** 2)
    num_counts, num_rest = _cyclotomic_counts(num, bound)
    den_counts, den_rest = _cyclotomic_counts(den, bound)
    if num_rest.degree > 0 or den_rest.degree > 0:
        raise NotCyclotomic("f has a factor that is not cyclotomic")
    c = num_rest[0] / den_rest[0]
    if c == -1:
        raise SignMismatch("only -f has a cyclotomic product form")
    if c != 1:
        raise NotCyclotomic(f"leading constant {c} cannot come from a cyclotomic product")
    try:
        wit = detect_automorphy(f)
    except NotAutomorphic as exc:
        raise NotCyclotomic(str(exc)) from exc
    keys = set(num_counts) | set(den_counts)
    top = max(keys, default=0)
    e = {d: den_counts.get(d, 0) - num_counts.get(d, 0) for d in range(1, top + 1)}
    m_list: list[int] = []
    n_list: list[int] = []
    for k in range(1, top + 1):
        g = sum(_mobius(t) * e[k * t] for t in range(1, top // k + 1))
        if g > 0:
            n_list += [k] * g
        elif g < 0:
            m_list += [k] * (-g)
    ell = wit.D - (sum(m_list) - sum(n_list))
    if ell % 2 or ell != 2 * (a - b):
        raise FormMismatch(f"monomial exponent {ell}/2 is not consistent with x^{a - b}")
    form = CyclotomicForm(ell, tuple(m_list), tuple(n_list))
    if form.to_rational_function() != f:
        raise NotCyclotomic("reconstruction does not reproduce f")
    return form


@dataclass(frozen=True)
class GammaTerm:
    shift: Fraction
    exponent: int


@dataclass(frozen=True)
class GammaFactor:
    """Gamma_b(x, omega)^exponent with a rational argument x."""

    x: Fraction
    exponent: int
    omega: tuple[int, ...]

    def __str__(self) -> str:
        om = ",".join(map(str, self.omega))
        base = f"Gamma_{len(self.omega)}({_scalar.fraction_str(self.x)},({om}))"
        return base if self.exponent == 1 else f"{base}^{self.exponent}"


@dataclass(frozen=True)
class Theorem5Report:
    form: CyclotomicForm
    deg_f: Fraction
    D: int
    C: int
    gamma_terms: tuple[GammaTerm, ...]
    omega: tuple[int, ...]
    sine_terms: tuple[GammaTerm, ...]
    critical_s: Fraction | None

    def symbolic_zeta(self, s) -> tuple[GammaFactor, ...]:
        """zeta_f(s) as a product of multiple gamma factors."""
        s = _scalar.to_fraction(s)
        return tuple(GammaFactor(s + t.shift, t.exponent, self.omega) for t in self.gamma_terms)

    def symbolic_epsilon(self, s) -> tuple[GammaFactor, ...]:
        s = _scalar.to_fraction(s)
        return tuple(GammaFactor(s + t.shift, t.exponent, self.omega) for t in self.sine_terms)

    def to_json(self) -> dict:
        return {
            "form": self.form.to_json(),
            "deg_f": _scalar.fraction_str(self.deg_f),
            "D": self.D,
            "C": self.C,
            "critical_s": None if self.critical_s is None else _scalar.fraction_str(self.critical_s),
            "gamma_terms": [
                {"shift": _scalar.fraction_str(t.shift), "exponent": t.exponent}
                for t in self.gamma_terms
            ],
            "omega": list(self.omega),
        }


def theorem5_expand(form: CyclotomicForm) -> Theorem5Report:
    """Expand the multiple-gamma product of the absolute zeta function."""
    deg_f = form.deg_f
    D = form.ell + sum(form.m_list) - sum(form.n_list)
    C = (-1) ** ((form.a - form.b) % 2)
    assert deg_f == Fraction(form.ell, 2) + sum(form.m_list) - sum(form.n_list)
    terms = []
    for size in range(form.a + 1):
        for subset in itertools.combinations(range(form.a), size):
            m_sub = sum(form.m_list[i] for i in subset)
            terms.append(GammaTerm(-deg_f + m_sub, (-1) ** size))
    terms = tuple(terms)
    critical = Fraction(D, 2) if C == 1 else None
    return Theorem5Report(form, deg_f, D, C, terms, form.n_list, terms, critical)


def _log_gamma_b(x: float, omega) -> float:
    if len(omega) == 0:
        if x == 0:
            raise DomainError("Gamma_0 pole at 0")
        return -math.log(abs(x))
    if not x > 0:
        raise DomainError(f"multiple gamma argument {x} outside x > 0")
    return log_multiple_gamma(x, omega)


def _gamma0_sign(report: Theorem5Report, s: float) -> int:
    if report.omega:
        return 1
    sign = 1
    for t in report.gamma_terms:
        if float(s + t.shift) < 0:
            sign = -sign
    return sign


def absolute_zeta(report: Theorem5Report, s: float) -> float:
    """Numerical zeta_f(s) from the multiple-gamma product."""
    log_val = sum(t.exponent * _log_gamma_b(float(s + t.shift), report.omega) for t in report.gamma_terms)
    return _gamma0_sign(report, s) * math.exp(log_val)


def epsilon_factor(report: Theorem5Report, s: float) -> float:
    out = 1.0
    for t in report.sine_terms:
        out *= multiple_sine(float(s + t.shift), report.omega) ** t.exponent
    return out


def check_functional_equation(report: Theorem5Report, s) -> float:
    """Relative residual of zeta_f(D - s)^C = eps_f(s) zeta_f(s)."""
    s = float(s)
    total = sum(report.omega)
    for t in report.sine_terms:
        x = s + float(t.shift)
        if report.omega and not 0 < x < total:
            raise DomainError(f"multiple sine argument {x} outside (0, {total})")
    lhs = absolute_zeta(report, report.D - s) ** report.C
    rhs = epsilon_factor(report, s) * absolute_zeta(report, s)
    return abs(lhs - rhs) / abs(lhs)


def subset_sum_Z(form: CyclotomicForm, w: float, s: float) -> float:
    """Absolute Hurwitz zeta as an alternating sum of multiple Hurwitz zetas."""
    report = theorem5_expand(form)
    total = 0.0
    for t in report.gamma_terms:
        x = s + float(t.shift)
        if report.omega:
            total += t.exponent * multiple_hurwitz_zeta(w, x, report.omega)
        else:
            total += t.exponent * x ** (-w)
    return total


def mellin_Z(form: CyclotomicForm, w: float, s: float) -> float:
    """(1/Gamma(w)) int_0^inf f(e^t) e^(-st) t^(w-1) dt by adaptive quadrature."""
    sing = form.b - form.a
    if not w > sing:
        raise DomainError(f"integral diverges at t=0: need w > {sing}, got {w}")
    rate = s - float(form.deg_f)
    if not rate > 0:
        raise DomainError(f"integral diverges at infinity: need s > {float(form.deg_f)}, got {s}")

    def log_integrand(t: float) -> float:
        return form.log_value_at_exp(t) - s * t + (w - 1) * math.log(t)

    def integrand(t: float) -> float:
        return math.exp(log_integrand(t)) if t > 0 else _limit_at_zero(form, w)

    peak = max((w - 1) / rate, 1.0)
    T = 2 * peak
    while log_integrand(T) > math.log(INTEGRAND_FLOOR):
        T *= 1.5
    pieces = [0.0, min(1.0, T), T] if T > 1.0 else [0.0, T]
    total = 0.0
    for lo, hi in zip(pieces, pieces[1:]):
        val, _ = integrate.quad(integrand, lo, hi, limit=400, epsabs=1e-15, epsrel=1e-13)
        total += val
    return total / math.gamma(w)


def _limit_at_zero(form: CyclotomicForm, w: float) -> float:
    power = w - 1 + form.a - form.b
    if power > 0:
        return 0.0
    if power < 0:
        return math.inf
    return math.prod(form.m_list) / math.prod(form.n_list)


def form_from_lists(ell: int, m_list: Sequence[int], n_list: Sequence[int]) -> CyclotomicForm:
    return CyclotomicForm(ell, tuple(m_list), tuple(n_list))
