"""Univariate polynomials and rational functions in exact or binary64 mode.

Coefficients are stored in ascending degree. Exact mode uses ``Fraction``
throughout; float mode uses Python floats. Mixing the two promotes to
float.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Sequence

from . import _scalar


def _coerce(c, exact: bool):
    if exact:
        return _scalar.to_fraction(c)
    return float(c)


class Polynomial:
    """Polynomial with ascending coefficients.

    The highest stored coefficient is nonzero unless the polynomial is
    zero, which is represented by an empty coefficient list.
    """

    __slots__ = ("coeffs", "mode")

    def __init__(self, coeffs: Iterable, mode: str | None = None):
        coeffs = list(coeffs)
        if mode is None:
            mode = (
                _scalar.EXACT
                if all(isinstance(c, (int, Fraction)) for c in coeffs)
                else _scalar.FLOAT
            )
        _scalar.check_mode(mode)
        exact = mode == _scalar.EXACT
        coeffs = [_coerce(c, exact) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs)
        self.mode = mode

    @property
    def exact(self) -> bool:
        return self.mode == _scalar.EXACT

    @classmethod
    def constant(cls, c, mode: str = _scalar.EXACT) -> "Polynomial":
        return cls([c], mode)

    @classmethod
    def x(cls, mode: str = _scalar.EXACT) -> "Polynomial":
        return cls([0, 1], mode)

    @classmethod
    def from_roots(cls, roots: Sequence, mode: str = _scalar.EXACT) -> "Polynomial":
        out = cls([1], mode)
        for r in roots:
            out = out * cls([-r, 1], mode)
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0) if self.exact else 0.0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self) -> str:
        shown = [_scalar.fraction_str(c) if self.exact else repr(c) for c in self.coeffs]
        return f"Polynomial([{', '.join(shown)}], mode={self.mode!r})"

    def _promote(self, other) -> tuple["Polynomial", "Polynomial"]:
        if not isinstance(other, Polynomial):
            mode = self.mode
            if isinstance(other, float) and self.exact:
                mode = _scalar.FLOAT
            other = Polynomial([other], mode)
        if self.mode == other.mode:
            return self, other
        return self.to_float(), other.to_float()

    def to_float(self) -> "Polynomial":
        return self if not self.exact else Polynomial([float(c) for c in self.coeffs], _scalar.FLOAT)

    def to_exact(self) -> "Polynomial":
        if self.exact:
            return self
        return Polynomial([_scalar.to_fraction(c) for c in self.coeffs], _scalar.EXACT)

    def __add__(self, other) -> "Polynomial":
        a, b = self._promote(other)
        n = max(len(a.coeffs), len(b.coeffs))
        return Polynomial([a[k] + b[k] for k in range(n)], a.mode)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs], self.mode)

    def __sub__(self, other) -> "Polynomial":
        a, b = self._promote(other)
        return a + (-b)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        a, b = self._promote(other)
        if a.is_zero() or b.is_zero():
            return Polynomial([], a.mode)
        out = [Fraction(0) if a.exact else 0.0] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, ca in enumerate(a.coeffs):
            if ca == 0:
                continue
            for j, cb in enumerate(b.coeffs):
                out[i + j] += ca * cb
        return Polynomial(out, a.mode)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative powers of a polynomial are rational functions")
        out = Polynomial([1], self.mode)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            other = Polynomial([other], self.mode)
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        a, b = self._promote(other)
        if b.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(a.coeffs)
        lead = b.coeffs[-1]
        db = b.degree
        if len(rem) - 1 < db:
            return Polynomial([], a.mode), a
        quot = [Fraction(0) if a.exact else 0.0] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] / lead
            quot[k] = c
            if c == 0:
                continue
            for j, cb in enumerate(b.coeffs):
                rem[k + j] -= c * cb
            rem[k + db] = Fraction(0) if a.exact else 0.0
        return Polynomial(quot, a.mode), Polynomial(rem[:db], a.mode)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        return Polynomial([c / lead for c in self.coeffs], self.mode)

    def reversed(self, degree: int | None = None) -> "Polynomial":
        """``x^degree * P(1/x)``; ``degree`` defaults to ``self.degree``."""
        d = self.degree if degree is None else degree
        if d < self.degree:
            raise ValueError("reversal degree below polynomial degree")
        pad = list(self.coeffs) + [0] * (d + 1 - len(self.coeffs))
        return Polynomial(pad[::-1], self.mode)

    def valuation(self) -> int:
        """Multiplicity of the root x = 0."""
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return k
        raise ValueError("zero polynomial has no valuation")

    def shift_down(self, k: int) -> "Polynomial":
        """Divide by x^k (the low coefficients must be zero)."""
        return Polynomial(self.coeffs[k:], self.mode)

    def max_abs(self) -> float:
        return max((abs(float(c)) for c in self.coeffs), default=0.0)

    def max_gap(self, other: "Polynomial") -> float:
        n = max(len(self.coeffs), len(other.coeffs))
        return max((abs(float(self[k]) - float(other[k])) for k in range(n)), default=0.0)

    def is_close(self, other: "Polynomial", tol: float) -> bool:
        return self.max_gap(other) <= tol

    def to_json(self) -> dict:
        if self.exact:
            return {"mode": "exact", "coeffs": [_scalar.fraction_str(c) for c in self.coeffs]}
        return {"mode": "float", "coeffs": [float(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, doc: dict | str) -> "Polynomial":
        if isinstance(doc, str):
            doc = json.loads(doc)
        return cls(doc["coeffs"], doc.get("mode", _scalar.FLOAT))


def gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd of two exact polynomials."""
    if not (a.exact and b.exact):
        raise ValueError("gcd is defined only in exact mode")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


class RationalFunction:
    """Quotient of two polynomials.

    The denominator is scaled so that its lowest nonzero coefficient is
    +1. Exact-mode functions are kept in lowest terms.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator=None, reduce: bool = True):
        if not isinstance(numerator, Polynomial):
            numerator = Polynomial([numerator])
        if denominator is None:
            denominator = Polynomial([1], numerator.mode)
        elif not isinstance(denominator, Polynomial):
            denominator = Polynomial([denominator], numerator.mode)
        if denominator.is_zero():
            raise ZeroDivisionError("zero denominator")
        numerator, denominator = numerator._promote(denominator)
        if reduce and numerator.exact:
            g = gcd(numerator, denominator)
            if g.degree > 0:
                numerator, denominator = numerator // g, denominator // g
        low = denominator[denominator.valuation()]
        self.numerator = Polynomial([c / low for c in numerator.coeffs], numerator.mode)
        self.denominator = Polynomial([c / low for c in denominator.coeffs], denominator.mode)

    @property
    def mode(self) -> str:
        return self.numerator.mode

    @property
    def exact(self) -> bool:
        return self.numerator.exact

    def __repr__(self) -> str:
        return f"RationalFunction({self.numerator!r}, {self.denominator!r})"

    def __call__(self, x):
        return self.numerator(x) / self.denominator(x)

    def __mul__(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return RationalFunction(
                self.numerator * other.numerator, self.denominator * other.denominator
            )
        return RationalFunction(self.numerator * other, self.denominator)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return RationalFunction(
                self.numerator * other.denominator, self.denominator * other.numerator
            )
        return RationalFunction(self.numerator, self.denominator * other)

    def reciprocal(self) -> "RationalFunction":
        return RationalFunction(self.denominator, self.numerator)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            other = RationalFunction(other)
        return self.numerator * other.denominator == other.numerator * self.denominator

    def is_polynomial(self) -> bool:
        return self.denominator.degree == 0

    def as_polynomial(self, tol: float = 0.0) -> Polynomial:
        """Return the polynomial value; raise if the division leaves a remainder."""
        q, r = self.numerator.divmod(self.denominator)
        if self.exact:
            if not r.is_zero():
                raise ArithmeticError("rational function is not a polynomial")
        elif r.max_abs() > tol * max(1.0, self.numerator.max_abs()):
            raise ArithmeticError(f"division remainder {r.max_abs():.3e} exceeds tolerance")
        return q

    def to_json(self) -> dict:
        return {"numerator": self.numerator.to_json(), "denominator": self.denominator.to_json()}


def product(polys: Iterable[Polynomial], mode: str = _scalar.EXACT) -> Polynomial:
    out = Polynomial([1], mode)
    for p in polys:
        out = out * p
    return out


def relative_gap(a: Polynomial, b: Polynomial) -> float:
    """Largest coefficient difference scaled by ``max(1, max |a_k|)``."""
    return a.max_gap(b) / max(1.0, a.max_abs(), b.max_abs())
