"""Dense univariate polynomials over Q or Q(zeta_N).

Coefficients are stored low degree first and may be ``Fraction`` or
``CycloScalar``; mixing is fine because ``CycloScalar`` absorbs rationals.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import flint

from .cyclo import CycloScalar, format_rational, parse_rational


def _is_zero(c) -> bool:
    return c == 0


def _normalize_coeff(c):
    if isinstance(c, CycloScalar):
        return c.to_rational() if c.is_rational() else c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, Fraction):
        return c
    return parse_rational(c)


class Poly:
    """Immutable polynomial; ``Poly([c0, c1, ...])`` is c0 + c1*t + ..."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_normalize_coeff(c) for c in coeffs]
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def linear(cls, a, b) -> "Poly":
        """a*t + b."""
        return cls([b, a])

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> "Poly":
        p = cls([lead])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    T = None  # set below

    # -- structure ---------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def lead(self):
        return self.coeffs[-1]

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def is_rational(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coeffs)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if _is_zero(other):
                return Poly()
            return Poly(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Poly()
        if self.is_rational() and other.is_rational():
            return Poly._from_fmpq(self._to_fmpq() * other._to_fmpq())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly([1])
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c) -> "Poly":
        return self * c

    def divmod(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - other.degree, 1)
        inv_lead = 1 / other.lead() if isinstance(other.lead(), Fraction) else other.lead().inverse()
        for k in range(len(rem) - 1, other.degree - 1, -1):
            c = rem[k]
            if _is_zero(c):
                continue
            f = c * inv_lead
            shift = k - other.degree
            q[shift] = f
            for j, b in enumerate(other.coeffs):
                rem[shift + j] = rem[shift + j] - f * b
        return Poly(q), Poly(rem[: other.degree] if other.degree > 0 else [])

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = _coerce(other)
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    # -- evaluation / substitution ----------------------------------------

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, a) -> "Poly":
        """p(t + a)."""
        a = _normalize_coeff(a)
        if self.is_rational() and isinstance(a, Fraction):
            q = flint.fmpq(a.numerator, a.denominator)
            return Poly._from_fmpq(self._to_fmpq()(flint.fmpq_poly([q, 1])))
        out = Poly()
        lin = Poly([a, 1])
        for c in reversed(self.coeffs):
            out = out * lin + Poly([c])
        return out

    def reflect(self) -> "Poly":
        """p(-t)."""
        return Poly(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs))

    def compose_affine(self, a, b) -> "Poly":
        """p(a*t + b)."""
        out = Poly()
        lin = Poly([b, a])
        for c in reversed(self.coeffs):
            out = out * lin + Poly([c])
        return out

    # -- rational helpers --------------------------------------------------

    def _to_fmpq(self) -> flint.fmpq_poly:
        return flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator) for c in self.coeffs])

    @classmethod
    def _from_fmpq(cls, p: flint.fmpq_poly) -> "Poly":
        return cls(Fraction(int(c.p), int(c.q)) for c in p.coeffs())

    def content_normalized(self) -> "Poly":
        """Primitive integer polynomial with positive leading coefficient."""
        if not self.coeffs:
            return self
        if not self.is_rational():
            raise ValueError("content normalization needs rational coefficients")
        p = self._to_fmpq()
        z = p.numer()
        content = flint.fmpz(0)
        for c in z.coeffs():
            content = content.gcd(c)
        out = Poly(Fraction(int(c) // int(content)) for c in z.coeffs())
        return -out if out.lead() < 0 else out

    def factor_rational(self):
        """(content, [(factor, multiplicity), ...]) over Q using FLINT."""
        c, facs = self._to_fmpq().factor()
        return Fraction(int(c.p), int(c.q)), [(Poly._from_fmpq(f), m) for f, m in facs]

    # -- display ------------------------------------------------------------

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self, var: str = "t") -> str:
        return self.pretty(var)

    def pretty(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if _is_zero(c):
                continue
            cs = format_rational(c) if isinstance(c, Fraction) else f"({c})"
            mon = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if mon and cs == "1":
                parts.append(mon)
            elif mon and cs == "-1":
                parts.append("-" + mon)
            elif mon:
                parts.append(f"{cs}*{mon}")
            else:
                parts.append(cs)
        return " + ".join(parts).replace("+ -", "- ")


def _coerce(x) -> Poly:
    return x if isinstance(x, Poly) else Poly([x])


Poly.T = Poly([0, 1])


def falling_factorial(k: int) -> Poly:
    """t (t-1) ... (t-k+1)."""
    p = Poly([1])
    for j in range(k):
        p = p * Poly([-j, 1])
    return p


def product(polys: Sequence[Poly]) -> Poly:
    out = Poly([1])
    for p in polys:
        out = out * p
    return out
