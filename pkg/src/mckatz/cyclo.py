"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored in the power basis 1, z, ..., z^(phi(N)-1) modulo the
N-th cyclotomic polynomial.  Polynomial arithmetic is delegated to FLINT's
``fmpq_poly``; everything above that (conductor lifting, conjugation, Galois
action, certified signs) lives here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

import flint
from mpmath import iv

from .errors import ConductorMismatch, NotReal

DEFAULT_CONDUCTOR = 60

Rational = Fraction
ScalarLike = Union["CycloScalar", Fraction, int]


def parse_rational(s: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (or pass through ints/Fractions)."""
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(str(s).strip())


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# per-conductor tables
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _phi_poly(n: int) -> flint.fmpq_poly:
    return flint.fmpq_poly(flint.fmpz_poly.cyclotomic(n).coeffs())


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    return _phi_poly(n).degree()


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple:
    """x^k mod Phi_n for k = 0..n-1."""
    phi = _phi_poly(n)
    x = flint.fmpq_poly([0, 1])
    out = [flint.fmpq_poly([1])]
    for _ in range(1, n):
        out.append((out[-1] * x) % phi)
    return tuple(out)


@lru_cache(maxsize=None)
def _lift_table(m: int, n: int) -> tuple:
    """Images of the basis z_m^k (k < phi(m)) inside Q(zeta_n), m | n."""
    step = n // m
    table = _power_table(n)
    return tuple(table[(k * step) % n] for k in range(euler_phi(m)))


def _combine(coeffs, images) -> flint.fmpq_poly:
    acc = flint.fmpq_poly([0])
    for c, img in zip(coeffs, images):
        if c != 0:
            acc += img * c
    return acc


# ---------------------------------------------------------------------------
# roots of unity
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class RootOfUnity:
    """The root of unity exp(2 pi i * exponent), exponent reduced into [0, 1)."""

    exponent: Fraction

    def __post_init__(self):
        e = parse_rational(self.exponent)
        object.__setattr__(self, "exponent", e - math.floor(e))

    @classmethod
    def parse(cls, s) -> "RootOfUnity":
        return cls(parse_rational(s))

    @property
    def order(self) -> int:
        return self.exponent.denominator

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        return RootOfUnity(self.exponent + other.exponent)

    def __truediv__(self, other: "RootOfUnity") -> "RootOfUnity":
        return RootOfUnity(self.exponent - other.exponent)

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity(-self.exponent)

    def __pow__(self, k: int) -> "RootOfUnity":
        return RootOfUnity(self.exponent * k)

    def is_one(self) -> bool:
        return self.exponent == 0

    def __str__(self) -> str:
        return format_rational(self.exponent)

    def to_json(self) -> str:
        return format_rational(self.exponent)


ONE_ROOT = RootOfUnity(Fraction(0))


def root_to_scalar(r: RootOfUnity | Fraction | str, n: int = DEFAULT_CONDUCTOR) -> "CycloScalar":
    """Embed a root of unity into Q(zeta_n)."""
    if not isinstance(r, RootOfUnity):
        r = RootOfUnity(parse_rational(r))
    k = r.exponent * n
    if k.denominator != 1:
        raise ConductorMismatch(f"root of unity of order {r.order} does not live in Q(zeta_{n})")
    return CycloScalar._raw(n, _power_table(n)[int(k) % n])


# ---------------------------------------------------------------------------
# field elements
# ---------------------------------------------------------------------------


class CycloScalar:
    """Immutable element of Q(zeta_N)."""

    __slots__ = ("conductor", "poly")

    def __init__(self, conductor: int, coeffs=()):
        conductor = int(conductor)
        if conductor < 1:
            raise ValueError("conductor must be positive")
        d = euler_phi(conductor)
        coeffs = [parse_rational(c) for c in coeffs]
        if len(coeffs) > d:
            raise ValueError(f"expected at most {d} coefficients for conductor {conductor}")
        p = flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator) for c in coeffs])
        self.conductor = conductor
        self.poly = p

    @classmethod
    def _raw(cls, conductor: int, poly: flint.fmpq_poly) -> "CycloScalar":
        obj = cls.__new__(cls)
        obj.conductor = conductor
        obj.poly = poly
        return obj

    @classmethod
    def from_rational(cls, q, conductor: int = 1) -> "CycloScalar":
        q = parse_rational(q)
        return cls._raw(conductor, flint.fmpq_poly([flint.fmpq(q.numerator, q.denominator)]))

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "CycloScalar":
        return cls._raw(n, _power_table(n)[k % n])

    # -- coordinates -------------------------------------------------------

    @property
    def coeffs(self) -> tuple:
        raw = self.poly.coeffs()
        out = [Fraction(int(c.p), int(c.q)) for c in raw]
        out += [Fraction(0)] * (euler_phi(self.conductor) - len(out))
        return tuple(out)

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __bool__(self) -> bool:
        return not self.poly.is_zero()

    def is_rational(self) -> bool:
        return self.poly.degree() <= 0

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        if self.poly.is_zero():
            return Fraction(0)
        c = self.poly.coeffs()[0]
        return Fraction(int(c.p), int(c.q))

    # -- conductor handling ------------------------------------------------

    def lift(self, n: int) -> "CycloScalar":
        """Base change into Q(zeta_n); requires conductor | n."""
        if n == self.conductor:
            return self
        if n % self.conductor:
            raise ConductorMismatch(f"cannot lift conductor {self.conductor} to {n}")
        if self.poly.degree() <= 0:
            return CycloScalar._raw(n, self.poly)
        return CycloScalar._raw(n, _combine(self.poly.coeffs(), _lift_table(self.conductor, n)))

    def _align(self, other):
        if isinstance(other, CycloScalar):
            if other.conductor == self.conductor:
                return self.conductor, self.poly, other.poly
            n = math.lcm(self.conductor, other.conductor)
            return n, self.lift(n).poly, other.lift(n).poly
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return self.conductor, self.poly, flint.fmpq_poly([flint.fmpq(q.numerator, q.denominator)])
        return None

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        al = self._align(other)
        if al is None:
            return NotImplemented
        n, a, b = al
        return CycloScalar._raw(n, a + b)

    __radd__ = __add__

    def __sub__(self, other):
        al = self._align(other)
        if al is None:
            return NotImplemented
        n, a, b = al
        return CycloScalar._raw(n, a - b)

    def __rsub__(self, other):
        al = self._align(other)
        if al is None:
            return NotImplemented
        n, a, b = al
        return CycloScalar._raw(n, b - a)

    def __neg__(self):
        return CycloScalar._raw(self.conductor, -self.poly)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CycloScalar._raw(self.conductor, self.poly * flint.fmpq(q.numerator, q.denominator))
        al = self._align(other)
        if al is None:
            return NotImplemented
        n, a, b = al
        return CycloScalar._raw(n, (a * b) % _phi_poly(n))

    __rmul__ = __mul__

    def inverse(self) -> "CycloScalar":
        if self.poly.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.poly.degree() == 0:
            return CycloScalar._raw(self.conductor, flint.fmpq_poly([1 / self.poly.coeffs()[0]]))
        g, s, _ = self.poly.xgcd(_phi_poly(self.conductor))
        # Phi_N irreducible, so g is a nonzero constant
        return CycloScalar._raw(self.conductor, s / g.coeffs()[0])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            q = Fraction(other)
            return CycloScalar._raw(self.conductor, self.poly / flint.fmpq(q.numerator, q.denominator))
        if isinstance(other, CycloScalar):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycloScalar._raw(self.conductor, flint.fmpq_poly([1]))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        al = self._align(other)
        if al is None:
            return NotImplemented
        _, a, b = al
        return a == b

    __hash__ = None

    # -- automorphisms -----------------------------------------------------

    def galois(self, k: int) -> "CycloScalar":
        """Image under zeta_N -> zeta_N^k (k coprime to N)."""
        n = self.conductor
        if math.gcd(k, n) != 1:
            raise ValueError(f"{k} is not a unit modulo {n}")
        if self.poly.degree() <= 0:
            return self
        table = _power_table(n)
        images = [table[(j * k) % n] for j in range(euler_phi(n))]
        return CycloScalar._raw(n, _combine(self.poly.coeffs(), images))

    def conjugate(self) -> "CycloScalar":
        return self.galois(-1 % self.conductor if self.conductor > 1 else 1)

    def in_subfield(self, m: int) -> bool:
        """True if the element lies in Q(zeta_m) (m dividing the conductor)."""
        n = self.conductor
        g = math.gcd(m, n)
        for k in range(1, n):
            if math.gcd(k, n) == 1 and k % g == 1 % g and self.galois(k) != self:
                return False
        return True

    def minimal_conductor(self) -> int:
        n = self.conductor
        for m in sorted(d for d in range(1, n + 1) if n % d == 0):
            if self.in_subfield(m):
                return m
        return n

    # -- embedding ---------------------------------------------------------

    def to_complex(self) -> complex:
        n = self.conductor
        return sum(
            complex(float(c)) * complex(math.cos(2 * math.pi * k / n), math.sin(2 * math.pi * k / n))
            for k, c in enumerate(self.coeffs)
        )

    def real_sign(self) -> int:
        """Certified sign (-1, 0, 1) of a real element under zeta_N -> e^{2 pi i/N}."""
        if self.conductor > 2 and self.conjugate() != self:
            raise NotReal(f"{self} is not fixed by complex conjugation")
        if self.poly.is_zero():
            return 0
        if self.poly.degree() == 0:
            return 1 if self.to_rational() > 0 else -1
        n = self.conductor
        coeffs = self.coeffs
        prec = 64
        while True:
            iv.prec = prec
            two_pi_over_n = 2 * iv.pi / n
            total = iv.mpf(0)
            for k, c in enumerate(coeffs):
                if c:
                    total += iv.mpf(c.numerator) / c.denominator * iv.cos(two_pi_over_n * k)
            if total.a > 0:
                return 1
            if total.b < 0:
                return -1
            prec *= 2
            if prec > 1 << 16:  # pragma: no cover - nonzero elements separate long before this
                raise RuntimeError("sign refinement did not terminate")

    # -- display / io ------------------------------------------------------

    def __repr__(self) -> str:
        return f"CycloScalar({self.conductor}, {self})"

    def __str__(self) -> str:
        if self.poly.is_zero():
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(format_rational(c))
            else:
                mon = f"z{self.conductor}" + (f"^{k}" if k > 1 else "")
                if c == 1:
                    terms.append(mon)
                elif c == -1:
                    terms.append("-" + mon)
                else:
                    terms.append(f"{format_rational(c)}*{mon}")
        return " + ".join(terms).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {"conductor": self.conductor, "coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "CycloScalar":
        if isinstance(obj, (str, int)):
            return cls.from_rational(parse_rational(obj))
        n = int(obj["conductor"])
        coeffs = obj["coeffs"]
        if len(coeffs) != euler_phi(n):
            raise ValueError(f"conductor {n} needs {euler_phi(n)} coefficients, got {len(coeffs)}")
        return cls(n, coeffs)


def as_scalar(x: ScalarLike, conductor: int = 1) -> CycloScalar:
    if isinstance(x, CycloScalar):
        return x
    return CycloScalar.from_rational(x, conductor)


def field_arith(op: str, a: CycloScalar, b: CycloScalar | None = None) -> CycloScalar:
    """Dispatch helper mirroring the named field operations."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown field operation {op!r}")


def conjugate(a: CycloScalar) -> CycloScalar:
    return a.conjugate()


def real_sign(a: CycloScalar) -> int:
    return a.real_sign()
