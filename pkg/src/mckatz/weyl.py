"""Differential operators in theta-form, sum_i x^i p_i(theta) with theta = x d/dx.

The commutation rule theta x^i = x^i (theta + i) gives

    x^i p(theta) * x^j q(theta) = x^(i+j) p(theta + j) q(theta)

and everything else here (adjoint, convolution, indicial equations) is
a consequence of it.  ``x_shift`` lets an operator carry one global
factor x^(-1), which is how self-adjointness of even order operators is
normalized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .cyclo import CycloScalar, format_rational, parse_rational
from .errors import NonRationalExponent, NotDivisible, PreconditionError
from .poly import Poly, product

THETA = Poly.T


def _scalar_to_json(c):
    if isinstance(c, CycloScalar):
        return c.to_json()
    return format_rational(c)


def _scalar_from_json(obj):
    if isinstance(obj, dict):
        s = CycloScalar.from_json(obj)
        return s.to_rational() if s.is_rational() else s
    return parse_rational(obj)


class ThetaOperator:
    __slots__ = ("terms", "x_shift")

    def __init__(self, terms: Mapping[int, Poly] | Iterable = (), x_shift: int = 0):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        for i, p in items:
            if not isinstance(p, Poly):
                p = Poly(p)
            if int(i) < 0:
                raise ValueError("x-powers in terms must be >= 0; use x_shift")
            if not p.is_zero():
                clean[int(i)] = clean[int(i)] + p if int(i) in clean else p
        self.terms = {i: p for i, p in sorted(clean.items()) if not p.is_zero()}
        self.x_shift = int(x_shift)

    # -- structure -----------------------------------------------------------

    @classmethod
    def theta_poly(cls, p: Poly) -> "ThetaOperator":
        return cls({0: p})

    @classmethod
    def monomial(cls, i: int, p: Poly) -> "ThetaOperator":
        return cls({i: p})

    @property
    def order(self) -> int:
        return max((p.degree for p in self.terms.values()), default=-1)

    @property
    def x_degree(self) -> int:
        return max(self.terms, default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return all(p.is_rational() for p in self.terms.values())

    def __getitem__(self, i: int) -> Poly:
        return self.terms.get(i, Poly())

    def _normalize_shift(self) -> "ThetaOperator":
        """Move a negative x_shift into the terms as far as the lowest x-power allows."""
        if self.x_shift >= 0 or not self.terms:
            return self
        low = min(self.terms)
        move = min(low, -self.x_shift)
        if move == 0:
            return self
        return ThetaOperator({i - move: p for i, p in self.terms.items()}, self.x_shift + move)

    def _canon(self):
        if self.x_shift > 0:
            return ThetaOperator({i + self.x_shift: p for i, p in self.terms.items()}, 0)
        return self._normalize_shift()

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "ThetaOperator") -> "ThetaOperator":
        a, b = self._canon(), _coerce(other)._canon()
        s = min(a.x_shift, b.x_shift)
        terms = {}
        for op in (a, b):
            for i, p in op.terms.items():
                k = i + op.x_shift - s
                terms[k] = terms[k] + p if k in terms else p
        return ThetaOperator(terms, s)._canon()

    def __neg__(self):
        return ThetaOperator({i: -p for i, p in self.terms.items()}, self.x_shift)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def scale(self, c) -> "ThetaOperator":
        return ThetaOperator({i: p * c for i, p in self.terms.items()}, self.x_shift)

    def __mul__(self, other):
        if isinstance(other, ThetaOperator):
            return op_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, ThetaOperator):
            return NotImplemented
        a, b = self._canon(), other._canon()
        return a.x_shift == b.x_shift and a.terms.keys() == b.terms.keys() and all(
            a.terms[i] == b.terms[i] for i in a.terms)

    __hash__ = None

    def proportional_to(self, other: "ThetaOperator"):
        """Scalar c with self == c * other, or None."""
        if self.is_zero() or other.is_zero():
            return None
        i = min(other.terms)
        p = other.terms[i]
        k = next(k for k, c in enumerate(p.coeffs) if c != 0)
        q = self[i + other.x_shift - self.x_shift]
        c = q[k] / p[k]
        return c if self == other.scale(c) else None

    def content_normalized(self) -> "ThetaOperator":
        """Primitive integer coefficients, positive leading coefficient of the lowest x-term."""
        if not self.is_rational():
            raise PreconditionError("content normalization needs rational coefficients")
        if self.is_zero():
            return self
        coeffs = [c for p in self.terms.values() for c in p.coeffs]
        den = math.lcm(*(c.denominator for c in coeffs))
        num = math.gcd(*(int(c * den) for c in coeffs))
        scale = Fraction(den, num)
        if self.terms[min(self.terms)].lead() < 0:
            scale = -scale
        return self.scale(scale)

    def same_up_to_scalar(self, other: "ThetaOperator") -> bool:
        return self.proportional_to(other) is not None

    # -- serialization / display ---------------------------------------------

    def to_json(self) -> dict:
        return {
            "terms": [{"x": i, "theta": [_scalar_to_json(c) for c in p.coeffs]}
                      for i, p in self.terms.items()],
            "x_shift": self.x_shift,
        }

    @classmethod
    def from_json(cls, obj) -> "ThetaOperator":
        shift = int(obj.get("x_shift", 0))
        if shift not in (0, -1):
            raise ValueError("x_shift must be 0 or -1")
        terms = {}
        for t in obj["terms"]:
            i = int(t["x"])
            if i in terms:
                raise ValueError(f"duplicate x-power {i}")
            terms[i] = Poly(_scalar_from_json(c) for c in t["theta"])
        return cls(terms, shift)

    def pretty(self, var: str = "θ") -> str:
        if self.is_zero():
            return "0"
        lines = []
        for i, p in self.terms.items():
            k = i + self.x_shift
            xs = "" if k == 0 else ("x*" if k == 1 else f"x^{k}*")
            body = factored(p, var) if p.is_rational() else f"({p.pretty(var)})"
            sign = "-" if body.startswith("-") else "+"
            lines.append(f"{sign} {xs}{body.lstrip('-')}")
        text = "\n".join(lines)
        return text[2:] if text.startswith("+ ") else text

    def __str__(self) -> str:
        return self.pretty()

    def __repr__(self) -> str:
        return f"ThetaOperator({self.to_json()!r})"


def _coerce(x) -> ThetaOperator:
    if isinstance(x, ThetaOperator):
        return x
    if isinstance(x, Poly):
        return ThetaOperator({0: x})
    return ThetaOperator({0: Poly([x])})


def factored(p: Poly, var: str = "θ") -> str:
    """Render a rational polynomial as content times primitive integer factors."""
    if p.is_zero():
        return "0"
    if p.degree == 0:
        return format_rational(p[0])
    content, facs = p.factor_rational()
    parts = []
    for f, m in facs:
        g = f.content_normalized()
        content = content * (f.lead() / g.lead()) ** m
        s = var if g == Poly.T else f"({g.pretty(var)})"
        parts.append(s if m == 1 else f"{s}^{m}")
    head = format_rational(content)
    if head == "1":
        return "*".join(parts)
    if head == "-1":
        return "-" + "*".join(parts)
    return head + "*" + "*".join(parts)


# ---------------------------------------------------------------------------
# the ring operations
# ---------------------------------------------------------------------------


def op_mul(a: ThetaOperator, b: ThetaOperator) -> ThetaOperator:
    a, b = _coerce(a), _coerce(b)
    out = {}
    for i, p in a.terms.items():
        for j, q in b.terms.items():
            jj = j + b.x_shift
            term = p.shift(jj) * q
            out[i + j] = out[i + j] + term if i + j in out else term
    return ThetaOperator(out, a.x_shift + b.x_shift)._canon()


def adjoint(op: ThetaOperator) -> ThetaOperator:
    """x^k p(theta) -> x^k p(-theta - k - 1), k being the actual x-power."""
    op = _coerce(op)
    return ThetaOperator(
        {i: p.compose_affine(-1, -(i + op.x_shift) - 1) for i, p in op.terms.items()},
        op.x_shift,
    )


def is_formally_self_adjoint(op: ThetaOperator, normalization: str = "x^-1") -> bool:
    """x^(-1) L (or L itself with ``normalization='none'``) equals (-1)^n times its adjoint."""
    if normalization not in ("x^-1", "none"):
        raise ValueError("normalization must be 'x^-1' or 'none'")
    m = _coerce(op)
    if normalization == "x^-1":
        m = ThetaOperator(m.terms, m.x_shift - 1)
    sign = -1 if m.order % 2 else 1
    return adjoint(m) == m.scale(sign)


def shift_theta(op: ThetaOperator, a) -> ThetaOperator:
    """Every p_i(theta) becomes p_i(theta - a)."""
    a = a if isinstance(a, (Fraction, CycloScalar)) else parse_rational(a)
    return ThetaOperator({i: p.shift(-a) for i, p in op.terms.items()}, op.x_shift)


def convolution_ca(op: ThetaOperator, a) -> ThetaOperator:
    """C_a(L) = sum_i y^i prod_{j<i}(theta+i-a-j) prod_{k<m-i}(theta-k) P_i(theta-a)."""
    a = a if isinstance(a, Fraction) else parse_rational(a)
    if op.is_zero():
        raise PreconditionError("convolution of the zero operator")
    op = op._canon()
    if op.x_shift:
        raise PreconditionError("convolution needs an operator without a negative x-shift")
    m = op.x_degree
    out = {}
    for i, p in op.terms.items():
        left = product([Poly([i - a - j, 1]) for j in range(i)])
        right = product([Poly([-k, 1]) for k in range(m - i)])
        out[i] = left * right * p.shift(-a)
    return ThetaOperator(out)


def divide_left_theta(op: ThetaOperator, q: Poly) -> ThetaOperator:
    """R with op = q(theta) * R; needs q(theta + k) | p_i(theta) at every actual power k."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    out = {}
    for i, p in op.terms.items():
        k = i + op.x_shift
        quo, rem = p.divmod(q.shift(k))
        if not rem.is_zero():
            raise NotDivisible(f"p_{i} is not divisible by Q(θ+{k})", index=i)
        out[i] = quo
    return ThetaOperator(out, op.x_shift)


# ---------------------------------------------------------------------------
# Riemann schemes
# ---------------------------------------------------------------------------

INF = "inf"


def _stirling2_rows(n: int):
    s = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    s[0][0] = Fraction(1)
    for k in range(1, n + 1):
        for j in range(1, k + 1):
            s[k][j] = j * s[k - 1][j] + s[k - 1][j - 1]
    return s


def d_form(op: ThetaOperator) -> list:
    """Coefficients a_j(x) (as Poly in x) with op = sum_j a_j(x) d^j."""
    op = op._canon()
    if not op.is_rational():
        raise PreconditionError("d-form conversion is implemented for rational operators")
    if op.x_shift:
        raise PreconditionError("d-form needs an operator without a negative x-shift")
    n = op.order
    st = _stirling2_rows(n)
    a = [Poly() for _ in range(n + 1)]
    for i, p in op.terms.items():
        for k, c in enumerate(p.coeffs):
            for j in range(k + 1):
                if st[k][j]:
                    mono = [Fraction(0)] * (i + j) + [c * st[k][j]]
                    a[j] = a[j] + Poly(mono)
    return a


def _order_at(p: Poly, c: Fraction) -> int:
    k = 0
    lin = Poly([-c, 1])
    while not p.is_zero():
        quo, rem = p.divmod(lin)
        if not rem.is_zero():
            return k
        p, k = quo, k + 1
    return 10**9


def indicial_polynomial(op: ThetaOperator, c) -> Poly:
    c = c if isinstance(c, Fraction) else parse_rational(c)
    a = d_form(op)
    shifted = [p.shift(c) for p in a]  # coefficients in powers of (x - c)
    ords = [(_order_at(p, Fraction(0)) if not p.is_zero() else None) for p in shifted]
    nu = min(o - j for j, o in enumerate(ords) if o is not None)
    chi = Poly()
    rho = Poly.T
    for j, p in enumerate(shifted):
        coeff = p[j + nu]
        if coeff:
            ff = product([rho - t for t in range(j)])
            chi = chi + ff * coeff
    return chi


def _rational_roots(p: Poly, where: str) -> list:
    if p.is_zero():
        raise PreconditionError(f"indicial polynomial vanishes identically at {where}")
    if not p.is_rational():
        raise PreconditionError("exponents are computed for rational operators only")
    _, facs = p.factor_rational()
    roots = []
    for f, m in facs:
        if f.degree != 1:
            raise NonRationalExponent(f"irrational exponent factor {f} at {where}", factor=f)
        roots.extend([-f[0] / f[1]] * m)
    return roots


@dataclass(frozen=True)
class RiemannScheme:
    order: int
    columns: tuple  # ((label, (exponents descending)), ...)

    def column(self, point) -> tuple:
        label = _point_label(point)
        for lab, ex in self.columns:
            if lab == label:
                return ex
        raise KeyError(label)

    def exponent_sum(self) -> Fraction:
        return sum((sum(ex, Fraction(0)) for _, ex in self.columns), Fraction(0))

    def fuchs_expected(self) -> Fraction:
        s, n = len(self.columns), self.order
        return Fraction((s - 2) * n * (n - 1), 2)

    def fuchs_ok(self) -> bool:
        return self.exponent_sum() == self.fuchs_expected()

    def to_json(self) -> dict:
        return {"order": self.order,
                "columns": {lab: [format_rational(e) for e in ex] for lab, ex in self.columns}}

    @classmethod
    def from_json(cls, obj) -> "RiemannScheme":
        cols = tuple((lab, tuple(sorted((parse_rational(e) for e in ex), reverse=True)))
                     for lab, ex in obj["columns"].items())
        return cls(int(obj["order"]), cols)

    def table(self) -> str:
        labels = [lab for lab, _ in self.columns]
        rows = [" | ".join(f"{lab:>8}" for lab in labels)]
        for r in range(self.order):
            rows.append(" | ".join(f"{format_rational(ex[r]):>8}" for _, ex in self.columns))
        return "\n".join(rows)


def _point_label(p) -> str:
    if isinstance(p, str) and p.strip().lower() in ("inf", "infinity", "∞"):
        return INF
    return format_rational(p if isinstance(p, Fraction) else parse_rational(p))


def exponents_at(op: ThetaOperator, point) -> tuple:
    op = op._canon()
    label = _point_label(point)
    if op.is_zero():
        raise PreconditionError("zero operator has no exponents")
    if label == INF:
        p = op.terms[max(op.terms)].reflect()
    elif label == "0":
        p = op.terms[min(op.terms)]
    else:
        p = indicial_polynomial(op, parse_rational(label))
    roots = _rational_roots(p, label)
    if len(roots) != op.order:
        raise PreconditionError(f"point {label} is not regular singular (indicial degree {len(roots)} < {op.order})")
    return tuple(sorted(roots, reverse=True))


def singular_points(op: ThetaOperator) -> list:
    """0, the rational finite singularities, and infinity, in that order."""
    op = op._canon()
    n = op.order
    lead = Poly([op[i][n] for i in range(op.x_degree + 1)])
    pts = [Fraction(0)]
    if lead.degree > 0:
        _, facs = lead.factor_rational()
        for f, _m in facs:
            if f.degree == 1 and f[0] != 0:
                pts.append(-f[0] / f[1])
            elif f.degree > 1:
                raise NonRationalExponent(f"singular points are not rational: {f}", factor=f)
    return sorted(set(pts)) + [INF]


def riemann_scheme(op: ThetaOperator, points=None) -> RiemannScheme:
    if points is None:
        points = singular_points(op)
    cols = tuple((_point_label(p), exponents_at(op, p)) for p in points)
    return RiemannScheme(op.order, cols)


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------


def lin(a, b) -> Poly:
    """a*theta + b."""
    return Poly([Fraction(b), Fraction(a)])


def _prod(*ps) -> Poly:
    return product(ps)


def build_hypergeometric_l4() -> ThetaOperator:
    return ThetaOperator({
        0: _prod(lin(15, -13), lin(15, -7), lin(15, -8), lin(15, -2)) * 256,
        1: _prod(lin(20, -11), lin(20, 13), lin(20, -3), lin(20, 1)) * -81,
    })


def build_P() -> ThetaOperator:
    return ThetaOperator({
        0: _prod(lin(6, 5), lin(10, 1), lin(10, 9), lin(6, 1)) * 900,
        1: Poly([9522215, 32263200, 42051600, 25920000, 6480000]) * -1,
        2: _prod(lin(5, 11), lin(5, 7), lin(5, 8), lin(5, 4)) * 5184,
    })


def build_L3() -> ThetaOperator:
    return ThetaOperator({
        0: _prod(lin(1, 0), lin(1, -1), lin(3, 2), lin(3, -1), lin(6, 1), lin(2, -1),
                 lin(30, -17), lin(30, 7)) * 6750000,
        1: _prod(lin(1, 0), lin(3, 2), lin(30, 37), lin(30, 13),
                 Poly([20201, 204960, 499440, 576000, 432000])) * -1125,
        2: _prod(lin(15, 2), lin(15, 23), lin(30, 67), lin(30, 37), lin(15, 14), lin(15, 11),
                 lin(30, 43), lin(30, 13)) * 16,
    })


def build_L2J2() -> ThetaOperator:
    return ThetaOperator({
        0: _prod(lin(6, 5), lin(6, -1), lin(3, -1), lin(3, 1), lin(6, 1), lin(6, -5)) * 250000,
        1: _prod(lin(6, 1), lin(6, 5), Poly([213703, 1282320, 2578320, 2592000, 1296000])) * -125,
        2: _prod(lin(10, 17), lin(5, 7), lin(10, 11), lin(10, 9), lin(5, 3), lin(10, 3)) * 11664,
    })


L3_LEFT_FACTOR = _prod(lin(30, -17), lin(30, 7))


def remark_invariants(a1, c1, c2, c3) -> tuple:
    a1, c1, c2, c3 = (parse_rational(v) if not isinstance(v, Fraction) else v for v in (a1, c1, c2, c3))
    v1 = (2 * a1) ** 2 + c1 ** 2 + c2 ** 2 + c3 ** 2
    v2 = (2 * a1) ** 4 + c1 ** 4 + c2 ** 4 + c3 ** 4
    return v1, v2


def build_remark_family(a1, c1, c2, c3) -> tuple:
    """(L4 with parameters, the order-6 operator L) for rational (a1, c1, c2, c3)."""
    a1, c1, c2, c3 = (parse_rational(v) if not isinstance(v, Fraction) else v for v in (a1, c1, c2, c3))
    v1, v2 = remark_invariants(a1, c1, c2, c3)
    l4 = ThetaOperator({
        0: _prod(lin(2, 2 * a1 - c1 - 1), lin(2, -2 * a1 + c1 - 1),
                 lin(2, -2 * a1 - c1 - 1), lin(2, 2 * a1 + c1 - 1)) * 16,
        1: _prod(lin(4, 2 * (c3 + c2) + 1), lin(4, 2 * (c2 - c3) - 1),
                 lin(4, -2 * (c3 + c2) + 1), lin(4, 2 * (c3 - c2) - 1)) * -1,
    })
    quartic = Poly([-32 * v2 + 16 * v1 ** 2 - 24 * v1 + 39, -64 * v1 + 176, -64 * v1 + 304, 256, 128])
    big = ThetaOperator({
        0: _prod(lin(1, -a1), lin(1, a1), lin(1, -2 * a1), lin(1, 2 * a1),
                 lin(1, 1 + a1), lin(1, -1 - a1)) * 64,
        1: _prod(lin(1, 1 + a1), lin(1, -a1), quartic) * -1,
        2: _prod(lin(1, 1 + c3), lin(1, 1 - c3), lin(1, 1 + c2), lin(1, 1 - c2),
                 lin(1, 1 + c1), lin(1, 1 - c1)) * 64,
    })
    return l4, big


CATALOG = {
    "L4": build_hypergeometric_l4,
    "P": build_P,
    "L3": build_L3,
    "L2J2": build_L2J2,
}
