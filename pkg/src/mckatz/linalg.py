"""Dense exact linear algebra over Q(zeta_N).

Matrices keep their entries as raw ``fmpq_poly`` residues modulo Phi_N with a
single shared conductor, which keeps the inner loops free of per-entry
conductor bookkeeping.  All bases returned by solvers are reduced row echelon
bases, hence canonical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import flint

from .cyclo import (
    CycloScalar,
    RootOfUnity,
    _phi_poly,
    _power_table,
    euler_phi,
    format_rational,
)
from .errors import EigenvalueOutsideField, PreconditionError
from .poly import Poly

_ZERO = flint.fmpq_poly([0])
_ONE = flint.fmpq_poly([1])


def _raw_of(x, n: int) -> flint.fmpq_poly:
    if isinstance(x, CycloScalar):
        return x.lift(n).poly
    q = Fraction(x)
    return flint.fmpq_poly([flint.fmpq(q.numerator, q.denominator)])


def _conductor_of(x) -> int:
    return x.conductor if isinstance(x, CycloScalar) else 1


def _inv_raw(p: flint.fmpq_poly, phi: flint.fmpq_poly) -> flint.fmpq_poly:
    if p.degree() == 0:
        return flint.fmpq_poly([1 / p.coeffs()[0]])
    g, s, _ = p.xgcd(phi)
    return s / g.coeffs()[0]


class Matrix:
    """Immutable dense matrix over Q(zeta_N)."""

    __slots__ = ("rows", "cols", "conductor", "_e")

    def __init__(self, entries: Sequence[Sequence], conductor: int | None = None):
        entries = [list(r) for r in entries]
        rows = len(entries)
        cols = len(entries[0]) if rows else 0
        if any(len(r) != cols for r in entries):
            raise ValueError("ragged matrix")
        n = conductor or 1
        for r in entries:
            for x in r:
                n = math.lcm(n, _conductor_of(x))
        self.rows, self.cols, self.conductor = rows, cols, n
        self._e = tuple(tuple(_raw_of(x, n) for x in r) for r in entries)

    @classmethod
    def _raw(cls, e, conductor: int) -> "Matrix":
        m = cls.__new__(cls)
        m._e = tuple(tuple(r) for r in e)
        m.rows = len(m._e)
        m.cols = len(m._e[0]) if m.rows else 0
        m.conductor = conductor
        return m

    @classmethod
    def identity(cls, n: int, conductor: int = 1) -> "Matrix":
        return cls._raw([[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)], conductor)

    @classmethod
    def zeros(cls, rows: int, cols: int, conductor: int = 1) -> "Matrix":
        return cls._raw([[_ZERO] * cols for _ in range(rows)], conductor)

    @classmethod
    def diag(cls, values: Sequence, conductor: int | None = None) -> "Matrix":
        k = len(values)
        return cls([[values[i] if i == j else 0 for j in range(k)] for i in range(k)], conductor)

    @classmethod
    def block_diag(cls, blocks: Sequence["Matrix"]) -> "Matrix":
        n = _common_conductor(blocks)
        blocks = [b.lift(n) for b in blocks]
        size_r = sum(b.rows for b in blocks)
        size_c = sum(b.cols for b in blocks)
        e = [[_ZERO] * size_c for _ in range(size_r)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    e[r0 + i][c0 + j] = b._e[i][j]
            r0 += b.rows
            c0 += b.cols
        return cls._raw(e, n)

    @classmethod
    def from_blocks(cls, grid: Sequence[Sequence["Matrix"]]) -> "Matrix":
        n = _common_conductor([b for row in grid for b in row])
        out = []
        for brow in grid:
            brow = [b.lift(n) for b in brow]
            for i in range(brow[0].rows):
                line = []
                for b in brow:
                    line.extend(b._e[i])
                out.append(line)
        return cls._raw(out, n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], conductor: int | None = None) -> "Matrix":
        return cls([list(r) for r in zip(*columns)], conductor)

    # -- access ------------------------------------------------------------

    @property
    def shape(self):
        return self.rows, self.cols

    def __getitem__(self, ij) -> CycloScalar:
        i, j = ij
        return CycloScalar._raw(self.conductor, self._e[i][j])

    @property
    def entries(self) -> list:
        return [[CycloScalar._raw(self.conductor, x) for x in r] for r in self._e]

    def row(self, i: int) -> list:
        return [CycloScalar._raw(self.conductor, x) for x in self._e[i]]

    def column(self, j: int) -> list:
        return [CycloScalar._raw(self.conductor, self._e[i][j]) for i in range(self.rows)]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw([[self._e[i][j] for j in cols] for i in rows], self.conductor)

    def lift(self, n: int) -> "Matrix":
        if n == self.conductor:
            return self
        if n % self.conductor:
            raise PreconditionError(f"cannot lift conductor {self.conductor} to {n}")
        return Matrix([[x.lift(n) for x in r] for r in self.entries], n)

    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- arithmetic --------------------------------------------------------

    def _aligned(self, other: "Matrix"):
        if self.conductor == other.conductor:
            return self, other, self.conductor
        n = math.lcm(self.conductor, other.conductor)
        return self.lift(n), other.lift(n), n

    def __add__(self, other: "Matrix") -> "Matrix":
        a, b, n = self._aligned(other)
        if a.shape != b.shape:
            raise ValueError("shape mismatch")
        return Matrix._raw([[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a._e, b._e)], n)

    def __sub__(self, other: "Matrix") -> "Matrix":
        a, b, n = self._aligned(other)
        if a.shape != b.shape:
            raise ValueError("shape mismatch")
        return Matrix._raw([[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a._e, b._e)], n)

    def __neg__(self) -> "Matrix":
        return Matrix._raw([[-x for x in r] for r in self._e], self.conductor)

    def scale(self, c) -> "Matrix":
        n = math.lcm(self.conductor, _conductor_of(c))
        a = self.lift(n)
        cr = _raw_of(c, n)
        phi = _phi_poly(n)
        if cr.degree() <= 0:
            return Matrix._raw([[x * cr for x in r] for r in a._e], n)
        return Matrix._raw([[(x * cr) % phi for x in r] for r in a._e], n)

    def __mul__(self, c) -> "Matrix":
        if isinstance(c, Matrix):
            return self @ c
        return self.scale(c)

    __rmul__ = scale

    def __matmul__(self, other: "Matrix") -> "Matrix":
        a, b, n = self._aligned(other)
        if a.cols != b.rows:
            raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
        phi = _phi_poly(n)
        bt = list(zip(*b._e))
        out = []
        for ra in a._e:
            nz = [(k, x) for k, x in enumerate(ra) if not x.is_zero()]
            line = []
            for cb in bt:
                acc = _ZERO
                for k, x in nz:
                    y = cb[k]
                    if not y.is_zero():
                        acc += x * y
                line.append(acc % phi if acc.degree() >= euler_phi(n) else acc)
            out.append(line)
        return Matrix._raw(out, n)

    def __pow__(self, k: int) -> "Matrix":
        if k < 0:
            return self.inverse() ** (-k)
        out = Matrix.identity(self.rows, self.conductor)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def transpose(self) -> "Matrix":
        return Matrix._raw(list(zip(*self._e)) if self.rows else [], self.conductor)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def conjugate(self) -> "Matrix":
        return Matrix([[x.conjugate() for x in r] for r in self.entries], self.conductor)

    def galois(self, k: int) -> "Matrix":
        return Matrix([[x.galois(k) for x in r] for r in self.entries], self.conductor)

    def trace(self) -> CycloScalar:
        acc = _ZERO
        for i in range(min(self.rows, self.cols)):
            acc += self._e[i][i]
        return CycloScalar._raw(self.conductor, acc)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix) or self.shape != other.shape:
            return False
        a, b, _ = self._aligned(other)
        return a._e == b._e

    __hash__ = None

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self._e for x in r)

    def is_identity(self) -> bool:
        return self.is_square() and self == Matrix.identity(self.rows)

    def apply(self, v: Sequence) -> list:
        """Matrix times a column vector given as a list of scalars."""
        col = Matrix([[x] for x in v], self.conductor)
        return (self @ col).column(0)

    # -- elimination-based -------------------------------------------------

    def rref(self):
        """(rref matrix, pivot columns)."""
        e, piv = _rref_raw([list(r) for r in self._e], self.cols, self.conductor)
        out = Matrix._raw(e, self.conductor)
        out.cols = self.cols
        return out, piv

    def rank(self) -> int:
        return len(_rref_raw([list(r) for r in self._e], self.cols, self.conductor)[1])

    def det(self) -> CycloScalar:
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        return _det_raw([list(r) for r in self._e], self.conductor)

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        aug = [list(r) + [_ONE if i == j else _ZERO for j in range(n)] for i, r in enumerate(self._e)]
        e, piv = _rref_raw(aug, n, self.conductor)
        if len(piv) < n or piv[-1] >= n:
            raise ZeroDivisionError("matrix is singular")
        return Matrix._raw([r[n:] for r in e], self.conductor)

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.rows

    # -- display -----------------------------------------------------------

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols}, conductor={self.conductor})"

    def pretty(self) -> str:
        return "\n".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.entries)

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": [[x.to_json() for x in r] for r in self.entries]}

    @classmethod
    def from_json(cls, obj) -> "Matrix":
        entries = [[CycloScalar.from_json(x) for x in r] for r in obj["entries"]]
        if len(entries) != obj["rows"] or any(len(r) != obj["cols"] for r in entries):
            raise ValueError("matrix JSON shape does not match rows/cols")
        return cls(entries)


def _common_conductor(mats: Iterable[Matrix]) -> int:
    n = 1
    for m in mats:
        n = math.lcm(n, m.conductor)
    return n


def identity(n: int, conductor: int = 1) -> Matrix:
    return Matrix.identity(n, conductor)


# ---------------------------------------------------------------------------
# elimination kernels
# ---------------------------------------------------------------------------


def _pivot_cost(p: flint.fmpq_poly) -> int:
    return p.degree() * 64 + len(str(p.denom())) + len(str(p.numer()))


def _rref_raw(rows: list, ncols: int, n: int):
    """Gauss-Jordan to reduced row echelon form, in place on raw rows.

    Returns the nonzero rows and their pivot columns.
    """
    phi = _phi_poly(n)
    d = euler_phi(n)
    rows = [r for r in rows if any(not x.is_zero() for x in r)]
    width = len(rows[0]) if rows else 0
    pivots = []
    rank = 0
    for col in range(ncols):
        cand = [i for i in range(rank, len(rows)) if not rows[i][col].is_zero()]
        if not cand:
            continue
        best = min(cand, key=lambda i: (_pivot_cost(rows[i][col]), i))
        rows[rank], rows[best] = rows[best], rows[rank]
        prow = rows[rank]
        inv = _inv_raw(prow[col], phi)
        if inv != _ONE:
            prow = [(x * inv) % phi if not x.is_zero() else x for x in prow]
            rows[rank] = prow
        nz = [j for j in range(col, width) if not prow[j].is_zero()]
        for i in range(len(rows)):
            if i == rank:
                continue
            r = rows[i]
            f = r[col]
            if f.is_zero():
                continue
            if f.degree() <= 0:
                for j in nz:
                    r[j] = r[j] - f * prow[j]
            else:
                for j in nz:
                    t = f * prow[j]
                    if t.degree() >= d:
                        t = t % phi
                    r[j] = r[j] - t
        pivots.append(col)
        rank += 1
    return rows[:rank], pivots


def _det_raw(rows: list, n: int) -> CycloScalar:
    phi = _phi_poly(n)
    size = len(rows)
    det = _ONE
    for col in range(size):
        cand = [i for i in range(col, size) if not rows[i][col].is_zero()]
        if not cand:
            return CycloScalar._raw(n, _ZERO)
        best = min(cand, key=lambda i: (_pivot_cost(rows[i][col]), i))
        if best != col:
            rows[col], rows[best] = rows[best], rows[col]
            det = -det
        p = rows[col][col]
        det = (det * p) % phi
        inv = _inv_raw(p, phi)
        for i in range(col + 1, size):
            f = rows[i][col]
            if f.is_zero():
                continue
            f = (f * inv) % phi
            for j in range(col, size):
                if not rows[col][j].is_zero():
                    rows[i][j] = rows[i][j] - (f * rows[col][j]) % phi
    return CycloScalar._raw(n, det)


# ---------------------------------------------------------------------------
# rank, kernel, Jordan data and forms
# ---------------------------------------------------------------------------


def rank_kernel(m: Matrix):
    """(rank, kernel basis) with the kernel basis in reduced row echelon form.

    Kernel vectors are returned as lists of scalars (column vectors).
    """
    e, piv = _rref_raw([list(r) for r in m._e], m.cols, m.conductor)
    free = [j for j in range(m.cols) if j not in set(piv)]
    basis = []
    for f in free:
        v = [_ZERO] * m.cols
        v[f] = _ONE
        for r, p in zip(e, piv):
            v[p] = -r[f]
        basis.append(v)
    basis = _canonical_rows(basis, m.cols, m.conductor)
    return len(piv), [[CycloScalar._raw(m.conductor, x) for x in v] for v in basis]


def _canonical_rows(vectors: list, ncols: int, n: int) -> list:
    if not vectors:
        return []
    e, _ = _rref_raw([list(v) for v in vectors], ncols, n)
    return e


def span_basis(vectors: Sequence[Sequence], conductor: int | None = None) -> list:
    """Reduced row echelon basis of the span of the given vectors."""
    if not vectors:
        return []
    m = Matrix([list(v) for v in vectors], conductor)
    e, _ = _rref_raw([list(r) for r in m._e], m.cols, m.conductor)
    return [[CycloScalar._raw(m.conductor, x) for x in r] for r in e]


def char_poly(m: Matrix) -> Poly:
    """Monic characteristic polynomial det(t*I - M) by Faddeev-LeVerrier."""
    if not m.is_square():
        raise ValueError("characteristic polynomial of a non-square matrix")
    size = m.rows
    nc = m.conductor
    coeffs = [None] * (size + 1)
    coeffs[size] = CycloScalar.from_rational(1, nc)
    ident = Matrix.identity(size, nc)
    mk = Matrix.zeros(size, size, nc)
    for k in range(1, size + 1):
        mk = m @ mk + ident.scale(coeffs[size - k + 1])
        coeffs[size - k] = -(m @ mk).trace() / k
    return Poly(coeffs)


@dataclass(frozen=True)
class JordanData:
    """Multiset of Jordan blocks (eigenvalue as a root of unity, block size)."""

    blocks: tuple

    def __post_init__(self):
        cleaned = []
        for b in self.blocks:
            eig, size = b
            if not isinstance(eig, RootOfUnity):
                eig = RootOfUnity(eig)
            if size > 0:
                cleaned.append((eig, int(size)))
        object.__setattr__(self, "blocks", tuple(sorted(cleaned, key=lambda b: (b[0].exponent, -b[1]))))

    @classmethod
    def semisimple(cls, exponents: Iterable) -> "JordanData":
        return cls(tuple((RootOfUnity(Fraction(e)), 1) for e in exponents))

    @property
    def dim(self) -> int:
        return sum(s for _, s in self.blocks)

    def eigenvalues(self) -> list:
        return sorted({e for e, _ in self.blocks})

    def multiplicity(self, eig: RootOfUnity) -> int:
        return sum(s for e, s in self.blocks if e == eig)

    def block_count(self, eig: RootOfUnity) -> int:
        """Geometric multiplicity: number of blocks with the given eigenvalue."""
        return sum(1 for e, _ in self.blocks if e == eig)

    def rank_minus(self, eig: RootOfUnity) -> int:
        """rank(T - eig), read off the block structure."""
        return self.dim - self.block_count(eig)

    def sizes(self, eig: RootOfUnity) -> list:
        return sorted((s for e, s in self.blocks if e == eig), reverse=True)

    def twisted(self, lam: RootOfUnity) -> "JordanData":
        return JordanData(tuple((e * lam, s) for e, s in self.blocks))

    def det_exponent(self) -> Fraction:
        return sum((e.exponent * s for e, s in self.blocks), Fraction(0))

    def is_trivial(self) -> bool:
        return all(e.is_one() and s == 1 for e, s in self.blocks)

    def to_json(self) -> dict:
        return {"blocks": [{"eig": format_rational(e.exponent), "size": s} for e, s in self.blocks]}

    @classmethod
    def from_json(cls, obj) -> "JordanData":
        return cls(tuple((RootOfUnity.parse(b["eig"]), int(b["size"])) for b in obj["blocks"]))

    def __str__(self) -> str:
        parts = []
        for e, s in self.blocks:
            parts.append(f"J({e},{s})" if s > 1 else str(e))
        return "(" + ", ".join(parts) + ")"


def jordan_data(m: Matrix, conductor: int | None = None) -> JordanData:
    """Jordan structure of a matrix whose eigenvalues are N-th roots of unity."""
    if not m.is_square():
        raise ValueError("Jordan data of a non-square matrix")
    big_n = math.lcm(conductor or 60, m.conductor)
    mm = m.lift(big_n)
    size = mm.rows
    cp = char_poly(mm)
    blocks = []
    rest = cp
    ident = Matrix.identity(size, big_n)
    for k in range(big_n):
        alpha = CycloScalar.zeta(big_n, k)
        mult = 0
        while rest.degree > 0 and _is_zero_scalar(rest(alpha)):
            rest, _ = rest.divmod(Poly([-alpha, 1]))
            mult += 1
        if not mult:
            continue
        shifted = mm - ident.scale(alpha)
        ranks = [size]
        power = ident
        while ranks[-1] > size - mult:
            power = power @ shifted
            ranks.append(power.rank())
        # number of blocks of size >= j is ranks[j-1] - ranks[j]
        at_least = [ranks[j - 1] - ranks[j] for j in range(1, len(ranks))]
        at_least.append(0)
        eig = RootOfUnity(Fraction(k, big_n))
        for j in range(len(at_least) - 1):
            count = at_least[j] - at_least[j + 1]
            blocks.extend([(eig, j + 1)] * count)
    if rest.degree > 0:
        raise EigenvalueOutsideField(
            f"characteristic polynomial has a factor with roots outside the {big_n}-th roots of unity: {rest}",
            factor=rest,
        )
    return JordanData(tuple(blocks))


def _is_zero_scalar(x) -> bool:
    return x == 0


def _vec_system(rows_of_coeffs: list, nunk: int, n: int):
    e, piv = _rref_raw(rows_of_coeffs, nunk, n)
    free = [j for j in range(nunk) if j not in set(piv)]
    basis = []
    for f in free:
        v = [_ZERO] * nunk
        v[f] = _ONE
        for r, p in zip(e, piv):
            v[p] = -r[f]
        basis.append(v)
    return _canonical_rows(basis, nunk, n)


def _unvec(v: list, rows: int, cols: int, n: int) -> Matrix:
    return Matrix._raw([v[i * cols:(i + 1) * cols] for i in range(rows)], n)


def solve_intertwiners(a_list: Sequence[Matrix], b_list: Sequence[Matrix]) -> list:
    """Canonical basis of {X : X A_i = B_i X for all i}."""
    if len(a_list) != len(b_list):
        raise PreconditionError("intertwiner lists differ in length")
    if not a_list:
        raise PreconditionError("need at least one matrix pair")
    nc = _common_conductor(list(a_list) + list(b_list))
    p = b_list[0].rows
    q = a_list[0].rows
    eqs = []
    for a, b in zip(a_list, b_list):
        if a.shape != (q, q) or b.shape != (p, p):
            raise PreconditionError("incompatible intertwiner dimensions")
        eqs.extend(linear_equations_commutator(a.lift(nc), b.lift(nc)))
    basis = _vec_system(eqs, p * q, nc)
    return [_unvec(v, p, q, nc) for v in basis]


def linear_equations_commutator(a: Matrix, b: Matrix) -> list:
    """Coefficient rows of X A - B X = 0 in the unknowns vec(X) (row major)."""
    q = a.rows
    p = b.rows
    eqs = []
    for i in range(p):
        for j in range(q):
            row = [_ZERO] * (p * q)
            for k in range(q):
                c = a._e[k][j]
                if not c.is_zero():
                    row[i * q + k] = row[i * q + k] + c
            for k in range(p):
                c = b._e[i][k]
                if not c.is_zero():
                    row[k * q + j] = row[k * q + j] - c
            if any(not x.is_zero() for x in row):
                eqs.append(row)
    return eqs


def linear_equations_lie_form(omega: Matrix) -> list:
    """Coefficient rows of X^t Omega + Omega X = 0 in vec(X)."""
    s = omega.rows
    eqs = []
    for i in range(s):
        for j in range(s):
            row = [_ZERO] * (s * s)
            for k in range(s):
                c = omega._e[k][j]
                if not c.is_zero():
                    row[k * s + i] = row[k * s + i] + c
                c = omega._e[i][k]
                if not c.is_zero():
                    row[k * s + j] = row[k * s + j] + c
            if any(not x.is_zero() for x in row):
                eqs.append(row)
    return eqs


def solve_linear_matrix_system(eqs: list, rows: int, cols: int, conductor: int) -> list:
    return [_unvec(v, rows, cols, conductor) for v in _vec_system(eqs, rows * cols, conductor)]


def invariant_form(matrices: Sequence[Matrix], kind: str = "bilinear") -> list:
    """Basis of forms G with T^t G T = G (bilinear) or conj(T)^t G T = G."""
    if kind not in ("bilinear", "sesquilinear"):
        raise ValueError(f"unknown form kind {kind!r}")
    targets = []
    for t in matrices:
        ti = t.inverse().transpose()
        if kind == "sesquilinear":
            ti = ti.conjugate()
        targets.append(ti)
    return solve_intertwiners(list(matrices), targets)


def form_symmetry(g: Matrix) -> str:
    """'symmetric', 'antisymmetric' or 'none' (hermitian forms: see is_hermitian)."""
    gt = g.transpose()
    if gt == g:
        return "symmetric"
    if gt == -g:
        return "antisymmetric"
    return "none"


def hermitian_scaling(g: Matrix):
    """A scalar c with c*G hermitian, or None if G is not a multiple of a hermitian form."""
    gh = g.conjugate().transpose()
    # find mu with G^* = mu G
    mu = None
    for i in range(g.rows):
        for j in range(g.cols):
            if not g._e[i][j].is_zero():
                mu = gh[i, j] / g[i, j]
                break
        if mu is not None:
            break
    if mu is None or gh != g.scale(mu):
        return None
    # Hilbert 90: c = b + mu * conj(b) satisfies conj(c) * mu = c
    nc = math.lcm(g.conductor, mu.conductor)
    for k in range(nc):
        b = CycloScalar.zeta(nc, k)
        c = b + mu * b.conjugate()
        if not c.is_zero():
            return c
    return None  # pragma: no cover


def is_hermitian(g: Matrix) -> bool:
    return g.conjugate().transpose() == g


def leading_minors(g: Matrix) -> list:
    return [g.submatrix(range(k), range(k)).det() for k in range(1, g.rows + 1)]


def definiteness(h: Matrix) -> str:
    """'positive', 'negative' or 'indefinite' for a hermitian matrix (certified)."""
    signs = [m.real_sign() for m in leading_minors(h)]
    if all(s > 0 for s in signs):
        return "positive"
    if all(s == (-1) ** (k + 1) for k, s in enumerate(signs)):
        return "negative"
    return "indefinite"


def companion(p: Poly) -> Matrix:
    """Companion matrix: ones on the subdiagonal, last column -(c_0, ..., c_{n-1})."""
    if p.degree < 1:
        raise ValueError("companion matrix needs degree >= 1")
    lead = p.lead()
    if lead != 1:
        raise ValueError("companion matrix needs a monic polynomial")
    deg = p.degree
    rows = [[0] * deg for _ in range(deg)]
    for i in range(1, deg):
        rows[i][i - 1] = 1
    for i in range(deg):
        rows[i][deg - 1] = -p[i]
    return Matrix(rows)


def exterior_square(m: Matrix) -> Matrix:
    """Matrix of the induced action on e_i ^ e_j, i < j in lexicographic order."""
    size = m.rows
    if size < 2 or not m.is_square():
        raise ValueError("exterior square needs a square matrix of size >= 2")
    pairs = [(i, j) for i in range(size) for j in range(i + 1, size)]
    phi = _phi_poly(m.conductor)
    e = m._e
    out = []
    for i, j in pairs:
        line = []
        for k, l in pairs:
            line.append((e[i][k] * e[j][l] - e[i][l] * e[j][k]) % phi)
        out.append(line)
    return Matrix._raw(out, m.conductor)


def poly_from_roots_of_unity(exponents: Iterable, conductor: int = 60) -> Poly:
    """prod (t - exp(2 pi i e)) over the given exponents."""
    from .cyclo import root_to_scalar

    p = Poly([1])
    for e in exponents:
        p = p * Poly([-root_to_scalar(RootOfUnity(Fraction(e)), conductor), 1])
    return p
