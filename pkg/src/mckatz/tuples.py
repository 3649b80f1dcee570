"""Monodromy tuples and the Katz/Dettweiler-Reiter convolution calculus."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cyclo import DEFAULT_CONDUCTOR, ONE_ROOT, CycloScalar, RootOfUnity, root_to_scalar
from .errors import (
    HypothesisError,
    IrreducibilityError,
    PreconditionError,
    ProductViolation,
    ResonanceError,
    ScriptStepError,
    UnsupportedParameter,
)
from .linalg import (
    JordanData,
    Matrix,
    _ONE,
    _ZERO,
    _inv_raw,
    _phi_poly,
    _rref_raw,
    companion,
    exterior_square,
    form_symmetry,
    jordan_data,
    poly_from_roots_of_unity,
    rank_kernel,
    solve_intertwiners,
)

log = logging.getLogger(__name__)


def _default_points(count: int) -> tuple:
    if count == 3:
        return ("0", "1", "inf")
    return tuple(f"x{i}" for i in range(1, count)) + ("inf",)


@dataclass(frozen=True)
class MonodromyTuple:
    """Invertible matrices (T_1, ..., T_{r+1}) with T_1 ... T_{r+1} = 1."""

    matrices: tuple
    points: tuple = ()
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        mats = tuple(self.matrices)
        object.__setattr__(self, "matrices", mats)
        if len(mats) < 2:
            raise PreconditionError("a monodromy tuple needs at least two matrices")
        if not self.points:
            object.__setattr__(self, "points", _default_points(len(mats)))
        if len(self.points) != len(mats):
            raise PreconditionError("one point label per matrix required")
        n = mats[0].rows
        if any(m.shape != (n, n) for m in mats):
            raise PreconditionError("tuple members must be square of equal size")
        if self.check:
            prod = Matrix.identity(n)
            for m in mats:
                prod = prod @ m
            if not prod.is_identity():
                raise ProductViolation("product of the tuple is not the identity")

    @property
    def rank(self) -> int:
        return self.matrices[0].rows

    @property
    def r(self) -> int:
        return len(self.matrices) - 1

    def __len__(self) -> int:
        return len(self.matrices)

    def __getitem__(self, i) -> Matrix:
        return self.matrices[i]

    def local_data(self):
        from .rigidity import LocalData

        return LocalData(tuple(jordan_data(m) for m in self.matrices))

    def conjugate_by(self, s: Matrix) -> "MonodromyTuple":
        si = s.inverse()
        return MonodromyTuple(tuple(s @ m @ si for m in self.matrices), self.points, check=False)

    def to_json(self) -> dict:
        return {"rank": self.rank, "points": list(self.points), "matrices": [m.to_json() for m in self.matrices]}

    @classmethod
    def from_json(cls, obj) -> "MonodromyTuple":
        mats = tuple(Matrix.from_json(m) for m in obj["matrices"])
        if "rank" in obj and any(m.rows != obj["rank"] for m in mats):
            raise ValueError("tuple JSON rank does not match its matrices")
        return cls(mats, tuple(obj.get("points", ())))


def _scalar(lam: RootOfUnity, conductor: int) -> CycloScalar:
    return root_to_scalar(lam, conductor)


def _as_root(x) -> RootOfUnity:
    return x if isinstance(x, RootOfUnity) else RootOfUnity(Fraction(x))


def _work_conductor(t: MonodromyTuple, *roots: RootOfUnity) -> int:
    n = DEFAULT_CONDUCTOR
    for m in t.matrices:
        n = math.lcm(n, m.conductor)
    for r in roots:
        n = math.lcm(n, r.order)
    return n


# ---------------------------------------------------------------------------
# twists
# ---------------------------------------------------------------------------


def mt_twist(t: MonodromyTuple, lambdas: Sequence) -> MonodromyTuple:
    """(lambda_1 T_1, ..., lambda_{r+1} T_{r+1}); the lambdas must multiply to 1."""
    lams = [_as_root(x) for x in lambdas]
    if len(lams) != len(t):
        raise PreconditionError(f"need {len(t)} twist factors, got {len(lams)}")
    total = ONE_ROOT
    for lam in lams:
        total = total * lam
    if not total.is_one():
        raise ProductViolation(f"twist factors multiply to exp(2 pi i {total}) != 1")
    n = _work_conductor(t, *lams)
    mats = tuple(m.scale(_scalar(lam, n)) if not lam.is_one() else m for m, lam in zip(t.matrices, lams))
    return MonodromyTuple(mats, t.points, check=False)


def mt_pair(t: MonodromyTuple, lam) -> MonodromyTuple:
    """MT_(lam, 1, ..., 1, lam^-1)."""
    lam = _as_root(lam)
    return mt_twist(t, [lam] + [ONE_ROOT] * (t.r - 1) + [lam.inverse()])


# ---------------------------------------------------------------------------
# convolution
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConvolutionResult:
    big_tuple: MonodromyTuple
    K_basis: list
    L_basis: list
    lam: RootOfUnity

    def sum_basis(self) -> list:
        """Reduced echelon basis of K + L."""
        from .linalg import span_basis

        vecs = list(self.K_basis) + list(self.L_basis)
        return span_basis(vecs, self.big_tuple.matrices[0].conductor) if vecs else []

    def k_cap_l_dim(self) -> int:
        k = len(self.K_basis)
        l_dim = len(self.L_basis)
        return k + l_dim - len(self.sum_basis())


def convolution(t: MonodromyTuple, lam, first_twist=None) -> ConvolutionResult:
    """Explicit convolution C_lam of a tuple, with its invariant subspaces K and L.

    ``first_twist`` replaces A_1 by A_1 * first_twist before convolving, which is
    the variant appearing inside the form-transport construction.
    """
    lam = _as_root(lam)
    if lam.is_one():
        raise UnsupportedParameter("convolution with lambda = 1 is not supported")
    nontrivial = sum(1 for m in t.matrices if not m.is_identity())
    if nontrivial < 2:
        raise PreconditionError("convolution needs at least two nontrivial tuple members")
    nc = _work_conductor(t, lam) if first_twist is None else _work_conductor(t, lam, _as_root(first_twist))
    r = t.r
    n = t.rank
    a = [m.lift(nc) for m in t.matrices[:r]]
    if first_twist is not None:
        a[0] = a[0].scale(_scalar(_as_root(first_twist), nc))
    ls = _scalar(lam, nc)
    ident = Matrix.identity(n, nc)
    zero = Matrix.zeros(n, n, nc)
    minus_one = [x - ident for x in a]
    bs = []
    for i in range(r):
        grid = []
        for row in range(r):
            line = []
            for j in range(r):
                if row != i:
                    line.append(ident if j == row else zero)
                elif j < i:
                    line.append(minus_one[j].scale(ls))
                elif j == i:
                    line.append(a[j].scale(ls))
                else:
                    line.append(minus_one[j])
            grid.append(line)
        bs.append(Matrix.from_blocks(grid))
    prod = Matrix.identity(n * r, nc)
    for b in bs:
        prod = prod @ b
    bs.append(prod.inverse())
    big = MonodromyTuple(tuple(bs), t.points, check=False)

    k_basis = []
    for i in range(r):
        _, ker = rank_kernel(minus_one[i])
        for v in ker:
            vec = [CycloScalar.from_rational(0, nc)] * (n * r)
            vec[i * n:(i + 1) * n] = v
            k_basis.append(vec)

    full = Matrix.identity(n, nc)
    for x in a:
        full = full @ x
    _, lker = rank_kernel(full.scale(ls) - ident)
    tails = []  # A_{i+1} ... A_r for i = 1..r
    acc = Matrix.identity(n, nc)
    for i in range(r - 1, -1, -1):
        tails.append(acc)
        acc = a[i] @ acc
    tails.reverse()
    l_basis = []
    for v in lker:
        vec = []
        for i in range(r):
            vec.extend(tails[i].apply(v))
        l_basis.append(vec)
    return ConvolutionResult(big, k_basis, l_basis, lam)


def convolution_product_formula(t: MonodromyTuple, lam) -> Matrix:
    """diag(A_2...A_r, ..., 1) * lam * [[A_1 - 1, ..., A_r - 1]]*r, the displayed
    closed form of B_1 ... B_r - lam."""
    lam = _as_root(lam)
    nc = _work_conductor(t, lam)
    r, n = t.r, t.rank
    a = [m.lift(nc) for m in t.matrices[:r]]
    ident = Matrix.identity(n, nc)
    blocks = []
    for i in range(r):
        m = ident
        for j in range(i + 1, r):
            m = m @ a[j]
        blocks.append(m)
    row = [x - ident for x in a]
    rep = Matrix.from_blocks([row for _ in range(r)])
    return Matrix.block_diag(blocks) @ rep.scale(_scalar(lam, nc))


def _quotient_action(mats: Sequence[Matrix], sub_rows: list, dim: int, nc: int):
    """Induced action on K^dim / W, W given by a reduced echelon basis.

    The quotient basis is the images of the standard vectors at the non-pivot
    positions of W, in index order.
    """
    raw = [[x.lift(nc).poly for x in row] for row in sub_rows]
    raw, piv = _rref_raw(raw, dim, nc)
    pivset = set(piv)
    comp = [j for j in range(dim) if j not in pivset]
    phi = _phi_poly(nc)
    out = []
    for m in mats:
        m = m.lift(nc)
        cols = []
        for j in comp:
            v = [m._e[i][j] for i in range(dim)]
            coords = []
            for c in comp:
                acc = v[c]
                for w, p in zip(raw, piv):
                    if not v[p].is_zero() and not w[c].is_zero():
                        acc = acc - (v[p] * w[c]) % phi
                coords.append(acc)
            cols.append(coords)
        out.append(Matrix._raw([list(r) for r in zip(*cols)] if cols else [], nc))
    return out, comp


def middle_convolution(t: MonodromyTuple, lam, check_irreducible: bool = True) -> MonodromyTuple:
    """MC_lam: the convolution acting on K^{nr} / (K + L)."""
    lam = _as_root(lam)
    if lam.is_one():
        raise UnsupportedParameter("middle convolution with lambda = 1 is not supported")
    if check_irreducible and not is_irreducible(t):
        raise IrreducibilityError("middle convolution needs an irreducible input tuple")
    conv = convolution(t, lam)
    nc = conv.big_tuple.matrices[0].conductor
    dim = t.rank * t.r
    sub = conv.sum_basis()
    mats, _ = _quotient_action(conv.big_tuple.matrices, sub, dim, nc)
    if not mats or mats[0].rows == 0:
        raise PreconditionError("middle convolution has rank 0")
    return MonodromyTuple(tuple(mats), t.points, check=False)


def mc_rank_formula(t: MonodromyTuple, lam) -> int:
    lam = _as_root(lam)
    nc = _work_conductor(t, lam)
    n = t.rank
    ident = Matrix.identity(n, nc)
    total = sum((m - ident).rank() for m in t.matrices[:-1])
    total += (t.matrices[-1].scale(_scalar(lam.inverse(), nc)) - ident).rank()
    return total - n


# ---------------------------------------------------------------------------
# scripts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Step:
    op: str  # "MT" or "MC"
    lambdas: tuple = ()
    lam: RootOfUnity | None = None

    def __post_init__(self):
        if self.op not in ("MT", "MC"):
            raise ValueError(f"unknown script op {self.op!r}")
        if self.op == "MC":
            lam = _as_root(self.lam)
            object.__setattr__(self, "lam", lam)
            if lam.is_one():
                raise UnsupportedParameter("MC steps need lambda != 1")
        else:
            object.__setattr__(self, "lambdas", tuple(_as_root(x) for x in self.lambdas))

    @classmethod
    def mt(cls, *lambdas) -> "Step":
        return cls("MT", tuple(lambdas))

    @classmethod
    def mc(cls, lam) -> "Step":
        return cls("MC", lam=lam)

    def to_json(self) -> dict:
        if self.op == "MT":
            return {"op": "MT", "lambdas": [x.to_json() for x in self.lambdas]}
        return {"op": "MC", "lambda": self.lam.to_json()}

    @classmethod
    def from_json(cls, obj) -> "Step":
        if obj["op"] == "MT":
            return cls.mt(*(RootOfUnity.parse(x) for x in obj["lambdas"]))
        if obj["op"] == "MC":
            return cls.mc(RootOfUnity.parse(obj["lambda"]))
        raise ValueError(f"unknown script op {obj['op']!r}")

    def __str__(self) -> str:
        if self.op == "MT":
            return "MT(" + ", ".join(str(x) for x in self.lambdas) + ")"
        return f"MC({self.lam})"


OpScript = list  # of Step


def script_from_json(obj) -> list:
    return [Step.from_json(s) for s in obj]


def apply_script(t: MonodromyTuple, script: Sequence[Step], trace: list | None = None,
                 check_irreducible: bool = True) -> MonodromyTuple:
    """Apply MT / MC steps left to right; records rank and local data per step in ``trace``."""
    cur = t
    for idx, step in enumerate(script):
        try:
            if step.op == "MT":
                cur = mt_twist(cur, step.lambdas)
            else:
                cur = middle_convolution(cur, step.lam, check_irreducible=check_irreducible)
        except PreconditionError as exc:
            raise ScriptStepError(idx, exc) from exc
        if trace is not None:
            trace.append({"step": idx, "op": str(step), "rank": cur.rank,
                          "local_data": [str(jordan_data(m)) for m in cur.matrices]})
        log.debug("step %d %s -> rank %d", idx, step, cur.rank)
    return cur


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def wedge_square_tuple(t: MonodromyTuple) -> MonodromyTuple:
    return MonodromyTuple(tuple(exterior_square(m) for m in t.matrices), t.points, check=False)


def levelt_hypergeometric(exp0: Sequence, exp_inf: Sequence, conductor: int = DEFAULT_CONDUCTOR) -> MonodromyTuple:
    """Levelt generators (T_0, T_1, T_inf) for local exponents at 0 and infinity.

    T_inf is the companion matrix of prod(t - e^{2 pi i b_k}), T_0^-1 the
    companion matrix of prod(t - e^{-2 pi i a_j}), T_1 = T_0^-1 T_inf^-1.
    """
    exp0 = [Fraction(x) for x in exp0]
    exp_inf = [Fraction(x) for x in exp_inf]
    if len(exp0) != len(exp_inf) or not exp0:
        raise PreconditionError("need the same positive number of exponents at 0 and infinity")
    roots0 = {RootOfUnity(a) for a in exp0}
    roots_inf = {RootOfUnity(b) for b in exp_inf}
    clash = roots0 & roots_inf
    if clash:
        raise ResonanceError(f"eigenvalues at 0 and infinity overlap: {sorted(str(c) for c in clash)}")
    t_inf = companion(poly_from_roots_of_unity(exp_inf, conductor)).lift(conductor)
    t0_inv = companion(poly_from_roots_of_unity([-a for a in exp0], conductor)).lift(conductor)
    t0 = t0_inv.inverse()
    t1 = t0_inv @ t_inf.inverse()
    return MonodromyTuple((t0, t1, t_inf))


# ---------------------------------------------------------------------------
# irreducibility and equivalence
# ---------------------------------------------------------------------------


def algebra_span_dim(t: MonodromyTuple) -> int:
    """Dimension of the matrix algebra generated by the tuple (closure loop)."""
    n = t.rank
    nc = 1
    for m in t.matrices:
        nc = math.lcm(nc, m.conductor)
    phi = _phi_poly(nc)
    gens = [m.lift(nc) for m in t.matrices[:-1]] or [t.matrices[0].lift(nc)]
    basis = []  # (pivot, row) with row[pivot] == 1, rows zero before their pivot
    frontier = [Matrix.identity(n, nc)]
    elements = []

    def reduce(vec):
        for p, b in sorted(basis, key=lambda pb: pb[0]):
            c = vec[p]
            if c.is_zero():
                continue
            for j in range(p, len(vec)):
                if not b[j].is_zero():
                    vec[j] = vec[j] - (c * b[j]) % phi
        return vec

    def add(m: Matrix) -> bool:
        vec = reduce([x for row in m._e for x in row])
        for p, x in enumerate(vec):
            if not x.is_zero():
                inv = _inv_raw(x, phi)
                basis.append((p, [(y * inv) % phi for y in vec]))
                return True
        return False

    add(frontier[0])
    elements.append(frontier[0])
    while frontier and len(basis) < n * n:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x @ g
                if add(y):
                    nxt.append(y)
                    if len(basis) == n * n:
                        return n * n
        frontier = nxt
    return len(basis)


def is_irreducible(t: MonodromyTuple) -> bool:
    """Absolute irreducibility via Burnside: the generated algebra is all of Mat_n."""
    n = t.rank
    if n == 1:
        return True
    return algebra_span_dim(t) == n * n


@dataclass(frozen=True)
class Equivalence:
    equivalent: bool
    witness: Matrix | None = None

    def __bool__(self) -> bool:
        return self.equivalent


def equivalent(a: MonodromyTuple, b: MonodromyTuple, check_irreducible: bool = True) -> Equivalence:
    """Simultaneous conjugacy of two irreducible tuples; witness S has S A_i S^-1 = B_i."""
    if a.rank != b.rank or a.r != b.r:
        return Equivalence(False)
    if check_irreducible and not (is_irreducible(a) and is_irreducible(b)):
        raise IrreducibilityError("equivalence test needs irreducible tuples")
    sols = solve_intertwiners(list(a.matrices[:-1]), list(b.matrices[:-1]))
    if len(sols) != 1 or not sols[0].is_invertible():
        return Equivalence(False)
    s = sols[0]
    si = s.inverse()
    if not all(s @ x @ si == y for x, y in zip(a.matrices, b.matrices)):
        return Equivalence(False)
    return Equivalence(True, s)


# ---------------------------------------------------------------------------
# form transport along MT o C o MT o C o MT
# ---------------------------------------------------------------------------


@dataclass
class TransportReport:
    big_tuple: MonodromyTuple
    Y: Matrix
    U_basis: list
    invariant: bool
    x_symmetry: str
    y_symmetry: str
    symmetry_matches: bool
    vanishes_on_U: bool
    diagonal_y_blocks_from_general_formula: bool
    quotient_rank: int = 0
    quotient_form_rank: int = 0
    quotient_tuple: MonodromyTuple | None = None
    quotient_form: Matrix | None = None
    quotient_form_invariant: bool = False

    @property
    def ok(self) -> bool:
        return self.invariant and self.symmetry_matches and self.vanishes_on_U

    def summary(self) -> dict:
        return {
            "rank": self.big_tuple.rank,
            "invariant": self.invariant,
            "x_symmetry": self.x_symmetry,
            "y_symmetry": self.y_symmetry,
            "symmetry_matches": self.symmetry_matches,
            "vanishes_on_U": self.vanishes_on_U,
            "dim_U": len(self.U_basis),
            "y_ii_general_formula": self.diagonal_y_blocks_from_general_formula,
            "quotient_rank": self.quotient_rank,
            "quotient_form_rank": self.quotient_form_rank,
            "quotient_form_invariant": self.quotient_form_invariant,
        }


def transport_pipeline(t: MonodromyTuple, lam1, lam2):
    """F = MT(l2^-1,..,l2) o C_l o MT(l1^-1 l2,..,l1 l2^-1) o C_{l^-1} o MT(l1,..,l1^-1).

    Returns (B, first convolution, second convolution).
    """
    lam1, lam2 = _as_root(lam1), _as_root(lam2)
    lam = lam1 * lam2
    a1 = mt_pair(t, lam1)
    c1 = convolution(a1, lam.inverse())
    at = mt_pair(c1.big_tuple, lam1.inverse() * lam2)
    c2 = convolution(at, lam)
    b = mt_pair(c2.big_tuple, lam2.inverse())
    return b, c1, c2


def transport_form(t: MonodromyTuple, x: Matrix, lam1, lam2, check_irreducible: bool = True) -> TransportReport:
    """Build B = F(T) and the block matrix Y with B_i^t Y B_i = Y, plus checks."""
    lam1, lam2 = _as_root(lam1), _as_root(lam2)
    lam = lam1 * lam2
    if lam.is_one():
        raise UnsupportedParameter("form transport needs lambda_1 lambda_2 != 1")
    r, n = t.r, t.rank
    for i in range(r):
        if t.matrices[i].T @ x @ t.matrices[i] != x:
            raise HypothesisError(f"X is not invariant under T_{i + 1}")
    if check_irreducible and not is_irreducible(t):
        raise IrreducibilityError("form transport needs an irreducible tuple")

    nc = _work_conductor(t, lam1, lam2)
    a = [m.lift(nc) for m in t.matrices[:r]]
    x = x.lift(nc)
    s1 = _scalar(lam1, nc)
    s2 = _scalar(lam2, nc)
    sl = _scalar(lam, nc)
    sl_inv = sl.inverse()
    ident = Matrix.identity(n, nc)
    zero = Matrix.zeros(n, n, nc)

    def d1(i):
        blocks = []
        for j in range(r):
            aj = a[0].scale(s1) if j == 0 else a[j]
            if i == 0:
                blocks.append(aj - ident)
            elif j < i:
                blocks.append((aj - ident).scale(sl_inv))
            elif j == i:
                blocks.append(a[j].scale(sl_inv) - ident)
            else:
                blocks.append(a[j] - ident)
        return Matrix.block_diag(blocks)

    big_d1 = Matrix.block_diag([d1(i) for i in range(r)])
    h = Matrix.from_blocks([[x] * r for _ in range(r)])
    d21 = Matrix.block_diag([a[0].scale(s2.inverse()) - ident] + [a[0].scale(s1) - ident] * (r - 1))
    d31 = Matrix.block_diag([(a[0] - ident.scale(s1)).scale(s2.inverse())] + [a[0].scale(s1) - ident] * (r - 1))

    def d2(i):
        return Matrix.block_diag([a[i] - ident] * r)

    def d4(i):
        ai = a[i].inverse()
        blocks = []
        for j in range(r):
            if j == 0:
                blocks.append(zero)
            elif j < i:
                blocks.append(ai - ident)
            elif j == i:
                blocks.append(ai.scale(sl) - ident)
            else:
                blocks.append((ai - ident).scale(sl))
        return Matrix.block_diag(blocks)

    c = 1 - s1 / s2
    ratio = s1 / s2
    grid = []
    for i in range(r):
        line = []
        for j in range(r):
            if i == 0 and j == 0:
                y = d21.T @ h @ d21
            elif i == 0:
                y = d31.T @ h @ d2(j) + (d4(j).T @ h).scale(c)
            elif j == 0:
                y = d2(i).T @ h @ d31 + (h @ d4(i)).scale(c)
            else:
                y = (d2(i).T @ h @ d2(j)).scale(ratio)
            line.append(y)
        grid.append(line)
    y0 = Matrix.from_blocks(grid)
    ymat = big_d1.T @ y0 @ big_d1

    b, c1, c2 = transport_pipeline(t, lam1, lam2)
    invariant = all(b.matrices[i].T @ ymat @ b.matrices[i] == ymat for i in range(r))

    # U = K_2 + L_2 + (K_1 + L_1)^r
    nr = n * r
    big = nr * r
    u_vecs = list(c2.K_basis) + list(c2.L_basis)
    zero_s = CycloScalar.from_rational(0, nc)
    for v in c1.sum_basis():
        for i in range(r):
            vec = [zero_s] * big
            vec[i * nr:(i + 1) * nr] = v
            u_vecs.append(vec)
    from .linalg import span_basis

    u_basis = span_basis(u_vecs, nc) if u_vecs else []
    if u_basis:
        ucols = Matrix.from_columns(u_basis, nc)
        vanishes = (ymat @ ucols).is_zero()
    else:
        vanishes = True

    xs = form_symmetry(x)
    ys = form_symmetry(ymat)
    report = TransportReport(
        big_tuple=b,
        Y=ymat,
        U_basis=u_basis,
        invariant=invariant,
        x_symmetry=xs,
        y_symmetry=ys,
        symmetry_matches=(xs == ys and xs in ("symmetric", "antisymmetric")),
        vanishes_on_U=vanishes,
        diagonal_y_blocks_from_general_formula=invariant,
    )
    if vanishes and u_basis is not None:
        mats, comp = _quotient_action(b.matrices, u_basis, big, nc)
        if comp:
            g = ymat.submatrix(comp, comp)
            # Y kills U, so the form on the quotient is Y restricted to the complement coordinates
            qt = MonodromyTuple(tuple(mats), t.points, check=False)
            report.quotient_rank = len(comp)
            report.quotient_form_rank = g.rank()
            report.quotient_tuple = qt
            report.quotient_form = g
            report.quotient_form_invariant = all(m.T @ g @ m == g for m in mats)
    return report
