"""Local-data calculus: centralizer dimensions, Scott inequalities, MC numerology
and a greedy Katz reduction."""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence

from .cyclo import ONE_ROOT, RootOfUnity, format_rational
from .errors import DegenerateError, PreconditionError, UnsupportedParameter
from .linalg import (
    JordanData,
    Matrix,
    linear_equations_commutator,
    linear_equations_lie_form,
    solve_linear_matrix_system,
)


@dataclass(frozen=True)
class LocalData:
    """Jordan data at each of the r+1 points."""

    points: tuple

    def __post_init__(self):
        pts = tuple(p if isinstance(p, JordanData) else JordanData(tuple(p)) for p in self.points)
        object.__setattr__(self, "points", pts)
        dims = {p.dim for p in pts}
        if len(dims) > 1:
            raise PreconditionError(f"Jordan data of unequal sizes {sorted(dims)}")

    @property
    def rank(self) -> int:
        return self.points[0].dim if self.points else 0

    @property
    def r(self) -> int:
        return len(self.points) - 1

    def det_exponent(self) -> Fraction:
        return sum((p.det_exponent() for p in self.points), Fraction(0))

    def has_product_one_determinant(self) -> bool:
        return self.det_exponent().denominator == 1

    def nontrivial_count(self) -> int:
        return sum(1 for p in self.points if not p.is_trivial())

    def twisted(self, lambdas: Sequence[RootOfUnity]) -> "LocalData":
        return LocalData(tuple(p.twisted(lam) for p, lam in zip(self.points, lambdas)))

    def to_json(self) -> dict:
        return {"rank": self.rank, "points": [p.to_json() for p in self.points]}

    @classmethod
    def from_json(cls, obj) -> "LocalData":
        data = cls(tuple(JordanData.from_json(p) for p in obj["points"]))
        if "rank" in obj and data.rank != obj["rank"]:
            raise ValueError("LocalData JSON rank does not match its blocks")
        return data

    @classmethod
    def semisimple(cls, *columns) -> "LocalData":
        return cls(tuple(JordanData.semisimple(c) for c in columns))

    def __str__(self) -> str:
        return ", ".join(str(p) for p in self.points)


# ---------------------------------------------------------------------------
# centralizers
# ---------------------------------------------------------------------------


def dim_cent_gl(j: JordanData) -> int:
    """Dimension of the GL_n centralizer: sum over eigenvalues of sum min(l_i, l_j)."""
    total = 0
    for eig in j.eigenvalues():
        sizes = j.sizes(eig)
        total += sum(min(a, b) for a in sizes for b in sizes)
    return total


def dim_cent_gl_solver(m: Matrix) -> int:
    """Same dimension, computed as the commutant of a matrix realization."""
    return len(solve_linear_matrix_system(linear_equations_commutator(m, m), m.rows, m.rows, m.conductor))


def dim_cent_sp(m: Matrix, omega: Matrix) -> int:
    """dim {X : XM = MX, X^t Omega + Omega X = 0}, the Sp-centralizer dimension."""
    if omega.transpose() != -omega:
        raise PreconditionError("omega must be antisymmetric")
    if omega.rank() != omega.rows:
        raise PreconditionError("omega must be nondegenerate")
    if m.transpose() @ omega @ m != omega:
        raise PreconditionError("matrix does not preserve omega")
    import math

    nc = math.lcm(m.conductor, omega.conductor)
    m = m.lift(nc)
    omega = omega.lift(nc)
    eqs = linear_equations_commutator(m, m) + linear_equations_lie_form(omega)
    return len(solve_linear_matrix_system(eqs, m.rows, m.rows, nc))


# ---------------------------------------------------------------------------
# Scott / rigidity report
# ---------------------------------------------------------------------------


@dataclass
class RigidityReport:
    rank: int
    r: int
    sum_rk: int
    sum_cent_gl: int
    scott_rank_ok: bool
    scott_cent_ok: bool
    linear_index: int
    cent_gl: list = field(default_factory=list)
    sp_dims: list | None = None
    sp_sum: int | None = None
    sp_rigid: bool | None = None

    @property
    def linearly_rigid(self) -> bool:
        return self.linear_index == 0

    def to_json(self) -> dict:
        return asdict(self)


def scott_and_indices(d: LocalData, matrices: Sequence[Matrix] | None = None,
                      omega: Matrix | None = None) -> RigidityReport:
    n, r = d.rank, d.r
    rks = [p.rank_minus(ONE_ROOT) for p in d.points]
    cents = [dim_cent_gl(p) for p in d.points]
    bound = (r - 1) * n * n + 2
    rep = RigidityReport(
        rank=n,
        r=r,
        sum_rk=sum(rks),
        sum_cent_gl=sum(cents),
        scott_rank_ok=sum(rks) >= 2 * n,
        scott_cent_ok=sum(cents) <= bound,
        linear_index=bound - sum(cents),
        cent_gl=cents,
    )
    if matrices is not None and omega is not None:
        dims = [dim_cent_sp(m, omega) for m in matrices]
        rep.sp_dims = dims
        rep.sp_sum = sum(dims)
        rep.sp_rigid = rep.sp_sum == (r - 1) * n * (n + 1) // 2
    return rep


# ---------------------------------------------------------------------------
# middle convolution numerology
# ---------------------------------------------------------------------------


def mc_rank(d: LocalData, lam: RootOfUnity) -> int:
    n = d.rank
    total = sum(p.rank_minus(ONE_ROOT) for p in d.points[:-1])
    total += d.points[-1].rank_minus(lam)
    return total - n


def mc_numerology(d: LocalData, lam) -> LocalData:
    """Predicted local data of MC_lam from the block rules of the numerology."""
    lam = lam if isinstance(lam, RootOfUnity) else RootOfUnity(Fraction(lam))
    if lam.is_one():
        raise UnsupportedParameter("numerology needs lambda != 1")
    if d.nontrivial_count() < 2:
        raise PreconditionError("numerology needs at least two nontrivial members")
    new_n = mc_rank(d, lam)
    if new_n <= 0:
        raise DegenerateError(f"predicted middle convolution rank {new_n} <= 0")
    lam_inv = lam.inverse()
    out = []
    for p in d.points[:-1]:
        blocks = []
        for alpha, size in p.blocks:
            if alpha.is_one():
                blocks.append((alpha * lam, size - 1))
            elif alpha == lam_inv:
                blocks.append((alpha * lam, size + 1))
            else:
                blocks.append((alpha * lam, size))
        filler = new_n - sum(s for _, s in blocks)
        if filler < 0:
            raise DegenerateError("negative filler count in numerology")
        blocks.extend([(ONE_ROOT, 1)] * filler)
        out.append(JordanData(tuple(blocks)))
    blocks = []
    for beta, size in d.points[-1].blocks:
        if beta.is_one():
            blocks.append((beta * lam_inv, size + 1))
        elif beta == lam:
            blocks.append((beta * lam_inv, size - 1))
        else:
            blocks.append((beta * lam_inv, size))
    filler = new_n - sum(s for _, s in blocks)
    if filler < 0:
        raise DegenerateError("negative filler count in numerology")
    blocks.extend([(lam_inv, 1)] * filler)
    out.append(JordanData(tuple(blocks)))
    return LocalData(tuple(out))


# ---------------------------------------------------------------------------
# Katz reduction
# ---------------------------------------------------------------------------


@dataclass
class ReductionStep:
    rank_before: int
    twist: tuple
    lam: RootOfUnity
    rank_after: int
    data: LocalData

    def to_json(self) -> dict:
        return {
            "rank_before": self.rank_before,
            "twist": [format_rational(t.exponent) for t in self.twist],
            "lambda": format_rational(self.lam.exponent),
            "rank_after": self.rank_after,
            "data": self.data.to_json(),
        }


@dataclass
class ReductionTrace:
    steps: list
    status: str  # "rank1", "terminal", "scott_violation", "reducible"
    final: LocalData

    @property
    def exists(self) -> bool | None:
        if self.status == "rank1":
            return True
        if self.status in ("scott_violation", "reducible"):
            return False
        return None

    def to_json(self) -> dict:
        return {"status": self.status, "final_rank": self.final.rank,
                "steps": [s.to_json() for s in self.steps], "final": self.final.to_json()}


def _best_reduction(d: LocalData):
    n = d.rank
    choices_inner = [p.eigenvalues() for p in d.points[:-1]]
    choices_last = d.points[-1].eigenvalues()
    best = None
    for alphas in itertools.product(*choices_inner):
        prod = ONE_ROOT
        for a in alphas:
            prod = prod * a
        for beta in choices_last:
            lam = beta * prod
            if lam.is_one():
                continue
            new_n = (sum(n - p.block_count(a) for p, a in zip(d.points[:-1], alphas))
                     + n - d.points[-1].block_count(beta) - n)
            key = (new_n, tuple(a.exponent for a in alphas), beta.exponent)
            if best is None or key < best[0]:
                best = (key, alphas, beta, lam, new_n)
    return best


def katz_reduce(d: LocalData, max_steps: int = 64) -> ReductionTrace:
    """Greedy rank reduction by twist + middle convolution on formal local data."""
    steps = []
    cur = d
    for _ in range(max_steps):
        n = cur.rank
        rep = scott_and_indices(cur)
        if n == 1:
            return ReductionTrace(steps, "rank1", cur)
        if not (rep.scott_rank_ok and rep.scott_cent_ok):
            return ReductionTrace(steps, "scott_violation", cur)
        if cur.nontrivial_count() < 2:
            return ReductionTrace(steps, "reducible", cur)
        best = _best_reduction(cur)
        if best is None or best[4] >= n:
            return ReductionTrace(steps, "terminal", cur)
        _, alphas, beta, lam, new_n = best
        prod = ONE_ROOT
        for a in alphas:
            prod = prod * a
        twist = tuple(a.inverse() for a in alphas) + (prod,)
        twisted = cur.twisted(twist)
        if new_n <= 0:
            return ReductionTrace(steps, "scott_violation", cur)
        nxt = mc_numerology(twisted, lam)
        steps.append(ReductionStep(n, twist, lam, nxt.rank, nxt))
        cur = nxt
    return ReductionTrace(steps, "terminal", cur)
