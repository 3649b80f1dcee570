"""Seeded random irreducible triples over Q(zeta_60) for property checks."""

from __future__ import annotations

import random
from fractions import Fraction

from .cyclo import DEFAULT_CONDUCTOR, RootOfUnity
from .linalg import Matrix
from .tuples import MonodromyTuple, levelt_hypergeometric, mt_twist

DENOMINATORS = (1, 2, 3, 4, 5, 6, 10, 12, 15, 20, 30, 60)


def random_exponent(rng: random.Random) -> Fraction:
    d = rng.choice(DENOMINATORS)
    return Fraction(rng.randrange(d), d)


def random_unimodular(rng: random.Random, n: int, conductor: int = DEFAULT_CONDUCTOR) -> Matrix:
    """Product of a random unit lower and unit upper triangular integer matrix."""
    lo = [[1 if i == j else (rng.randint(-2, 2) if i > j else 0) for j in range(n)] for i in range(n)]
    up = [[1 if i == j else (rng.randint(-2, 2) if i < j else 0) for j in range(n)] for i in range(n)]
    return Matrix(lo, conductor) @ Matrix(up, conductor)


def random_levelt_exponents(rng: random.Random, n: int, repeat_prob: float = 0.25):
    """Exponent lists at 0 and infinity, repeats allowed within a list.

    Besides the nonresonance a_j != b_k (mod 1) the lists satisfy
    a_j + b_k not in Z, which makes the Levelt triple irreducible.
    """
    a = [random_exponent(rng)]
    while len(a) < n:
        a.append(rng.choice(a) if rng.random() < repeat_prob else random_exponent(rng))
    b = []
    while len(b) < n:
        cand = rng.choice(b) if b and rng.random() < repeat_prob else random_exponent(rng)
        if cand not in a and (-cand) % 1 not in a:
            b.append(cand)
    return a, b


def random_irreducible_triple(rng: random.Random, n: int | None = None) -> MonodromyTuple:
    """Levelt triple, random MT twist, random integer conjugation.

    Levelt triples whose generators T_inf and T_0^-1 share no eigenvalue
    are irreducible, and both operations preserve irreducibility.
    """
    if n is None:
        n = rng.choice((2, 3))
    a, b = random_levelt_exponents(rng, n)
    t = levelt_hypergeometric(a, b)
    alpha, beta = random_exponent(rng), random_exponent(rng)
    t = mt_twist(t, [alpha, beta, -alpha - beta])
    return t.conjugate_by(random_unimodular(rng, n))


def random_lambda(rng: random.Random) -> RootOfUnity:
    while True:
        lam = RootOfUnity(random_exponent(rng))
        if not lam.is_one():
            return lam
