"""Random generators for groups, homomorphisms and couples.

Shared by the verification battery and the test suite; every function takes
an explicit random.Random so runs are reproducible.
"""

from __future__ import annotations

import random
from math import gcd

from .exact_couples import ExactCouple
from .fga import (
    AbelianGroup,
    CongruenceSolver,
    GroupHom,
    IntMatrix,
    compose,
    is_isomorphism,
)

__all__ = [
    "hom_inverse",
    "random_automorphism",
    "random_finite_group",
    "random_group",
    "random_hom",
    "transported_couple",
]


def random_finite_group(rng: random.Random, max_factors: int = 4,
                        max_factor: int = 64) -> AbelianGroup:
    """A random finite group with a short invariant-factor chain."""
    k = rng.randint(1, max_factors)
    factors = []
    d = rng.choice([2, 2, 3, 4, 5, 6, 8])
    for _ in range(k):
        if d > max_factor:
            break
        factors.append(d)
        d *= rng.choice([1, 1, 2, 2, 3, 4])
    return AbelianGroup(0, tuple(factors))


def random_group(rng: random.Random, max_rank: int = 2, max_factors: int = 4,
                 max_factor: int = 64) -> AbelianGroup:
    rank = rng.randint(0, max_rank)
    torsion = () if rng.random() < 0.2 else \
        random_finite_group(rng, max_factors, max_factor).torsion
    return AbelianGroup(rank, torsion)


def random_hom(rng: random.Random, A: AbelianGroup, B: AbelianGroup,
               free_bound: int = 5) -> GroupHom:
    """A uniformly random valid homomorphism A -> B (free images bounded)."""
    cols = []
    for d in A.gen_orders:
        col = []
        for e in B.gen_orders:
            if d == 0:
                col.append(rng.randint(-free_bound, free_bound) if e == 0
                           else rng.randrange(e))
            elif e == 0:
                col.append(0)
            else:
                step = e // gcd(d, e)
                col.append(step * rng.randrange(gcd(d, e)))
        cols.append(col)
    return GroupHom(A, B, IntMatrix.from_cols(cols, B.ngens))


def random_automorphism(rng: random.Random, B: AbelianGroup) -> GroupHom:
    """Rejection-sample an automorphism of a finite group."""
    if not B.is_finite:
        raise ValueError("automorphism sampling needs a finite group")
    while True:
        u = random_hom(rng, B, B)
        if is_isomorphism(u):
            return u


def hom_inverse(u: GroupHom) -> GroupHom:
    """The inverse of an isomorphism, one preimage per generator."""
    solver = CongruenceSolver(u.source.gen_orders, u.target.gen_orders, u.matrix)
    cols = []
    for j in range(u.target.ngens):
        coords = [0] * u.target.ngens
        coords[j] = 1
        pre = solver.solve(coords)
        if pre is None:
            raise ValueError("homomorphism is not surjective")
        cols.append(list(pre))
    return GroupHom(u.target, u.source, IntMatrix.from_cols(cols, u.source.ngens))


def transported_couple(rng: random.Random, D: ExactCouple) -> ExactCouple:
    """Transport a couple along a random automorphism u of its B field:
    alpha becomes u.alpha and beta becomes beta.u^-1."""
    u = random_automorphism(rng, D.B)
    u_inv = hom_inverse(u)
    return ExactCouple(D.A, D.B, compose(u, D.alpha), compose(D.beta, u_inv))
