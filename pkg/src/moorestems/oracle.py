"""Brute-force verifiers over finite groups, independent of the main path.

Everything here enumerates elements or uses prime-by-prime bookkeeping, never
Smith normal form, so agreement with the SNF-based modules is meaningful
evidence.  All enumerations are guarded; these oracles are desk-scale by
design and raise rather than grind through oversized inputs.
"""

from __future__ import annotations

import itertools
from math import gcd
from typing import Iterable, Iterator, Sequence

from .exact_couples import (
    CoupleMorphism,
    ExactCouple,
    MorphismGroup,
    compose as couple_compose,
    doubling_morphism,
    morphism_add,
    morphism_group,
    zero_morphism,
)
from .fga import AbelianGroup, GroupHom, IntMatrix, apply, compose

__all__ = [
    "SIZE_GUARD",
    "couple_relations_check",
    "count_homs_bruteforce",
    "cyclic_table_functor",
    "enumerate_couple_morphisms",
    "enumerate_homs",
    "exactness_element_check",
    "invariants_from_orders",
    "pushout_element_oracle",
]

SIZE_GUARD = 10 ** 6


def _require_finite(G: AbelianGroup, what: str) -> None:
    if not G.is_finite:
        raise ValueError(f"{what} requires a finite group, got {G}")


def _elements(G: AbelianGroup) -> Iterator[tuple[int, ...]]:
    _require_finite(G, "element enumeration")
    if G.order() > SIZE_GUARD:
        raise ValueError(f"size guard exceeded: |{G}| = {G.order()}")
    return itertools.product(*(range(d) for d in G.torsion))


def _scaled(coords: Sequence[int], k: int, orders: Sequence[int]) -> tuple[int, ...]:
    return tuple((k * x) % d for x, d in zip(coords, orders))


def _factorint(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def invariants_from_orders(orders: Iterable[int]) -> AbelianGroup:
    """Canonical form of a sum of cyclic groups by p-primary bookkeeping.

    This is the classification argument run by hand: split every order into
    prime powers, then rebuild invariant factors by pairing the largest
    powers of each prime.  No matrix work is involved.
    """
    rank = 0
    prime_exps: dict[int, list[int]] = {}
    for d in orders:
        if d < 0:
            raise ValueError("cyclic orders must be non-negative")
        if d == 0:
            rank += 1
            continue
        for p, e in _factorint(d).items():
            prime_exps.setdefault(p, []).append(e)
    for exps in prime_exps.values():
        exps.sort(reverse=True)
    slots = max((len(e) for e in prime_exps.values()), default=0)
    factors = []
    for s in range(slots):
        d = 1
        for p, exps in prime_exps.items():
            if s < len(exps):
                d *= p ** exps[s]
        factors.append(d)
    factors = [d for d in factors if d > 1]
    return AbelianGroup(rank, tuple(reversed(factors)))


def cyclic_table_functor(kind: str, A: AbelianGroup, B: AbelianGroup) -> AbelianGroup:
    """Tensor/Tor/Ext/Hom by the classical cyclic tables plus bilinearity.

    Z/d against Z/e contributes Z/gcd(d, e) in every case; Z acts as the unit
    for tensor and hom-out, annihilates Tor and Ext-out, and so on.
    """
    if kind not in ("tensor", "tor", "ext", "hom"):
        raise ValueError(f"unknown functor kind {kind!r}")
    a_orders = [0] * A.rank + list(A.torsion)
    b_orders = [0] * B.rank + list(B.torsion)
    out: list[int] = []
    for d in a_orders:
        for e in b_orders:
            if kind == "tensor":
                out.append(e if d == 0 else d if e == 0 else gcd(d, e))
            elif kind == "tor":
                if d and e:
                    out.append(gcd(d, e))
            elif kind == "ext":
                if d == 0:
                    continue
                out.append(d if e == 0 else gcd(d, e))
            else:  # hom
                if d == 0:
                    out.append(e)
                elif e:
                    out.append(gcd(d, e))
    return invariants_from_orders(o for o in out if o != 1)


def count_homs_bruteforce(A: AbelianGroup, B: AbelianGroup) -> int:
    """|Hom(A, B)| by counting, factor by factor, the solutions of d*x = 0.

    Counts candidate generator images by enumeration inside each cyclic
    factor of B; the count for a generator of order d is the product over
    factors, and independent generators multiply.
    """
    _require_finite(A, "hom counting")
    _require_finite(B, "hom counting")
    total = 1
    for d in A.torsion:
        per_gen = 1
        for e in B.torsion:
            per_gen *= sum(1 for x in range(e) if (d * x) % e == 0)
        total *= per_gen
    return total


def enumerate_homs(A: AbelianGroup, B: AbelianGroup,
                   guard: int = SIZE_GUARD) -> list[GroupHom]:
    """Every homomorphism A -> B, by enumerating generator images of
    admissible order.  Guarded: raises once the candidate count passes
    `guard`."""
    _require_finite(A, "hom enumeration")
    _require_finite(B, "hom enumeration")
    b_orders = B.gen_orders
    candidates: list[list[tuple[int, ...]]] = []
    count = 1
    for d in A.torsion:
        images = [el for el in _elements(B)
                  if all((d * x) % e == 0 for x, e in zip(el, b_orders))]
        candidates.append(images)
        count *= len(images)
        if count > guard:
            raise ValueError(f"size guard exceeded: {count} candidate maps")
    homs = []
    for choice in itertools.product(*candidates):
        matrix = IntMatrix.from_cols(list(choice), B.ngens) if choice \
            else IntMatrix.zeros(B.ngens, 0)
        homs.append(GroupHom(A, B, matrix))
    return homs


def enumerate_couple_morphisms(D: ExactCouple, Dp: ExactCouple,
                               guard: int = SIZE_GUARD) -> list[CoupleMorphism]:
    """Every morphism of couples D -> D', by filtering all pairs of
    homomorphisms through the two commuting squares."""
    f1s = enumerate_homs(D.A, Dp.A, guard)
    f2s = enumerate_homs(D.B, Dp.B, guard)
    if len(f1s) * len(f2s) > guard:
        raise ValueError("size guard exceeded: too many candidate pairs")
    out = []
    for f1 in f1s:
        left = compose(Dp.alpha, f1)
        for f2 in f2s:
            if compose(f2, D.alpha) != left:
                continue
            if compose(f1, D.beta) != compose(Dp.beta, f2):
                continue
            out.append(CoupleMorphism(D, Dp, f1, f2))
    return out


def exactness_element_check(f: GroupHom, g: GroupHom) -> bool:
    """Element-by-element check that 0 -> B -f-> E -g-> A -> 0 is exact."""
    if f.target != g.source:
        raise ValueError("witness maps do not share the middle group")
    B, E, A = f.source, f.target, g.target
    for G in (B, E, A):
        _require_finite(G, "element-wise exactness checking")
    images = {apply(f, _as_element(B, el)).coords for el in _elements(B)}
    if len(images) != B.order():
        return False
    kernel_set = {el for el in _elements(E)
                  if apply(g, _as_element(E, el)).is_zero}
    if images != kernel_set:
        return False
    hit = {apply(g, _as_element(E, el)).coords for el in _elements(E)}
    return len(hit) == A.order()


def _as_element(G: AbelianGroup, coords: tuple[int, ...]):
    from .fga import GroupElement
    return GroupElement(G, coords)


def couple_relations_check() -> bool:
    """The relations of the sphere/mod-2 couple diagram: with theta the
    morphism whose first component is the projection Z -> Z/2 and lam the
    nonzero morphism backwards, verify 2*theta = 0, 2*lam = 0,
    lam.theta = 0 and theta.lam = doubling."""
    Z = AbelianGroup.free(1)
    Z2 = AbelianGroup.cyclic(2)
    Z4 = AbelianGroup.cyclic(4)
    d_s = ExactCouple(Z, Z2, GroupHom(Z, Z2, [[1]]), GroupHom(Z2, Z, [[0]]))
    d_p = ExactCouple(Z2, Z4, GroupHom(Z2, Z4, [[2]]), GroupHom(Z4, Z2, [[1]]))
    hom_sp = morphism_group(d_s, d_p)
    hom_ps = morphism_group(d_p, d_s)
    theta = next(m for m in hom_sp.elements()
                 if m.f1.matrix.entries == ((1,),))
    lam = next(m for m in hom_ps.elements()
               if m != zero_morphism(d_p, d_s))
    two_theta_zero = morphism_add(theta, theta) == zero_morphism(d_s, d_p)
    two_lam_zero = morphism_add(lam, lam) == zero_morphism(d_p, d_s)
    lam_theta_zero = couple_compose(lam, theta) == zero_morphism(d_s, d_s)
    theta_lam_doubles = couple_compose(theta, lam) == doubling_morphism(d_p)
    return two_theta_zero and two_lam_zero and lam_theta_zero and theta_lam_doubles


def pushout_element_oracle(f: GroupHom, g: GroupHom,
                           guard: int = SIZE_GUARD) -> AbelianGroup:
    """The pushout of finite X <-f- C -g-> Y as explicit cosets of X + Y.

    The quotient is never materialized: the identification subgroup N is the
    set {(f(c), -g(c))}, coset counts come from dividing raw counts by |N|,
    and the isomorphism type is read off order statistics prime by prime.
    """
    if f.source != g.source:
        raise ValueError("pushout legs must share their source")
    C, X, Y = f.source, f.target, g.target
    for G in (C, X, Y):
        _require_finite(G, "the pushout oracle")
    if X.order() * Y.order() > guard:
        raise ValueError("size guard exceeded for the pushout oracle")
    orders = X.torsion + Y.torsion
    N = set()
    for c in _elements(C):
        el = _as_element(C, c)
        fx = apply(f, el).coords
        gy = apply(g, el).coords
        N.add(fx + tuple((-y) % d for y, d in zip(gy, Y.torsion)))
    nsize = len(N)
    total = X.order() * Y.order()
    ncosets = total // nsize
    all_elements = [x + y for x in _elements(X) for y in _elements(Y)]

    cyclic_orders: list[int] = []
    for p in _factorint(ncosets):
        counts = []
        k = 0
        while True:
            pk = p ** k
            t_k = sum(1 for el in all_elements if _scaled(el, pk, orders) in N)
            t_k //= nsize
            counts.append(t_k)
            if t_k == ncosets // _coprime_part(ncosets, p) or (k and counts[-1] == counts[-2]):
                break
            k += 1
        exps = []
        for k in range(1, len(counts)):
            step_log = _int_log(counts[k] // counts[k - 1], p)
            exps.append(step_log)
        # exps[k-1] = number of cyclic p-power factors of exponent >= k
        height = len(exps)
        for i in range(exps[0] if exps else 0):
            e = sum(1 for k in range(height) if exps[k] > i)
            cyclic_orders.append(p ** e)
    return invariants_from_orders(cyclic_orders)


def _coprime_part(n: int, p: int) -> int:
    while n % p == 0:
        n //= p
    return n


def _int_log(n: int, p: int) -> int:
    e = 0
    while n % p == 0 and n > 1:
        n //= p
        e += 1
    if n != 1:
        raise AssertionError("count of p-torsion elements is not a p-power")
    return e
