"""Moore spaces as exact couples, and their stable homotopy stems q = 0..7.

A Moore space is modeled by its homology group A; the suspension degree is
symbolic and every result is reported in stem degree q.  `canonical_couple`
builds the couple attached to A: its B field is the extension of the
2-torsion subgroup by A/2 classified by the natural map between them, and
the couple maps factor through that extension.  Homotopy-class groups of
maps between two Moore spaces are morphism groups of the attached couples.

Stems use the classical values of the first eight stable homotopy groups of
spheres (Z, Z/2, Z/2, Z/24, 0, 0, Z/2, Z/240):

  q=0: A            q=1: A/2          q=2: B field of the couple
  q=3: pushout of A/2 -> B against x+2A |-> 12x+24A into A/24
  q=4: 24-torsion   q=5: 0            q=6: A/2
  q=7: A/240 + 2-torsion of A
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .exact_couples import (
    CoupleMorphism,
    ExactCouple,
    MorphismGroup,
    identity_morphism,
    is_isomorphism as couple_is_isomorphism,
    morphism_group,
)
from .fga import (
    AbelianGroup,
    GroupHom,
    IntMatrix,
    compose,
    congruence_solve,
    direct_sum,
    direct_sum_with_maps,
    hom_add,
    hom_group,
    hom_negate,
    identity,
    n_torsion,
    n_torsion_with_inclusion,
    quotient_by_n,
    quotient_with_projection,
    cokernel,
)

__all__ = [
    "MooreSpace",
    "STABLE_STEMS",
    "StemTable",
    "ahss_order_check",
    "canonical_couple",
    "homotopy_classes",
    "homotopy_ses_order_check",
    "normalize",
    "pushout",
    "stable_stem",
    "stem_table",
]

STABLE_STEMS: tuple[AbelianGroup, ...] = (
    AbelianGroup.free(1),
    AbelianGroup.cyclic(2),
    AbelianGroup.cyclic(2),
    AbelianGroup.cyclic(24),
    AbelianGroup.trivial(),
    AbelianGroup.trivial(),
    AbelianGroup.cyclic(2),
    AbelianGroup.cyclic(240),
)


@dataclass(frozen=True)
class MooreSpace:
    """A Moore space, determined up to stable equivalence by its homology."""

    homology: AbelianGroup

    def couple(self) -> ExactCouple:
        return canonical_couple(self.homology)

    def stems(self) -> "StemTable":
        return stem_table(self.homology)


@dataclass(frozen=True)
class StemTable:
    """Stem degrees 0..7 mapped to groups; degree 5 is always trivial."""

    groups: tuple[AbelianGroup, ...]

    def __post_init__(self):
        if len(self.groups) != 8:
            raise ValueError("a stem table has exactly eight entries")
        if not self.groups[5].is_trivial:
            raise ValueError("the stem at q = 5 must be trivial")

    def __getitem__(self, q: int) -> AbelianGroup:
        return self.groups[q]

    def items(self) -> Iterator[tuple[int, AbelianGroup]]:
        return iter(enumerate(self.groups))


@dataclass(frozen=True)
class _CoupleData:
    couple: ExactCouple
    mod2: AbelianGroup        # A/2
    proj2: GroupHom           # A -> A/2
    lift2: IntMatrix          # representatives of A/2 generators in A
    tors2: AbelianGroup       # 2-torsion of A
    inc2: GroupHom            # 2-torsion -> A
    sub_map: GroupHom         # A/2 -> B (injective)
    quot_map: GroupHom        # B -> 2-torsion (surjective)


@lru_cache(maxsize=None)
def _canonical_couple_data(A: AbelianGroup) -> _CoupleData:
    from .functors import ext_realize, lambda_map

    mod2, proj2, lift2 = quotient_with_projection(A, 2)
    tors2, inc2 = n_torsion_with_inclusion(A, 2)
    natural = compose(proj2, inc2)
    lam = lambda_map(tors2, mod2)
    hgrp = hom_group(tors2, mod2)
    want = hgrp.coords_of(natural)
    coords = congruence_solve(lam.source.gen_orders, lam.target.gen_orders,
                              lam.matrix, want)
    if coords is None:
        raise AssertionError("the natural map is not classified by any extension")
    witness = ext_realize(tors2, mod2, coords)
    B = witness.middle
    alpha = compose(witness.incl, proj2)
    beta = compose(inc2, witness.proj)
    couple = ExactCouple(A, B, alpha, beta)
    return _CoupleData(couple, mod2, proj2, lift2, tors2, inc2,
                       witness.incl, witness.proj)


def canonical_couple(A: AbelianGroup) -> ExactCouple:
    """The couple attached to the Moore space with homology A."""
    return _canonical_couple_data(A).couple


def homotopy_classes(A: AbelianGroup, B: AbelianGroup) -> MorphismGroup:
    """The group of homotopy classes of maps between the Moore spaces with
    homology A and B, computed as a couple morphism group."""
    return morphism_group(canonical_couple(A), canonical_couple(B))


def normalize(D: ExactCouple) -> tuple[ExactCouple, CoupleMorphism]:
    """An isomorphism from a valid couple to the canonical couple over the
    same A, with identity first component."""
    data = _canonical_couple_data(D.A)
    C = data.couple
    hbb = hom_group(D.B, C.B)
    t1 = hom_group(D.A, C.B)
    t2 = hom_group(D.B, D.A)
    cols = []
    for h in hbb.generators:
        cols.append(t1.coords_of(compose(h, D.alpha)) + t2.coords_of(compose(C.beta, h)))
    L = IntMatrix.from_cols(cols, t1.group.ngens + t2.group.ngens) if cols \
        else IntMatrix.zeros(t1.group.ngens + t2.group.ngens, 0)
    b = t1.coords_of(C.alpha) + t2.coords_of(D.beta)
    x = congruence_solve(hbb.group.gen_orders,
                         t1.group.gen_orders + t2.group.gen_orders, L, b)
    if x is None:
        raise ValueError("couple violates the exact-couple axioms: "
                         "no isomorphism onto the canonical couple exists")
    f2 = hbb.from_coords(x)
    iso = CoupleMorphism(D, C, identity(D.A), f2)
    if not couple_is_isomorphism(iso):
        raise ValueError("couple violates the exact-couple axioms: "
                         "the solved comparison map is not invertible")
    return C, iso


def pushout(f: GroupHom, g: GroupHom) -> AbelianGroup:
    """The pushout of X <-f- C -g-> Y: the cokernel of c |-> (f(c), -g(c))."""
    return _pushout_with_maps(f, g)[0]


def _pushout_with_maps(f: GroupHom, g: GroupHom):
    if f.source != g.source:
        raise ValueError("pushout legs must share their source")
    S, (ix, iy), _ = direct_sum_with_maps(f.target, g.target)
    h = hom_add(compose(ix, f), hom_negate(compose(iy, g)))
    Q, proj = cokernel(h)
    return Q, compose(proj, ix), compose(proj, iy)


def _times12_map(data: _CoupleData, A: AbelianGroup) -> GroupHom:
    # A/2 -> A/24, x + 2A |-> 12x + 24A; well-defined since 12 * 2 = 24
    _, proj24, _ = quotient_with_projection(A, 24)
    matrix = (proj24.matrix @ data.lift2).scale(12)
    return GroupHom(data.mod2, proj24.target, matrix)


def stable_stem(A: AbelianGroup, q: int) -> AbelianGroup:
    """The stem of the Moore space with homology A in degree q, 0 <= q <= 7."""
    if not 0 <= q <= 7:
        raise ValueError("stem degree must be between 0 and 7")
    if q == 0:
        return A
    if q in (1, 6):
        return quotient_by_n(A, 2)
    if q == 2:
        return _canonical_couple_data(A).couple.B
    if q == 3:
        data = _canonical_couple_data(A)
        return pushout(data.sub_map, _times12_map(data, A))
    if q == 4:
        return n_torsion(A, 24)
    if q == 5:
        return AbelianGroup.trivial()
    return direct_sum(quotient_by_n(A, 240), n_torsion(A, 2))


def stem_table(A: AbelianGroup) -> StemTable:
    return StemTable(tuple(stable_stem(A, q) for q in range(8)))


def ahss_order_check(A: AbelianGroup, q: int) -> bool:
    """Order identity |stem(A, q)| = |A (x) pi_q| * |Tor(A, pi_{q-1})| for a
    finite A, with pi_{-1} treated as 0."""
    from .functors import tensor, tor

    if not A.is_finite:
        raise ValueError("order identity requires a finite group")
    if not 0 <= q <= 7:
        raise ValueError("stem degree must be between 0 and 7")
    lhs = stable_stem(A, q).order()
    rhs = tensor(A, STABLE_STEMS[q]).order()
    if q >= 1:
        rhs *= tor(A, STABLE_STEMS[q - 1]).order()
    return lhs == rhs


def homotopy_ses_order_check(A: AbelianGroup, B: AbelianGroup) -> bool:
    """Order identity |[X, Y]| = |Ext(A, B/2)| * |Hom(A, B)| for finite A, B."""
    from .functors import ext

    if not A.is_finite or not B.is_finite:
        raise ValueError("order identity requires finite groups")
    lhs = homotopy_classes(A, B).group.order()
    rhs = ext(A, quotient_by_n(B, 2)).order() * hom_group(A, B).group.order()
    return lhs == rhs
