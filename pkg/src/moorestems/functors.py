"""Tensor, Tor and Ext over the integers, with explicit Ext realizations.

Ext classes carry a witness extension 0 -> B -> E -> A -> 0 that is checked
exactly on construction.  The natural map from Ext(A, B) to Hom(2-torsion of
A, B/2) is computed from those witnesses: lift a 2-torsion element through
the quotient map, double it, pull the result back through the inclusion and
reduce mod 2.  It is an isomorphism whenever A or B is an elementary abelian
2-group, which `lambda_iso_check` decides exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .fga import (
    AbelianGroup,
    CongruenceSolver,
    GroupElement,
    GroupHom,
    IntMatrix,
    _cokernel_with_lift,
    _multi_sum,
    _presentation,
    _relation_rows,
    apply,
    cokernel,
    compose,
    congruence_solve,
    direct_sum,
    direct_sum_with_maps,
    hom_add,
    hom_group,
    hom_negate,
    image,
    is_isomorphism,
    kernel,
    mult_by,
    n_torsion_with_inclusion,
    quotient_with_projection,
    subgroup_equal,
)

__all__ = [
    "ExtClass",
    "ext",
    "ext_class_coords",
    "ext_pullback",
    "ext_pushforward",
    "ext_realize",
    "lambda_iso_check",
    "lambda_map",
    "tensor",
    "tor",
]


def tensor(A: AbelianGroup, B: AbelianGroup) -> AbelianGroup:
    """A (x) B, presented on generator pairs and canonicalized by SNF."""
    na, nb = A.ngens, B.ngens
    relations = []
    for i, d in enumerate(A.gen_orders):
        if d:
            for j in range(nb):
                row = [0] * (na * nb)
                row[i * nb + j] = d
                relations.append(row)
    for j, e in enumerate(B.gen_orders):
        if e:
            for i in range(na):
                row = [0] * (na * nb)
                row[i * nb + j] = e
                relations.append(row)
    group, _, _ = _presentation(na * nb, relations)
    return group


def tor(A: AbelianGroup, B: AbelianGroup) -> AbelianGroup:
    """Tor(A, B); flat first argument gives 0."""
    out = AbelianGroup.trivial()
    for d in A.torsion:
        out = direct_sum(out, kernel(mult_by(d, B))[0])
    return out


@dataclass(frozen=True)
class _ExtPiece:
    d: int                  # invariant factor of A owning this piece
    quotient: AbelianGroup  # B/dB
    proj: GroupHom          # B -> B/dB
    lift: IntMatrix         # representatives of B/dB generators in B
    inj: GroupHom           # B/dB -> Ext(A, B)
    split: GroupHom         # Ext(A, B) -> B/dB


@dataclass(frozen=True)
class _ExtStructure:
    A: AbelianGroup
    B: AbelianGroup
    group: AbelianGroup
    pieces: tuple[_ExtPiece, ...]


@lru_cache(maxsize=None)
def _ext_structure(A: AbelianGroup, B: AbelianGroup) -> _ExtStructure:
    # Ext(A, B) as the cokernel of the map on Hom(-, B) induced by the
    # canonical presentation of A: one B/dB summand per invariant factor d.
    parts = []
    for d in A.torsion:
        Q, proj, lift = _cokernel_with_lift(mult_by(d, B))
        parts.append((d, Q, proj, lift))
    total, injections, projections = _multi_sum(tuple(p[1] for p in parts))
    pieces = tuple(
        _ExtPiece(d, Q, proj, lift, inj, split)
        for (d, Q, proj, lift), inj, split in zip(parts, injections, projections)
    )
    return _ExtStructure(A, B, total, pieces)


def ext(A: AbelianGroup, B: AbelianGroup) -> AbelianGroup:
    """Ext(A, B); always finite for finitely generated arguments."""
    return _ext_structure(A, B).group


@dataclass(frozen=True)
class ExtClass:
    """An element of Ext(A, B) with a concrete short exact sequence witness.

    `incl` embeds B into the middle group and `proj` maps it onto A; both
    are verified exactly on construction, so an ExtClass is always a genuine
    extension.
    """

    ambient: AbelianGroup
    class_coords: GroupElement
    middle: AbelianGroup
    incl: GroupHom   # B -> middle
    proj: GroupHom   # middle -> A

    def __post_init__(self):
        if self.class_coords.group != self.ambient:
            raise ValueError("class coordinates do not live in the ambient Ext group")
        if self.incl.target != self.middle or self.proj.source != self.middle:
            raise ValueError("witness maps do not share the middle group")
        if kernel(self.incl)[0] != AbelianGroup.trivial():
            raise ValueError("witness inclusion is not injective")
        if cokernel(self.proj)[0] != AbelianGroup.trivial():
            raise ValueError("witness projection is not surjective")
        if not subgroup_equal(image(self.incl)[1], kernel(self.proj)[1]):
            raise ValueError("witness fails exactness in the middle")

    @property
    def sub(self) -> AbelianGroup:
        return self.incl.source

    @property
    def quot(self) -> AbelianGroup:
        return self.proj.target


def _check_coords(group: AbelianGroup, coords: Sequence[int]) -> GroupElement:
    coords = tuple(coords)
    if len(coords) != group.ngens:
        raise ValueError("coordinate length does not match the Ext group")
    for x, o in zip(coords, group.gen_orders):
        if o and not 0 <= x < o:
            raise ValueError(f"coordinate {x} out of range for a factor of order {o}")
    return GroupElement(group, coords)


def ext_realize(A: AbelianGroup, B: AbelianGroup, coords: Sequence[int]) -> ExtClass:
    """A concrete extension of A by B with the given Ext coordinates.

    The middle group adjoins one generator per generator of A, with each
    torsion relation twisted by a lift of the corresponding cocycle value;
    classifying the result recovers `coords`.
    """
    st = _ext_structure(A, B)
    elem = _check_coords(st.group, coords)
    nb, na = B.ngens, A.ngens
    relations = [row + [0] * na for row in _relation_rows(B)]
    for t, piece in enumerate(st.pieces):
        qcoords = apply(piece.split, elem).coords
        z = piece.lift.mul_vec(qcoords)
        row = [-x for x in z] + [0] * na
        row[nb + A.rank + t] = piece.d
        relations.append(row)
    E, to_can, from_can = _presentation(nb + na, relations)
    f = GroupHom(B, E, to_can.column_slice(0, nb))
    proj_rows = tuple((0,) * nb + tuple(int(p == q) for q in range(na)) for p in range(na))
    g_matrix = IntMatrix(na, nb + na, proj_rows) @ from_can
    g = GroupHom(E, A, g_matrix)
    return ExtClass(st.group, elem, E, f, g)


def ext_class_coords(cls_or_maps, g: GroupHom | None = None) -> GroupElement:
    """Classify an extension witness: the Ext coordinates of (f, g).

    Accepts either an ExtClass or the pair of maps f: B -> E, g: E -> A.
    """
    if isinstance(cls_or_maps, ExtClass):
        f, g = cls_or_maps.incl, cls_or_maps.proj
    else:
        f = cls_or_maps
        if g is None:
            raise ValueError("both maps of the witness are required")
    B, E, A = f.source, f.target, g.target
    st = _ext_structure(A, B)
    lift_solver = CongruenceSolver(E.gen_orders, A.gen_orders, g.matrix)
    pull_solver = CongruenceSolver(B.gen_orders, E.gen_orders, f.matrix)
    total = st.group.zero()
    for t, piece in enumerate(st.pieces):
        a_idx = A.rank + t
        want = [0] * A.ngens
        want[a_idx] = 1
        y = lift_solver.solve(want)
        if y is None:
            raise ValueError("witness projection is not surjective")
        doubled = tuple(piece.d * x for x in y)
        z = pull_solver.solve(doubled)
        if z is None:
            raise ValueError("witness fails exactness: relation does not pull back")
        q = apply(piece.proj, GroupElement(B, z))
        total = total + apply(piece.inj, q)
    return total


def ext_pullback(cls: ExtClass, u: GroupHom) -> ExtClass:
    """Pull an extension of A by B back along u: A' -> A."""
    A, B, E = cls.quot, cls.sub, cls.middle
    if u.target != A:
        raise ValueError("pullback map must land in the quotient group")
    Ap = u.source
    S, (iAp, iE), (pAp, pE) = _sum_with_maps(Ap, E)
    h = hom_add(compose(u, pAp), hom_negate(compose(cls.proj, pE)))
    P, inc = kernel(h)
    gp = compose(pAp, inc)
    inc_solver = CongruenceSolver(P.gen_orders, S.gen_orders, inc.matrix)
    cols = []
    for j in range(B.ngens):
        target = apply(iE, apply(cls.incl, _basis_element(B, j)))
        w = inc_solver.solve(target.coords)
        if w is None:
            raise AssertionError("B does not embed in the pullback")
        cols.append(w)
    fp = GroupHom(B, P, IntMatrix.from_cols(cols, P.ngens))
    coords = ext_class_coords(fp, gp)
    return ExtClass(ext(Ap, B), coords, P, fp, gp)


def ext_pushforward(cls: ExtClass, v: GroupHom) -> ExtClass:
    """Push an extension of A by B forward along v: B -> B'."""
    A, B, E = cls.quot, cls.sub, cls.middle
    if v.source != B:
        raise ValueError("pushforward map must start at the subgroup")
    Bp = v.target
    S, (iBp, iE), (pBp, pE) = _sum_with_maps(Bp, E)
    h = hom_add(compose(iBp, v), hom_negate(compose(iE, cls.incl)))
    Q, proj, lift = _cokernel_with_lift(h)
    fp = compose(proj, iBp)
    g_on_sum = compose(cls.proj, pE)
    gp = GroupHom(Q, A, g_on_sum.matrix @ lift)
    coords = ext_class_coords(fp, gp)
    return ExtClass(ext(A, Bp), coords, Q, fp, gp)


def _sum_with_maps(A: AbelianGroup, B: AbelianGroup):
    return direct_sum_with_maps(A, B)


def _basis_element(G: AbelianGroup, j: int) -> GroupElement:
    coords = [0] * G.ngens
    coords[j] = 1
    return GroupElement(G, coords)


def _lambda_of_witness(cls: ExtClass, tors_inc: GroupHom, mod2_proj: GroupHom) -> GroupHom:
    """The recipe on one witness: lift through proj, double, pull back
    through incl, reduce mod 2."""
    T = tors_inc.source
    Q2 = mod2_proj.target
    E, f, g = cls.middle, cls.incl, cls.proj
    A, B = cls.quot, cls.sub
    lift_solver = CongruenceSolver(E.gen_orders, A.gen_orders, g.matrix)
    pull_solver = CongruenceSolver(B.gen_orders, E.gen_orders, f.matrix)
    cols = []
    for j in range(T.ngens):
        x = apply(tors_inc, _basis_element(T, j))
        y = lift_solver.solve(x.coords)
        if y is None:
            raise AssertionError("witness projection is not surjective")
        doubled = tuple(2 * c for c in y)
        z = pull_solver.solve(doubled)
        if z is None:
            raise AssertionError("doubled lift escaped the image of the inclusion")
        cols.append(apply(mod2_proj, GroupElement(B, z)).coords)
    return GroupHom(T, Q2, IntMatrix.from_cols(cols, Q2.ngens))


def lambda_map(A: AbelianGroup, B: AbelianGroup) -> GroupHom:
    """The natural map Ext(A, B) -> Hom(2-torsion of A, B/2)."""
    T, tors_inc = n_torsion_with_inclusion(A, 2)
    _, mod2_proj, _ = quotient_with_projection(B, 2)
    H = hom_group(T, mod2_proj.target)
    E_group = ext(A, B)
    cols = []
    for k in range(E_group.ngens):
        coords = [0] * E_group.ngens
        coords[k] = 1
        witness = ext_realize(A, B, coords)
        hom = _lambda_of_witness(witness, tors_inc, mod2_proj)
        cols.append(H.coords_of(hom))
    return GroupHom(E_group, H.group, IntMatrix.from_cols(cols, H.group.ngens))


def lambda_value(cls: ExtClass) -> GroupHom:
    """The recipe evaluated on a single class (used to cross-check
    lambda_map's additivity)."""
    A, B = cls.quot, cls.sub
    _, tors_inc = n_torsion_with_inclusion(A, 2)
    _, mod2_proj, _ = quotient_with_projection(B, 2)
    return _lambda_of_witness(cls, tors_inc, mod2_proj)


def lambda_iso_check(A: AbelianGroup, B: AbelianGroup) -> bool:
    """Whether the natural map is an isomorphism; guaranteed true when A or
    B is an elementary abelian 2-group."""
    return is_isomorphism(lambda_map(A, B))
