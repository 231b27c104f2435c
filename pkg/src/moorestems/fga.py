"""Finitely generated abelian groups in invariant-factor form.

A group is a pair (rank, torsion) presenting Z^rank + Z/d1 + ... + Z/dk with
d1 | d2 | ... | dk and every di >= 2.  That form is unique, so group equality
is plain field equality.  Homomorphisms are integer matrices over the fixed
generator ordering: free generators first, then torsion generators in
invariant-factor order.  Entries into a torsion factor of order e live in
[0, e), which makes homomorphism equality well-defined too.

All values are immutable after construction; everything here is safe to use
concurrently.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, prod
from typing import Iterable, Iterator, Sequence

from .matrices import (
    IntegerSolver,
    IntMatrix,
    hermite_row_basis,
    integer_kernel_basis,
    smith_normal_form,
    smith_normal_form_full,
    solve_integer,
)

__all__ = [
    "AbelianGroup",
    "CongruenceSolver",
    "GroupElement",
    "GroupHom",
    "HomGroup",
    "IntMatrix",
    "apply",
    "cokernel",
    "compose",
    "congruence_kernel",
    "congruence_solve",
    "direct_sum",
    "direct_sum_with_maps",
    "from_presentation",
    "hom_add",
    "hom_group",
    "hom_negate",
    "hom_scale",
    "identity",
    "image",
    "in_subgroup",
    "is_isomorphism",
    "kernel",
    "mult_by",
    "n_torsion",
    "n_torsion_with_inclusion",
    "preimage",
    "quotient_by_n",
    "quotient_with_projection",
    "smith_normal_form",
    "subgroup_equal",
    "zero_hom",
]


@dataclass(frozen=True)
class AbelianGroup:
    """A finitely generated abelian group in canonical invariant-factor form.

    >>> AbelianGroup(rank=1, torsion=(2, 4))
    AbelianGroup(rank=1, torsion=(2, 4))
    >>> print(AbelianGroup(rank=1, torsion=(2, 4)))
    Z + Z/2 + Z/4
    """

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if not isinstance(self.rank, int) or self.rank < 0:
            raise ValueError("rank must be a non-negative integer")
        for d in self.torsion:
            if d < 2:
                raise ValueError("invariant factors must be >= 2")
        for d, e in zip(self.torsion, self.torsion[1:]):
            if e % d:
                raise ValueError(f"invariant factors must form a divisibility chain, got {d} then {e}")

    @staticmethod
    def trivial() -> "AbelianGroup":
        return AbelianGroup(0, ())

    @staticmethod
    def free(rank: int) -> "AbelianGroup":
        return AbelianGroup(rank, ())

    @staticmethod
    def cyclic(n: int) -> "AbelianGroup":
        """Z/n for n >= 2, the trivial group for n = 1, Z for n = 0."""
        if n < 0:
            raise ValueError("cyclic order must be non-negative")
        if n == 0:
            return AbelianGroup(1, ())
        if n == 1:
            return AbelianGroup(0, ())
        return AbelianGroup(0, (n,))

    @staticmethod
    def from_orders(orders: Iterable[int]) -> "AbelianGroup":
        """Canonical form of a direct sum of cyclic groups (0 meaning Z)."""
        orders = [int(d) for d in orders]
        if any(d < 0 for d in orders):
            raise ValueError("cyclic orders must be non-negative")
        relations = []
        for j, d in enumerate(orders):
            if d > 0:
                row = [0] * len(orders)
                row[j] = d
                relations.append(row)
        group, _, _ = _presentation(len(orders), relations)
        return group

    @property
    def ngens(self) -> int:
        return self.rank + len(self.torsion)

    @property
    def gen_orders(self) -> tuple[int, ...]:
        return (0,) * self.rank + self.torsion

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    def order(self) -> int:
        if self.rank:
            raise ValueError("order of an infinite group")
        return prod(self.torsion)

    def elements(self) -> Iterator[tuple[int, ...]]:
        """All coordinate tuples of a finite group."""
        if self.rank:
            raise ValueError("cannot enumerate an infinite group")
        return itertools.product(*(range(d) for d in self.torsion))

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.ngens)

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class GroupElement:
    """An element of an AbelianGroup; torsion coordinates are reduced."""

    group: AbelianGroup
    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(x) for x in self.coords)
        if len(coords) != self.group.ngens:
            raise ValueError("coordinate length does not match generator count")
        reduced = tuple(x % d if d else x for x, d in zip(coords, self.group.gen_orders))
        object.__setattr__(self, "coords", reduced)

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coords)

    def __add__(self, other: "GroupElement") -> "GroupElement":
        if self.group != other.group:
            raise ValueError("elements of different groups")
        return GroupElement(self.group, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.group, tuple(-a for a in self.coords))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def scaled(self, k: int) -> "GroupElement":
        return GroupElement(self.group, tuple(k * a for a in self.coords))

    def order(self) -> int:
        """Additive order; 0 stands for infinite order."""
        result = 1
        for x, d in zip(self.coords, self.group.gen_orders):
            if d == 0:
                if x != 0:
                    return 0
            elif x:
                o = d // gcd(d, x)
                result = result * o // gcd(result, o)
        return result


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism source -> target as a congruence-constrained matrix.

    Column j holds the image of source generator j in target coordinates.
    An entry m from a generator of order d into a factor of order e must
    satisfy (e / gcd(d, e)) | m, and entries from torsion generators into
    free factors must vanish; anything else is not a well-defined map and is
    rejected here rather than at use sites.
    """

    source: AbelianGroup
    target: AbelianGroup
    matrix: IntMatrix

    def __post_init__(self):
        if isinstance(self.matrix, (list, tuple)):
            object.__setattr__(self, "matrix", IntMatrix.from_rows(self.matrix, self.source.ngens))
        mat = self.matrix
        if mat.rows != self.target.ngens or mat.cols != self.source.ngens:
            raise ValueError(
                f"matrix shape {mat.rows}x{mat.cols} does not match "
                f"{self.target.ngens}x{self.source.ngens}"
            )
        tgt_orders = self.target.gen_orders
        reduced = tuple(
            tuple(x % e if e else x for x in row)
            for row, e in zip(mat.entries, tgt_orders)
        )
        object.__setattr__(self, "matrix", IntMatrix(mat.rows, mat.cols, reduced))
        for j, d in enumerate(self.source.gen_orders):
            if d == 0:
                continue
            for i, e in enumerate(tgt_orders):
                m = self.matrix.entries[i][j]
                if e == 0:
                    if m != 0:
                        raise ValueError(
                            f"generator of order {d} cannot map to a free factor (entry {m})"
                        )
                elif m % (e // gcd(d, e)):
                    raise ValueError(
                        f"entry {m} at ({i},{j}) violates the congruence for orders {d} -> {e}"
                    )


def identity(A: AbelianGroup) -> GroupHom:
    return GroupHom(A, A, IntMatrix.identity(A.ngens))


def zero_hom(A: AbelianGroup, B: AbelianGroup) -> GroupHom:
    return GroupHom(A, B, IntMatrix.zeros(B.ngens, A.ngens))


def mult_by(n: int, A: AbelianGroup) -> GroupHom:
    return GroupHom(A, A, IntMatrix.identity(A.ngens).scale(n))


def compose(g: GroupHom, f: GroupHom) -> GroupHom:
    """g after f."""
    if f.target != g.source:
        raise ValueError("homomorphisms do not compose: target/source mismatch")
    return GroupHom(f.source, g.target, g.matrix @ f.matrix)


def hom_add(f: GroupHom, g: GroupHom) -> GroupHom:
    if f.source != g.source or f.target != g.target:
        raise ValueError("cannot add homomorphisms with different endpoints")
    return GroupHom(f.source, f.target, f.matrix.add(g.matrix))


def hom_negate(f: GroupHom) -> GroupHom:
    return GroupHom(f.source, f.target, f.matrix.scale(-1))


def hom_scale(k: int, f: GroupHom) -> GroupHom:
    return GroupHom(f.source, f.target, f.matrix.scale(k))


def apply(f: GroupHom, x: GroupElement) -> GroupElement:
    if x.group != f.source:
        raise ValueError("element does not belong to the source group")
    return GroupElement(f.target, f.matrix.mul_vec(x.coords))


# ---------------------------------------------------------------------------
# Presentations: everything canonical is a cokernel computed through SNF.
# ---------------------------------------------------------------------------

def _presentation(ngens: int, relation_rows: Sequence[Sequence[int]]):
    """Canonicalize Z^ngens modulo the subgroup spanned by the relation rows.

    Returns (group, to_can, from_can) where to_can maps old coordinates to
    canonical ones and from_can picks a representative in Z^ngens for each
    canonical generator (free generators first, then torsion ascending).
    """
    cols = [list(r) for r in relation_rows]
    for r in cols:
        if len(r) != ngens:
            raise ValueError("relation length does not match generator count")
    N = IntMatrix.from_cols(cols, ngens) if cols else IntMatrix.zeros(ngens, 0)
    U, D, _, Uinv, _ = smith_normal_form_full(N)
    nrel = N.cols
    diag = [D.entries[k][k] if k < min(ngens, nrel) else 0 for k in range(ngens)]
    free_idx = [k for k in range(ngens) if diag[k] == 0]
    tors_idx = [k for k in range(ngens) if diag[k] >= 2]
    group = AbelianGroup(len(free_idx), tuple(diag[k] for k in tors_idx))
    order_idx = free_idx + tors_idx
    to_can_rows = []
    for p, k in enumerate(order_idx):
        o = group.gen_orders[p]
        row = U.entries[k]
        to_can_rows.append(tuple(x % o if o else x for x in row))
    to_can = IntMatrix(group.ngens, ngens, tuple(to_can_rows))
    from_can = IntMatrix.from_cols([Uinv.col(k) for k in order_idx], ngens) \
        if order_idx else IntMatrix.zeros(ngens, 0)
    return group, to_can, from_can


def from_presentation(M: IntMatrix) -> AbelianGroup:
    """The abelian group with one generator per column of M and one relation
    per row."""
    group, _, _ = _presentation(M.cols, list(M.entries))
    return group


def _relation_rows(A: AbelianGroup) -> list[list[int]]:
    rows = []
    for j, d in enumerate(A.gen_orders):
        if d:
            row = [0] * A.ngens
            row[j] = d
            rows.append(row)
    return rows


def direct_sum(A: AbelianGroup, B: AbelianGroup) -> AbelianGroup:
    return direct_sum_with_maps(A, B)[0]


@lru_cache(maxsize=None)
def direct_sum_with_maps(A: AbelianGroup, B: AbelianGroup):
    """Canonical A + B together with the two injections and projections."""
    S, injections, projections = _multi_sum((A, B))
    return S, injections, projections


def _multi_sum(groups: tuple[AbelianGroup, ...]):
    ngens = sum(G.ngens for G in groups)
    offsets = []
    pos = 0
    for G in groups:
        offsets.append(pos)
        pos += G.ngens
    relations = []
    for G, off in zip(groups, offsets):
        for j, d in enumerate(G.gen_orders):
            if d:
                row = [0] * ngens
                row[off + j] = d
                relations.append(row)
    S, to_can, from_can = _presentation(ngens, relations)
    injections = []
    projections = []
    for G, off in zip(groups, offsets):
        inj = GroupHom(G, S, to_can.column_slice(off, off + G.ngens))
        proj = GroupHom(S, G, IntMatrix(
            G.ngens, S.ngens,
            tuple(from_can.entries[off + j] for j in range(G.ngens))))
        injections.append(inj)
        projections.append(proj)
    return S, tuple(injections), tuple(projections)


# ---------------------------------------------------------------------------
# Kernels, images, cokernels and subgroup arithmetic.
# ---------------------------------------------------------------------------

def _slack_system(L: IntMatrix, tgt_orders: Sequence[int]) -> IntMatrix:
    # append one column q*e_i per finite target order so that congruences
    # become exact integer equations
    finite = [i for i, q in enumerate(tgt_orders) if q > 0]
    rows = []
    for i in range(len(tgt_orders)):
        extra = [tgt_orders[i] if fi == i else 0 for fi in finite]
        rows.append(list(L.entries[i]) + extra)
    return IntMatrix.from_rows(rows, L.cols + len(finite))


class CongruenceSolver:
    """Repeated solves of L x = b modulo fixed source and target orders."""

    def __init__(self, src_orders: Sequence[int], tgt_orders: Sequence[int], L: IntMatrix):
        if L.rows != len(tgt_orders) or L.cols != len(src_orders):
            raise ValueError("system shape does not match the given orders")
        self.src_orders = tuple(src_orders)
        self.ncols = L.cols
        self._solver = IntegerSolver(_slack_system(L, tgt_orders))

    def solve(self, b: Sequence[int]) -> tuple[int, ...] | None:
        w = self._solver.solve(list(b))
        if w is None:
            return None
        return tuple(x % o if o else x
                     for x, o in zip(w[:self.ncols], self.src_orders))


def congruence_solve(src_orders: Sequence[int], tgt_orders: Sequence[int],
                     L: IntMatrix, b: Sequence[int]) -> tuple[int, ...] | None:
    """One solution x of L x = b modulo the target orders, or None.

    Unknown j is only meaningful modulo src_orders[j] (0 meaning Z), and the
    returned coordinates are reduced accordingly.
    """
    return CongruenceSolver(src_orders, tgt_orders, L).solve(b)


def _subgroup_from_vectors(orders: Sequence[int], vectors: Iterable[Sequence[int]]):
    """The subgroup of +Z/orders generated by the given coordinate vectors.

    Returns (group, generator coordinate vectors) with the generators aligned
    to the canonical generators of the returned group.
    """
    width = len(orders)
    lattice_rows = [list(v) for v in vectors]
    for j, o in enumerate(orders):
        if o:
            row = [0] * width
            row[j] = o
            lattice_rows.append(row)
    basis = hermite_row_basis(lattice_rows, width)
    if not basis:
        return AbelianGroup.trivial(), []
    solver = IntegerSolver(IntMatrix.from_cols(basis, width))
    rel_rows = []
    for j, o in enumerate(orders):
        if not o:
            continue
        target = [0] * width
        target[j] = o
        c = solver.solve(target)
        if c is None:
            raise AssertionError("ambient relation escaped its own lattice")
        rel_rows.append(list(c))
    group, _, from_can = _presentation(len(basis), rel_rows)
    gens = []
    for p in range(group.ngens):
        vec = [0] * width
        for k in range(len(basis)):
            coeff = from_can.entries[k][p]
            if coeff:
                for t in range(width):
                    vec[t] += coeff * basis[k][t]
        gens.append(tuple(x % o if o else x for x, o in zip(vec, orders)))
    return group, gens


def congruence_kernel(src_orders: Sequence[int], tgt_orders: Sequence[int], L: IntMatrix):
    """Kernel of the map +Z/src_orders -> +Z/tgt_orders given by L.

    Returns (group, generator coordinate vectors in the source).
    """
    if L.rows != len(tgt_orders) or L.cols != len(src_orders):
        raise ValueError("system shape does not match the given orders")
    M = _slack_system(L, tgt_orders)
    vectors = [v[:L.cols] for v in integer_kernel_basis(M)]
    return _subgroup_from_vectors(src_orders, vectors)


def kernel(f: GroupHom) -> tuple[AbelianGroup, GroupHom]:
    """Kernel subgroup with its inclusion into the source."""
    K, gens = congruence_kernel(f.source.gen_orders, f.target.gen_orders, f.matrix)
    inc = GroupHom(K, f.source, IntMatrix.from_cols(gens, f.source.ngens))
    return K, inc


def image(f: GroupHom) -> tuple[AbelianGroup, GroupHom]:
    """Image subgroup with its inclusion into the target."""
    cols = [f.matrix.col(j) for j in range(f.matrix.cols)]
    I, gens = _subgroup_from_vectors(f.target.gen_orders, cols)
    inc = GroupHom(I, f.target, IntMatrix.from_cols(gens, f.target.ngens))
    return I, inc


def _cokernel_with_lift(f: GroupHom):
    relations = _relation_rows(f.target)
    relations.extend(list(f.matrix.col(j)) for j in range(f.matrix.cols))
    Q, to_can, from_can = _presentation(f.target.ngens, relations)
    proj = GroupHom(f.target, Q, to_can)
    return Q, proj, from_can


def cokernel(f: GroupHom) -> tuple[AbelianGroup, GroupHom]:
    """Cokernel with the projection from the target."""
    Q, proj, _ = _cokernel_with_lift(f)
    return Q, proj


def _lattice_of(inc: GroupHom) -> tuple[tuple[int, ...], ...]:
    ambient = inc.target
    rows = [list(inc.matrix.col(j)) for j in range(inc.matrix.cols)]
    rows.extend(_relation_rows(ambient))
    return hermite_row_basis(rows, ambient.ngens)


def subgroup_equal(inc1: GroupHom, inc2: GroupHom) -> bool:
    """Whether two subgroups, given by inclusions into one ambient group,
    coincide."""
    if inc1.target != inc2.target:
        raise ValueError("subgroups live in different ambient groups")
    return _lattice_of(inc1) == _lattice_of(inc2)


def in_subgroup(inc: GroupHom, x: GroupElement) -> bool:
    """Membership of an ambient element in the subgroup given by inc."""
    if x.group != inc.target:
        raise ValueError("element does not belong to the ambient group")
    cols = [list(inc.matrix.col(j)) for j in range(inc.matrix.cols)]
    cols.extend(_relation_rows(inc.target))
    M = IntMatrix.from_cols(cols, inc.target.ngens) if cols \
        else IntMatrix.zeros(inc.target.ngens, 0)
    return solve_integer(M, list(x.coords)) is not None


def preimage(f: GroupHom, y: GroupElement) -> GroupElement | None:
    """Some x with f(x) = y, or None if y is not in the image."""
    if y.group != f.target:
        raise ValueError("element does not belong to the target group")
    x = congruence_solve(f.source.gen_orders, f.target.gen_orders, f.matrix, y.coords)
    return None if x is None else GroupElement(f.source, x)


def is_isomorphism(f: GroupHom) -> bool:
    if kernel(f)[0] != AbelianGroup.trivial():
        return False
    return cokernel(f)[0] == AbelianGroup.trivial()


# ---------------------------------------------------------------------------
# Quotients, torsion subgroups, hom groups.
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def quotient_with_projection(A: AbelianGroup, n: int):
    """A/nA with the projection A -> A/nA and a lift of each canonical
    generator (the columns of the returned matrix are representatives)."""
    if n < 1:
        raise ValueError("quotient modulus must be >= 1")
    return _cokernel_with_lift(mult_by(n, A))


def quotient_by_n(A: AbelianGroup, n: int) -> AbelianGroup:
    return quotient_with_projection(A, n)[0]


@lru_cache(maxsize=None)
def n_torsion_with_inclusion(A: AbelianGroup, n: int):
    """{x in A : n x = 0} with its inclusion into A."""
    if n < 1:
        raise ValueError("torsion modulus must be >= 1")
    return kernel(mult_by(n, A))


def n_torsion(A: AbelianGroup, n: int) -> AbelianGroup:
    return n_torsion_with_inclusion(A, n)[0]


@dataclass(frozen=True)
class HomGroup:
    """Hom(source, target) in canonical form, with concrete generators.

    generators[k] realizes the k-th canonical generator of `group`, so its
    order is group.gen_orders[k] (0 for a free generator).
    """

    source: AbelianGroup
    target: AbelianGroup
    group: AbelianGroup
    generators: tuple[GroupHom, ...]
    _pieces: tuple[tuple[int, int, int, int], ...]  # (i, j, order, entry)
    _to_can: IntMatrix

    def coords_of(self, f: GroupHom) -> tuple[int, ...]:
        """Coordinates of a homomorphism over the canonical generators."""
        if f.source != self.source or f.target != self.target:
            raise ValueError("homomorphism has the wrong endpoints")
        piece_vec = []
        for i, j, _, c in self._pieces:
            m = f.matrix.entries[i][j]
            if m % c:
                raise AssertionError("entry escaped its congruence class")
            piece_vec.append(m // c)
        raw = self._to_can.mul_vec(piece_vec)
        return tuple(x % o if o else x for x, o in zip(raw, self.group.gen_orders))

    def from_coords(self, coords: Sequence[int]) -> GroupHom:
        """The homomorphism with the given canonical coordinates."""
        if len(coords) != self.group.ngens:
            raise ValueError("coordinate length does not match the hom group")
        mat = IntMatrix.zeros(self.target.ngens, self.source.ngens)
        for c, g in zip(coords, self.generators):
            if c:
                mat = mat.add(g.matrix.scale(c))
        return GroupHom(self.source, self.target, mat)


@lru_cache(maxsize=None)
def hom_group(A: AbelianGroup, B: AbelianGroup) -> HomGroup:
    """The group Hom(A, B) with generators; Hom(Z/d, Z/e) = Z/gcd(d, e)."""
    pieces = []
    for j, d in enumerate(A.gen_orders):
        for i, e in enumerate(B.gen_orders):
            if d == 0:
                pieces.append((i, j, e, 1))
            elif e == 0:
                continue
            else:
                g = gcd(d, e)
                if g > 1:
                    pieces.append((i, j, g, e // g))
    relations = []
    for p, (_, _, q, _) in enumerate(pieces):
        if q:
            row = [0] * len(pieces)
            row[p] = q
            relations.append(row)
    group, to_can, from_can = _presentation(len(pieces), relations)
    generators = []
    for k in range(group.ngens):
        rows = [[0] * A.ngens for _ in range(B.ngens)]
        for p, (i, j, _, c) in enumerate(pieces):
            coeff = from_can.entries[p][k]
            if coeff:
                rows[i][j] += coeff * c
        generators.append(GroupHom(A, B, IntMatrix.from_rows(rows, A.ngens)))
    return HomGroup(A, B, group, tuple(generators), tuple(pieces), to_can)
