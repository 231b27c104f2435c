"""Two-term exact couples (A, B, alpha, beta) with alpha.beta = 2.

An object is a pair of groups with maps alpha: A -> B and beta: B -> A such
that the five-term sequence A -2-> A -alpha-> B -beta-> A -2-> A is exact at
the three interior spots and alpha.beta is multiplication by 2 on B.
`validate` reports violations instead of raising, so defective couples can
be inspected; morphisms are checked at construction since they only arise
from solved systems.

The module also owns the couple text format consumed by the CLI; the
serializer and parser round-trip bit-exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .fga import (
    AbelianGroup,
    GroupHom,
    IntMatrix,
    compose as hom_compose,
    congruence_kernel,
    hom_add,
    hom_group,
    hom_scale,
    image,
    is_isomorphism as hom_is_isomorphism,
    kernel,
    mult_by,
    subgroup_equal,
    zero_hom,
)
from .matrices import solve_integer

__all__ = [
    "CoupleFormatError",
    "CoupleMorphism",
    "ExactCouple",
    "MorphismGroup",
    "compose",
    "doubling_morphism",
    "identity_morphism",
    "is_isomorphism",
    "morphism_add",
    "morphism_group",
    "parse_couple",
    "phi1",
    "phi2",
    "serialize_couple",
    "validate",
    "zero_morphism",
]


@dataclass(frozen=True)
class ExactCouple:
    """A couple (A, B, alpha: A->B, beta: B->A); validity is checked by
    `validate`, not at construction, so broken couples can be diagnosed."""

    A: AbelianGroup
    B: AbelianGroup
    alpha: GroupHom
    beta: GroupHom

    def __post_init__(self):
        if self.alpha.source != self.A or self.alpha.target != self.B:
            raise ValueError("alpha must map A to B")
        if self.beta.source != self.B or self.beta.target != self.A:
            raise ValueError("beta must map B to A")


def phi1(D: ExactCouple) -> AbelianGroup:
    return D.A


def phi2(D: ExactCouple) -> AbelianGroup:
    return D.B


def validate(D: ExactCouple) -> list[str]:
    """All violated couple axioms, as human-readable strings; empty iff valid."""
    issues = []
    two_A = mult_by(2, D.A)
    if not subgroup_equal(kernel(D.alpha)[1], image(two_A)[1]):
        issues.append("exactness fails: ker(alpha) != im(2: A -> A)")
    if not subgroup_equal(kernel(D.beta)[1], image(D.alpha)[1]):
        issues.append("exactness fails: ker(beta) != im(alpha)")
    if not subgroup_equal(kernel(two_A)[1], image(D.beta)[1]):
        issues.append("exactness fails: 2-torsion of A != im(beta)")
    if hom_compose(D.alpha, D.beta) != mult_by(2, D.B):
        issues.append("alpha . beta is not multiplication by 2 on B")
    return issues


@dataclass(frozen=True)
class CoupleMorphism:
    """A pair (f1: A -> A', f2: B -> B') commuting with both couple maps.

    Construction verifies f2.alpha = alpha'.f1 and f1.beta = beta'.f2
    exactly, so morphisms cannot silently break the squares.
    """

    source: ExactCouple
    target: ExactCouple
    f1: GroupHom
    f2: GroupHom

    def __post_init__(self):
        if self.f1.source != self.source.A or self.f1.target != self.target.A:
            raise ValueError("f1 endpoints do not match the couples")
        if self.f2.source != self.source.B or self.f2.target != self.target.B:
            raise ValueError("f2 endpoints do not match the couples")
        if hom_compose(self.f2, self.source.alpha) != hom_compose(self.target.alpha, self.f1):
            raise ValueError("morphism does not commute with alpha")
        if hom_compose(self.f1, self.source.beta) != hom_compose(self.target.beta, self.f2):
            raise ValueError("morphism does not commute with beta")


def identity_morphism(D: ExactCouple) -> CoupleMorphism:
    from .fga import identity as hom_identity
    return CoupleMorphism(D, D, hom_identity(D.A), hom_identity(D.B))


def doubling_morphism(D: ExactCouple) -> CoupleMorphism:
    return CoupleMorphism(D, D, mult_by(2, D.A), mult_by(2, D.B))


def zero_morphism(D: ExactCouple, Dp: ExactCouple) -> CoupleMorphism:
    return CoupleMorphism(D, Dp, zero_hom(D.A, Dp.A), zero_hom(D.B, Dp.B))


def compose(m2: CoupleMorphism, m1: CoupleMorphism) -> CoupleMorphism:
    """m2 after m1."""
    if m1.target != m2.source:
        raise ValueError("couple morphisms do not compose")
    return CoupleMorphism(m1.source, m2.target,
                          hom_compose(m2.f1, m1.f1), hom_compose(m2.f2, m1.f2))


def morphism_add(m: CoupleMorphism, mp: CoupleMorphism) -> CoupleMorphism:
    if m.source != mp.source or m.target != mp.target:
        raise ValueError("cannot add morphisms with different endpoints")
    return CoupleMorphism(m.source, m.target,
                          hom_add(m.f1, mp.f1), hom_add(m.f2, mp.f2))


def is_isomorphism(m: CoupleMorphism) -> bool:
    return hom_is_isomorphism(m.f1) and hom_is_isomorphism(m.f2)


@dataclass(frozen=True)
class MorphismGroup:
    """Hom(D, D') in canonical form with concrete generating morphisms.

    generators[k] realizes canonical generator k of `group`, so its order
    can be read off group.gen_orders[k].
    """

    source: ExactCouple
    target: ExactCouple
    group: AbelianGroup
    generators: tuple[CoupleMorphism, ...]
    _gen_coords: tuple[tuple[int, ...], ...]
    _orders: tuple[int, ...]

    def morphism_from_coords(self, coords: Sequence[int]) -> CoupleMorphism:
        """The morphism with the given coordinates over the generators."""
        if len(coords) != self.group.ngens:
            raise ValueError("coordinate length does not match the morphism group")
        m = zero_morphism(self.source, self.target)
        for c, g in zip(coords, self.generators):
            if c:
                scaled = CoupleMorphism(self.source, self.target,
                                        hom_scale(c, g.f1), hom_scale(c, g.f2))
                m = morphism_add(m, scaled)
        return m

    def elements(self) -> Iterator[CoupleMorphism]:
        """All morphisms of a finite morphism group."""
        if not self.group.is_finite:
            raise ValueError("cannot enumerate an infinite morphism group")
        for coords in itertools.product(*(range(d) for d in self.group.torsion)):
            yield self.morphism_from_coords(coords)

    def contains(self, m: CoupleMorphism) -> bool:
        """Membership of a commuting pair in the solved morphism group."""
        if m.source != self.source or m.target != self.target:
            raise ValueError("morphism has the wrong endpoints")
        h11 = hom_group(self.source.A, self.target.A)
        h22 = hom_group(self.source.B, self.target.B)
        coords = h11.coords_of(m.f1) + h22.coords_of(m.f2)
        cols = [list(v) for v in self._gen_coords]
        for j, o in enumerate(self._orders):
            if o:
                row = [0] * len(self._orders)
                row[j] = o
                cols.append(row)
        M = IntMatrix.from_cols(cols, len(self._orders)) if cols \
            else IntMatrix.zeros(len(self._orders), 0)
        return solve_integer(M, list(coords)) is not None


def morphism_group(D: ExactCouple, Dp: ExactCouple) -> MorphismGroup:
    """All (f1, f2) commuting with both couples, solved as the kernel of the
    linear map Hom(A,A') + Hom(B,B') -> Hom(A,B') + Hom(B,A') sending
    (f1, f2) to (f2.alpha - alpha'.f1, f1.beta - beta'.f2)."""
    for couple, name in ((D, "source"), (Dp, "target")):
        issues = validate(couple)
        if issues:
            raise ValueError(f"{name} couple is not a valid exact couple: {issues[0]}")
    h11 = hom_group(D.A, Dp.A)
    h22 = hom_group(D.B, Dp.B)
    t1 = hom_group(D.A, Dp.B)
    t2 = hom_group(D.B, Dp.A)
    src_orders = h11.group.gen_orders + h22.group.gen_orders
    tgt_orders = t1.group.gen_orders + t2.group.gen_orders
    cols = []
    for g in h11.generators:
        block1 = tuple(-x for x in t1.coords_of(hom_compose(Dp.alpha, g)))
        block2 = t2.coords_of(hom_compose(g, D.beta))
        cols.append(block1 + block2)
    for h in h22.generators:
        block1 = t1.coords_of(hom_compose(h, D.alpha))
        block2 = tuple(-x for x in t2.coords_of(hom_compose(Dp.beta, h)))
        cols.append(block1 + block2)
    L = IntMatrix.from_cols(cols, len(tgt_orders)) if cols \
        else IntMatrix.zeros(len(tgt_orders), 0)
    group, gen_coords = congruence_kernel(src_orders, tgt_orders, L)
    n1 = h11.group.ngens
    generators = []
    for vec in gen_coords:
        f1 = h11.from_coords(vec[:n1])
        f2 = h22.from_coords(vec[n1:])
        generators.append(CoupleMorphism(D, Dp, f1, f2))
    return MorphismGroup(D, Dp, group, tuple(generators),
                         tuple(tuple(v) for v in gen_coords), tuple(src_orders))


# ---------------------------------------------------------------------------
# Couple text format: the on-disk interface consumed by the CLI.
# ---------------------------------------------------------------------------

class CoupleFormatError(ValueError):
    """Raised when a couple document does not match the expected format."""


def serialize_couple(D: ExactCouple) -> str:
    """Render a couple in the canonical text format (bit-exact round-trip).

    Matrix rows are one line each; matrices with no columns (or no rows)
    contribute no lines since their shape is implied by the groups.
    """
    lines = [
        f"A: rank={D.A.rank} torsion={','.join(str(d) for d in D.A.torsion)}",
        f"B: rank={D.B.rank} torsion={','.join(str(d) for d in D.B.torsion)}",
        "alpha:",
    ]
    if D.alpha.matrix.cols:
        lines.extend(" ".join(str(x) for x in row) for row in D.alpha.matrix.entries)
    lines.append("beta:")
    if D.beta.matrix.cols:
        lines.extend(" ".join(str(x) for x in row) for row in D.beta.matrix.entries)
    return "\n".join(lines) + "\n"


def _parse_group_line(line: str, label: str) -> AbelianGroup:
    prefix = f"{label}:"
    if not line.startswith(prefix):
        raise CoupleFormatError(f"expected a line starting with {prefix!r}, got {line!r}")
    fields = line[len(prefix):].split()
    if len(fields) != 2 or not fields[0].startswith("rank=") or not fields[1].startswith("torsion="):
        raise CoupleFormatError(f"malformed group line {line!r}")
    try:
        rank = int(fields[0][len("rank="):])
        torsion_txt = fields[1][len("torsion="):]
        torsion = tuple(int(t) for t in torsion_txt.split(",")) if torsion_txt else ()
        return AbelianGroup(rank, torsion)
    except ValueError as exc:
        raise CoupleFormatError(f"malformed group line {line!r}: {exc}") from exc


def _parse_matrix_lines(lines: list[str], start: int, rows: int, cols: int,
                        label: str) -> tuple[IntMatrix, int]:
    if cols == 0:
        return IntMatrix.zeros(rows, 0), start
    body = []
    for r in range(rows):
        if start + r >= len(lines):
            raise CoupleFormatError(f"{label} matrix is missing row {r}")
        parts = lines[start + r].split()
        if len(parts) != cols:
            raise CoupleFormatError(
                f"{label} matrix row {r} has {len(parts)} entries, expected {cols}")
        try:
            body.append([int(x) for x in parts])
        except ValueError as exc:
            raise CoupleFormatError(f"{label} matrix row {r} is not integral") from exc
    return IntMatrix.from_rows(body, cols), start + rows


def parse_couple(text: str) -> ExactCouple:
    """Parse the couple text format produced by serialize_couple."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) < 4:
        raise CoupleFormatError("couple document is too short")
    A = _parse_group_line(lines[0], "A")
    B = _parse_group_line(lines[1], "B")
    if lines[2] != "alpha:":
        raise CoupleFormatError(f"expected 'alpha:', got {lines[2]!r}")
    alpha_mat, pos = _parse_matrix_lines(lines, 3, B.ngens, A.ngens, "alpha")
    if pos >= len(lines) or lines[pos] != "beta:":
        raise CoupleFormatError("expected 'beta:' after the alpha matrix")
    beta_mat, pos = _parse_matrix_lines(lines, pos + 1, A.ngens, B.ngens, "beta")
    if pos != len(lines):
        raise CoupleFormatError("trailing content after the beta matrix")
    try:
        alpha = GroupHom(A, B, alpha_mat)
        beta = GroupHom(B, A, beta_mat)
        return ExactCouple(A, B, alpha, beta)
    except ValueError as exc:
        raise CoupleFormatError(f"matrices do not define homomorphisms: {exc}") from exc
