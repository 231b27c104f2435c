import pytest

from conftest import cyclic_battery
from moorestems import moore, oracle, sampling
from moorestems.exact_couples import (
    CoupleFormatError,
    CoupleMorphism,
    ExactCouple,
    compose,
    doubling_morphism,
    identity_morphism,
    is_isomorphism,
    morphism_add,
    morphism_group,
    parse_couple,
    phi1,
    phi2,
    serialize_couple,
    validate,
    zero_morphism,
)
from moorestems.fga import AbelianGroup, GroupHom, hom_group, quotient_by_n
from moorestems.functors import ext

Z = AbelianGroup.free(1)
Z2 = AbelianGroup.cyclic(2)
Z4 = AbelianGroup.cyclic(4)


def couple_s() -> ExactCouple:
    return ExactCouple(Z, Z2, GroupHom(Z, Z2, [[1]]), GroupHom(Z2, Z, [[0]]))


def couple_p() -> ExactCouple:
    return ExactCouple(Z2, Z4, GroupHom(Z2, Z4, [[2]]), GroupHom(Z4, Z2, [[1]]))


class TestValidate:
    def test_sphere_couple_valid(self):
        assert validate(couple_s()) == []

    def test_mod2_couple_valid(self):
        assert validate(couple_p()) == []

    def test_inclusion_projection_invalid(self):
        # (Z/2, Z/2+Z/2, include first, project second): exact everywhere but
        # alpha.beta is not multiplication by 2
        B = AbelianGroup(0, (2, 2))
        D = ExactCouple(Z2, B,
                        GroupHom(Z2, B, [[1], [0]]),
                        GroupHom(B, Z2, [[0, 1]]))
        issues = validate(D)
        assert issues
        assert any("multiplication by 2" in s for s in issues)
        # element oracle agrees: alpha(beta(0,1)) = (1,0) but 2*(0,1) = 0
        # projecting onto the first coordinate instead also breaks exactness
        D2 = ExactCouple(Z2, B,
                         GroupHom(Z2, B, [[1], [0]]),
                         GroupHom(B, Z2, [[1, 0]]))
        issues2 = validate(D2)
        assert any("ker(beta) != im(alpha)" in s for s in issues2)

    def test_shape_mismatch_rejected_at_construction(self):
        with pytest.raises(ValueError):
            ExactCouple(Z2, Z4, GroupHom(Z2, Z2, [[1]]), GroupHom(Z4, Z2, [[1]]))

    def test_accepts_canonical_rejects_corruptions(self, rng):
        groups = [Z2, Z4, AbelianGroup(0, (2, 4)), AbelianGroup.cyclic(6), Z]
        for A in groups:
            D = moore.canonical_couple(A)
            assert validate(D) == []
        rejected = 0
        tried = 0
        while rejected < 20 and tried < 400:
            tried += 1
            A = rng.choice(groups)
            D = moore.canonical_couple(A)
            mutant = _mutate_single_entry(rng, D)
            if mutant is None:
                continue
            issues = validate(mutant)
            if issues:
                rejected += 1
                # cross-check against element-wise verification when finite
                if mutant.A.is_finite:
                    assert not _element_wise_valid(mutant)
            else:
                # a mutation that stays valid must genuinely be a couple
                assert mutant.A.is_finite and _element_wise_valid(mutant)
        assert rejected >= 20


def _mutate_single_entry(rng, D):
    from math import gcd
    which = rng.choice(("alpha", "beta"))
    f = getattr(D, which)
    if f.matrix.rows == 0 or f.matrix.cols == 0:
        return None
    i = rng.randrange(f.matrix.rows)
    j = rng.randrange(f.matrix.cols)
    d = f.source.gen_orders[j]
    e = f.target.gen_orders[i]
    if e == 0:
        return None if d else _with_entry(D, which, i, j, f.matrix.entries[i][j]
                                           + rng.choice([-1, 1]))
    step = e // gcd(d, e) if d else 1
    choices = [v for v in range(0, e, step) if v != f.matrix.entries[i][j]]
    if not choices:
        return None
    return _with_entry(D, which, i, j, rng.choice(choices))


def _with_entry(D, which, i, j, value):
    f = getattr(D, which)
    rows = [list(r) for r in f.matrix.entries]
    rows[i][j] = value
    from moorestems.fga import IntMatrix
    g = GroupHom(f.source, f.target, IntMatrix.from_rows(rows, f.matrix.cols))
    if which == "alpha":
        return ExactCouple(D.A, D.B, g, D.beta)
    return ExactCouple(D.A, D.B, D.alpha, g)


def _element_wise_valid(D):
    """Element-by-element couple validity for finite couples."""
    from moorestems.fga import GroupElement, apply

    def elements(G):
        return [GroupElement(G, c) for c in G.elements()]

    A, B = D.A, D.B
    im2 = {x.scaled(2).coords for x in elements(A)}
    ker_alpha = {x.coords for x in elements(A) if apply(D.alpha, x).is_zero}
    if im2 != ker_alpha:
        return False
    im_alpha = {apply(D.alpha, x).coords for x in elements(A)}
    ker_beta = {y.coords for y in elements(B) if apply(D.beta, y).is_zero}
    if im_alpha != ker_beta:
        return False
    tors = {x.coords for x in elements(A) if x.scaled(2).is_zero}
    im_beta = {apply(D.beta, y).coords for y in elements(B)}
    if tors != im_beta:
        return False
    return all(apply(D.alpha, apply(D.beta, y)) == y.scaled(2) for y in elements(B))


class TestMorphismGroup:
    def test_p_to_p(self):
        mg = morphism_group(couple_p(), couple_p())
        assert mg.group == Z4

    def test_s_to_x_recovers_a(self):
        for A in cyclic_battery():
            D = moore.canonical_couple(A)
            assert morphism_group(couple_s(), D).group == A

    def test_p_to_s(self):
        assert morphism_group(couple_p(), couple_s()).group == Z2

    def test_invalid_couple_rejected(self):
        B = AbelianGroup(0, (2, 2))
        bad = ExactCouple(Z2, B, GroupHom(Z2, B, [[1], [0]]),
                          GroupHom(B, Z2, [[0, 1]]))
        with pytest.raises(ValueError):
            morphism_group(bad, bad)

    def test_brute_force_agreement(self, rng):
        couples = [couple_p(), moore.canonical_couple(Z4),
                   moore.canonical_couple(AbelianGroup.cyclic(6)),
                   moore.canonical_couple(AbelianGroup(0, (2, 2)))]
        for D in couples:
            for Dp in couples:
                mg = morphism_group(D, Dp)
                brute = oracle.enumerate_couple_morphisms(D, Dp)
                assert mg.group.order() == len(brute)
                solved = {(m.f1.matrix.entries, m.f2.matrix.entries)
                          for m in mg.elements()}
                raw = {(m.f1.matrix.entries, m.f2.matrix.entries) for m in brute}
                assert solved == raw

    def test_contains_identity_and_doubling(self, rng):
        for A in [Z2, Z4, AbelianGroup(0, (2, 4)), AbelianGroup.cyclic(12), Z]:
            D = moore.canonical_couple(A)
            mg = morphism_group(D, D)
            assert mg.contains(identity_morphism(D))
            assert mg.contains(doubling_morphism(D))

    def test_order_identity_for_couples(self, rng):
        # |Hom(D, D')| = |Ext(A, A'/2)| * |Hom(A, A')| for valid couples
        for _ in range(10):
            A = sampling.random_finite_group(rng, max_factors=2, max_factor=16)
            Ap = sampling.random_finite_group(rng, max_factors=2, max_factor=16)
            D = sampling.transported_couple(rng, moore.canonical_couple(A))
            Dp = sampling.transported_couple(rng, moore.canonical_couple(Ap))
            lhs = morphism_group(D, Dp).group.order()
            rhs = ext(A, quotient_by_n(Ap, 2)).order() * hom_group(A, Ap).group.order()
            assert lhs == rhs


class TestMorphismAlgebra:
    def test_identity_composition(self):
        D = couple_p()
        mg = morphism_group(D, D)
        for m in mg.elements():
            assert compose(identity_morphism(D), m) == m
            assert compose(m, identity_morphism(D)) == m

    def test_doubling_squared_vanishes_on_p(self):
        D = couple_p()
        twice = doubling_morphism(D)
        assert compose(twice, twice) == zero_morphism(D, D)

    def test_associativity_sampled(self, rng):
        D = moore.canonical_couple(AbelianGroup(0, (2, 4)))
        ms = list(morphism_group(D, D).elements())
        for _ in range(20):
            a, b, c = rng.choice(ms), rng.choice(ms), rng.choice(ms)
            assert compose(compose(a, b), c) == compose(a, compose(b, c))

    def test_is_isomorphism(self):
        D = couple_p()
        assert is_isomorphism(identity_morphism(D))
        assert not is_isomorphism(doubling_morphism(D))

    def test_noncommuting_pair_rejected(self):
        D, Dp = couple_s(), couple_p()
        with pytest.raises(ValueError):
            CoupleMorphism(D, Dp, GroupHom(Z, Z2, [[1]]), GroupHom(Z2, Z4, [[0]]))

    def test_phi_accessors(self):
        D = couple_p()
        assert phi1(D) == Z2
        assert phi2(D) == Z4
        assert phi2(couple_s()) == Z2


class TestCoupleFormat:
    def test_roundtrip_bit_exact(self):
        for A in [Z, Z2, Z4, AbelianGroup(0, (2, 4)), AbelianGroup.cyclic(3),
                  AbelianGroup(2, (2, 12))]:
            D = moore.canonical_couple(A)
            text = serialize_couple(D)
            assert parse_couple(text) == D
            assert serialize_couple(parse_couple(text)) == text

    def test_golden_serialization(self):
        assert serialize_couple(couple_p()) == (
            "A: rank=0 torsion=2\n"
            "B: rank=0 torsion=4\n"
            "alpha:\n"
            "2\n"
            "beta:\n"
            "1\n"
        )

    @pytest.mark.parametrize("text", [
        "",
        "A: rank=0 torsion=2\nB: rank=0 torsion=4\nalpha:\n2\n",
        "A: rank=x torsion=\nB: rank=0 torsion=\nalpha:\nbeta:\n",
        "A: rank=0 torsion=2\nB: rank=0 torsion=4\nalpha:\n1\nbeta:\n1\n",
        "A: rank=0 torsion=2\nB: rank=0 torsion=4\nalpha:\n2\nbeta:\n1\nextra\n",
    ])
    def test_malformed_documents_rejected(self, text):
        with pytest.raises(CoupleFormatError):
            parse_couple(text)
