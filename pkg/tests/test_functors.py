import pytest

from conftest import full_battery
from moorestems import oracle, sampling
from moorestems.fga import (
    AbelianGroup,
    GroupElement,
    GroupHom,
    compose,
    direct_sum,
    hom_group,
    is_isomorphism,
    n_torsion,
    n_torsion_with_inclusion,
    quotient_by_n,
    quotient_with_projection,
)
from moorestems.functors import (
    ExtClass,
    ext,
    ext_class_coords,
    ext_pullback,
    ext_pushforward,
    ext_realize,
    lambda_iso_check,
    lambda_map,
    lambda_value,
    tensor,
    tor,
)

Z = AbelianGroup.free(1)
Z2 = AbelianGroup.cyclic(2)
Z4 = AbelianGroup.cyclic(4)
Z8 = AbelianGroup.cyclic(8)
Z12 = AbelianGroup.cyclic(12)
Z24 = AbelianGroup.cyclic(24)
TRIVIAL = AbelianGroup.trivial()


class TestTensorTorExt:
    def test_tensor_examples(self):
        assert tensor(Z, Z24) == Z24
        assert tensor(Z2, Z2) == Z2
        assert tensor(Z12, Z8) == Z4

    def test_tor_examples(self):
        assert tor(Z, Z24) == TRIVIAL
        assert tor(Z2, Z24) == Z2
        assert tor(Z12, Z8) == Z4

    def test_ext_examples(self):
        assert ext(Z, Z2) == TRIVIAL
        assert ext(Z2, Z2) == Z2
        assert ext(Z12, Z8) == Z4

    def test_tor_of_cyclic_is_torsion_subgroup(self):
        for A in full_battery():
            for n in (2, 24, 240):
                assert tor(A, AbelianGroup.cyclic(n)) == n_torsion(A, n)

    def test_agreement_with_cyclic_table_oracle(self):
        battery = full_battery()
        for a in battery:
            for b in battery:
                assert tensor(a, b) == oracle.cyclic_table_functor("tensor", a, b)
                assert tor(a, b) == oracle.cyclic_table_functor("tor", a, b)
                assert ext(a, b) == oracle.cyclic_table_functor("ext", a, b)
                assert hom_group(a, b).group == oracle.cyclic_table_functor("hom", a, b)


class TestExtRealize:
    def test_split_class(self):
        cls = ext_realize(Z2, Z2, (0,))
        assert cls.middle == AbelianGroup(0, (2, 2))
        assert oracle.exactness_element_check(cls.incl, cls.proj)

    def test_nonzero_class_z2_z2(self):
        # the nonsplit extension of Z/2 by Z/2 is Z/4
        cls = ext_realize(Z2, Z2, (1,))
        assert cls.middle == Z4
        assert oracle.exactness_element_check(cls.incl, cls.proj)

    def test_nonzero_class_z2_z4(self):
        # of the two order-8 groups fitting 0 -> Z/4 -> E -> Z/2 -> 0 with a
        # nonzero class, the realization must be the cyclic one
        cls = ext_realize(Z2, Z4, (1,))
        assert cls.middle == Z8

    def test_coords_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            ext_realize(Z2, Z2, (2,))
        with pytest.raises(ValueError):
            ext_realize(Z2, Z2, (0, 0))

    def test_classification_roundtrip(self):
        pairs = [(Z2, Z2), (Z4, Z4), (Z2, Z4), (Z4, Z8),
                 (AbelianGroup(0, (2, 4)), Z2), (Z12, Z8)]
        for A, B in pairs:
            E_group = ext(A, B)
            for coords in E_group.elements():
                cls = ext_realize(A, B, coords)
                assert ext_class_coords(cls).coords == coords

    def test_witness_invariants_enforced(self):
        cls = ext_realize(Z2, Z2, (1,))
        with pytest.raises(ValueError):
            ExtClass(cls.ambient, cls.class_coords, cls.middle, cls.incl,
                     compose(cls.proj, GroupHom(cls.middle, cls.middle, [[2]])))

    def test_middle_group_order(self, rng):
        for _ in range(10):
            A = sampling.random_finite_group(rng, max_factors=2, max_factor=8)
            B = sampling.random_finite_group(rng, max_factors=2, max_factor=8)
            E_group = ext(A, B)
            coords = rng.choice(list(E_group.elements()))
            cls = ext_realize(A, B, coords)
            assert cls.middle.order() == A.order() * B.order()


class TestLambda:
    def test_z2_z2_sends_nonsplit_to_identity(self):
        lam = lambda_map(Z2, Z2)
        # domain Ext(Z/2,Z/2) = Z/2; image of the generator is the identity
        assert lam.matrix.entries == ((1,),)
        hg = hom_group(n_torsion(Z2, 2), quotient_by_n(Z2, 2))
        gen_image = hg.from_coords(lam.matrix.col(0))
        assert gen_image.matrix.entries == ((1,),)

    def test_free_first_argument_gives_trivial_domain(self):
        lam = lambda_map(Z, Z12)
        assert lam.source == TRIVIAL
        assert lam.target == hom_group(TRIVIAL, quotient_by_n(Z12, 2)).group

    def test_z4_z2_isomorphism_via_z8(self):
        lam = lambda_map(Z4, Z2)
        assert is_isomorphism(lam)
        # evaluate the recipe on the realization E = Z/8 directly
        cls = ext_realize(Z4, Z2, (1,))
        assert cls.middle == Z8
        val = lambda_value(cls)
        assert val.matrix.entries == ((1,),)

    def test_additivity(self, rng):
        for A, B in [(Z4, Z4), (AbelianGroup(0, (2, 4)), Z4), (Z8, Z12)]:
            E_group = ext(A, B)
            lam = lambda_map(A, B)
            hg = hom_group(n_torsion(A, 2), quotient_by_n(B, 2))
            els = list(E_group.elements())
            for _ in range(8):
                c1 = rng.choice(els)
                c2 = rng.choice(els)
                s = (GroupElement(E_group, c1) + GroupElement(E_group, c2)).coords
                v1 = lambda_value(ext_realize(A, B, c1))
                v2 = lambda_value(ext_realize(A, B, c2))
                vs = lambda_value(ext_realize(A, B, s))
                # the recipe is additive on witnesses
                assert vs == add_homs(v1, v2)
                # and agrees with the assembled matrix of the natural map
                assert hg.from_coords(apply_coords(lam, c1)) == v1

    def test_naturality(self, rng):
        # two routes around the naturality square agree on every generator
        A, Ap = Z4, Z8
        B, Bp = Z4, AbelianGroup(0, (2, 4))
        u = GroupHom(Ap, Z4, [[1]])          # A' -> A
        v = sampling.random_hom(rng, B, Bp)  # B -> B'
        E_group = ext(A, B)
        for coords in E_group.elements():
            cls = ext_realize(A, B, coords)
            moved = ext_pushforward(ext_pullback(cls, u), v)
            direct_val = lambda_value(moved)

            val = lambda_value(cls)
            t_inc_p = n_torsion_with_inclusion(Ap, 2)[1]
            t_inc = n_torsion_with_inclusion(A, 2)[1]
            # u restricted to 2-torsion
            u2 = restrict_to_torsion(u, t_inc_p, t_inc)
            vbar = induced_mod2(v)
            routed = compose(vbar, compose(val, u2))
            assert routed == direct_val

    def test_iso_check_contract(self):
        battery = full_battery()
        elem2 = [AbelianGroup.from_orders([2] * r) for r in range(4)]
        for a in elem2:
            for b in elem2:
                assert lambda_iso_check(a, b)
        for a in (Z2, AbelianGroup(0, (2, 2))):
            for b in battery:
                assert lambda_iso_check(a, b)
                assert lambda_iso_check(b, a)

    def test_iso_check_boundary(self):
        # outside the elementary-2 hypotheses the map need not be injective
        assert not lambda_iso_check(Z4, Z4)


def apply_coords(hom, coords):
    raw = hom.matrix.mul_vec(coords)
    return tuple(x % o if o else x for x, o in zip(raw, hom.target.gen_orders))


def add_homs(f, g):
    from moorestems.fga import hom_add
    return hom_add(f, g)


def restrict_to_torsion(u, t_inc_src, t_inc_dst):
    """u: A' -> A restricted to 2-torsion subgroups."""
    from moorestems.fga import CongruenceSolver
    T_src = t_inc_src.source
    T_dst = t_inc_dst.source
    solver = CongruenceSolver(T_dst.gen_orders, t_inc_dst.target.gen_orders,
                              t_inc_dst.matrix)
    cols = []
    for j in range(T_src.ngens):
        coords = [0] * T_src.ngens
        coords[j] = 1
        image_in_A = compose(u, t_inc_src).matrix.mul_vec(coords)
        pulled = solver.solve(image_in_A)
        assert pulled is not None
        cols.append(pulled)
    from moorestems.fga import IntMatrix
    return GroupHom(T_src, T_dst, IntMatrix.from_cols(cols, T_dst.ngens))


def induced_mod2(v):
    """v: B -> B' induced on mod-2 quotients."""
    from moorestems.fga import IntMatrix
    Q_src, proj_src, lift_src = quotient_with_projection(v.source, 2)
    Q_dst, proj_dst, _ = quotient_with_projection(v.target, 2)
    matrix = proj_dst.matrix @ v.matrix @ lift_src
    return GroupHom(Q_src, Q_dst, matrix)
