"""Moduli formulas: strata, exponents, motives, E-polynomials, Betti numbers."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from motiveforge.base_rings import UV, UVLaurent, exact_divide
from motiveforge.curve_ring import jacobian_class, make_hodge_env, make_weil_env
from motiveforge.moduli_formulas import (
    EmptyStratum,
    InvalidSpec,
    ModuliSpec,
    NegativeBetti,
    VHSType,
    bb_exponent,
    bundle_moduli_class,
    dimension,
    epoly,
    morse_index,
    motive,
    poincare,
    strata_for,
    triple_stratum_degrees,
    vhs_class,
)

U2V = UVLaurent.monomial(2, 1)
UV2 = UVLaurent.monomial(1, 2)


class TestModuliSpec:
    def test_p_conversion(self):
        spec = ModuliSpec.from_p(2, 2, 1, 1)
        assert spec.dL == -3 and spec.p == 1

    def test_validation(self):
        with pytest.raises(InvalidSpec):
            ModuliSpec(g=1, r=2, d=1, dL=-3).validate()
        with pytest.raises(InvalidSpec):
            ModuliSpec(g=2, r=2, d=2, dL=-3).validate()
        with pytest.raises(InvalidSpec):
            ModuliSpec(g=2, r=2, d=1, dL=-2).validate()
        with pytest.raises(InvalidSpec):
            ModuliSpec(g=2, r=4, d=1, dL=-3).validate()

    def test_dimension_examples(self):
        assert dimension(ModuliSpec(g=2, r=2, d=1, dL=-3)) == 13
        for dL in (-3, -5):
            assert dimension(ModuliSpec(g=2, r=1, d=1, dL=dL)) == 1 - dL
        for g in (2, 3, 4):
            spec = ModuliSpec.from_p(g, 3, 1, 1)
            assert dimension(spec) == 18 * g - 8


def brute_force_triple_degrees(d, dL, window=40):
    out = []
    for a in range(-window, window + 1):
        for b in range(-window, window + 1):
            if a - b <= -dL and a + 2 * b - d <= -dL \
                    and 3 * a > d and 3 * (a + b) > 2 * d:
                out.append((a, b))
    return sorted(out)


class TestTripleStratumDegrees:
    def test_frozen_example(self):
        assert sorted(triple_stratum_degrees(1, -3)) == [
            (1, 0), (1, 1), (2, -1), (2, 0), (2, 1), (3, 0)]

    @given(st.integers(min_value=-4, max_value=4), st.integers(min_value=-8, max_value=-1))
    @settings(max_examples=60, deadline=None)
    def test_matches_brute_force(self, d, dL):
        assert sorted(triple_stratum_degrees(d, dL)) == brute_force_triple_degrees(d, dL)

    @given(st.integers(min_value=-4, max_value=4), st.integers(min_value=-8, max_value=-1))
    @settings(max_examples=40, deadline=None)
    def test_duality_bijection(self, d, dL):
        # (a, b) -> (-d + a + b, -b) maps the set for d onto the set for -d
        image = sorted((-d + a + b, -b) for a, b in triple_stratum_degrees(d, dL))
        assert image == sorted(triple_stratum_degrees(-d, dL))


class TestMorseIndexAndExponents:
    def test_singleton_is_zero(self):
        for r in (1, 2, 3):
            assert morse_index(VHSType((r,), (1,)), twist_deg=5, g=2) == 0

    @given(st.integers(min_value=-5, max_value=5), st.integers(min_value=-3, max_value=5),
           st.integers(min_value=1, max_value=6), st.integers(min_value=2, max_value=4))
    @settings(max_examples=40, deadline=None)
    def test_type_11_hand_formula(self, d1, d, p, g):
        # M/2 = 2 d1 - d + g - 1 at type (1,1), multidegree (d1, d - d1)
        twist = 2 * g - 2 + p
        m = morse_index(VHSType((1, 1), (d1, d - d1)), twist_deg=twist, g=g)
        assert m % 2 == 0
        assert m // 2 == 2 * d1 - d + g - 1

    def test_morse_even(self):
        for t in (VHSType((1, 2), (1, 0)), VHSType((2, 1), (3, -2)),
                  VHSType((1, 1, 1), (2, 0, -1))):
            assert morse_index(t, twist_deg=7, g=3) % 2 == 0

    def test_all_six_literal_exponents(self):
        for g in (2, 3):
            for p in (1, 2):
                dL = -(2 * g - 2 + p)
                for d in (1, 2):
                    spec2 = ModuliSpec(g=g, r=2, d=2 * d - 1, dL=dL)
                    assert bb_exponent(VHSType((2,), (spec2.d,)), spec2) == -4 * dL + 4 - 4 * g
                    for t in strata_for(spec2):
                        if t.ranks == (1, 1):
                            assert bb_exponent(t, spec2) == -3 * dL + 2 - 2 * g
                    spec3 = ModuliSpec(g=g, r=3, d=d, dL=dL)
                    assert bb_exponent(VHSType((3,), (d,)), spec3) == -9 * dL + 9 - 9 * g
                    for t in strata_for(spec3):
                        if t.ranks in ((1, 2), (2, 1)):
                            assert bb_exponent(t, spec3) == -7 * dL + 5 - 5 * g
                        elif t.ranks == (1, 1, 1):
                            assert bb_exponent(t, spec3) == -6 * dL + 3 - 3 * g

    def test_empty_stratum_raises(self):
        spec = ModuliSpec(g=2, r=2, d=1, dL=-3)
        with pytest.raises(EmptyStratum):
            bb_exponent(VHSType((1, 1), (0, 1)), spec)


class TestStratumClasses:
    def test_rank1_is_jacobian(self):
        env = make_weil_env(2, 2)
        assert bundle_moduli_class(env, 1, 0) == jacobian_class(env)

    def test_rank2_bundle_closed_form(self):
        g = 2
        env = make_hodge_env(g)
        jac = jacobian_class(env)
        num = jac * ((1 - U2V) * (1 - UV2)) ** g - UV ** g * jac * jac
        expected = exact_divide(exact_divide(num, UV - 1), UV ** 2 - 1)
        assert bundle_moduli_class(env, 2, 1) == expected

    def test_rank3_bundle_closed_form(self):
        g = 2
        env = make_hodge_env(g)
        jac = jacobian_class(env)
        pl = ((1 - U2V) * (1 - UV2)) ** g
        pl2 = ((1 - UVLaurent.monomial(3, 2)) * (1 - UVLaurent.monomial(2, 3))) ** g
        num = jac * (UV ** (3 * g - 1) * (1 + UV + UV ** 2) * jac ** 2
                     - UV ** (2 * g - 1) * (1 + UV) ** 2 * jac * pl
                     + pl * pl2)
        expected = num
        for f in (UV - 1, UV ** 2 - 1, UV ** 2 - 1, UV ** 3 - 1):
            expected = exact_divide(expected, f)
        assert bundle_moduli_class(env, 3, 1) == expected

    def test_vhs_11_lambda_zero(self):
        env = make_weil_env(2, 8)
        dL = -3
        d, d1 = 1, 2
        assert d - 2 * d1 - dL == 0
        t = VHSType((1, 1), (d1, d - d1))
        assert vhs_class(env, t, dL) == jacobian_class(env)

    def test_vhs_21_equals_dual_12(self):
        env = make_weil_env(2, 4)
        dL = -4
        d, d1 = 1, 1
        t21 = VHSType((2, 1), (d1, d - d1))
        t12 = VHSType((1, 2), (d1 - d, -d1))
        assert vhs_class(env, t21, dL) == vhs_class(env, t12, dL)

    def test_vhs_111_zero_indices_give_jacobian(self):
        env = make_weil_env(2, 6)
        dL = -3
        d1 = 2
        d2 = d1 + dL
        d = 3 * d1 + 3 * dL
        t = VHSType((1, 1, 1), (d1, d2, d - d1 - d2))
        assert -d1 + d2 - dL == 0 and d - d1 - 2 * d2 - dL == 0
        assert vhs_class(env, t, dL) == jacobian_class(env)

    def test_empty_vhs_raises(self):
        env = make_weil_env(2, 6)
        with pytest.raises(EmptyStratum):
            vhs_class(env, VHSType((1, 1), (0, 1)), -3)


class TestMotiveEpolyConsistency:
    @pytest.mark.parametrize("g,r,p,d", [
        (2, 1, 1, 1), (2, 2, 1, 1), (2, 2, 2, 1),
        (2, 3, 1, 1), (2, 3, 1, 2), (3, 2, 1, 1), (3, 3, 1, 1),
    ])
    def test_motive_hodge_equals_epoly(self, g, r, p, d):
        spec = ModuliSpec.from_p(g, r, d, p)
        env = make_hodge_env(g)
        assert motive(env, spec) == epoly(spec)

    def test_rank2_exponent_multiset_d_independent(self):
        # lambda indices of the (1,1) strata: {-dL-1, -dL-3, ...} down to 0/1
        for d in (1, 3):
            spec = ModuliSpec(g=2, r=2, d=d, dL=-5)
            idx = sorted(d - 2 * t.degs[0] - spec.dL
                         for t in strata_for(spec) if t.ranks == (1, 1))
            assert idx == [0, 2, 4]

    def test_epoly_symmetry_and_purity(self):
        for g, r, p in [(2, 2, 1), (2, 3, 1)]:
            spec = ModuliSpec.from_p(g, r, 1, p)
            e = epoly(spec)
            assert e == e.swap_uv()
            dim = dimension(spec)
            assert e.total_degree == 2 * dim
            assert e.coeff(dim, dim) == 1

    def test_weil_duality_d_negation(self):
        for seed in range(4):
            env = make_weil_env(2, 100 + seed)
            a = motive(env, ModuliSpec.from_p(2, 3, 1, 1))
            b = motive(env, ModuliSpec.from_p(2, 3, -1, 1))
            assert a == b

    def test_motive_rejects_genus_mismatch(self):
        env = make_weil_env(3, 1)
        with pytest.raises(InvalidSpec):
            motive(env, ModuliSpec.from_p(2, 2, 1, 1))


class TestPoincare:
    def test_jacobian_betti(self):
        env = make_hodge_env(2)
        assert poincare(jacobian_class(env)) == [1, 4, 6, 4, 1]

    def test_moduli_betti_head(self):
        e = epoly(ModuliSpec.from_p(2, 2, 1, 1))
        b = poincare(e)
        assert b[0] == 1
        assert b[1] == 4

    def test_negative_raises(self):
        with pytest.raises(NegativeBetti):
            poincare(UVLaurent({(1, 0): 1, (0, 0): -3}))
