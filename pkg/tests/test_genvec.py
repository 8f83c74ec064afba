"""Generating vectors: verification oracle, search vs naive enumeration, witnesses."""

import pytest

from skelsig.genvec import (
    GeneratingVector,
    all_groups_unbranched_condition,
    check_vector,
    commutator_products,
    feasible_period_multisets,
    naive_search,
    quaternion_vector,
    realizable,
    search,
    unbranched_cyclic,
    verify,
)
from skelsig.groups import (
    build_cyclic,
    build_dihedral,
    build_elementary_abelian,
    build_generalized_quaternion,
)
from skelsig.rh import OrbifoldSignature, SkeletalSignature, rh_genus

Sig = OrbifoldSignature
S = SkeletalSignature


class TestVerify:
    def test_c2_two_branch_points(self):
        c2 = build_cyclic(2)
        assert verify(c2, GeneratingVector((), (1, 1)), Sig(0, (2, 2)))

    def test_q8_paper_vector(self):
        # (x, y, e, e, x^2): [x,y] = x^-2 cancels c_1 = x^2 exactly
        q8 = build_generalized_quaternion(2)
        vec = GeneratingVector(((1, 4), (0, 0)), (2,))
        assert verify(q8, vec, Sig(2, (2,)))

    def test_c5_exponent_family(self):
        c5 = build_cyclic(5)
        # c exponents (1,1,1,1,2,4) sum to 10 = 0 mod 5; any generating a-pair works
        vec = GeneratingVector(((1, 0),) + ((0, 0),) * 7, (1, 1, 1, 1, 2, 4))
        assert verify(c5, vec, Sig(8, (5,) * 6))

    def test_diagnostics(self):
        c4 = build_cyclic(4)
        # wrong order on c_1 and broken product
        chk = check_vector(c4, GeneratingVector(((1, 0),), (1,)), Sig(1, (2,)))
        assert not chk.orders_ok[0]
        assert not chk.product_ok
        assert chk.generates

    def test_length_mismatch(self):
        c2 = build_cyclic(2)
        with pytest.raises(ValueError):
            verify(c2, GeneratingVector((), (1,)), Sig(0, (2, 2)))


class TestSearch:
    def test_abelian_single_branch_point(self):
        assert search(build_cyclic(4), Sig(1, (2,))).is_not_exists

    def test_q8_exists(self):
        v = search(build_generalized_quaternion(2), Sig(2, (2,)))
        assert v.is_exists
        assert verify(build_generalized_quaternion(2), v.witness, Sig(2, (2,)))

    def test_c5_figure_point(self):
        v = search(build_cyclic(5), Sig(8, (5,) * 6))
        assert v.is_exists

    def test_every_witness_verifies(self):
        groups = [build_cyclic(6), build_dihedral(3), build_generalized_quaternion(2)]
        sigs = [Sig(0, (2, 2, 2, 2)), Sig(1, (2,)), Sig(1, (3, 3)), Sig(2, ())]
        for g in groups:
            for sig in sigs:
                v = search(g, sig)
                if v.is_exists:
                    assert verify(g, v.witness, sig)

    def test_budget_yields_unknown(self):
        g = build_dihedral(6)
        v = search(g, Sig(2, (2,)), budget=3)
        assert v.is_unknown

    def test_no_elements_of_required_order(self):
        assert search(build_cyclic(4), Sig(0, (3, 3, 3))).is_not_exists

    def test_sphere_with_one_branch_point_impossible(self):
        assert search(build_dihedral(3), Sig(0, (2,))).is_not_exists

    def test_unbranched_trivial_quotient(self):
        # (0;) is only realized by the trivial group
        assert search(build_cyclic(1), Sig(0, ())).is_exists
        assert search(build_cyclic(3), Sig(0, ())).is_not_exists

    def test_matches_naive_oracle_spot_checks(self):
        cases = [
            (build_cyclic(4), Sig(1, (2,))),
            (build_cyclic(4), Sig(1, (2, 2))),
            (build_cyclic(5), Sig(0, (5, 5, 5))),
            (build_dihedral(3), Sig(0, (2, 2, 3, 3))),
            (build_dihedral(3), Sig(1, (3,))),
            (build_generalized_quaternion(2), Sig(1, (4,))),
            (build_elementary_abelian(2, 2), Sig(1, (2, 2))),
        ]
        for g, sig in cases:
            assert search(g, sig).status == naive_search(g, sig).status, (g.name, str(sig))

    def test_determinism(self):
        g = build_dihedral(4)
        first = search(g, Sig(1, (2, 2)))
        assert first == search(g, Sig(1, (2, 2)))


class TestQuaternionVector:
    @pytest.mark.parametrize("n", [2, 3, 5])
    @pytest.mark.parametrize("h", [1, 2, 3])
    def test_verifies_and_genus_formula(self, n, h):
        group, sig, vec = quaternion_vector(n, h)
        assert group.order == 4 * n
        assert verify(group, vec, sig)
        assert rh_genus(group.order, sig) == 2 * n * (2 * (h - 1) + 1) - 1

    def test_examples(self):
        _, sig, _ = quaternion_vector(2, 2)
        assert rh_genus(8, sig) == 11
        _, sig, _ = quaternion_vector(3, 1)
        assert rh_genus(12, sig) == 5
        _, sig, _ = quaternion_vector(5, 4)
        assert rh_genus(20, sig) == 69

    def test_branch_entry_order(self):
        group, sig, vec = quaternion_vector(3, 1)
        assert group.element_order(vec.c_list[0]) == 3

    def test_validation(self):
        with pytest.raises(ValueError):
            quaternion_vector(1, 2)
        with pytest.raises(ValueError):
            quaternion_vector(2, 0)


class TestRealizable:
    def test_c5_figure_point(self):
        rep = realizable(build_cyclic(5), 48, S(8, 6))
        assert rep.verdict.is_exists
        assert rep.witness.signature.periods == (5,) * 6

    def test_c5_exception_excluded(self):
        rep = realizable(build_cyclic(5), 48, S(10, 1))
        assert rep.verdict.is_not_exists
        assert any(r.rule == "abelian-r1" for r in rep.exclusion_reasons)

    def test_abelian_single_branch_always_excluded(self):
        for g in (build_cyclic(6), build_elementary_abelian(3, 2)):
            for h in (1, 2, 3):
                sigma = rh_genus(g.order, Sig(h, (3,)))
                if sigma.denominator == 1 and sigma >= 2:
                    rep = realizable(g, int(sigma), S(h, 1))
                    assert rep.verdict.is_not_exists

    def test_arithmetic_reason(self):
        rep = realizable(build_cyclic(2), 48, S(10, 1))
        assert rep.verdict.is_not_exists
        assert rep.exclusion_reasons[0].rule == "arithmetic"

    def test_feasible_multisets_complete(self):
        # independent cross-check against direct filtering
        import itertools

        from skelsig.rh import rh_holds

        allowed = [2, 3, 6]
        got = set(feasible_period_multisets(7, 1, 3, 6, allowed))
        expected = {
            ms
            for ms in itertools.combinations_with_replacement(allowed, 3)
            if rh_holds(7, 6, Sig(1, ms))
        }
        assert got == expected == {(2, 3, 6), (3, 3, 3)}


class TestUnbranched:
    def test_examples(self):
        group, sig, vec = unbranched_cyclic(48, 47)
        assert sig.h == 2 and sig.r == 0
        assert verify(group, vec, sig)
        group, sig, vec = unbranched_cyclic(49, 6)
        assert sig.h == 9
        assert unbranched_cyclic(48, 5) is None

    def test_condition_examples(self):
        assert all_groups_unbranched_condition(49, 8)
        assert not all_groups_unbranched_condition(17, 8)

    def test_condition_prime_divisor_always_true(self):
        for p in (2, 3, 5, 7):
            for k in range(1, 6):
                sigma = k * p + 1
                if sigma >= 2:
                    assert all_groups_unbranched_condition(sigma, p)


class TestCommutatorProducts:
    def test_abelian_collapses_to_identity(self):
        assert commutator_products(build_cyclic(6), 3) == frozenset({0})

    def test_q8_derived_subgroup(self):
        q8 = build_generalized_quaternion(2)
        # [Q8, Q8] = {e, x^2}; already closed at one commutator
        assert commutator_products(q8, 1) == frozenset({0, 2})
        assert commutator_products(q8, 4) == frozenset({0, 2})

    def test_filter_is_sound_for_search(self):
        # if no order-n element is a product of h commutators, search agrees
        g = build_dihedral(6)
        pool = commutator_products(g, 2)
        has_order_6_candidate = any(
            g.element_orders[c] == 6 and g.inverse[c] in pool for c in g.elements()
        )
        assert not has_order_6_candidate
        assert search(g, Sig(2, (6,))).is_not_exists
