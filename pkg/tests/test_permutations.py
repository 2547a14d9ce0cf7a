import itertools
import math

import pytest

from sortstat import bicolored as bc
from sortstat import matchings as mt
from sortstat.dyck import dyck_from_restriction, enumerate_restrictions
from sortstat.permutations import (
    MembershipError,
    SignedPermutation,
    Transposition,
    compose_transpositions,
    cyc,
    cyc0_set,
    cyc01_prime_sets,
    cyc1_set,
    cyc_min_set,
    enumerate_Br,
    enumerate_Dr,
    enumerate_Sr,
    f_r,
    f_r_inv,
    g_r,
    g_r_inv,
    identity,
    in_Sr,
    inv,
    inv_B,
    inv_D,
    lrmaxp_set,
    maj,
    neg_count,
    nmin_B,
    parse_perm,
    prlminl_prime_set,
    prlminl_set,
    refl_length_B,
    rlminl_set,
    signed_cycles,
    sor,
    sor_B,
    sor_B_factorization,
    sor_D,
    sor_D_factorization,
    sor_factorization,
    sor_r,
    sor_r_B,
    sor_r_D,
    _sorted_steps_B,
)

from conftest import brute_inv

P = parse_perm


def test_parse_forms():
    assert P("6571342").window == (6, 5, 7, 1, 3, 4, 2)
    assert P("-5,1,3,-4,-2").window == (-5, 1, 3, -4, -2)
    assert P("[-1]").window == (-1,)
    assert P([2, 1]) == SignedPermutation((2, 1))
    with pytest.raises(ValueError):
        P("112")


def test_composition_convention():
    a, b = P("231"), P("213")
    assert (a * b).window == tuple(a(b(i)) for i in (1, 2, 3))
    s = P("-2,3,-1")
    assert (s * s.inverse()) == identity(3)
    assert s(-1) == 2


def test_identity_statistics():
    e = identity(5)
    assert (inv(e), maj(e), cyc(e)) == (0, 0, 5)
    assert rlminl_set(e) == lrmaxp_set(e) == set(range(1, 6))
    assert (inv_B(e), nmin_B(e), sor_B(e), refl_length_B(e)) == (0, 0, 0, 0)
    assert prlminl_set(e) == cyc0_set(e) == set(range(1, 6))
    assert cyc1_set(e) == frozenset()


def test_inversions_match_pair_count():
    assert inv(P("231546")) == brute_inv((2, 3, 1, 5, 4, 6)) == 3
    assert inv(P("6571342")) == brute_inv((6, 5, 7, 1, 3, 4, 2)) == 15
    for w in itertools.permutations(range(1, 6)):
        assert inv(P(w)) == brute_inv(w)


def test_maj():
    assert maj(P("6571342")) == 1 + 3 + 6
    assert maj(P("21")) == 1


def test_type_a_statistics_reject_signed_input():
    with pytest.raises(MembershipError):
        inv(P("-1,2"))


def test_selection_sort_worked_example():
    s = P("6571342")
    f = sor_factorization(s)
    assert [str(t) for t in f] == ["(2 3)", "(1 4)", "(2 5)", "(1 6)", "(3 7)"]
    assert sor(s) == 16
    assert compose_transpositions(7, f) == s


def test_single_swap_and_identity():
    assert [str(t) for t in sor_factorization(P("21"))] == ["(1 2)"]
    assert sor(P("21")) == 1
    assert sor_factorization(identity(4)) == []


def test_sor_is_total_travel_distance():
    for w in itertools.permutations(range(1, 6)):
        f = sor_factorization(P(w))
        js = [t.j for t in f]
        assert js == sorted(set(js))
        assert all(t.i < t.j for t in f)
        assert compose_transpositions(5, f) == P(w)


def test_type_b_worked_example():
    s = P("-5,1,3,-4,-2")
    f = sor_B_factorization(s)
    assert [t.to_json() for t in f] == [[1, 2], [-4, 4], [-1, 5]]
    assert str(f[1]) == "(4̄ 4)"
    assert sor_B(s) == 13
    assert compose_transpositions(5, f) == s


def test_single_negative_letter():
    s = P("-1")
    assert (neg_count(s), inv_B(s), nmin_B(s)) == (1, 1, 1)
    assert prlminl_set(s) == frozenset()
    assert cyc1_set(s) == {1} and refl_length_B(s) == 1
    assert sor_B_factorization(s) == [Transposition(-1, 1)]
    assert sor_B(s) == 1


def test_signed_cycles_nine_letters():
    # the window consistent with the cycle decomposition (8 is a fixed point)
    s = P("-3,-9,-5,-7,1,-6,-4,8,2")
    assert cyc0_set(s) == {1, 4, 8}
    assert cyc1_set(s) == {2, 6}
    # with 8 negated it becomes the unbalanced cycle (8 -8)
    t = P("-3,-9,-5,-7,1,-6,-4,-8,2")
    assert cyc0_set(t) == {1, 4}
    assert cyc1_set(t) == {2, 6, 8}


def test_signed_cycle_shapes():
    cycles = {c.entries: c.balanced for c in signed_cycles(P("-3,-9,-5,-7,1,-6,-4,8,2"))}
    assert cycles[(1, -3, 5)] is True
    assert cycles[(2, -9, -2, 9)] is False
    assert cycles[(6, -6)] is False


def test_reflection_length_is_n_minus_balanced_cycles():
    for s in enumerate_Br((3, 3, 3)):
        assert refl_length_B(s) == 3 - sum(c.balanced for c in signed_cycles(s))


def test_membership_and_sizes():
    r = (4, 4, 4, 6, 6, 6)
    assert in_Sr(P("143265"), r) and in_Sr(P("231546"), r)
    assert not in_Sr(P("251364"), r)
    assert len(list(enumerate_Sr((4, 4, 4, 4)))) == 24
    assert list(enumerate_Sr((1, 2, 3))) == [identity(3)]
    for n in range(1, 5):
        for r in enumerate_restrictions(n):
            s = len(list(enumerate_Sr(r)))
            assert s == math.prod(rk - k + 1 for k, rk in enumerate(r, 1))
            assert len(list(enumerate_Br(r))) == 2**n * s
            assert len(list(enumerate_Dr(r))) == 2 ** (n - 1) * s


def test_f_r_example():
    r = (2, 2, 3)
    d = dyck_from_restriction(r)
    m = f_r(P("213"), r)
    o, c = d.openers, d.closers
    assert set(m.edges) == {(o[1], c[0]), (o[0], c[1]), (o[2], c[2])}
    assert f_r_inv(m, r) == P("213")
    assert f_r(identity(3), r) == mt.nonnesting_matching(d)


def test_f_r_rejects_non_members():
    with pytest.raises(MembershipError):
        f_r(P("132"), (2, 2, 3))
    with pytest.raises(MembershipError):
        sor_r(P("213"), P("132"), (2, 2, 3))


def test_sor_r_matches_matching_side():
    r = (2, 3, 3)
    for s in enumerate_Sr(r):
        for s0 in enumerate_Sr(r):
            assert sor_r(s, s0, r) == mt.sor(f_r(s, r), f_r(s0, r))
        assert sor_r(s, s, r) == 0
        assert sor_r(s, identity(3), r) == sor(s)


def test_transport_of_statistics_through_f_r():
    for r in enumerate_restrictions(4):
        for s in enumerate_Sr(r):
            m = f_r(s, r)
            assert mt.arc_relations(m).ne == inv(s)
            assert mt.long_set(m) == rlminl_set(s)
            assert mt.short_set(m) == lrmaxp_set(s)


def test_cycles_of_relative_permutation():
    r = (3, 3, 3)
    for s in enumerate_Sr(r):
        for s0 in enumerate_Sr(r):
            assert cyc_min_set(s * s0.inverse()) == mt.cyc_set(f_r(s, r), f_r(s0, r))


def test_g_r_examples():
    assert g_r(P("-1"), (1,)) == bc.BicoloredMatching.from_colored_edges([(1, 2, "b")])
    for s in enumerate_Sr((2, 3, 3)):
        assert g_r(s, (2, 3, 3)) == bc.all_red(f_r(s, (2, 3, 3)))
    for s in enumerate_Br((2, 2, 3)):
        m = g_r(s, (2, 2, 3))
        assert g_r_inv(m, (2, 2, 3)) == s
        assert bc.mix(m) == inv_B(s)
        assert bc.longr_set(m) == prlminl_set(s, "letters")


def test_prlminl_kinds():
    s = P("3,-1,2")
    assert prlminl_set(s, "letters") == {2}
    assert prlminl_set(s, "places") == {3}
    assert nmin_B(s) == 3 - len(prlminl_set(s))
    with pytest.raises(ValueError):
        prlminl_set(s, "cells")


def _b_case(l, m):
    return ("pos" if l > 0 else "neg", "lt" if abs(l) < m else "eq" if abs(l) == m else "gt")


def test_b_k_steps_agree_with_bicolored_sort_in_all_six_cases():
    seen = set()
    for r in enumerate_restrictions(3):
        for s0 in enumerate_Sr(r):
            m0 = g_r(s0, r)
            for s in enumerate_Br(r):
                trace = bc.sort_bicolored(g_r(s, r), m0)
                for k, l, b in _sorted_steps_B(s, s0, r):
                    assert b == trace.sor_k[k - 1]
                    seen.add(_b_case(l, s0.window.index(k) + 1))
    assert len(seen) == 6


def test_sor_r_b_with_identity_base():
    for s in enumerate_Br((3, 3, 3)):
        assert sor_r_B(s, identity(3), (3, 3, 3)) == sor_B(s)


def test_sor_r_b_needs_positive_base():
    with pytest.raises(MembershipError):
        sor_r_B(P("1,2"), P("-1,2"), (2, 2))


def test_type_d_small():
    s = P("-2,-1")
    assert inv_D(s) == 1
    assert inv_D(s) == bc.mix_prime(g_r(s, (2, 2)))
    assert [str(t) for t in sor_D_factorization(s)] == ["(1̄ 2)"]
    assert sor_D(s) == 1
    with pytest.raises(MembershipError):
        inv_D(P("-1,2"))


def test_type_d_negating_pair_step():
    # -k at position k is fixed by negating positions 1 and k together
    s = P("-1,-2")
    f = sor_D_factorization(s)
    assert f == [Transposition(-2, 2)]
    assert sor_D(s) == 2
    assert compose_transpositions(2, f, type_d=True) == s


def test_type_d_factorizations_recompose():
    for s in enumerate_Dr((4, 4, 4, 4)):
        f = sor_D_factorization(s)
        assert all(t.j > 1 for t in f)
        assert compose_transpositions(4, f, type_d=True) == s
        assert inv_D(s) == inv_B(s) - neg_count(s)


def test_type_d_transport():
    r = (2, 3, 3)
    for s0 in enumerate_Sr(r):
        m0 = g_r(s0, r)
        for s in enumerate_Dr(r):
            m = g_r(s, r)
            assert sor_r_D(s, s0, r) == bc.sor_prime(m, m0)
            assert cyc01_prime_sets(s * s0.inverse()) == bc.cyc01_prime_sets(m, m0)
            assert prlminl_prime_set(s) == bc.longr_prime_set(m)
