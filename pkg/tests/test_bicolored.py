import pytest

from sortstat.bicolored import (
    BLUE,
    RED,
    BicoloredMatching,
    all_red,
    cyc01_prime_sets,
    cyc01_sets,
    enumerate_bicolored,
    enumerate_bicolored_even,
    longr_prime_set,
    longr_set,
    mix,
    mix_prime,
    phi2,
    phi2_inv,
    refined_counts,
    sor_bicolored,
    sor_prime,
    sort_bicolored,
    varphi2,
    varphi2_inv,
)
from sortstat.dyck import DyckPath, enumerate_dyck, enumerate_weights
from sortstat.matchings import Matching, arc_relations, cyc_set, enumerate_matchings, phi1, sor

B = BicoloredMatching.from_colored_edges


def test_colors_by_either_endpoint():
    m = B([(1, 4, "r"), (2, 3, "b")])
    assert m.col(2) == m.col(3) == BLUE
    assert m.col(1) == m.col(4) == RED
    assert m.colors == (RED, BLUE)
    with pytest.raises(ValueError):
        B([(1, 2, "g")])


def test_refined_counts_examples():
    rc = refined_counts(B([(1, 4, "r"), (2, 3, "b")]))
    assert (rc.ne_b, rc.ne_r, rc.cr_r, rc.cr_b, rc.al_r, rc.al_b, rc.b) == (1, 0, 0, 0, 0, 0, 1)
    rc = refined_counts(B([(1, 3, "b"), (2, 4, "r")]))
    assert (rc.cr_r, rc.cr_b, rc.b) == (1, 0, 1)


def test_refined_counts_sum_to_plain_counts():
    for d in enumerate_dyck(3):
        for m in enumerate_bicolored(d):
            rc, a = refined_counts(m), arc_relations(m.base)
            assert rc.cr_r + rc.cr_b == a.cr
            assert rc.ne_r + rc.ne_b == a.ne
            assert rc.al_r + rc.al_b == a.al


def test_mix():
    m = Matching.from_edges([(1, 4), (2, 3)])
    assert mix(all_red(m)) == arc_relations(m).ne
    assert mix(B([(1, 4, "r"), (2, 3, "b")])) == 2
    assert mix(B([(1, 3, "b"), (2, 4, "b")])) == 4
    assert mix_prime(B([(1, 3, "b"), (2, 4, "b")])) == 2


def test_longr():
    assert longr_set(all_red(Matching.from_edges([(1, 3), (2, 4)]))) == {1, 2}
    m = B([(1, 4, "r"), (2, 3, "r")])
    assert longr_set(m) == {1}
    assert longr_prime_set(m) == frozenset()


def test_varphi2_example_and_red_case():
    d = DyckPath("UUDD")
    assert varphi2(d, (1, 1), (0, 1)) == B([(2, 3, "b"), (1, 4, "r")])
    for w in enumerate_weights(DyckPath("UUUDDD")):
        m = varphi2(DyckPath("UUUDDD"), w, (0, 0, 0))
        assert not m.blue


def test_varphi2_round_trip():
    for n in range(1, 5):
        for d in enumerate_dyck(n):
            for w in enumerate_weights(d):
                for mask in range(1 << n):
                    eps = tuple(mask >> i & 1 for i in range(n))
                    assert varphi2_inv(varphi2(d, w, eps)) == (d, w, eps)


def test_single_blue_edge():
    m, m0 = B([(1, 2, "b")]), all_red(Matching.from_edges([(1, 2)]))
    t = sort_bicolored(m, m0)
    assert t.colors == [BLUE]
    assert t.final == m0
    assert sor_bicolored(m, m0) == 1
    assert cyc01_sets(m, m0) == (frozenset(), frozenset({1}))
    assert phi2(m0, (1,), (1,)) == m


def test_blue_base_rejected():
    m = B([(1, 2, "b")])
    with pytest.raises(ValueError):
        sort_bicolored(m, m)


def test_sort_ends_at_red_base():
    for n in range(1, 4):
        for d in enumerate_dyck(n):
            for m0 in enumerate_matchings(d):
                base = all_red(m0)
                for m in enumerate_bicolored(d):
                    t = sort_bicolored(m, base)
                    assert t.final == base
                    c0, c1 = cyc01_sets(m, base)
                    assert c0 | c1 == cyc_set(m.base, m0)
                    assert not c0 & c1


def test_all_red_matches_plain_sort():
    for d in enumerate_dyck(3):
        for m0 in enumerate_matchings(d):
            for m in enumerate_matchings(d):
                assert sor_bicolored(all_red(m), all_red(m0)) == sor(m, m0)


def test_sor_prime_two_blue_edges():
    m0 = all_red(Matching.from_edges([(1, 3), (2, 4)]))
    m = B([(1, 3, "b"), (2, 4, "b")])
    t = sort_bicolored(m, m0)
    assert t.sor_k == [1, 3]
    assert sor_prime(m, m0) == t.sor_k[1] - 1 == 2


def test_phi2_red_weights_reduce_to_phi1():
    for d in enumerate_dyck(3):
        for m0 in enumerate_matchings(d):
            for w in enumerate_weights(d):
                assert phi2(all_red(m0), w, (0,) * d.n) == all_red(phi1(m0, w))


def test_phi2_properties():
    for n in range(1, 4):
        for d in enumerate_dyck(n):
            h = d.heights
            for m0 in map(all_red, enumerate_matchings(d)):
                seen = set()
                for w in enumerate_weights(d):
                    for mask in range(1 << n):
                        eps = tuple(mask >> i & 1 for i in range(n))
                        m = phi2(m0, w, eps)
                        assert sor_bicolored(m, m0) == sum(
                            wk + e * (2 * k - hk) - 1 for k, (wk, e, hk) in enumerate(zip(w, eps, h), 1)
                        )
                        assert phi2_inv(m0, m) == (w, eps)
                        seen.add(m)
                assert len(seen) == len(list(enumerate_bicolored(d)))


def test_cyc_prime_drops_index_one():
    m0 = all_red(Matching.from_edges([(1, 2), (3, 4)]))
    m = B([(1, 2, "b"), (3, 4, "b")])
    assert cyc01_sets(m, m0) == (frozenset(), frozenset({1, 2}))
    assert cyc01_prime_sets(m, m0) == (frozenset(), frozenset({2}))


def test_enumeration_sizes():
    assert len(list(enumerate_bicolored(DyckPath("UD")))) == 2
    assert len(list(enumerate_bicolored_even(DyckPath("UD")))) == 1
    assert len(list(enumerate_bicolored(DyckPath("UUDD")))) == 8
    assert all(m.b % 2 == 0 for m in enumerate_bicolored_even(DyckPath("UUUDDD")))


def test_json():
    m = B([(1, 4, "r"), (2, 3, "b")])
    assert m.to_json() == {"n": 2, "edges": [[1, 4, "r"], [2, 3, "b"]]}
    assert BicoloredMatching.from_json(m.to_json()) == m
