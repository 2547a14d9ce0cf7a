import itertools

import pytest

from sortstat.dyck import DyckPath, enumerate_dyck, enumerate_weights
from sortstat.matchings import (
    Matching,
    TypeMismatch,
    arc_relations,
    cyc,
    cyc_set,
    enumerate_matchings,
    left_set,
    long_set,
    nonnesting_matching,
    phi1,
    phi1_inv,
    short_set,
    sor,
    sort_matching,
    type_of,
    varphi1,
    varphi1_inv,
)

E = Matching.from_edges


def brute_relations(m):
    cr = ne = al = 0
    for (i, j), (k, l) in itertools.combinations(m.edges, 2):
        if i < k < j < l:
            cr += 1
        elif i < k < l < j:
            ne += 1
        else:
            al += 1
    return cr, ne, al


def test_partner_must_be_fixed_point_free_involution():
    with pytest.raises(ValueError):
        Matching((2, 1, 3, 3))
    with pytest.raises(ValueError):
        Matching((2, 3, 1, 4))
    with pytest.raises(ValueError):
        E([(1, 2), (2, 3)])


@pytest.mark.parametrize(
    "edges, steps", [([(1, 2)], "UD"), ([(1, 4), (2, 3)], "UUDD"), ([(1, 3), (2, 4)], "UUDD")]
)
def test_type_of(edges, steps):
    assert type_of(E(edges)) == DyckPath(steps)


def test_arc_relations_small():
    a = arc_relations(E([(1, 4), (2, 3)]))
    assert (a.cr, a.ne, a.al) == (0, 1, 0)
    a = arc_relations(E([(1, 3), (2, 4)]))
    assert (a.cr, a.ne, a.al) == (1, 0, 0)


def test_arc_relations_agree_with_pairwise_classification():
    for n in range(1, 5):
        for d in enumerate_dyck(n):
            for m in enumerate_matchings(d):
                a = arc_relations(m)
                assert (a.cr, a.ne, a.al) == brute_relations(m)
                assert a.cr + a.ne + a.al == n * (n - 1) // 2


def test_marked_sets():
    m = E([(1, 4), (2, 3)])
    assert long_set(m) == {1}
    assert short_set(m) == {1}
    assert left_set(m) == {1, 2}
    for d in enumerate_dyck(4):
        full = set(range(1, 5))
        nn = nonnesting_matching(d)
        assert long_set(nn) == short_set(nn) == full


def test_varphi1_examples():
    assert varphi1(DyckPath("UUDD"), (1, 1)) == E([(1, 3), (2, 4)])
    assert varphi1(DyckPath("UUDD"), (1, 2)) == E([(1, 4), (2, 3)])
    assert varphi1(DyckPath("UD"), (1,)) == E([(1, 2)])
    assert varphi1_inv(E([(1, 4), (2, 3)])) == (DyckPath("UUDD"), (1, 2))


def test_varphi1_weight_counts_nestings_on_the_right():
    for d in enumerate_dyck(4):
        for w in enumerate_weights(d):
            m = varphi1(d, w)
            for k, (o, c) in enumerate(m.edges, 1):
                outer = sum(1 for i, j in m.edges if i < o and c < j)
                assert w[k - 1] == outer + 1


def test_nonnesting_matching():
    assert nonnesting_matching(DyckPath("UUDD")) == E([(1, 3), (2, 4)])
    assert nonnesting_matching(DyckPath("UDUD")) == E([(1, 2), (3, 4)])
    assert nonnesting_matching(DyckPath("UUUDDD")) == E([(1, 4), (2, 5), (3, 6)])


def test_sort_trace_hand_example():
    m, m0 = E([(1, 4), (2, 3)]), E([(1, 3), (2, 4)])
    t = sort_matching(m, m0)
    assert t.sor_k == [0, 1]
    assert t.final == m0
    assert t.matchings[0] == m
    assert sor(m, m0) == 1


def test_sort_of_base_is_zero():
    m0 = E([(1, 5), (2, 3), (4, 6)])
    assert sort_matching(m0, m0).sor_k == [0, 0, 0]


def test_sort_step_counts_strictly_below_opener():
    # M0(3) = 1 < o_2 = 2 counts, M0(4) = 2 does not
    m, m0 = E([(1, 4), (2, 3)]), E([(1, 3), (2, 4)])
    assert sort_matching(m, m0).sor_k[1] == 1


def test_type_mismatch():
    with pytest.raises(TypeMismatch):
        sor(E([(1, 2), (3, 4)]), E([(1, 3), (2, 4)]))


def test_cycles():
    m0 = E([(1, 3), (2, 4)])
    assert cyc(m0, m0) == 2 and cyc_set(m0, m0) == {1, 2}
    m = E([(1, 4), (2, 3)])
    assert cyc(m, m0) == 1 and cyc_set(m, m0) == {1}


def test_phi1_examples():
    m0 = E([(1, 3), (2, 4)])
    assert phi1(m0, (1, 1)) == m0
    assert phi1(m0, (1, 2)) == E([(1, 4), (2, 3)])
    assert phi1_inv(m0, E([(1, 4), (2, 3)])) == (1, 2)
    with pytest.raises(ValueError):
        phi1(m0, (2, 1))


def test_phi1_properties_for_every_base():
    for n in range(1, 5):
        for d in enumerate_dyck(n):
            ms = set(enumerate_matchings(d))
            for m0 in ms:
                images = set()
                for w in enumerate_weights(d):
                    m = phi1(m0, w)
                    assert sor(m, m0) == sum(x - 1 for x in w)
                    assert cyc_set(m, m0) == {k for k, x in enumerate(w, 1) if x == 1}
                    assert phi1_inv(m0, m) == w
                    images.add(m)
                assert images == ms


def test_matching_counts():
    assert len(list(enumerate_matchings(DyckPath("UUDD")))) == 2
    assert len(list(enumerate_matchings(DyckPath("UUUUDDDD")))) == 24
    assert len(list(enumerate_matchings(DyckPath("UDUD")))) == 1


def test_json_round_trip():
    m = E([(1, 4), (2, 3)])
    assert m.to_json() == {"n": 2, "edges": [[1, 4], [2, 3]]}
    assert Matching.from_json(m.to_json()) == m
