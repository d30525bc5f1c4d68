import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from regstar import core
from regstar.diagram import (DegreeError, Partition, bell, double_factorial_odd, element_partitions,
                             enumerate_partitions, multiply, partition_monoid, star, stats)

from conftest import monoid
from oracles import count_set_partitions, diagram_product, set_partitions

ALPHA = "{1,2,3,1'}{4,4',5',6'}{5}{6}{2',3'}"
BETA = "{1,4',6'}{2,3}{4,5,6,1',2',3'}{5'}"


def alpha():
    return Partition.parse(6, ALPHA)


def beta():
    return Partition.parse(6, BETA)


@st.composite
def partitions(draw, n):
    labels = draw(st.lists(st.integers(0, 2 * n - 1), min_size=2 * n, max_size=2 * n))
    seen = {}
    return Partition(n, tuple(seen.setdefault(x, len(seen)) for x in labels))


def test_worked_product_block_for_block():
    ab = alpha() * beta()
    expected = Partition.parse(6, "{1,2,3,4',6'}{4,1',2',3'}{5}{6}{5'}")
    assert ab == expected
    assert ab.to_json() == {"n": 6, "blocks": [[0, 1, 2, 9, 11], [3, 6, 7, 8], [4], [5], [10]]}


def test_json_encoding_uses_shifted_lower_points():
    assert alpha().to_json() == {"n": 6, "blocks": [[0, 1, 2, 6], [3, 9, 10, 11], [4], [5], [7, 8]]}


def test_worked_product_matches_graph_search():
    got = {frozenset(b) for b in (alpha() * beta()).blocks}
    assert got == diagram_product(6, alpha().blocks, beta().blocks)


def test_identity_and_regularity_on_worked_example():
    a = alpha()
    assert Partition.identity(6) * a == a == a * Partition.identity(6)
    assert a * star(a) * a == a


def test_stats_of_worked_example():
    s = stats(alpha())
    assert s.dom == frozenset({0, 1, 2, 3})
    assert s.codom == frozenset({0, 3, 4, 5})
    assert s.rank == 2
    assert s.ker == ((0, 1, 2), (3,), (4,), (5,))
    assert s.coker == ((0,), (1, 2), (3, 4, 5))


def test_stats_identity():
    s = stats(Partition.identity(4))
    assert s.rank == 4 and len(s.ker) == 4 and len(s.coker) == 4


def test_parse_pretty_json_roundtrip():
    a = alpha()
    assert Partition.parse(6, a.pretty()) == a
    assert Partition.from_json(a.to_json()) == a


def test_parse_rejects_repeated_point():
    with pytest.raises(ValueError):
        Partition.parse(2, "{1,2}{2,1'}")


def test_degree_mismatch():
    with pytest.raises(DegreeError):
        multiply(Partition.identity(2), Partition.identity(3))


@pytest.mark.parametrize("m", range(0, 9))
def test_bell_against_enumeration(m):
    assert bell(m) == count_set_partitions(m)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_enumeration_counts(n):
    full = enumerate_partitions(n)
    assert len(full) == len(set(full)) == count_set_partitions(2 * n)
    assert full == sorted(full, key=lambda p: p.rgs)
    brauer = enumerate_partitions(n, "brauer")
    assert len(brauer) == len(set(brauer)) == double_factorial_odd(n)
    assert all(len(b) == 2 for p in brauer for b in p.blocks)


def test_enumeration_matches_oracle_blocks():
    mine = {frozenset(frozenset(b) for b in p.blocks) for p in enumerate_partitions(2)}
    ref = {frozenset(frozenset(b) for b in part) for part in set_partitions(list(range(4)))}
    assert mine == ref


def test_monoid_sizes():
    assert partition_monoid(1).size == 2
    assert monoid(2).size == 15
    assert monoid(3).size == 203
    assert partition_monoid(2, "brauer").size == 3
    assert partition_monoid(3, "brauer").size == 15


def test_degree_bound():
    with pytest.raises(DegreeError):
        partition_monoid(5)
    with pytest.raises(DegreeError):
        partition_monoid(7, "brauer")


def test_table_agrees_with_scalar_products(P3):
    elems = element_partitions(P3, 3)
    rng = random.Random(3)
    for _ in range(3000):
        a, b = rng.randrange(P3.size), rng.randrange(P3.size)
        assert elems[P3.m(a, b)] == elems[a] * elems[b]
        assert elems[P3.s(a)] == star(elems[a])


def test_table_agrees_with_graph_oracle(P2):
    elems = element_partitions(P2, 2)
    for a in range(P2.size):
        for b in range(P2.size):
            got = {frozenset(x) for x in elems[P2.m(a, b)].blocks}
            assert got == diagram_product(2, elems[a].blocks, elems[b].blocks)


def test_exhaustive_associativity_p2(P2):
    n = P2.size
    for a in range(n):
        for b in range(n):
            ab = P2.m(a, b)
            for c in range(n):
                assert P2.m(ab, c) == P2.m(a, P2.m(b, c))


@settings(max_examples=300, deadline=None)
@given(st.data())
def test_random_associativity_degree_3_and_4(data):
    n = data.draw(st.sampled_from([3, 4]))
    a, b, c = (data.draw(partitions(n)) for _ in range(3))
    assert (a * b) * c == a * (b * c)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_star_laws_random(data):
    n = data.draw(st.integers(1, 5))
    a, b = data.draw(partitions(n)), data.draw(partitions(n))
    assert star(star(a)) == a
    assert a * star(a) * a == a
    assert star(a * b) == star(b) * star(a)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_block_order_irrelevant(data):
    n = data.draw(st.integers(1, 5))
    a = data.draw(partitions(n))
    blocks = [list(b) for b in a.blocks]
    perm = data.draw(st.permutations(range(len(blocks))))
    shuffled = [list(reversed(blocks[i])) for i in perm]
    assert Partition.from_blocks(n, shuffled) == a


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_rank_does_not_grow(data):
    n = data.draw(st.integers(1, 5))
    a, b = data.draw(partitions(n)), data.draw(partitions(n))
    assert stats(a * b).rank <= min(stats(a).rank, stats(b).rank)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_green_relations_match_dom_ker_description(n):
    S = monoid(n)
    g = core.green_data(S)
    st_ = [stats(p) for p in element_partitions(S, n)]
    for a in range(S.size):
        for b in range(S.size):
            sa, sb = st_[a], st_[b]
            assert (g.r_class[a] == g.r_class[b]) == (sa.dom == sb.dom and sa.ker == sb.ker)
            assert (g.l_class[a] == g.l_class[b]) == (sa.codom == sb.codom and sa.coker == sb.coker)
            assert (g.d_class[a] == g.d_class[b]) == (sa.rank == sb.rank)


def test_p2_projection_and_idempotent_counts(P2):
    sp = core.special_elements(P2)
    assert len(sp.projections) == 6
    assert len(sp.idempotents) == 12
    assert len(sp.f_pairs) == 12


def test_table_is_compact(P3):
    assert P3.mul.dtype == np.uint8
    assert not P3.mul.flags.writeable
