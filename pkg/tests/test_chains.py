import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from regstar import core
from regstar.chains import (PathError, _reduce_word, compose_chains, invert, is_reduced, random_path, reduce,
                            restrict_chain, restrict_path, validate_path)
from regstar.constructions import SimpleGraph, adjacency_semigroup
from regstar.diagram import triangle_words

from conftest import monoid
from oracles import closure_words


@pytest.fixture(scope="module")
def PP3():
    return core.projection_algebra_of(monoid(3))


def reduce_random_order(t, rng):
    """Apply a randomly chosen applicable deletion until none is left."""
    t = list(t)
    while True:
        sites = [("1", i) for i in range(len(t) - 1) if t[i] == t[i + 1]]
        sites += [("2", i) for i in range(len(t) - 2) if t[i] == t[i + 2]]
        if not sites:
            return tuple(t)
        kind, i = rng.choice(sites)
        if kind == "1":
            del t[i + 1]
        else:
            del t[i + 1:i + 3]


def test_basic_rules():
    P = core.projection_algebra_of(adjacency_semigroup(SimpleGraph.undirected(2, [(0, 1)])))
    p, q = P.index("(0,0)"), P.index("(1,1)")
    assert reduce(P, (p, p)) == (p,)
    assert reduce(P, (p, q, p)) == (p,)
    assert compose_chains((p, q), (q, p)) == (p,)
    assert reduce(P, (p, q, q, p, q)) == (p, q)


def test_non_path_rejected(PP3):
    F = PP3.theta.T == np.arange(PP3.size)[:, None]
    F = F & F.T
    p, q = map(int, np.argwhere(~F)[0])
    with pytest.raises(PathError):
        validate_path(PP3, (p, q))
    with pytest.raises(PathError):
        validate_path(PP3, ())
    with pytest.raises(PathError):
        compose_chains((p,), (q,))


def test_confluence_on_random_paths(PP3):
    rng = np.random.default_rng(0)
    prng = random.Random(0)
    for _ in range(2000):
        t = random_path(PP3, int(rng.integers(1, 16)), rng)
        c = reduce(PP3, t)
        assert is_reduced(c)
        assert c[0] == t[0] and c[-1] == t[-1]
        assert reduce_random_order(t, prng) == c


def test_composition_with_inverse(PP3):
    rng = np.random.default_rng(1)
    for _ in range(1000):
        c = reduce(PP3, random_path(PP3, int(rng.integers(1, 12)), rng))
        assert compose_chains(c, invert(c)) == (c[0],)
        assert is_reduced(invert(c))


def test_composition_associative(PP3):
    rng = np.random.default_rng(2)
    for _ in range(500):
        a = reduce(PP3, random_path(PP3, int(rng.integers(1, 8)), rng))
        b = reduce(PP3, random_path(PP3, int(rng.integers(1, 8)), rng, start=a[-1]))
        c = reduce(PP3, random_path(PP3, int(rng.integers(1, 8)), rng, start=b[-1]))
        assert compose_chains(compose_chains(a, b), c) == compose_chains(a, compose_chains(b, c))


def test_triangle_chains_are_reduced_and_distinct(PP3):
    w1, w2 = triangle_words()
    c1 = tuple(PP3.index(x.pretty()) for x in w1)
    c2 = tuple(PP3.index(x.pretty()) for x in w2)
    assert reduce(PP3, c1) == c1 and reduce(PP3, c2) == c2
    assert len(c1) == 7 and c1 != c2


def test_restriction_examples(PP3):
    P = PP3
    T = P.theta
    for p in range(P.size):
        for q in range(P.size):
            if q == p or not P.F(p, q):
                continue
            for r in P.down(p):
                assert restrict_path(P, r, (p, q, p)) == (r, int(T[r, q]), r)
                assert restrict_chain(P, r, (p, q, p)) == (r,)


def test_restriction_properties(PP3):
    P = PP3
    rng = np.random.default_rng(3)
    for _ in range(1000):
        c = reduce(P, random_path(P, int(rng.integers(1, 10)), rng))
        assert restrict_chain(P, c[0], c) == c
        t = int(rng.choice(P.down(c[0])))
        s = int(rng.choice(P.down(t)))
        # restricting a chain gives a path again
        validate_path(P, restrict_path(P, t, c))
        validate_path(P, restrict_path(P, P.down(c[-1])[0], c, "right"))
        assert restrict_chain(P, s, restrict_chain(P, t, c)) == restrict_chain(P, s, c)
        d = reduce(P, random_path(P, int(rng.integers(1, 6)), rng, start=c[-1]))
        left = restrict_chain(P, t, c)
        assert restrict_chain(P, t, compose_chains(c, d)) == compose_chains(left, restrict_chain(P, left[-1], d))
    with pytest.raises(PathError):
        restrict_path(P, 1, (0,)) if not P.leq(1, 0) else restrict_path(P, 0, (1,))


def test_brute_force_equivalence_on_three_element_algebra():
    P = core.projection_algebra_of(adjacency_semigroup(SimpleGraph.undirected(2, [(0, 1)])))
    assert P.size == 3
    F = P.theta.T == np.arange(3)[:, None]
    assert int((F & F.T).sum()) - 3 == 2
    paths, find = closure_words(P, 10)
    short = [w for w in paths if len(w) <= 6]
    for u in short:
        for v in short:
            if u[0] == v[0] and u[-1] == v[-1]:
                assert (find(u) == find(v)) == (_reduce_word(u) == _reduce_word(v))


@settings(max_examples=300, deadline=None)
@given(st.lists(st.integers(0, 3), max_size=20), st.randoms(use_true_random=False))
def test_reduction_is_idempotent_and_order_free(word, rnd):
    # any word over a complete friendship relation is a path
    c = _reduce_word(word)
    assert _reduce_word(c) == c and is_reduced(c)
    assert reduce_random_order(word, rnd) == c


def test_rank_two_projections_of_p3_form_a_hexagon(PP3):
    from itertools import combinations
    from regstar.diagram import pi_pair, pi_point, stats
    pts = {(i,): pi_point(3, i) for i in range(3)}
    pts.update({(i, j): pi_pair(3, i, j) for i, j in combinations(range(3), 2)})
    assert all(stats(x).rank == 2 for x in pts.values())
    idx = {k: PP3.index(x.pretty()) for k, x in pts.items()}
    edges = {frozenset((a, b)) for a in idx for b in idx if a != b and PP3.F(idx[a], idx[b])}
    # only a point projection and a pair projection containing it are friends
    assert edges == {frozenset(((i,), pr)) for pr in idx if len(pr) == 2 for i in pr}
