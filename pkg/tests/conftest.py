import functools

import numpy as np
import pytest

from regstar.constructions import (SimpleGraph, adjacency_semigroup, cyclic_group, fp_semigroup,
                                   random_sandwich, rees_star_semigroup)
from regstar.diagram import partition_monoid
from regstar.palg import kinyon


@functools.lru_cache(maxsize=None)
def monoid(n, family="full"):
    return partition_monoid(n, family)


@functools.lru_cache(maxsize=None)
def kinyon_fp(variant=False):
    return fp_semigroup(kinyon(variant))


def index_of(S, label):
    return S.labels.index(label)


def small_instances():
    """Cheap instances covering every construction; name -> semigroup."""
    rng = np.random.default_rng(7)
    out = {
        "P1": monoid(1),
        "P2": monoid(2),
        "B2": monoid(2, "brauer"),
        "B3": monoid(3, "brauer"),
        "kinyon": kinyon_fp(),
        "kinyon-variant": kinyon_fp(True),
        "A(K3)": adjacency_semigroup(SimpleGraph.complete(3)),
        "A(path3)": adjacency_semigroup(SimpleGraph.undirected(3, [(0, 1), (1, 2)])),
        "A(discrete3)": adjacency_semigroup(SimpleGraph.discrete(3)),
    }
    for i in range(3):
        out[f"rees{i}"] = rees_star_semigroup(random_sandwich(3, cyclic_group(3), rng))
    return out


@pytest.fixture(scope="session")
def P2():
    return monoid(2)


@pytest.fixture(scope="session")
def P3():
    return monoid(3)


@pytest.fixture(scope="session")
def FP():
    return kinyon_fp()
