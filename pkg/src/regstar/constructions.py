"""Factories for regular *-semigroups: adjacency semigroups of graphs, Rees 0-matrix
*-semigroups over a group, and the semigroup generated by the maps of a
projection algebra.

Zero is always index 0 in the adjacency and Rees outputs.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

import numpy as np

from .core import StarSemigroup
from .palg import ProjectionAlgebra
from .report import StructuralError


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class SimpleGraph:
    """Graph on vertices 0..n-1. ``edges`` holds ordered pairs and must be symmetric;
    loops are implied."""

    n: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    @classmethod
    def undirected(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "SimpleGraph":
        es = set()
        for p, q in pairs:
            es.add((p, q))
            es.add((q, p))
        return cls(n, frozenset(es))

    @classmethod
    def discrete(cls, n: int) -> "SimpleGraph":
        return cls(n, frozenset())

    @classmethod
    def complete(cls, n: int) -> "SimpleGraph":
        return cls.undirected(n, combinations(range(n), 2))

    def adjacent(self, p: int, q: int) -> bool:
        return p == q or (p, q) in self.edges

    def to_json(self) -> dict:
        return {"n": self.n, "edges": sorted([p, q] for p, q in self.edges if p < q)}

    @classmethod
    def from_json(cls, doc: dict) -> "SimpleGraph":
        return cls.undirected(int(doc["n"]), [tuple(e) for e in doc["edges"]])


def all_graphs(n: int) -> Iterator[SimpleGraph]:
    """Every labelled simple graph on n vertices."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield SimpleGraph.undirected(n, [pr for i, pr in enumerate(pairs) if mask >> i & 1])


def adjacency_semigroup(G: SimpleGraph) -> StarSemigroup:
    """Elements 0 and (p, q); ``(p,q)(r,s) = (p,s)`` when q and r are adjacent, else 0."""
    for p, q in sorted(G.edges):
        if not (0 <= p < G.n and 0 <= q < G.n):
            raise ConstructionError(f"edge ({p},{q}) has a vertex outside 0..{G.n - 1}")
        if (q, p) not in G.edges:
            raise ConstructionError(f"edge set is not symmetric: ({p},{q}) present, ({q},{p}) missing")
    k = G.n
    size = 1 + k * k

    def idx(p, q):
        return 1 + p * k + q
    mul = np.zeros((size, size), dtype=np.int64)
    star = np.zeros(size, dtype=np.int64)
    for p in range(k):
        for q in range(k):
            star[idx(p, q)] = idx(q, p)
            for r in range(k):
                if G.adjacent(q, r):
                    for s in range(k):
                        mul[idx(p, q), idx(r, s)] = idx(p, s)
    labels = ["0"] + [f"({p},{q})" for p in range(k) for q in range(k)]
    return StarSemigroup(mul, star, labels)


# ---------------------------------------------------------------- groups and Rees

@dataclass(frozen=True, eq=False)
class Group:
    """Group as a table with identity at index 0."""

    table: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.int64)
        n = t.shape[0]
        if t.shape != (n, n) or ((t < 0) | (t >= n)).any():
            raise ConstructionError("group table malformed")
        if not (np.array_equal(t[0], np.arange(n)) and np.array_equal(t[:, 0], np.arange(n))):
            raise ConstructionError("index 0 is not the identity")
        object.__setattr__(self, "table", t)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def inv(self, g: int) -> int:
        return int(np.flatnonzero(self.table[g] == 0)[0])

    def m(self, *gs: int) -> int:
        acc = 0
        for g in gs:
            acc = int(self.table[acc, g])
        return acc


def cyclic_group(n: int) -> Group:
    i = np.arange(n)
    return Group((i[:, None] + i[None, :]) % n)


@dataclass(frozen=True, eq=False)
class SandwichMatrix:
    """``entries[p][q]`` is the entry m_pq: a group index, or None for zero."""

    group: Group
    entries: tuple[tuple[int | None, ...], ...]

    @property
    def k(self) -> int:
        return len(self.entries)

    def validate(self) -> None:
        k = self.k
        for q, row in enumerate(self.entries):
            if len(row) != k:
                raise ConstructionError(f"row {q} has length {len(row)}, expected {k}")
            for p, m in enumerate(row):
                if m is not None and not 0 <= m < self.group.order:
                    raise ConstructionError(f"entry ({q},{p}) = {m} is not a group element")
        for p in range(k):
            if self.entries[p][p] != 0:
                raise ConstructionError(f"diagonal entry ({p},{p}) = {self.entries[p][p]} is not the identity")
        for p in range(k):
            for q in range(k):
                a, b = self.entries[p][q], self.entries[q][p]
                if (a is None) != (b is None) or (a is not None and a != self.group.inv(b)):
                    raise ConstructionError(f"entry ({p},{q}) = {a} is not the inverse of entry ({q},{p}) = {b}")

    def zero_pattern(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(tuple(m is not None for m in row) for row in self.entries)

    def to_json(self) -> dict:
        return {"group": self.group.table.tolist(), "entries": [list(r) for r in self.entries]}

    @classmethod
    def from_json(cls, doc: dict) -> "SandwichMatrix":
        try:
            return cls(Group(np.array(doc["group"])),
                       tuple(tuple(None if m is None else int(m) for m in r) for r in doc["entries"]))
        except (KeyError, TypeError) as exc:
            raise StructuralError(f"bad sandwich matrix document: {exc}") from exc


def rees_star_semigroup(M: SandwichMatrix) -> StarSemigroup:
    """Elements 0 and (p, g, q); ``(p,g,q)(r,h,s) = (p, g m_qr h, s)`` when ``m_qr`` is nonzero."""
    M.validate()
    k, G = M.k, M.group
    n = G.order
    size = 1 + k * n * k

    def idx(p, g, q):
        return 1 + (p * n + g) * k + q
    trip = [(p, g, q) for p in range(k) for g in range(n) for q in range(k)]
    mul = np.zeros((size, size), dtype=np.int64)
    star = np.zeros(size, dtype=np.int64)
    for a, (p, g, q) in enumerate(trip, start=1):
        star[a] = idx(q, G.inv(g), p)
        for b, (r, h, s) in enumerate(trip, start=1):
            m = M.entries[q][r]
            if m is not None:
                mul[a, b] = idx(p, G.m(g, m, h), s)
    labels = ["0"] + [f"({p},{g},{q})" for p, g, q in trip]
    return StarSemigroup(mul, star, labels)


def adjacency_matrix(G: SimpleGraph, group: Group | None = None) -> SandwichMatrix:
    """Sandwich matrix with identity where vertices are adjacent and zero elsewhere."""
    group = group or cyclic_group(1)
    return SandwichMatrix(group, tuple(tuple(0 if G.adjacent(q, p) else None for p in range(G.n))
                                       for q in range(G.n)))


def random_sandwich(k: int, group: Group, rng: np.random.Generator, density: float = 0.6) -> SandwichMatrix:
    """Random skew-symmetric sandwich matrix with identity diagonal."""
    e: list[list[int | None]] = [[None] * k for _ in range(k)]
    for p in range(k):
        e[p][p] = 0
        for q in range(p + 1, k):
            if rng.random() < density:
                g = int(rng.integers(group.order))
                e[p][q] = g
                e[q][p] = group.inv(g)
    return SandwichMatrix(group, tuple(tuple(r) for r in e))


# ---------------------------------------------------------------- F_P

def _then(x: tuple[int, ...], u: tuple[int, ...]) -> tuple[int, ...]:
    """Apply x, then u."""
    return tuple(u[i] for i in x)


def fp_semigroup(P: ProjectionAlgebra) -> StarSemigroup:
    """Closure of the pairs (theta_p, theta_p) under ``(x,y)(u,v) = (x then u, v then y)``.

    Indices follow breadth-first order from the generators, so element p is
    the generator of p. Labels are shortest generator words.
    """
    k = P.size
    gens = [tuple(int(v) for v in P.theta[:, p]) for p in range(k)]
    if len(set(gens)) != k:
        raise ConstructionError("two elements have the same map; generators would collide")

    def prod(a, b):
        (x, y), (u, v) = a, b
        return (_then(x, u), _then(v, y))
    elems = [(g, g) for g in gens]
    index = {e: i for i, e in enumerate(elems)}
    words = [(P.label(p),) for p in range(k)]
    queue = deque(range(k))
    while queue:
        a = queue.popleft()
        for p in range(k):
            c = prod(elems[a], elems[p])
            if c not in index:
                index[c] = len(elems)
                elems.append(c)
                words.append(words[a] + (P.label(p),))
                queue.append(index[c])
    size = len(elems)
    mul = np.empty((size, size), dtype=np.int64)
    for a in range(size):
        for b in range(size):
            mul[a, b] = index[prod(elems[a], elems[b])]
    star = np.array([index[(y, x)] for x, y in elems], dtype=np.int64)
    labels = [".".join(w) for w in words]
    if len(set(labels)) != size:
        labels = None
    return StarSemigroup(mul, star, labels)



def direct_product(S: StarSemigroup, H: Group) -> StarSemigroup:
    """S x H with star (a, g)* = (a*, g^-1); element (a, g) has index a*|H| + g."""
    k = H.order
    n = S.size * k
    a = np.arange(n) // k
    g = np.arange(n) % k
    mul = S.mul.astype(np.int64)[a[:, None], a[None, :]] * k + H.table[g[:, None], g[None, :]]
    inv = np.array([H.inv(x) for x in range(k)])
    star = S.star.astype(np.int64)[a] * k + inv[g]
    labels = None
    if S.labels is not None:
        labels = [f"{S.labels[x]}|{y}" for x, y in zip(a, g)]
    return StarSemigroup(mul, star, labels)
