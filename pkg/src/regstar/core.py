"""Finite regular *-semigroups stored as multiplication and involution tables.

Elements are the integers ``0..size-1``. Products are read from ``mul[a, b]``
and the involution from ``star[a]``. Projections are elements with
``p*p == p == star(p)``; for any ``a`` the projections ``aa*`` and ``a*a`` act as
its domain and range.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .palg import ProjectionAlgebra
from .report import StructuralError, VerificationReport


def index_dtype(n: int) -> np.dtype:
    """Smallest unsigned integer type that can hold indices below ``n``."""
    for dt in (np.uint8, np.uint16, np.uint32):
        if n <= np.iinfo(dt).max + 1:
            return np.dtype(dt)
    return np.dtype(np.uint64)


@dataclass(eq=False)
class StarSemigroup:
    mul: np.ndarray
    star: np.ndarray
    labels: tuple[str, ...] | None = None
    verified: bool = field(default=False, compare=False)

    def __post_init__(self):
        mul = np.asarray(self.mul)
        star = np.asarray(self.star)
        if mul.ndim != 2 or mul.shape[0] != mul.shape[1]:
            raise StructuralError(f"mul table must be square, got shape {mul.shape}")
        n = mul.shape[0]
        if star.shape != (n,):
            raise StructuralError(f"star table must have length {n}, got shape {star.shape}")
        if n == 0:
            raise StructuralError("empty semigroup")
        for name, t in (("mul", mul), ("star", star)):
            if not np.issubdtype(t.dtype, np.integer):
                raise StructuralError(f"{name} table is not integer-valued")
            bad = np.argwhere((t < 0) | (t >= n))
            if len(bad):
                raise StructuralError(f"{name} entry at {tuple(int(i) for i in bad[0])} out of range")
        dt = index_dtype(n)
        self.mul = mul.astype(dt)
        self.star = star.astype(dt)
        self.mul.flags.writeable = False
        self.star.flags.writeable = False
        if self.labels is not None:
            self.labels = tuple(str(s) for s in self.labels)
            if len(self.labels) != n:
                raise StructuralError("label count does not match size")
            if len(set(self.labels)) != n:
                raise StructuralError("labels are not unique")

    @property
    def size(self) -> int:
        return self.mul.shape[0]

    def __len__(self) -> int:
        return self.size

    def m(self, *xs: int) -> int:
        """Left-to-right product of one or more elements."""
        acc = int(xs[0])
        for x in xs[1:]:
            acc = int(self.mul[acc, x])
        return acc

    def s(self, a: int) -> int:
        return int(self.star[a])

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels is not None else str(a)

    def dom(self, a: int) -> int:
        return int(self.mul[a, self.star[a]])

    def cod(self, a: int) -> int:
        return int(self.mul[self.star[a], a])

    def same_tables(self, other: "StarSemigroup") -> bool:
        return (self.size == other.size and np.array_equal(self.mul, other.mul)
                and np.array_equal(self.star, other.star))

    def first_difference(self, other: "StarSemigroup"):
        """First differing cell as ``(table, index, mine, theirs)`` or None."""
        if self.size != other.size:
            return ("size", None, self.size, other.size)
        d = np.argwhere(self.mul != other.mul)
        if len(d):
            a, b = (int(x) for x in d[0])
            return ("mul", (a, b), int(self.mul[a, b]), int(other.mul[a, b]))
        d = np.flatnonzero(self.star != other.star)
        if len(d):
            a = int(d[0])
            return ("star", a, int(self.star[a]), int(other.star[a]))
        return None

    def to_json(self) -> dict:
        doc = {"size": self.size, "mul": self.mul.tolist(), "star": self.star.tolist()}
        if self.labels is not None:
            doc["labels"] = list(self.labels)
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "StarSemigroup":
        try:
            n = int(doc["size"])
            mul = np.array(doc["mul"], dtype=np.int64)
            star = np.array(doc["star"], dtype=np.int64)
        except (KeyError, TypeError, ValueError) as exc:
            raise StructuralError(f"bad semigroup document: {exc}") from exc
        if mul.shape != (n, n):
            raise StructuralError(f"mul has shape {mul.shape}, expected {(n, n)}")
        return cls(mul, star, doc.get("labels"))

    def dumps(self) -> str:
        return json.dumps(self.to_json())


# ---------------------------------------------------------------- verification

_ASSOC_CHUNK = 1 << 22


def _first(mask: np.ndarray):
    hits = np.argwhere(mask)
    if len(hits) == 0:
        return None
    return tuple(int(i) for i in hits[0])


def verify_star_laws(S: StarSemigroup) -> VerificationReport:
    """Check associativity, ``(a*)* = a``, ``aa*a = a`` and ``(ab)* = b*a*``.

    Cost is cubic in the size; the associativity scan runs in row blocks so
    memory stays bounded.
    """
    rep = VerificationReport("star")
    mul, star = S.mul.astype(np.int64), S.star.astype(np.int64)
    n = S.size
    idx = np.arange(n)

    witness = None
    block = max(1, _ASSOC_CHUNK // (n * n))
    for a0 in range(0, n, block):
        rows = mul[a0:a0 + block]                      # (ab) for a in block
        left = mul[rows]                               # (ab)c
        right = mul[a0:a0 + block][:, mul]             # a(bc)
        w = _first(left != right)
        if w is not None:
            witness = (w[0] + a0, w[1], w[2])
            break
    rep.record("assoc", witness)

    rep.record("(a*)*=a", _first(star[star] != idx))
    rep.record("aa*a=a", _first(mul[mul[idx, star], idx] != idx))
    # lhs[a, b] = (ab)*, rhs[a, b] = b* a*
    lhs = star[mul]
    rhs = mul[np.ix_(star, star)].T
    rep.record("(ab)*=b*a*", _first(lhs != rhs))
    if rep.ok:
        S.verified = True
    return rep


# ---------------------------------------------------------------- special elements

@dataclass(frozen=True)
class SpecialElements:
    projections: tuple[int, ...]
    idempotents: tuple[int, ...]
    f_pairs: tuple[tuple[int, int], ...]


def special_elements(S: StarSemigroup) -> SpecialElements:
    mul, star = S.mul, S.star
    idx = np.arange(S.size)
    idem = idx[mul[idx, idx] == idx]
    proj = idem[star[idem] == idem]
    pairs = []
    for p in proj:
        for q in proj:
            if mul[mul[p, q], p] == p and mul[mul[q, p], q] == q:
                pairs.append((int(p), int(q)))
    return SpecialElements(tuple(int(p) for p in proj), tuple(int(e) for e in idem), tuple(pairs))


# ---------------------------------------------------------------- Green's relations

def _canonical_ids(keys: Sequence) -> np.ndarray:
    """Relabel keys by order of first appearance."""
    seen: dict = {}
    out = np.empty(len(keys), dtype=np.int64)
    for i, k in enumerate(keys):
        out[i] = seen.setdefault(k, len(seen))
    return out


class UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x


@dataclass(frozen=True)
class GreenData:
    r_class: np.ndarray
    l_class: np.ndarray
    h_class: np.ndarray
    d_class: np.ndarray

    def classes(self, which: str) -> list[list[int]]:
        ids = getattr(self, f"{which}_class")
        out: dict[int, list[int]] = {}
        for a, c in enumerate(ids):
            out.setdefault(int(c), []).append(a)
        return [out[c] for c in sorted(out)]


def green_data(S: StarSemigroup) -> GreenData:
    """Green's relations from ``a R b iff aa* = bb*`` and ``a L b iff a*a = b*b``."""
    idx = np.arange(S.size)
    d = S.mul[idx, S.star].astype(np.int64)
    r = S.mul[S.star, idx].astype(np.int64)
    uf = UnionFind(S.size)
    for a in range(S.size):
        uf.union(a, int(d[a]))
        uf.union(a, int(r[a]))
    return GreenData(
        r_class=_canonical_ids(d.tolist()),
        l_class=_canonical_ids(r.tolist()),
        h_class=_canonical_ids(list(zip(d.tolist(), r.tolist()))),
        d_class=_canonical_ids([uf.find(a) for a in range(S.size)]),
    )


# ---------------------------------------------------------------- projections and orders

def projection_algebra_of(S: StarSemigroup) -> ProjectionAlgebra:
    """Projections of S with ``q theta_p = pqp``, in ascending element order."""
    proj = special_elements(S).projections
    pos = {p: i for i, p in enumerate(proj)}
    k = len(proj)
    theta = np.empty((k, k), dtype=np.int64)
    for i, q in enumerate(proj):
        for j, p in enumerate(proj):
            theta[i, j] = pos[int(S.mul[S.mul[p, q], p])]
    labels = tuple(S.label(p) for p in proj)
    return ProjectionAlgebra(theta, labels)


@dataclass(frozen=True)
class OrderRelations:
    projections: tuple[int, ...]
    leq: np.ndarray        # leq[i, j]: P[i] <= P[j]
    leqF: np.ndarray
    F: np.ndarray
    edges: tuple[tuple[int, int], ...]   # friendship graph, on carrier positions


def order_relations(S: StarSemigroup) -> OrderRelations:
    proj = special_elements(S).projections
    k = len(proj)
    mul = S.mul
    leq = np.zeros((k, k), dtype=bool)
    leqF = np.zeros((k, k), dtype=bool)
    for i, p in enumerate(proj):
        for j, q in enumerate(proj):
            leq[i, j] = mul[mul[q, p], q] == p
            leqF[i, j] = mul[mul[p, q], p] == p
    F = leqF & leqF.T
    edges = tuple((i, j) for i in range(k) for j in range(i + 1, k) if F[i, j])
    return OrderRelations(proj, leq, leqF, F, edges)


def element_order(S: StarSemigroup, a: int, b: int) -> bool:
    """True iff ``a = pb = bq`` for some projections p, q."""
    proj = special_elements(S).projections
    left = any(S.mul[p, b] == a for p in proj)
    return left and any(S.mul[b, q] == a for q in proj)


# ---------------------------------------------------------------- mu

class InvariantError(RuntimeError):
    pass


@dataclass(frozen=True)
class Congruence:
    class_of: np.ndarray
    class_count: int

    def related(self, a: int, b: int) -> bool:
        return self.class_of[a] == self.class_of[b]

    def is_identity(self) -> bool:
        return self.class_count == len(self.class_of)


def is_congruence(S: StarSemigroup, class_of: np.ndarray) -> bool:
    """Check two-sided and star compatibility of a partition of S."""
    cls = np.asarray(class_of)
    rep = {}
    for a, c in enumerate(cls.tolist()):
        rep.setdefault(c, a)
    reps = np.array([rep[c] for c in cls.tolist()])
    img = cls[S.mul.astype(np.int64)]
    if not np.array_equal(img, img[reps]):
        return False
    if not np.array_equal(img, img[:, reps]):
        return False
    st = cls[S.star.astype(np.int64)]
    return bool(np.array_equal(st, st[reps]))


def mu_congruence(S: StarSemigroup) -> Congruence:
    """Elements are related iff they induce the same conjugation map between down-sets."""
    rel = order_relations(S)
    proj = rel.projections
    down = {p: [proj[i] for i in range(len(proj)) if rel.leq[i, j]] for j, p in enumerate(proj)}
    keys = []
    for a in range(S.size):
        sa = S.s(a)
        d, r = S.dom(a), S.cod(a)
        keys.append((d, r, tuple(S.m(sa, p, a) for p in down[d])))
    cls = _canonical_ids(keys)
    if not is_congruence(S, cls):
        raise InvariantError("computed mu relation is not a congruence")
    return Congruence(cls, int(cls.max()) + 1)


# ---------------------------------------------------------------- projection-generated closure

@dataclass(frozen=True)
class Closure:
    elements: tuple[int, ...]
    factorization: dict[int, tuple[int, ...]]

    def validate(self, S: StarSemigroup, F: set[tuple[int, int]]) -> bool:
        for x, word in self.factorization.items():
            if S.m(*word) != x:
                return False
            if any((word[i], word[i + 1]) not in F for i in range(len(word) - 1)):
                return False
        return set(self.factorization) == set(self.elements)


def projection_closure(S: StarSemigroup) -> Closure:
    """The subsemigroup generated by projections, each member with a shortest F-chained word."""
    spec = special_elements(S)
    proj = spec.projections
    nbrs: dict[int, list[int]] = {p: [] for p in proj}
    for p, q in spec.f_pairs:
        if p != q:
            nbrs[p].append(q)

    # BFS over (element, last letter) states; the last letter decides which
    # projections may follow, so one element can need several states
    fact = _chained_words(S, proj, nbrs)

    closure = set(proj)
    frontier = list(proj)
    while frontier:
        new = []
        for x in frontier:
            for p in proj:
                y = int(S.mul[x, p])
                if y not in closure:
                    closure.add(y)
                    new.append(y)
        frontier = new
    if closure != set(fact):
        raise InvariantError("F-chained products do not exhaust the projection closure")
    return Closure(tuple(sorted(closure)), {x: fact[x] for x in sorted(fact)})


def _chained_words(S: StarSemigroup, proj, nbrs) -> dict[int, tuple[int, ...]]:
    parent: dict[tuple[int, int], tuple[int, int] | None] = {}
    queue = deque()
    best: dict[int, tuple[int, int]] = {}
    for p in proj:
        parent[(p, p)] = None
        queue.append((p, p))
        best.setdefault(p, (p, p))
    while queue:
        state = queue.popleft()
        x, last = state
        for q in nbrs[last]:
            nxt = (int(S.mul[x, q]), q)
            if nxt in parent:
                continue
            parent[nxt] = state
            best.setdefault(nxt[0], nxt)
            queue.append(nxt)
    words = {}
    for x, state in best.items():
        letters = []
        while state is not None:
            letters.append(state[1])
            state = parent[state]
        words[x] = tuple(reversed(letters))
    return words


@dataclass(frozen=True)
class EggBox:
    """One D-class: ``cells[i][j]`` is the H-class at R-class i and L-class j."""

    rows: tuple[int, ...]        # representative projection aa* per R-class
    cols: tuple[int, ...]        # representative projection a*a per L-class
    cells: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def size(self) -> int:
        return sum(len(c) for row in self.cells for c in row)


def eggbox(S: StarSemigroup) -> list[EggBox]:
    """D-classes as grids of H-classes, ordered by least element."""
    g = green_data(S)
    out = []
    for members in g.classes("d"):
        rows = sorted({S.dom(a) for a in members})
        cols = sorted({S.cod(a) for a in members})
        grid = {(r, c): [] for r in rows for c in cols}
        for a in members:
            grid[(S.dom(a), S.cod(a))].append(a)
        cells = tuple(tuple(tuple(grid[(r, c)]) for c in cols) for r in rows)
        out.append(EggBox(tuple(rows), tuple(cols), cells))
    return out
