"""Partition monoid arithmetic.

A partition of degree n lives on 2n points: upper points ``0..n-1`` and lower
points ``n..2n-1`` (lower point i' is ``n+i``). The canonical form is the
restricted growth string (RGS) of the point labels, which is the same as
listing blocks sorted by their minimum.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import chain
from typing import Iterable, Iterator, Sequence

import numpy as np

from .core import StarSemigroup, index_dtype

DEFAULT_BOUNDS = {"full": 4, "brauer": 6}


class DegreeError(ValueError):
    pass


def _rgs(labels: Sequence) -> tuple[int, ...]:
    seen: dict = {}
    return tuple(seen.setdefault(x, len(seen)) for x in labels)


@dataclass(frozen=True, order=True)
class Partition:
    n: int
    rgs: tuple[int, ...]

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> "Partition":
        label = [-1] * (2 * n)
        for b, block in enumerate(blocks):
            for x in block:
                if not 0 <= x < 2 * n:
                    raise ValueError(f"point {x} outside 0..{2 * n - 1}")
                if label[x] != -1:
                    raise ValueError(f"point {x} appears in two blocks")
                label[x] = b
        if -1 in label:
            raise ValueError(f"point {label.index(-1)} is not covered")
        return cls(n, _rgs(label))

    @classmethod
    def parse(cls, n: int, text: str) -> "Partition":
        """Parse 1-based block notation such as ``{1,2,3,1'}{4,4',5',6'}``.

        Points not mentioned become singletons.
        """
        blocks = []
        for chunk in text.replace("}", "").split("{")[1:]:
            block = []
            for tok in chunk.split(","):
                tok = tok.strip()
                if not tok:
                    continue
                lower = tok.endswith("'")
                i = int(tok.rstrip("'")) - 1
                block.append(n + i if lower else i)
            blocks.append(block)
        used = set(chain.from_iterable(blocks))
        blocks += [[x] for x in range(2 * n) if x not in used]
        return cls.from_blocks(n, blocks)

    @classmethod
    def identity(cls, n: int) -> "Partition":
        return cls.from_blocks(n, [[i, n + i] for i in range(n)])

    @property
    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(max(self.rgs) + 1)]
        for x, b in enumerate(self.rgs):
            out[b].append(x)
        return out

    def to_json(self) -> dict:
        return {"n": self.n, "blocks": self.blocks}

    @classmethod
    def from_json(cls, doc: dict) -> "Partition":
        return cls.from_blocks(int(doc["n"]), doc["blocks"])

    def pretty(self) -> str:
        n = self.n

        def pt(x):
            return f"{x + 1}" if x < n else f"{x - n + 1}'"
        return "".join("{" + ",".join(pt(x) for x in b) + "}" for b in self.blocks)

    def __str__(self) -> str:
        return self.pretty()

    def __mul__(self, other: "Partition") -> "Partition":
        return multiply(self, other)


def _find(parent: list[int], x: int) -> int:
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        parent[x], x = root, parent[x]
    return root


def multiply(alpha: Partition, beta: Partition) -> Partition:
    """Product by union-find on 3n points: alpha on rows 0/1, beta on rows 1/2."""
    if alpha.n != beta.n:
        raise DegreeError(f"degree mismatch: {alpha.n} vs {beta.n}")
    n = alpha.n
    parent = list(range(3 * n))
    # alpha's points keep their indices; beta's shift by n
    for labels, shift in ((alpha.rgs, 0), (beta.rgs, n)):
        first: dict[int, int] = {}
        for x, b in enumerate(labels):
            y = x + shift
            if b in first:
                ry, rf = _find(parent, y), _find(parent, first[b])
                if ry != rf:
                    parent[ry] = rf
            else:
                first[b] = y
    outer = chain(range(n), range(2 * n, 3 * n))
    return Partition(n, _rgs([_find(parent, x) for x in outer]))


def star(alpha: Partition) -> Partition:
    n = alpha.n
    return Partition(n, _rgs(alpha.rgs[n:] + alpha.rgs[:n]))


@dataclass(frozen=True)
class PartitionStats:
    dom: frozenset[int]
    codom: frozenset[int]
    ker: tuple[tuple[int, ...], ...]
    coker: tuple[tuple[int, ...], ...]
    rank: int


def stats(alpha: Partition) -> PartitionStats:
    """Domain, codomain, kernel, cokernel and rank; all on 0-based column indices."""
    n = alpha.n
    dom, codom, rank = set(), set(), 0
    for b in alpha.blocks:
        up = [x for x in b if x < n]
        low = [x - n for x in b if x >= n]
        if up and low:
            rank += 1
            dom.update(up)
            codom.update(low)

    def classes(labels):
        out: dict[int, list[int]] = {}
        for i, b in enumerate(labels):
            out.setdefault(b, []).append(i)
        return tuple(tuple(c) for c in out.values())
    return PartitionStats(frozenset(dom), frozenset(codom),
                          classes(alpha.rgs[:n]), classes(alpha.rgs[n:]), rank)


# ---------------------------------------------------------------- enumeration

def set_partitions_rgs(m: int) -> Iterator[tuple[int, ...]]:
    """All restricted growth strings of length m, in lexicographic order."""
    if m == 0:
        yield ()
        return
    a = [0] * m

    def rec(i, top):
        # top = 1 + max(a[:i])
        if i == m:
            yield tuple(a)
            return
        for v in range(top + 1):
            a[i] = v
            yield from rec(i + 1, max(top, v + 1))
    yield from rec(1, 1)


def enumerate_partitions(n: int, family: str = "full") -> list[Partition]:
    if family == "full":
        gen = set_partitions_rgs(2 * n)
    elif family == "brauer":
        gen = _matchings(2 * n)
    else:
        raise ValueError(f"unknown family {family!r}")
    return [Partition(n, r) for r in gen]


def _matchings(m: int) -> list[tuple[int, ...]]:
    # generate matchings directly then sort; filtering all set partitions is too slow at m = 12
    out = []

    def rec(free, pairs):
        if not free:
            label = [0] * m
            for b, (x, y) in enumerate(pairs):
                label[x] = label[y] = b
            out.append(_rgs(label))
            return
        x = free[0]
        for j in range(1, len(free)):
            rec(free[1:j] + free[j + 1:], pairs + [(x, free[j])])
    if m % 2 == 0:
        rec(list(range(m)), [])
    return sorted(out)


def _encode(rgs: np.ndarray, base: int) -> np.ndarray:
    code = np.zeros(rgs.shape[0], dtype=np.int64)
    for j in range(rgs.shape[1]):
        code = code * base + rgs[:, j]
    return code


def _batch_rgs(labels: np.ndarray) -> np.ndarray:
    """Row-wise RGS of a (rows, m) label array."""
    m = labels.shape[1]
    eq = labels[:, :, None] == labels[:, None, :]                  # eq[r, j, k]
    first_pos = np.argmax(eq, axis=2)                              # first k with same label as j
    is_first = first_pos == np.arange(m)[None, :]
    rank = np.cumsum(is_first, axis=1) - 1
    return np.take_along_axis(rank, first_pos, axis=1)


def _next_in_block(rgs: np.ndarray) -> np.ndarray:
    """Row-wise cyclic successor of each point within its block."""
    m = rgs.shape[1]
    j = np.arange(m)
    same = rgs[:, :, None] == rgs[:, None, :]
    after = same & (j[None, None, :] > j[None, :, None])
    wrap = np.argmax(same, axis=2)
    return np.where(after.any(axis=2), np.argmax(after, axis=2), wrap)


def _block_products(a_next: np.ndarray, b_next: np.ndarray, n: int) -> np.ndarray:
    """RGS of alpha * beta for every pair (alpha row, beta row), alpha-major.

    Each pair is a 3n-point graph in which every point links to the next
    point of its block. Min-label relaxation plus pointer jumping runs to a
    fixpoint, vectorised across pairs using flat gathers only.
    """
    c, k, t = a_next.shape[0], b_next.shape[0], 3 * n
    pts = np.arange(t)
    na = np.broadcast_to(pts, (c, t)).copy()
    na[:, :2 * n] = a_next
    nb = np.broadcast_to(pts, (k, t)).copy()
    nb[:, n:] = b_next + n
    off = (np.arange(c * k) * t)[:, None]
    ga = (np.repeat(na, k, axis=0) + off).ravel()
    gb = (np.tile(nb, (c, 1)) + off).ravel()
    offr = np.repeat(off, t, axis=1).ravel()
    lab = np.tile(pts, c * k)
    while True:
        new = np.minimum(np.minimum(lab, lab[ga]), lab[gb])
        new = new[new + offr]
        if np.array_equal(new, lab):
            break
        lab = new
    lab = lab.reshape(c * k, t)
    return _batch_rgs(lab[:, np.r_[0:n, 2 * n:3 * n]])


def partition_monoid(n: int, family: str = "full", bound: int | None = None) -> StarSemigroup:
    """Tabulate the partition monoid (or its Brauer submonoid) of degree n.

    Elements are indexed in RGS order; labels use 1-based block notation.
    """
    if bound is None:
        bound = DEFAULT_BOUNDS[family]
    if n < 1:
        raise DegreeError("degree must be at least 1")
    if n > bound:
        raise DegreeError(f"degree {n} exceeds the configured bound {bound} for {family}")
    elems = enumerate_partitions(n, family)
    size = len(elems)
    rgs = np.array([e.rgs for e in elems], dtype=np.int64)
    base = 2 * n
    codes = _encode(rgs, base)
    order = np.argsort(codes)
    sorted_codes = codes[order]
    mul = np.empty((size, size), dtype=index_dtype(size))
    nxt = _next_in_block(rgs)
    # bound the (chunk * size, 3n) intermediates to a few million cells
    chunk = max(1, 2_000_000 // (size * 3 * n))
    for a in range(0, size, chunk):
        prod = _block_products(nxt[a:a + chunk], nxt, n)
        pos = np.searchsorted(sorted_codes, _encode(prod, base))
        mul[a:a + chunk] = order[pos].reshape(-1, size)
    starred = _batch_rgs(np.concatenate([rgs[:, n:], rgs[:, :n]], axis=1))
    st = order[np.searchsorted(sorted_codes, _encode(starred, base))]
    return StarSemigroup(mul, st, tuple(e.pretty() for e in elems))


def element_partitions(S: StarSemigroup, n: int) -> list[Partition]:
    """Recover partitions from the labels written by ``partition_monoid``."""
    return [Partition.parse(n, lab) for lab in S.labels]


def bell(m: int) -> int:
    """Bell number by the Bell triangle."""
    row = [1]
    for _ in range(m):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def double_factorial_odd(n: int) -> int:
    """(2n-1)!!, the number of perfect matchings on 2n points."""
    return math.prod(range(1, 2 * n, 2))


# ---------------------------------------------------------------- named elements

def pi_point(n: int, i: int) -> Partition:
    """Identity except that column i is cut into two singletons (0-based i)."""
    blocks = [[j, n + j] for j in range(n) if j != i] + [[i], [n + i]]
    return Partition.from_blocks(n, blocks)


def pi_pair(n: int, i: int, j: int) -> Partition:
    """Identity except columns i, j are merged into one block with both lower points."""
    blocks = [[k, n + k] for k in range(n) if k not in (i, j)] + [[i, j, n + i, n + j]]
    return Partition.from_blocks(n, blocks)


def triangle_words(n: int = 3, i: int = 0, j: int = 1, k: int = 2) -> tuple[list[Partition], list[Partition]]:
    """The two ways round the triangle of point and pair projections on columns i, j, k."""
    pi, pj, pk = pi_point(n, i), pi_point(n, j), pi_point(n, k)
    pij, pjk, pki = pi_pair(n, i, j), pi_pair(n, j, k), pi_pair(n, k, i)
    return [pi, pij, pj, pjk, pk, pki, pi], [pi, pki, pk, pjk, pj, pij, pi]


def product(*xs: Partition) -> Partition:
    acc = xs[0]
    for x in xs[1:]:
        acc = multiply(acc, x)
    return acc


@dataclass(frozen=True)
class G2PrimeCounterexample:
    b: Partition
    e: Partition
    e1: Partition
    e2: Partition
    f: Partition
    f1: Partition
    f2: Partition


def g2prime_counterexample() -> G2PrimeCounterexample:
    """Degree-4 projections satisfying the linked-pair consequences but with
    ``e e1 b f1 f != e e2 b f2 f``."""
    n = 4
    b = Partition.identity(n)
    e = Partition.parse(n, "{1,2}{1',2'}{3,3'}{4,4'}")
    e2 = Partition.parse(n, "{1,3}{1',3'}{2,2'}{4,4'}")
    f = Partition.parse(n, "{1,4}{1',4'}{2,2'}{3,3'}")
    return G2PrimeCounterexample(b=b, e=e, e1=e, e2=e2, f=f, f1=e, f2=e2)
