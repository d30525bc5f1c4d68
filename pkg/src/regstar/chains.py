"""Paths of F-related projections and their reduced words.

A path is a tuple ``(p1, ..., pk)`` with consecutive entries F-related. Two
paths are identified when one rewrites to the other by ``(p, p) -> (p)`` and
``(p, q, p) -> (p)``; the fully reduced word is the canonical representative,
so chains are plain tuples compared by equality.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .palg import ProjectionAlgebra

Chain = tuple[int, ...]


class PathError(ValueError):
    pass


def validate_path(P: ProjectionAlgebra, t: Sequence[int]) -> Chain:
    t = tuple(int(x) for x in t)
    if not t:
        raise PathError("empty path")
    for x in t:
        if not 0 <= x < P.size:
            raise PathError(f"entry {x} is not an element of the algebra")
    for i in range(len(t) - 1):
        if not P.F(t[i], t[i + 1]):
            raise PathError(f"entries {t[i]} and {t[i + 1]} at positions {i}, {i + 1} are not F-related")
    return t


def _reduce_word(t: Sequence[int]) -> Chain:
    # stack stays reduced, so only patterns ending at the top can appear
    st: list[int] = []
    for x in t:
        st.append(x)
        while True:
            if len(st) >= 2 and st[-1] == st[-2]:
                st.pop()
            elif len(st) >= 3 and st[-1] == st[-3]:
                del st[-2:]
            else:
                break
    return tuple(st)


def reduce(P: ProjectionAlgebra, t: Sequence[int]) -> Chain:
    return _reduce_word(validate_path(P, t))


def is_reduced(c: Sequence[int]) -> bool:
    return all(c[i] != c[i + 1] for i in range(len(c) - 1)) and \
        all(c[i] != c[i + 2] for i in range(len(c) - 2))


def compose_chains(c: Chain, d: Chain) -> Chain:
    if c[-1] != d[0]:
        raise PathError(f"cannot compose: chain ends at {c[-1]}, next starts at {d[0]}")
    return _reduce_word(c + d[1:])


def invert(c: Chain) -> Chain:
    return tuple(reversed(c))


def restrict_path(P: ProjectionAlgebra, q: int, t: Sequence[int], side: str = "left") -> Chain:
    """Entrywise restriction of a path, before reduction."""
    T = P.theta
    if side == "left":
        if not P.leq(q, t[0]):
            raise PathError(f"{q} is not below the start {t[0]}")
        out = [q]
        for p in t[1:]:
            out.append(int(T[out[-1], p]))
        return tuple(out)
    if side == "right":
        if not P.leq(q, t[-1]):
            raise PathError(f"{q} is not below the end {t[-1]}")
        out = [q]
        for p in reversed(t[:-1]):
            out.append(int(T[out[-1], p]))
        return tuple(reversed(out))
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def restrict_chain(P: ProjectionAlgebra, q: int, c: Chain, side: str = "left") -> Chain:
    return _reduce_word(restrict_path(P, q, c, side))


def random_path(P: ProjectionAlgebra, length: int, rng: np.random.Generator,
                start: int | None = None) -> Chain:
    """Random walk of the given length on F (diagonal steps included)."""
    F = (P.theta.T == np.arange(P.size)[:, None]) & (P.theta == np.arange(P.size)[None, :])
    nbrs = [np.flatnonzero(F[p]) for p in range(P.size)]
    p = int(rng.integers(P.size)) if start is None else start
    out = [p]
    for _ in range(length - 1):
        p = int(rng.choice(nbrs[p]))
        out.append(p)
    return tuple(out)
