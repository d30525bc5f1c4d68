"""Projection algebras: a finite set with one unary map per element.

The table convention is fixed here once: ``theta[q, p]`` is the image of ``q``
under the map indexed by ``p`` (think ``pqp`` in a *-semigroup). Composites are
read left to right, so "apply theta_p then theta_q" to ``r`` is
``theta[theta[r, p], q]``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .report import StructuralError, VerificationReport


@dataclass(eq=False)
class ProjectionAlgebra:
    theta: np.ndarray
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        t = np.asarray(self.theta)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise StructuralError(f"theta must be a nonempty square table, got shape {t.shape}")
        if not np.issubdtype(t.dtype, np.integer):
            raise StructuralError("theta table is not integer-valued")
        n = t.shape[0]
        bad = np.argwhere((t < 0) | (t >= n))
        if len(bad):
            raise StructuralError(f"theta entry at {tuple(int(i) for i in bad[0])} out of range")
        self.theta = t.astype(np.int64)
        self.theta.flags.writeable = False
        if self.labels is not None:
            self.labels = tuple(str(s) for s in self.labels)
            if len(self.labels) != n or len(set(self.labels)) != n:
                raise StructuralError("labels must be unique, one per element")

    @property
    def size(self) -> int:
        return self.theta.shape[0]

    def th(self, q: int, p: int) -> int:
        """q theta_p."""
        return int(self.theta[q, p])

    def label(self, p: int) -> str:
        return self.labels[p] if self.labels is not None else str(p)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def leq(self, p: int, q: int) -> bool:
        return self.theta[p, q] == p

    def leqF(self, p: int, q: int) -> bool:
        return self.theta[q, p] == p

    def F(self, p: int, q: int) -> bool:
        return self.theta[q, p] == p and self.theta[p, q] == q

    def down(self, p: int) -> list[int]:
        return [x for x in range(self.size) if self.theta[x, p] == x]

    def same_tables(self, other: "ProjectionAlgebra") -> bool:
        return self.size == other.size and np.array_equal(self.theta, other.theta)

    def to_json(self) -> dict:
        doc = {"size": self.size, "theta": self.theta.tolist()}
        if self.labels is not None:
            doc["labels"] = list(self.labels)
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "ProjectionAlgebra":
        try:
            n = int(doc["size"])
            theta = np.array(doc["theta"], dtype=np.int64)
        except (KeyError, TypeError, ValueError) as exc:
            raise StructuralError(f"bad projection algebra document: {exc}") from exc
        if theta.shape != (n, n):
            raise StructuralError(f"theta has shape {theta.shape}, expected {(n, n)}")
        return cls(theta, doc.get("labels"))

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _first(mask: np.ndarray):
    hits = np.argwhere(mask)
    return None if len(hits) == 0 else tuple(int(i) for i in hits[0])


def verify_axioms(P: ProjectionAlgebra) -> VerificationReport:
    """Check P1-P5. Witnesses are argument tuples ``(p,)``, ``(p, q)`` or ``(p, q, r)``,
    where ``r`` is the free variable the map identities are evaluated at."""
    rep = VerificationReport("palg")
    T = P.theta
    n = P.size
    i = np.arange(n)
    rep.record("P1", _first(T[i, i] != i))

    p2, r2 = np.meshgrid(i, i, indexing="ij")
    # P2: r theta_p theta_p = r theta_p
    w = _first(T[T[r2, p2], p2] != T[r2, p2])
    rep.record("P2", w)
    # P3: p theta_q theta_p = q theta_p, witness (p, q)
    q2 = r2
    rep.record("P3", _first(T[T[p2, q2], p2] != T[q2, p2]))

    p3, q3, r3 = np.meshgrid(i, i, i, indexing="ij")
    a = T[r3, p3]
    # P4: r theta_p theta_q theta_p = r theta_{q theta_p}
    rep.record("P4", _first(T[T[a, q3], p3] != T[r3, T[q3, p3]]))
    # P5: r theta_p theta_q theta_p theta_q = r theta_p theta_q
    b = T[a, q3]
    rep.record("P5", _first(T[T[b, p3], q3] != b))
    return rep


@dataclass(frozen=True)
class Relations:
    leq: np.ndarray         # leq[p, q]: p <= q
    leqF: np.ndarray        # leqF[p, q]: p <=_F q
    F: np.ndarray
    meet: np.ndarray        # theta criterion; -1 where it does not apply
    order_meet: np.ndarray  # greatest lower bound found by order search; -1 if none
    is_meet_semilattice: bool
    covers: tuple[tuple[int, int], ...]   # (p, q) with p covered by q

    @property
    def edges(self) -> list[tuple[int, int]]:
        n = self.F.shape[0]
        return [(p, q) for p in range(n) for q in range(p + 1, n) if self.F[p, q]]


def relations_of(P: ProjectionAlgebra) -> Relations:
    T = P.theta
    n = P.size
    i = np.arange(n)
    leq = T == i[:, None]                  # T[p, q] == p
    leqF = T.T == i[:, None]               # T[q, p] == p
    F = leqF & leqF.T
    meet = np.where(T == T.T, T, -1)

    order_meet = np.full((n, n), -1, dtype=np.int64)
    for p in range(n):
        for q in range(n):
            lower = [x for x in range(n) if leq[x, p] and leq[x, q]]
            top = [x for x in lower if all(leq[y, x] for y in lower)]
            if top:
                order_meet[p, q] = top[0]
    covers = []
    for p in range(n):
        for q in range(n):
            if p != q and leq[p, q] and not any(
                    x not in (p, q) and leq[p, x] and leq[x, q] for x in range(n)):
                covers.append((p, q))
    return Relations(leq, leqF, F, meet, order_meet, bool((order_meet >= 0).all()), tuple(covers))


def check_morphism(phi: Sequence[int], P: ProjectionAlgebra, Q: ProjectionAlgebra) -> VerificationReport:
    """Check ``(p theta_q) phi = (p phi) theta'_{q phi}`` for all pairs; witness ``(p, q)``."""
    rep = VerificationReport("palg-morphism")
    phi = np.asarray(phi, dtype=np.int64)
    if phi.shape != (P.size,) or ((phi < 0) | (phi >= Q.size)).any():
        rep.structural_error = "map is not total into the target"
        return rep
    i = np.arange(P.size)
    p, q = np.meshgrid(i, i, indexing="ij")
    lhs = phi[P.theta[p, q]]
    rhs = Q.theta[phi[p], phi[q]]
    rep.record("morphism", _first(lhs != rhs))
    return rep


def semilattice_algebra(leq: np.ndarray, labels=None) -> ProjectionAlgebra:
    """Projection algebra of a finite meet-semilattice: ``q theta_p = p meet q``."""
    leq = np.asarray(leq, dtype=bool)
    n = leq.shape[0]
    theta = np.empty((n, n), dtype=np.int64)
    for p in range(n):
        for q in range(n):
            lower = [x for x in range(n) if leq[x, p] and leq[x, q]]
            top = [x for x in lower if all(leq[y, x] for y in lower)]
            if not top:
                raise StructuralError(f"elements {p} and {q} have no meet")
            theta[q, p] = top[0]
    return ProjectionAlgebra(theta, labels)


# ---------------------------------------------------------------- bundled algebras

KINYON_LABELS = ("1", "e", "p", "q", "z")


def kinyon(variant: bool = False) -> ProjectionAlgebra:
    """Five-element algebra 1, e, p, q, z; theta_p, theta_q, theta_z are constant.

    With ``variant`` set, z is sent to q by theta_e instead of to p.
    """
    one, e, p, q, z = range(5)
    theta = np.empty((5, 5), dtype=np.int64)
    theta[:, one] = [one, e, p, q, z]
    theta[:, e] = [e, e, p, q, q if variant else p]
    theta[:, p] = p
    theta[:, q] = q
    theta[:, z] = z
    return ProjectionAlgebra(theta, KINYON_LABELS)


def constant_pair() -> ProjectionAlgebra:
    """Two elements, each map constant at its own index."""
    return ProjectionAlgebra(np.array([[0, 1], [0, 1]]), ("p", "q"))


def chain_algebra(k: int) -> ProjectionAlgebra:
    """k-element chain 0 < 1 < ... < k-1 with theta_p the meet."""
    leq = np.array([[i <= j for j in range(k)] for i in range(k)])
    return semilattice_algebra(leq, tuple(str(i) for i in range(k)))


BUNDLED = {
    "kinyon": lambda: kinyon(False),
    "kinyon-variant": lambda: kinyon(True),
    "constant-pair": constant_pair,
    "chain3": lambda: chain_algebra(3),
}
