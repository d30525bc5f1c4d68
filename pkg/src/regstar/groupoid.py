"""Ordered groupoids whose objects carry a projection algebra.

The order is stored through left restriction: ``restrict[p, a]`` is the unique
morphism below ``a`` with domain ``p`` (or -1 when ``p`` is not below ``dom(a)``).
Right restriction is derived as ``a|q = (q|a^-1)^-1``.

Conjugation maps per morphism ``a``:

* ``vartheta[a, p]`` = codomain of ``restrict[p, a]`` for ``p <= dom(a)``, else -1;
* ``Theta[a, p]`` = ``vartheta[a, p theta_{dom(a)}]``, defined for every object.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import StarSemigroup, projection_algebra_of, special_elements
from .palg import ProjectionAlgebra
from .report import StructuralError, VerificationReport


class DomainError(ValueError):
    """A restriction or composition was requested outside its domain."""


@dataclass(eq=False)
class OrderedGroupoid:
    palg: ProjectionAlgebra
    identity: np.ndarray       # object -> morphism index of its identity
    dom: np.ndarray
    cod: np.ndarray
    inv: np.ndarray
    compose: dict[tuple[int, int], int]
    restrict: np.ndarray       # (objects, morphisms), -1 where undefined
    labels: tuple[str, ...] | None = None
    _theta: tuple[np.ndarray, np.ndarray] | None = field(default=None, repr=False)

    def __post_init__(self):
        self.identity = np.asarray(self.identity, dtype=np.int64)
        self.dom = np.asarray(self.dom, dtype=np.int64)
        self.cod = np.asarray(self.cod, dtype=np.int64)
        self.inv = np.asarray(self.inv, dtype=np.int64)
        self.restrict = np.asarray(self.restrict, dtype=np.int64)
        if self.labels is not None:
            self.labels = tuple(self.labels)

    @property
    def size(self) -> int:
        return len(self.dom)

    @property
    def objects(self) -> int:
        return self.palg.size

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels is not None else str(a)

    def d(self, a: int) -> int:
        return int(self.dom[a])

    def r(self, a: int) -> int:
        return int(self.cod[a])

    def comp(self, *xs: int) -> int:
        acc = int(xs[0])
        for x in xs[1:]:
            try:
                acc = self.compose[(acc, int(x))]
            except KeyError:
                raise DomainError(f"morphisms {acc} and {x} are not composable") from None
        return acc

    def left(self, p: int, a: int) -> int:
        x = int(self.restrict[p, a])
        if x < 0:
            raise DomainError(f"object {p} is not below dom({a}) = {self.d(a)}")
        return x

    def right(self, a: int, q: int) -> int:
        return int(self.inv[self.left(q, int(self.inv[a]))])

    def leq(self, a: int, b: int) -> bool:
        x = self.restrict[self.dom[a], b]
        return bool(x == a)

    def hom(self, p: int, q: int) -> list[int]:
        return [a for a in range(self.size) if self.dom[a] == p and self.cod[a] == q]

    # conjugation tables, computed once
    def theta_tables(self) -> tuple[np.ndarray, np.ndarray]:
        if self._theta is None:
            n, m = self.size, self.objects
            vt = np.full((n, m), -1, dtype=np.int64)
            defined = self.restrict.T >= 0
            rows, cols = np.nonzero(defined)
            vt[rows, cols] = self.cod[self.restrict.T[rows, cols]]
            # Theta[a, p] = vartheta[a, theta[p, dom(a)]]
            proj = self.palg.theta[:, self.dom].T          # (n, m): p theta_{dom a}
            Th = np.take_along_axis(vt, proj, axis=1)
            self._theta = (vt, Th)
        return self._theta

    def to_json(self) -> dict:
        rs = np.argwhere(self.restrict >= 0)
        doc = {
            "palg": self.palg.to_json(),
            "morphisms": [{"dom": int(d), "cod": int(c)} for d, c in zip(self.dom, self.cod)],
            "identity": self.identity.tolist(),
            "compose": [[a, b, c] for (a, b), c in sorted(self.compose.items())],
            "invert": self.inv.tolist(),
            "restrict": [[int(p), int(a), int(self.restrict[p, a])] for p, a in rs],
        }
        if self.labels is not None:
            doc["labels"] = list(self.labels)
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "OrderedGroupoid":
        try:
            P = ProjectionAlgebra.from_json(doc["palg"])
            morph = doc["morphisms"]
            n = len(morph)
            restrict = np.full((P.size, n), -1, dtype=np.int64)
            for p, a, x in doc["restrict"]:
                restrict[p, a] = x
            return cls(P, doc["identity"], [m["dom"] for m in morph], [m["cod"] for m in morph],
                       doc["invert"], {(a, b): c for a, b, c in doc["compose"]}, restrict,
                       doc.get("labels"))
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise StructuralError(f"bad groupoid document: {exc}") from exc

    def same_tables(self, other: "OrderedGroupoid") -> bool:
        return first_groupoid_difference(self, other) is None


def first_groupoid_difference(G: OrderedGroupoid, H: OrderedGroupoid):
    if not G.palg.same_tables(H.palg):
        return ("palg", None)
    for name in ("identity", "dom", "cod", "inv", "restrict"):
        x, y = getattr(G, name), getattr(H, name)
        if x.shape != y.shape:
            return (name, "shape")
        diff = np.argwhere(x != y)
        if len(diff):
            return (name, tuple(int(i) for i in diff[0]))
    if G.compose != H.compose:
        keys = sorted(set(G.compose) ^ set(H.compose)) or sorted(
            k for k in G.compose if G.compose[k] != H.compose[k])
        return ("compose", keys[0])
    return None


def groupoid_of(S: StarSemigroup) -> OrderedGroupoid:
    """Groupoid of S: dom a = aa*, cod a = a*a, composition is the product, inverse is star,
    and left restriction is left multiplication by a projection."""
    P = projection_algebra_of(S)
    proj = special_elements(S).projections
    pos = {p: i for i, p in enumerate(proj)}
    idx = np.arange(S.size)
    mul = S.mul.astype(np.int64)
    star = S.star.astype(np.int64)
    dom = np.array([pos[int(x)] for x in mul[idx, star]])
    cod = np.array([pos[int(x)] for x in mul[star, idx]])
    compose = {}
    by_dom: dict[int, list[int]] = {}
    for b in range(S.size):
        by_dom.setdefault(int(dom[b]), []).append(b)
    for a in range(S.size):
        for b in by_dom.get(int(cod[a]), ()):
            compose[(a, b)] = int(mul[a, b])
    leq = P.theta[:, :] == np.arange(P.size)[:, None]          # leq[p, q]: p <= q
    restrict = np.where(leq[:, dom], mul[np.array(proj)], -1)
    return OrderedGroupoid(P, np.array(proj), dom, cod, star, compose, restrict, S.labels)


def restrict(G: OrderedGroupoid, side: str, obj: int, a: int) -> int:
    if side == "left":
        return G.left(obj, a)
    if side == "right":
        return G.right(a, obj)
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


@dataclass(frozen=True)
class ThetaMaps:
    vartheta: dict[int, int]     # on the down-set of dom(a)
    Theta: tuple[int, ...]       # on all objects


def theta_of(G: OrderedGroupoid, a: int, S: StarSemigroup | None = None) -> ThetaMaps:
    """Conjugation maps of ``a``. When the semigroup is supplied, both maps are
    cross-checked against ``p -> a* p a``."""
    vt, Th = G.theta_tables()
    vartheta = {p: int(vt[a, p]) for p in range(G.objects) if vt[a, p] >= 0}
    Theta = tuple(int(x) for x in Th[a])
    if S is not None:
        proj = G.identity
        sa = int(G.inv[a])
        for p in range(G.objects):
            conj = S.m(sa, int(proj[p]), a)
            if int(proj[Theta[p]]) != conj:
                raise AssertionError(f"Theta of {a} at {p} disagrees with conjugation")
            if p in vartheta and int(proj[vartheta[p]]) != conj:
                raise AssertionError(f"vartheta of {a} at {p} disagrees with conjugation")
    return ThetaMaps(vartheta, Theta)


# ---------------------------------------------------------------- verification

def _structure(G: OrderedGroupoid) -> str | None:
    n, m = G.size, G.objects
    for name in ("dom", "cod", "inv"):
        arr = getattr(G, name)
        if arr.shape != (n,):
            return f"{name} has shape {arr.shape}, expected ({n},)"
    if G.identity.shape != (m,):
        return f"identity has shape {G.identity.shape}, expected ({m},)"
    if ((G.dom < 0) | (G.dom >= m) | (G.cod < 0) | (G.cod >= m)).any():
        return "dom/cod outside the object set"
    if ((G.inv < 0) | (G.inv >= n)).any() or ((G.identity < 0) | (G.identity >= n)).any():
        return "invert/identity outside the morphism set"
    for p in range(m):
        e = G.identity[p]
        if G.dom[e] != p or G.cod[e] != p:
            return f"identity of object {p} has the wrong endpoints"
    if G.restrict.shape != (m, n):
        return f"restrict has shape {G.restrict.shape}, expected ({m}, {n})"
    if ((G.restrict < -1) | (G.restrict >= n)).any():
        return "restrict value outside the morphism set"
    leq = G.palg.theta == np.arange(m)[:, None]
    should = leq[:, G.dom]
    bad = np.argwhere(should != (G.restrict >= 0))
    if len(bad):
        p, a = (int(x) for x in bad[0])
        return f"restrict[{p}, {a}] defined iff {p} <= dom({a}) fails"
    for (a, b), c in G.compose.items():
        if not (0 <= a < n and 0 <= b < n and 0 <= c < n):
            return f"compose entry ({a},{b}) -> {c} out of range"
        if G.cod[a] != G.dom[b]:
            return f"compose entry ({a},{b}) for a non-composable pair"
    count = np.bincount(G.dom, minlength=m) @ np.bincount(G.cod, minlength=m)
    if len(G.compose) != count:
        return f"compose has {len(G.compose)} entries, expected {count} composable pairs"
    return None


def verify_ordered_groupoid(G: OrderedGroupoid, groupoid_assoc: bool = True) -> VerificationReport:
    """Groupoid laws, the restriction axioms O1'-O5', and the four G1 conditions.

    Witness shapes: ``(p, a)``, ``(p, a, b)`` for the O-laws and ``(a, p, r)``
    for G1 (``r`` is the point the two maps disagree at).
    """
    rep = VerificationReport("groupoid")
    err = _structure(G)
    if err is not None:
        rep.structural_error = err
        return rep
    n, m = G.size, G.objects
    T = G.palg.theta
    leq = T == np.arange(m)[:, None]
    C, R, inv = G.compose, G.restrict, G.inv

    # groupoid laws
    w = None
    for a in range(n):
        if C[(int(G.identity[G.dom[a]]), a)] != a or C[(a, int(G.identity[G.cod[a]]))] != a:
            w = (a,)
            break
    rep.record("identity", w)
    w = None
    for a in range(n):
        if G.dom[inv[a]] != G.cod[a] or C[(a, int(inv[a]))] != G.identity[G.dom[a]]:
            w = (a,)
            break
    rep.record("inverse", w)
    w = next(((a, b) for (a, b), c in sorted(C.items())
              if G.dom[c] != G.dom[a] or G.cod[c] != G.cod[b]), None)
    rep.record("endpoints", w)
    if groupoid_assoc:
        w = None
        by_dom: dict[int, list[int]] = {}
        for b in range(n):
            by_dom.setdefault(int(G.dom[b]), []).append(b)
        for (a, b), ab in sorted(C.items()):
            for c in by_dom.get(int(G.cod[b]), ()):
                if C[(ab, c)] != C[(a, C[(b, c)])]:
                    w = (a, b, c)
                    break
            if w:
                break
        rep.record("groupoid-assoc", w)

    pairs = [(int(p), int(a)) for p, a in np.argwhere(R >= 0)]
    # O1': dom(p|a) = p and cod(p|a) <= cod(a)
    w = next(((p, a) for p, a in pairs
              if G.dom[R[p, a]] != p or not leq[G.cod[R[p, a]], G.cod[a]]), None)
    rep.record("O1'", w)
    # O2': (p|a)^-1 = q|a^-1 with q = cod(p|a)
    w = None
    for p, a in pairs:
        x = R[p, a]
        q = G.cod[x]
        if not leq[q, G.dom[inv[a]]] or inv[x] != R[q, inv[a]]:
            w = (p, a)
            break
    rep.record("O2'", w)
    # O3'
    w = next(((int(G.dom[a]), a) for a in range(n) if R[G.dom[a], a] != a), None)
    rep.record("O3'", w)
    # O4': p <= q <= dom(a) implies p|(q|a) = p|a
    w = None
    for q, a in pairs:
        x = R[q, a]
        for p in range(m):
            if leq[p, q] and R[p, x] != R[p, a]:
                w = (p, q, a)
                break
        if w:
            break
    rep.record("O4'", w)
    # O5': p|(ab) = (p|a)(q|b), q = cod(p|a)
    w = None
    for (a, b), ab in sorted(C.items()):
        for p in range(m):
            if not leq[p, G.dom[a]]:
                continue
            x = R[p, a]
            q = G.cod[x]
            y = R[q, b]
            if y < 0 or C.get((int(x), int(y))) != R[p, ab]:
                w = (p, a, b)
                break
        if w:
            break
    rep.record("O5'", w)
    if not rep.ok:
        return rep

    g1 = _g1(G)
    for law, witness in g1.items():
        rep.record(law, witness)
    truth = {law: witness is None for law, witness in g1.items()}
    rep.record("G1-agree", None if len(set(truth.values())) == 1 else truth)
    return rep


def _g1(G: OrderedGroupoid) -> dict[str, tuple | None]:
    vt, Th = G.theta_tables()
    T = G.palg.theta
    m = G.objects
    leq = T == np.arange(m)[:, None]
    out: dict[str, tuple | None] = {"G1a": None, "G1b": None, "G1c": None, "G1d": None}
    objs = np.arange(m)
    for a in range(G.size):
        ai = G.inv[a]
        # conj[p, r] = r Theta_{a^-1} theta_p Theta_a
        conj = Th[a][T[Th[ai]][:, objs].T]
        # lhs[p, r] = r theta_{p Theta_a}
        if out["G1b"] is None:
            lhs = T[:, Th[a]].T
            bad = np.argwhere(lhs != conj)
            if len(bad):
                out["G1b"] = (a, int(bad[0][0]), int(bad[0][1]))
        if out["G1a"] is None:
            below = np.flatnonzero(vt[a] >= 0)
            lhs = T[:, vt[a, below]].T
            bad = np.argwhere(lhs != conj[below])
            if len(bad):
                out["G1a"] = (a, int(below[bad[0][0]]), int(bad[0][1]))
        if out["G1c"] is None:
            for q in range(m):
                if not leq[q, G.cod[a]]:
                    continue
                x = G.right(a, q)
                bad = np.flatnonzero(Th[x] != T[Th[a], q])
                if len(bad):
                    out["G1c"] = (a, q, int(bad[0]))
                    break
        if out["G1d"] is None:
            below = np.flatnonzero(vt[a] >= 0)
            for p in below:
                for q in below:
                    if vt[a, T[p, q]] != T[vt[a, p], vt[a, q]]:
                        out["G1d"] = (a, int(p), int(q))
                        break
                if out["G1d"] is not None:
                    break
    return out


def mutate_restriction(G: OrderedGroupoid) -> tuple[OrderedGroupoid, tuple[int, int, int]]:
    """Redirect the first proper restriction ``p|a`` (p < dom a) to a different
    morphism with domain p. Returns the mutant and ``(p, a, new_value)``."""
    n = G.size
    for p, a in np.argwhere(G.restrict >= 0):
        p, a = int(p), int(a)
        if p == G.dom[a]:
            continue
        old = int(G.restrict[p, a])
        for x in range(n):
            if x != old and G.dom[x] == p:
                R = G.restrict.copy()
                R[p, a] = x
                H = OrderedGroupoid(G.palg, G.identity, G.dom, G.cod, G.inv, dict(G.compose), R, G.labels)
                return H, (p, a, x)
    raise ValueError("no restriction can be redirected")

