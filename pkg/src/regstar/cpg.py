"""Chained projection groupoids: a projection algebra, an ordered groupoid on it,
and an evaluation map sending each F-related pair ``(p, q)`` to a morphism
``p -> q``.

From a triple the semigroup product is rebuilt as

    a * b = (a | p') o eps[p', q'] o (q' | b),   p = cod a, q = dom b,
    p' = q theta_p,  q' = p theta_q,

and the round trip semigroup -> triple -> semigroup is checked cell by cell.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import chains
from .core import StarSemigroup, special_elements, verify_star_laws
from .diagram import G2PrimeCounterexample, Partition, g2prime_counterexample, product, star
from .groupoid import OrderedGroupoid, first_groupoid_difference, groupoid_of, verify_ordered_groupoid
from .palg import ProjectionAlgebra, relations_of, semilattice_algebra, verify_axioms, check_morphism
from .report import StructuralError, VerificationReport


class CoherenceError(RuntimeError):
    pass


@dataclass(eq=False)
class EvaluationTable:
    G: OrderedGroupoid
    eps: dict[tuple[int, int], int]
    coherent: bool = field(default=False, compare=False)

    @property
    def P(self) -> ProjectionAlgebra:
        return self.G.palg

    def ev(self, p: int, q: int) -> int:
        return self.eps[(p, q)]

    def eps_array(self) -> np.ndarray:
        m = self.P.size
        out = np.full((m, m), -1, dtype=np.int64)
        for (p, q), x in self.eps.items():
            out[p, q] = x
        return out

    def to_json(self) -> dict:
        return {"palg": self.P.to_json(), "groupoid": self.G.to_json(),
                "eps": [[p, q, x] for (p, q), x in sorted(self.eps.items())]}

    @classmethod
    def from_json(cls, doc: dict) -> "EvaluationTable":
        try:
            G = OrderedGroupoid.from_json(doc["groupoid"])
            P = ProjectionAlgebra.from_json(doc["palg"])
            eps = {(int(p), int(q)): int(x) for p, q, x in doc["eps"]}
        except (KeyError, TypeError, ValueError) as exc:
            raise StructuralError(f"bad triple document: {exc}") from exc
        if not P.same_tables(G.palg):
            raise StructuralError("projection algebra block disagrees with the groupoid's objects")
        return cls(G, eps)

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def extract_evaluation(S: StarSemigroup) -> EvaluationTable:
    """Triple of S: eps[p, q] is the product pq for every F-related pair."""
    G = groupoid_of(S)
    spec = special_elements(S)
    pos = {p: i for i, p in enumerate(spec.projections)}
    eps = {(pos[p], pos[q]): int(S.mul[p, q]) for p, q in spec.f_pairs}
    return EvaluationTable(G, eps)


def evaluate_chain(E: EvaluationTable, c) -> int:
    """Compose generator images along the word, left to right."""
    x = int(E.G.identity[c[0]])
    for i in range(len(c) - 1):
        x = E.G.comp(x, E.eps[(c[i], c[i + 1])])
    return x


# ---------------------------------------------------------------- evaluation axioms

def _eps_structure(E: EvaluationTable) -> str | None:
    P = E.P
    for p in range(P.size):
        for q in range(P.size):
            if P.F(p, q) and (p, q) not in E.eps:
                return f"eps undefined on the F-related pair ({p},{q})"
    for (p, q), x in E.eps.items():
        if not (0 <= p < P.size and 0 <= q < P.size and P.F(p, q)):
            return f"eps defined on ({p},{q}), which is not an F-related pair"
        if not 0 <= x < E.G.size:
            return f"eps({p},{q}) = {x} is not a morphism"
    return None


def verify_evaluation(E: EvaluationTable, samples: int = 10_000, seed: int = 0,
                      max_len: int = 8) -> VerificationReport:
    """E1, E2 and the restriction law, exhaustively on generators and on random words.

    Generator checks are the substantive ones: a word's value is the
    composite of generator values, so respecting the two deletion rules and
    the generator restriction law carries over to all words. The random
    words corroborate that argument.
    """
    rep = VerificationReport("eps")
    rep.notes["seed"] = seed
    rep.notes["samples"] = samples
    err = _eps_structure(E)
    if err is not None:
        rep.structural_error = err
        return rep
    G, P, T = E.G, E.P, E.P.theta
    m = P.size
    pairs = sorted(E.eps)

    rep.record("E1", next(((p,) for p in range(m) if E.eps[(p, p)] != G.identity[p]), None))
    rep.record("endpoints", next(((p, q) for p, q in pairs
                                  if G.dom[E.eps[(p, q)]] != p or G.cod[E.eps[(p, q)]] != q), None))
    if not rep.ok:
        return rep
    # a word (p, q, p) must evaluate like (p)
    rep.record("E2-generators", next(((p, q) for p, q in pairs
                                      if G.comp(E.eps[(p, q)], E.eps[(q, p)]) != G.identity[p]), None))
    rep.record("E4", next(((p, q) for p, q in pairs if E.eps[(q, p)] != G.inv[E.eps[(p, q)]]), None))
    w = None
    for p, q in pairs:
        for r in range(m):
            if P.leq(r, p) and G.restrict[r, E.eps[(p, q)]] != E.eps.get((r, int(T[r, q]))):
                w = (p, q, r)
                break
        if w:
            break
    rep.record("E6-generators", w)
    if not rep.ok:
        return rep

    rng = np.random.default_rng(seed)
    w2 = w6 = None
    for _ in range(samples):
        c = chains.random_path(P, int(rng.integers(1, max_len + 1)), rng)
        d = chains.random_path(P, int(rng.integers(1, max_len + 1)), rng, start=c[-1])
        if w2 is None:
            lhs = evaluate_chain(E, chains.compose_chains(chains._reduce_word(c), chains._reduce_word(d)))
            rhs = G.comp(evaluate_chain(E, c), evaluate_chain(E, d))
            if lhs != rhs:
                w2 = (c, d)
        if w6 is None:
            below = P.down(c[0])
            q = below[int(rng.integers(len(below)))]
            lhs = evaluate_chain(E, chains.restrict_chain(P, q, chains._reduce_word(c)))
            if lhs != G.restrict[q, evaluate_chain(E, c)]:
                w6 = (q, c)
    rep.record("E2-random", w2)
    rep.record("E6-random", w6)
    return rep


# ---------------------------------------------------------------- linked pairs

@dataclass(frozen=True)
class LinkedPair:
    b: int
    e: int
    f: int
    e1: int
    e2: int
    f1: int
    f2: int


def linked_mask(E: EvaluationTable, b: int) -> np.ndarray:
    """mask[e, f] is True iff (e, f) is b-linked."""
    T = E.P.theta
    _, Th = E.G.theta_tables()
    fwd = T[Th[b]] == np.arange(E.P.size)[None, :]            # f == e Theta_b theta_f
    bwd = (T[Th[E.G.inv[b]]] == np.arange(E.P.size)[None, :]).T   # e == f Theta_{b^-1} theta_e
    return fwd & bwd


def _derived(E: EvaluationTable, b: int, e: int, f: int) -> LinkedPair:
    T = E.P.theta
    _, Th = E.G.theta_tables()
    q, r = E.G.d(b), E.G.r(b)
    return LinkedPair(b, e, f, int(T[e, q]), int(Th[E.G.inv[b], f]), int(Th[b, e]), int(T[f, r]))


def linked_pairs(E: EvaluationTable, b: int) -> list[LinkedPair]:
    mask = linked_mask(E, b)
    return [_derived(E, b, int(e), int(f)) for e, f in np.argwhere(mask)]


def is_linked(E: EvaluationTable, b: int, e: int, f: int) -> bool:
    return bool(linked_mask(E, b)[e, f])


def lambda_rho(E: EvaluationTable, lp: LinkedPair) -> tuple[int, int]:
    if not is_linked(E, lp.b, lp.e, lp.f):
        raise ValueError(f"({lp.e},{lp.f}) is not {lp.b}-linked")
    lp = _derived(E, lp.b, lp.e, lp.f)
    G = E.G
    lam = G.comp(E.eps[(lp.e, lp.e1)], G.left(lp.e1, lp.b), E.eps[(lp.f1, lp.f)])
    rho = G.comp(E.eps[(lp.e, lp.e2)], G.left(lp.e2, lp.b), E.eps[(lp.f2, lp.f)])
    return lam, rho


def verify_coherence(E: EvaluationTable) -> VerificationReport:
    """For every morphism b and b-linked pair, check the consequences of linkage and
    that the two composites agree. Witness ``(b, e, f)``."""
    rep = VerificationReport("coherence")
    G, P = E.G, E.P
    rf = relations_of(P)
    w_lp = w_g2 = None
    count = 0
    for b in range(G.size):
        for lp in linked_pairs(E, b):
            count += 1
            q, r = G.d(b), G.r(b)
            if w_lp is None:
                ok = (rf.leqF[lp.e, q] and rf.leqF[lp.f, r]
                      and all(rf.leq[x, q] for x in (lp.e1, lp.e2))
                      and all(rf.leq[y, r] for y in (lp.f1, lp.f2))
                      and all(rf.F[lp.e, x] for x in (lp.e1, lp.e2))
                      and all(rf.F[lp.f, y] for y in (lp.f1, lp.f2))
                      and G.left(lp.e1, b) == G.right(b, lp.f1)
                      and G.left(lp.e2, b) == G.right(b, lp.f2))
                if not ok:
                    w_lp = (b, lp.e, lp.f)
                    continue
            if w_g2 is None:
                lam, rho = lambda_rho(E, lp)
                if lam != rho:
                    w_g2 = (b, lp.e, lp.f)
    rep.record("linked-consequences", w_lp)
    rep.record("G2", w_g2)
    rep.notes["linked_pairs"] = count
    if rep.ok:
        E.coherent = True
    return rep


def with_eps(E: EvaluationTable, p: int, q: int, x: int) -> EvaluationTable:
    """Copy of E with eps[p, q] = x and eps[q, p] = x^-1."""
    eps = dict(E.eps)
    eps[(p, q)] = x
    eps[(q, p)] = int(E.G.inv[x])
    return EvaluationTable(E.G, eps)


def twisted_triple(S: StarSemigroup, edge: tuple[int, int], order: int = 2) -> EvaluationTable:
    """Triple of S x Z_order with eps on one F-edge shifted by the group generator.

    ``edge`` is a pair of projection positions of S. When no restriction of
    the edge reaches a different edge the evaluation axioms survive the
    shift, while a shift along an odd cycle of linked squares breaks
    coherence.
    """
    from .constructions import cyclic_group, direct_product
    k = order
    E = extract_evaluation(direct_product(S, cyclic_group(k)))
    p, q = edge
    proj = special_elements(S).projections
    # projections of the product are (p, 0); their positions follow S's order
    x = int(S.mul[proj[p], proj[q]]) * k + 1
    return with_eps(E, p, q, x)


# ---------------------------------------------------------------- the product

def star_product(E: EvaluationTable, a: int, b: int) -> int:
    G, T = E.G, E.P.theta
    p, q = G.r(a), G.d(b)
    p1, q1 = int(T[q, p]), int(T[p, q])
    return G.comp(G.right(a, p1), E.eps[(p1, q1)], G.left(q1, b))


def reconstruct(E: EvaluationTable, force: bool = False) -> StarSemigroup:
    """Tabulate the product on the morphisms of the groupoid; the involution is inversion.

    Refuses unless ``verify_coherence`` has passed on E; ``force`` skips that
    guard and the result may fail associativity.
    """
    if not (E.coherent or force):
        raise CoherenceError("coherence not certified: run verify_coherence first or pass force=True")
    G = E.G
    n = G.size
    T = E.P.theta
    eps = E.eps_array()
    inv, R, C = G.inv, G.restrict, G.compose
    mul = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        p = G.cod[a]
        p1 = T[G.dom, p]                         # per b
        q1 = T[p, G.dom]
        left_part = inv[R[p1, inv[a]]]           # a | p'
        mid = eps[p1, q1]
        right_part = R[q1, np.arange(n)]         # q' | b
        row = mul[a]
        for b in range(n):
            row[b] = C[(C[(int(left_part[b]), int(mid[b]))], int(right_part[b]))]
    return StarSemigroup(mul, inv.copy(), G.labels)


# ---------------------------------------------------------------- round trips

@dataclass
class RoundTripReport:
    equal: bool
    size: int
    difference: tuple | None = None
    kind: str = "semigroup"

    def summary(self) -> str:
        if self.equal:
            return f"roundtrip: EQUAL ({self.size} elements)"
        return f"roundtrip: DIFFERENT ({self.size} elements) first difference {self.difference}"


def roundtrip(S: StarSemigroup) -> RoundTripReport:
    """Semigroup -> triple -> semigroup, compared as literal tables."""
    if not S.verified:
        rep = verify_star_laws(S)
        if not rep.ok:
            raise ValueError(f"input is not a regular *-semigroup: {rep.first_failure()}")
    E = extract_evaluation(S)
    coh = verify_coherence(E)
    if not coh.ok:
        return RoundTripReport(False, S.size, ("coherence",) + coh.first_failure())
    S2 = reconstruct(E)
    diff = S.first_difference(S2)
    return RoundTripReport(diff is None, S.size, diff)


def first_triple_difference(E: EvaluationTable, F: EvaluationTable):
    d = first_groupoid_difference(E.G, F.G)
    if d is not None:
        return d
    if E.eps != F.eps:
        keys = sorted(set(E.eps) ^ set(F.eps)) or sorted(k for k in E.eps if E.eps[k] != F.eps[k])
        return ("eps", keys[0])
    return None


def roundtrip_triple(E: EvaluationTable) -> RoundTripReport:
    """Triple -> semigroup -> triple. Objects must be listed in ascending order of their
    identity morphisms, the order extraction produces."""
    if not E.coherent:
        coh = verify_coherence(E)
        if not coh.ok:
            return RoundTripReport(False, E.G.size, ("coherence",) + coh.first_failure(), "triple")
    S = reconstruct(E)
    diff = first_triple_difference(E, extract_evaluation(S))
    return RoundTripReport(diff is None, E.G.size, diff, "triple")


# ---------------------------------------------------------------- inverse case

class SemilatticeError(ValueError):
    pass


def meet_groupoid(G: OrderedGroupoid) -> OrderedGroupoid:
    """The same groupoid with object maps replaced by meets in its order."""
    rel = relations_of(G.palg)
    if not rel.is_meet_semilattice:
        raise SemilatticeError("object order is not a meet-semilattice")
    M = semilattice_algebra(rel.leq, G.palg.labels)
    return OrderedGroupoid(M, G.identity, G.dom, G.cod, G.inv, G.compose, G.restrict, G.labels)


def esn(G: OrderedGroupoid, check: bool = True) -> StarSemigroup:
    """Inverse semigroup from an ordered groupoid on a meet-semilattice:
    ``a * b = (a | e) o (e | b)`` with ``e = cod(a) meet dom(b)``."""
    H = meet_groupoid(G)
    if check:
        rp = verify_axioms(H.palg)
        if not rp.ok:
            raise SemilatticeError(f"meet maps fail the projection algebra axioms: {rp.first_failure()}")
        rg = verify_ordered_groupoid(H)
        if not rg.ok:
            raise SemilatticeError(f"not an ordered groupoid on the meet algebra: {rg.first_failure()}")
    n = H.size
    T = H.palg.theta
    mul = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            e = int(T[H.d(b), H.r(a)])
            mul[a, b] = H.comp(H.right(a, e), H.left(e, b))
    return StarSemigroup(mul, H.inv.copy(), H.labels)


@dataclass
class TrivialityReport:
    conditions: dict[str, bool]

    @property
    def agree(self) -> bool:
        return len(set(self.conditions.values())) == 1

    @property
    def trivial(self) -> bool:
        return all(self.conditions.values())

    def summary(self) -> str:
        flags = " ".join(f"{k}={'yes' if v else 'no'}" for k, v in self.conditions.items())
        state = "TRIVIAL" if self.trivial else "NONTRIVIAL"
        agree = "agree" if self.agree else "DISAGREE"
        return f"trivial: {state} ({agree}) [{flags}]"


def eps_image(E: EvaluationTable) -> set[int]:
    """Values of eps on all words: closure of the generator images under composition."""
    G = E.G
    image = set(int(x) for x in G.identity) | set(E.eps.values())
    gens = sorted(set(E.eps.values()))
    frontier = list(image)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = G.compose.get((x, g))
                if y is not None and y not in image:
                    image.add(y)
                    new.append(y)
        frontier = new
    return image


def is_trivial(E: EvaluationTable) -> TrivialityReport:
    """Six conditions, each computed its own way."""
    P = E.P
    T = P.theta
    rel = relations_of(P)
    m = P.size
    c = {}
    c["theta-symmetric"] = bool(np.array_equal(T, T.T))
    c["leqF=leq"] = bool(np.array_equal(rel.leqF, rel.leq))
    c["F=diagonal"] = bool(np.array_equal(rel.F, np.eye(m, dtype=bool)))
    c["chains-trivial"] = all(len(chains.reduce(P, (p, q))) == 1 for p, q in E.eps)
    c["eps-image=P"] = eps_image(E) == set(int(x) for x in E.G.identity)
    if not E.coherent and not verify_coherence(E).ok:
        c["inverse"] = False
    else:
        spec = special_elements(reconstruct(E))
        c["inverse"] = spec.idempotents == spec.projections
    return TrivialityReport(c)


# ---------------------------------------------------------------- morphisms

def check_cpg_morphism(phi_obj, phi_mor, E: EvaluationTable, F: EvaluationTable) -> VerificationReport:
    """Object map is a projection algebra morphism, the morphism map is a functor
    preserving inverses and left restrictions, and eps is carried to eps."""
    rep = VerificationReport("cpg-morphism")
    phi_obj = np.asarray(phi_obj, dtype=np.int64)
    phi_mor = np.asarray(phi_mor, dtype=np.int64)
    if phi_mor.shape != (E.G.size,) or ((phi_mor < 0) | (phi_mor >= F.G.size)).any():
        rep.structural_error = "morphism map is not total into the target"
        return rep
    rep.merge(check_morphism(phi_obj, E.P, F.P))
    if rep.structural_error is not None:
        return rep
    G, H = E.G, F.G
    rep.record("identities", next(((p,) for p in range(G.objects)
                                   if phi_mor[G.identity[p]] != H.identity[phi_obj[p]]), None))
    rep.record("endpoints", next(((a,) for a in range(G.size)
                                  if H.dom[phi_mor[a]] != phi_obj[G.dom[a]]
                                  or H.cod[phi_mor[a]] != phi_obj[G.cod[a]]), None))
    if not rep.ok:
        return rep
    rep.record("compose", next(((a, b) for (a, b), c in sorted(G.compose.items())
                                if H.compose[(int(phi_mor[a]), int(phi_mor[b]))] != phi_mor[c]), None))
    rep.record("inverse", next(((a,) for a in range(G.size) if H.inv[phi_mor[a]] != phi_mor[G.inv[a]]), None))
    rep.record("restrict", next(((int(p), int(a)) for p, a in np.argwhere(G.restrict >= 0)
                                 if H.restrict[phi_obj[p], phi_mor[a]] != phi_mor[G.restrict[p, a]]), None))
    rep.record("eps", next(((p, q) for (p, q), x in sorted(E.eps.items())
                            if F.eps.get((int(phi_obj[p]), int(phi_obj[q]))) != phi_mor[x]), None))
    return rep


def semigroup_morphism_to_cpg(S: StarSemigroup, T: StarSemigroup, phi) -> VerificationReport:
    """Check a map of elements against both triples; the object map is its restriction
    to projections."""
    E, F = extract_evaluation(S), extract_evaluation(T)
    pos_t = {int(x): i for i, x in enumerate(F.G.identity)}
    phi = np.asarray(phi, dtype=np.int64)
    try:
        phi_obj = [pos_t[int(phi[x])] for x in E.G.identity]
    except KeyError:
        rep = VerificationReport("cpg-morphism")
        rep.structural_error = "a projection is not sent to a projection"
        return rep
    return check_cpg_morphism(phi_obj, phi, E, F)


# ---------------------------------------------------------------- linked-pair counterexample

@dataclass(frozen=True)
class G2PrimeReport:
    data: G2PrimeCounterexample
    lp: dict[str, bool]
    left_product: Partition
    right_product: Partition
    linked: bool

    @property
    def products_differ(self) -> bool:
        return self.left_product != self.right_product

    def lines(self) -> list[str]:
        d = self.data
        out = [f"b  = {d.b}", f"e = e1 = f1 = {d.e}", f"e2 = f2 = {d.e2}", f"f  = {d.f}"]
        out += [f"{k}: {'holds' if v else 'FAILS'}" for k, v in self.lp.items()]
        out.append(f"e.e1.b.f1.f = {self.left_product}")
        out.append(f"e.e2.b.f2.f = {self.right_product}")
        out.append(f"products {'differ' if self.products_differ else 'agree'}; "
                   f"(e,f) is {'' if self.linked else 'not '}b-linked")
        return out


def g2prime_check() -> G2PrimeReport:
    """Evaluate the degree-4 sextuple directly with partition products.

    With x theta_y = y x y, a projection x is below y iff x = yxy, and
    x <=_F y iff x = xyx.
    """
    d = g2prime_counterexample()
    b, bs = d.b, star(d.b)
    q = r = product(b, bs)

    def leq(x, y):
        return product(y, x, y) == x

    def leqF(x, y):
        return product(x, y, x) == x

    def F(x, y):
        return leqF(x, y) and leqF(y, x)
    es, fs = (d.e1, d.e2), (d.f1, d.f2)
    lp = {
        "LP1": leqF(d.e, q) and leqF(d.f, r),
        "LP2": all(leq(x, q) for x in es) and all(leq(y, r) for y in fs),
        "LP3": all(F(d.e, x) for x in es) and all(F(d.f, y) for y in fs),
        "LP4": all(product(x, b) == product(b, y) for x, y in zip(es, fs)),
    }
    # linked: f = f (b* e b) f and e = e (b f b*) e
    linked = product(d.f, bs, d.e, b, d.f) == d.f and product(d.e, b, d.f, bs, d.e) == d.e
    return G2PrimeReport(d, lp, product(d.e, d.e1, b, d.f1, d.f), product(d.e, d.e2, b, d.f2, d.f), linked)
