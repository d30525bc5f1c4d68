"""Run verify -> extract -> verify -> reconstruct -> round trip over the bundled families.

    python3 scripts/pipeline.py [--samples N] [--seed S] [--max-partition 3]
"""
import argparse
import time

import numpy as np

from regstar import (SimpleGraph, adjacency_semigroup, extract_evaluation, fp_semigroup,
                     partition_monoid, rees_star_semigroup, roundtrip, verify_coherence,
                     verify_evaluation, verify_star_laws)
from regstar.constructions import cyclic_group, random_sandwich
from regstar.palg import kinyon


def instances(max_partition):
    for n in range(1, max_partition + 1):
        yield f"P{n}", lambda n=n: partition_monoid(n)
    for n in range(2, 5):
        yield f"B{n}", lambda n=n: partition_monoid(n, "brauer")
    yield "F(kinyon)", lambda: fp_semigroup(kinyon())
    yield "A(path4)", lambda: adjacency_semigroup(SimpleGraph.undirected(4, [(0, 1), (1, 2), (2, 3)]))
    yield "A(K3)", lambda: adjacency_semigroup(SimpleGraph.complete(3))
    rng = np.random.default_rng(7)
    M = random_sandwich(3, cyclic_group(3), rng)
    yield "Rees(Z3,k=3)", lambda: rees_star_semigroup(M)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-partition", type=int, default=3)
    args = ap.parse_args()
    print(f"{'instance':<14}{'size':>6}  {'star':<5}{'E':<5}{'G2':<5}{'trip':<5}{'secs':>7}")
    for name, build in instances(args.max_partition):
        t = time.perf_counter()
        S = build()
        star = verify_star_laws(S)
        E = extract_evaluation(S)
        ev = verify_evaluation(E, samples=args.samples, seed=args.seed)
        co = verify_coherence(E)
        rt = roundtrip(S)
        dt = time.perf_counter() - t

        def mark(ok):
            return "ok" if ok else "FAIL"
        print(f"{name:<14}{S.size:>6}  {mark(star.ok):<5}{mark(ev.ok):<5}{mark(co.ok):<5}"
              f"{mark(rt.equal):<5}{dt:>7.2f}")


if __name__ == "__main__":
    main()
