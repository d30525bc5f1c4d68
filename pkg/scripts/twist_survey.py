"""Shift eps on one F-edge of S x Z_k by the group generator and classify the result.

Each edge lands in one of three buckets: the evaluation axioms already fail,
they hold but coherence fails, or everything still holds.

    python3 scripts/twist_survey.py [--order 2] [--samples N]
"""
import argparse
from collections import Counter

from regstar import fp_semigroup, partition_monoid, projection_algebra_of, special_elements, verify_coherence, verify_evaluation
from regstar.cpg import twisted_triple
from regstar.palg import kinyon


def survey(name, S, order, samples):
    proj = special_elements(S).projections
    P = projection_algebra_of(S)
    tally = Counter()
    for p in range(len(proj)):
        for q in range(p + 1, len(proj)):
            if not P.F(p, q):
                continue
            E = twisted_triple(S, (p, q), order)
            ev = verify_evaluation(E, samples=samples)
            if not ev.ok:
                kind = "E-fail"
            elif not verify_coherence(E).ok:
                kind = "G2-fail"
            else:
                kind = "pass"
            tally[kind] += 1
            print(f"{name:<10} edge ({p},{q})  {kind}")
    print(f"{name:<10} total  " + "  ".join(f"{k}={tally[k]}" for k in ("E-fail", "G2-fail", "pass")))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--order", type=int, default=2)
    ap.add_argument("--samples", type=int, default=500)
    args = ap.parse_args()
    for name, S in [("P2", partition_monoid(2)), ("B3", partition_monoid(3, "brauer")),
                    ("F(kinyon)", fp_semigroup(kinyon()))]:
        survey(name, S, args.order, args.samples)


if __name__ == "__main__":
    main()
