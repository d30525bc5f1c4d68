"""Largest idempotent-separating congruence and projection closure of a partition monoid.

    python3 scripts/mu_closure.py [--n 3] [--family full]
"""
import argparse
import time
from collections import Counter

from regstar import partition_monoid, special_elements
from regstar.core import mu_congruence, projection_closure


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--family", default="full", choices=["full", "brauer"])
    args = ap.parse_args()
    S = partition_monoid(args.n, args.family)
    t = time.perf_counter()
    mu = mu_congruence(S)
    print(f"mu: {mu.class_count} classes on {S.size} elements"
          f" ({'identity' if mu.is_identity() else 'nontrivial'}) in {time.perf_counter() - t:.2f}s")
    t = time.perf_counter()
    C = projection_closure(S)
    ok = C.validate(S, set(special_elements(S).f_pairs))
    lengths = Counter(len(w) for w in C.factorization.values())
    print(f"closure: {len(C.elements)} of {S.size} elements in {time.perf_counter() - t:.2f}s, factorizations {'valid' if ok else 'INVALID'}")
    print("word lengths: " + "  ".join(f"{k}:{lengths[k]}" for k in sorted(lengths)))


if __name__ == "__main__":
    main()
