"""Time multiplication-table construction for partition and Brauer monoids.

    python3 scripts/tabulation_timings.py [--max-full 3] [--max-brauer 5]
"""
import argparse
import time

from regstar import partition_monoid


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-full", type=int, default=3)
    ap.add_argument("--max-brauer", type=int, default=5)
    args = ap.parse_args()
    print(f"{'family':<8}{'n':>3}{'size':>8}{'dtype':>8}{'MiB':>9}{'secs':>9}")
    for family, top in (("full", args.max_full), ("brauer", args.max_brauer)):
        for n in range(1, top + 1):
            t = time.perf_counter()
            S = partition_monoid(n, family)
            dt = time.perf_counter() - t
            print(f"{family:<8}{n:>3}{S.size:>8}{str(S.mul.dtype):>8}"
                  f"{S.mul.nbytes / 2**20:>9.2f}{dt:>9.2f}")


if __name__ == "__main__":
    main()
