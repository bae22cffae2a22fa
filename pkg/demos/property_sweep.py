"""Sweep the structural laws over every closure within small bounds.

Each suite enumerates closures up to the given term size, environment
length and maximum sort, and returns the counterexamples it finds; an
empty list is a desk-scale certificate.  The release gate runs the same
suites at larger bounds (term size 4, environments of length 2).
"""

import time

from lamcalc import SUITES, Params, run_suite

P = Params()
SIZE, ENVLEN, MAXSORT = 3, 1, 1


def main() -> None:
    print(f"bounds: term size {SIZE}, env length {ENVLEN}, sorts 0..{MAXSORT}")
    print()
    width = max(map(len, SUITES))
    for name in sorted(SUITES):
        start = time.perf_counter()
        bad = run_suite(name, P, SIZE, ENVLEN, MAXSORT)
        elapsed = time.perf_counter() - start
        verdict = "clean" if not bad else f"{len(bad)} counterexamples"
        print(f"  {name:<{width}}  {verdict:>8}  ({elapsed:5.2f}s)")
        for line in bad[:3]:
            print("      ", line)


if __name__ == "__main__":
    main()
