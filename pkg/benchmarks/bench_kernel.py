"""Compare the pure-Python and compiled bucket kernels.

Runs the same component enumeration on both backends at a ladder of
bounds, checks that the results are bit-identical, and prints a timing
table.  Usage:

    python3 benchmarks/bench_kernel.py [--bounds 1000,4000,16000,64000]
"""

import argparse
import time

from fleajump.kernel import available_backends, run_buckets
from fleajump.lattice import quadruple_of, triple
from fleajump.orbits import components, reduce
from fleajump.search import FIXTURES


def bench(points, bounds):
    reduced, _ = reduce(quadruple_of(triple(*points)))
    starts = [tuple(c.start) for c in components(reduced)]
    backends = available_backends()
    print("backends:", ", ".join(backends))
    header = ("bound", "states") + tuple("%s (s)" % b for b in backends)
    if len(backends) == 2:
        header += ("speedup",)
    print(("%10s %10s" + " %12s" * (len(header) - 2)) % header)
    for bound in bounds:
        times = {}
        results = []
        for backend in backends:
            t0 = time.perf_counter()
            out = [run_buckets([s], bound, backend=backend) for s in starts]
            times[backend] = time.perf_counter() - t0
            results.append(
                [(bytes(reached), visited) for reached, visited, *_ in out]
            )
        assert all(r == results[0] for r in results[1:]), "backends disagree"
        visited = sum(v for _, v in results[0])
        row = "%10d %10d" + " %12.4f" * len(times)
        values = (bound, visited, *(times[b] for b in backends))
        if len(times) == 2:
            row += " %11.1fx"
            values += (times["pure"] / times["compiled"],)
        print(row % values)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument(
        "--bounds",
        default="1000,4000,16000,64000",
        help="comma-separated s bounds to run",
    )
    ap.add_argument("--fixture", default="G", choices=sorted(FIXTURES))
    args = ap.parse_args()
    bounds = [int(b) for b in args.bounds.split(",")]
    bench(FIXTURES[args.fixture], bounds)


if __name__ == "__main__":
    main()
