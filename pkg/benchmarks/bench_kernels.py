"""Time the compiled scan kernels against the pure-Python fallback.

Runs row_popcounts / srg_scan / triangle spectrum on a few collinearity
graphs with each available backend and prints the medians side by side.

    python3 benchmarks/bench_kernels.py [--repeat N] [--big] [--threads T]
"""

import argparse
import statistics
import time

from polarswitch import kernels
from polarswitch.polar import polar_create

GRAPHS = [("sp", 3, 2), ("o-minus", 3, 2), ("sp", 3, 3)]
BIG = [("u-even", 3, 4)]

OPS = [
    ("popcounts", lambda adj, t: kernels.row_popcounts(adj)),
    ("srg_scan", lambda adj, t: kernels.srg_scan(adj, threads=t)),
    ("triangles", lambda adj, t: kernels.triangle_spectrum_counts(adj,
                                                                  threads=t)),
]


def median_time(fn, repeat):
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--big", action="store_true",
                    help="include the 693-vertex unitary graph")
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    backends = [name for name, _ in kernels.available_backends()]
    print(f"backends: {', '.join(backends)}   threads: {args.threads}   "
          f"median of {args.repeat}")
    specs = GRAPHS + (BIG if args.big else [])
    header = f"{'graph':<14} {'op':<10}" + "".join(
        f"{b:>12}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for kind, d, q in specs:
        space = polar_create(kind, d, q)
        adj = space.collinearity_graph().adj
        name = f"{space.name} v={space.collinearity_graph().n}"
        for op_name, op in OPS:
            row = f"{name:<14} {op_name:<10}"
            times = []
            for bname in backends:
                with kernels.forced_backend(bname):
                    dt = median_time(lambda: op(adj, args.threads),
                                     args.repeat)
                times.append(dt)
                row += f"{dt * 1e3:>10.2f}ms"
            if len(times) == 2 and times[0] > 0:
                row += f"{times[1] / times[0]:>9.1f}x"
            print(row, flush=True)


if __name__ == "__main__":
    main()
