"""Throughput comparison of the window-counting backends.

Runs the same coincidence-counting workload through the compiled kernel
and the vectorized numpy fallback, checks that the tallies are
bit-identical, and reports windows/second for each. The workload is the
hot path of every counting command: per-window photon-pair sampling,
loss thinning, and click-pattern tallying.

Usage:
    python3 benchmarks/bench_counting.py [--windows N] [--repeat R]
"""

import argparse
import time

from qharper import DetectionChannel, SourceModel, simulate_counts
from qharper.counting import available_backends

WINDOW_NS = 2.0


def run_once(backend, source, det, duration, seed):
    t0 = time.perf_counter()
    rec = simulate_counts(source, det, det, duration, seed=seed,
                          backend=backend)
    return time.perf_counter() - t0, rec


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--windows", type=float, default=2e7,
                    help="windows per timed run (default 2e7)")
    ap.add_argument("--repeat", type=int, default=3,
                    help="timed repetitions per backend, best is kept")
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args(argv)

    source = SourceModel(mu=0.1056, schmidt_k=1.0, window_ns=WINDOW_NS)
    det = DetectionChannel(transmission=0.05, dark_prob=1e-6)
    duration = args.windows * WINDOW_NS * 1e-9

    backends = available_backends()
    print("backends: %s" % ", ".join(backends))
    print("windows per run: %d, repeats: %d" % (round(args.windows),
                                                args.repeat))

    results = {}
    for backend in backends:
        best = float("inf")
        rec = None
        for _ in range(args.repeat):
            dt, rec = run_once(backend, source, det, duration, args.seed)
            best = min(best, dt)
        results[backend] = (best, rec)
        rate = rec.n_windows / best
        print("%-8s %7.3f s   %10.2f M windows/s   coincidences=%d"
              % (backend, best, rate / 1e6, rec.coincidences))

    recs = [rec for _, rec in results.values()]
    if len(recs) == 2:
        same = recs[0] == recs[1]
        print("tallies bit-identical across backends: %s" % same)
        if not same:
            raise SystemExit("backend mismatch: %r vs %r" % tuple(recs))
        t_cy = results.get("cython", (None,))[0]
        t_np = results.get("numpy", (None,))[0]
        if t_cy and t_np:
            print("speedup (numpy time / cython time): %.2fx" % (t_np / t_cy))
    else:
        print("only one backend available; no comparison run")


if __name__ == "__main__":
    main()
