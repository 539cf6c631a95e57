#!/usr/bin/env python3
"""Time the gmp-backed rational kernels against the pure-Python fallback.

Runs the same representative workloads in two subprocesses, one with
GKZMIRROR_BACKEND=gmp and one with GKZMIRROR_BACKEND=python, and prints a
side-by-side table.  Results are identical between backends (everything is
exact); only the timings differ.

Usage: python benchmarks/compare_backends.py [--degree 8]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOADS = ["mirror-map", "theorem-sweep", "harmonic-sweep", "inversion"]

_CHILD = r"""
import json, sys, time
import gkzmirror as gm
from gkzmirror import congruence as cg

degree = int(sys.argv[1])
spec, _ = gm.catalog("bvs-33")
out = {"backend": gm.BACKEND}

t0 = time.perf_counter()
qs = [gm.canonical_coordinate(spec, i, degree) for i in range(2)]
checks = [gm.is_integral(q).passed for q in qs]
out["mirror-map"] = time.perf_counter() - t0
assert all(checks)

t0 = time.perf_counter()
cmap = cg.CoeffMap.from_spec(gm.GkzSpec(2, ((2, 1),)))
rep = cg.verify_formal_congruence(cmap, cmap, primes=(2,), s_max=1, m_bound=2)
out["theorem-sweep"] = time.perf_counter() - t0
assert rep.passed

t0 = time.perf_counter()
rep = cg.verify_scaled_harmonic_gap(spec, (3, 3), 2, s_max=2, m_bound=6)
out["harmonic-sweep"] = time.perf_counter() - t0
assert rep.passed

t0 = time.perf_counter()
zs = gm.invert_map(qs)
out["inversion"] = time.perf_counter() - t0
assert [q.compose(zs) for q in qs] == [gm.TruncatedSeries.variable(2, degree, i) for i in range(2)]

print(json.dumps(out))
"""


def run_backend(backend, degree):
    env = dict(os.environ, GKZMIRROR_BACKEND=backend)
    proc = subprocess.run([sys.executable, "-c", _CHILD, str(degree)],
                          env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--degree", type=int, default=8)
    args = parser.parse_args()

    results = {}
    for backend in ("gmp", "python"):
        try:
            results[backend] = run_backend(backend, args.degree)
        except subprocess.CalledProcessError as e:
            if backend == "gmp":
                print("gmp backend unavailable (gmpy2 not importable); "
                      "only the python backend was timed.")
                results[backend] = None
            else:
                print(e.stderr, file=sys.stderr)
                raise

    print(f"degree={args.degree}")
    print(f"{'workload':16} {'gmp (s)':>10} {'python (s)':>12} {'speedup':>9}")
    for w in WORKLOADS:
        py = results["python"][w]
        if results["gmp"] is None:
            print(f"{w:16} {'-':>10} {py:12.3f} {'-':>9}")
        else:
            g = results["gmp"][w]
            print(f"{w:16} {g:10.3f} {py:12.3f} {py / g:8.1f}x")


if __name__ == "__main__":
    main()
