"""Compare the compiled and pure-Python kernel backends.

Each backend runs in its own interpreter, since the backend is fixed at
import time by ``KEMPETORUS_NO_NUMBA``.  Usage::

    python benchmarks/bench_kernels.py [--repeat 3] [--json out.json]

Timings exclude compilation: every workload runs once untimed first.
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
from kempetorus import _kernels, build_shifted_grid, build_circulant
from kempetorus.coloring import random_proper, apply_move, KempeMove, verify_certificate
from kempetorus.fourcolor import solve_4coloring
from kempetorus.reconfig import kempe_classes, certify_equivalence
from kempetorus.wsk import run_chain

repeat = int(sys.argv[1])
t33 = build_shifted_grid(3, 3, 1)
t66 = build_shifted_grid(6, 6, 1)
t77 = build_shifted_grid(7, 7, 1)
c37 = build_circulant(37, 10)
a, b = random_proper(t77, 5, 1), random_proper(t77, 5, 2)
cert = certify_equivalence(t77, a, b)

workloads = {
    "wsk 20k steps T[7x7,1]": lambda: run_chain(t77, 5, 20_000, 0),
    "classes k=5 T[3x3,1]": lambda: kempe_classes(t33, 5, quotient=True),
    "4-coloring T[6x6,1]": lambda: solve_4coloring(t66),
    "4-coloring refutation C37": lambda: solve_4coloring(c37),
    "random_proper x200 T[7x7,1]": lambda: [random_proper(t77, 5, s) for s in range(200)],
    "verify certificate x50": lambda: [verify_certificate(t77, a, cert) for _ in range(50)],
}
out = {"backend": _kernels.BACKEND, "times": {}}
for name, fn in workloads.items():
    fn()
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    out["times"][name] = best
print(json.dumps(out))
"""


def run_backend(no_numba, repeat):
    env = dict(os.environ, KEMPETORUS_NO_NUMBA="1" if no_numba else "0")
    res = subprocess.run(
        [sys.executable, "-c", WORKER, str(repeat)], env=env, capture_output=True, text=True, check=True
    )
    return json.loads(res.stdout)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--json", help="write the raw timings here")
    args = p.parse_args(argv)
    fast = run_backend(False, args.repeat)
    slow = run_backend(True, args.repeat)
    width = max(len(k) for k in fast["times"])
    print(f"{'workload':<{width}}  {fast['backend']:>10}  {slow['backend']:>10}  speedup")
    for name, t in fast["times"].items():
        s = slow["times"][name]
        print(f"{name:<{width}}  {t:10.4f}  {s:10.4f}  {s / t:7.1f}x")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"compiled": fast, "pure": slow}, fh, indent=2)


if __name__ == "__main__":
    main()
