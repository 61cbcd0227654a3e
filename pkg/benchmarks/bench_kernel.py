"""Compare the compiled term-dict kernel against the pure-Python fallback.

Usage: python3 benchmarks/bench_kernel.py

The script re-runs itself in two subprocesses (one per backend, selected via
VERSAL_KIT_PURE) so each worker imports versalkit exactly once.
"""

import importlib
import json
import os
import subprocess
import sys
import time
from fractions import Fraction
from random import Random


def rand_terms(rng, nterms, nvars, p):
    out = {}
    while len(out) < nterms:
        m = tuple(rng.randrange(6) for _ in range(nvars))
        out[m] = rng.randint(1, p - 1) if p else Fraction(rng.randint(-9, 9) or 1)
    return out


def timed(fn, reps=1):
    best = None
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


def run_worker():
    kernel = importlib.import_module("versalkit.kernel")
    from versalkit import PolyRing, QQ, Singularity, miniversal, parse_poly

    rng = Random(11)
    a_q = rand_terms(rng, 200, 3, 0)
    b_q = rand_terms(rng, 200, 3, 0)
    a_p = rand_terms(rng, 200, 3, 101)
    b_p = rand_terms(rng, 200, 3, 101)

    results = {"backend": kernel.backend_name()}
    results["mul 200x200 terms, rationals"] = timed(
        lambda: [kernel.mul_terms(a_q, b_q, 0) for _ in range(20)], reps=3)
    results["mul 200x200 terms, mod 101"] = timed(
        lambda: [kernel.mul_terms(a_p, b_p, 101) for _ in range(20)], reps=3)

    R = PolyRing(("x", "y"), QQ, "negdegrevlex")

    def tjurina_pair():
        for f in ("x^3 + y^5", "x^3 + y^7 + x*y^5"):
            Singularity(R, [parse_poly(f, R)]).tjurina_algebra()

    results["tjurina algebra, two curves"] = timed(tjurina_pair, reps=3)
    results["miniversal family to order 3"] = timed(
        lambda: miniversal(Singularity(R, [parse_poly("x^3 + x*y^3", R)]),
                           order=3))
    print(json.dumps(results))


def main():
    if "--worker" in sys.argv:
        run_worker()
        return
    rows = []
    for pure in (0, 1):
        env = dict(os.environ)
        if pure:
            env["VERSAL_KIT_PURE"] = "1"
        else:
            env.pop("VERSAL_KIT_PURE", None)
        res = subprocess.run([sys.executable, __file__, "--worker"], env=env,
                             capture_output=True, text=True, check=True)
        rows.append(json.loads(res.stdout))
    fast, slow = rows
    width = max(len(k) for k in fast if k != "backend")
    print("%-*s  %12s  %12s  %8s" % (width, "workload", fast["backend"],
                                     slow["backend"], "speedup"))
    for key in fast:
        if key == "backend":
            continue
        f, s = fast[key], slow[key]
        print("%-*s  %10.4fs  %10.4fs  %7.2fx" % (width, key, f, s, s / f))


if __name__ == "__main__":
    main()
