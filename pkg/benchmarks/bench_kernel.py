"""Compare the compiled and pure-Python kernels on polynomial products and age sums.

    python benchmarks/bench_kernel.py [--repeat N] [--suites NAME ...]

With ``--suites`` the named bundled suites are also timed end to end, once
per backend, in a subprocess with ``PLIABLE_PURE_PYTHON`` set accordingly.
"""
from __future__ import annotations

import argparse
import itertools
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

from pliable.algebra.kernel import age_numerators, backends, mul_terms


def random_terms(rng, nsym, nterms, maxdeg):
    out = {}
    while len(out) < nterms:
        e = tuple(rng.randint(0, maxdeg) for _ in range(nsym))
        out[e] = Fraction(rng.randint(-50, 50) or 1, rng.choice([1, 1, 2, 3]))
    return out


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def workloads(seed):
    rng = random.Random(seed)
    polys = [(random_terms(rng, 6, n, 4), random_terms(rng, 6, n, 4)) for n in (20, 80, 200)]
    ages = [(r, list(w)) for r in range(2, 25) for w in itertools.product(range(r), repeat=3)]

    def products(impl):
        def run():
            for a, b in polys:
                mul_terms(a, b, 6, impl)
        return run

    def age_sums(impl):
        def run():
            for r, w in ages:
                age_numerators(r, w, impl)
        return run

    return {"poly products (20/80/200 terms)": products, f"age sums ({len(ages)} quotients)": age_sums}


def check_agreement(impls, seed):
    rng = random.Random(seed)
    ref, other = impls["python"], impls["cython"]
    for _ in range(50):
        a, b = random_terms(rng, 4, 15, 3), random_terms(rng, 4, 15, 3)
        if mul_terms(a, b, 4, ref) != mul_terms(a, b, 4, other):
            raise SystemExit("backends disagree on a product")
    for r in range(2, 20):
        for w in itertools.product(range(r), repeat=3):
            if age_numerators(r, list(w), ref) != age_numerators(r, list(w), other):
                raise SystemExit(f"backends disagree on ages for r={r} w={w}")


def time_suite(name, pure):
    env = dict(os.environ, PLIABLE_PURE_PYTHON="1" if pure else "0")
    cmd = [sys.executable, "-m", "pliable.cli", "run", "--suite", name]
    t = time.perf_counter()
    proc = subprocess.run(cmd, env=env, capture_output=True, text=True)
    elapsed = time.perf_counter() - t
    return elapsed, proc.returncode


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--suites", nargs="*", default=[])
    args = p.parse_args(argv)

    impls = backends()
    if "cython" not in impls:
        print("compiled kernel not built; only the pure-Python backend is available")
    else:
        check_agreement(impls, args.seed)
        print("backends agree on sampled products and age sums")
    print(f"{'workload':<36} " + " ".join(f"{n:>10}" for n in impls) + "    speedup")
    for label, make in workloads(args.seed).items():
        times = {n: best_of(make(m), args.repeat) for n, m in impls.items()}
        row = f"{label:<36} " + " ".join(f"{times[n] * 1e3:>8.1f}ms" for n in impls)
        if "cython" in times:
            row += f"    {times['python'] / times['cython']:>6.1f}x"
        print(row)
    for name in args.suites:
        py, rc1 = time_suite(name, True)
        cy, rc2 = time_suite(name, False)
        print(f"suite {name:<29} python {py:>6.2f}s  cython {cy:>6.2f}s  exit {rc1}/{rc2}")


if __name__ == "__main__":
    main()
