#!/usr/bin/env python3
"""Benchmark: compiled kernel vs pure-Python fallback on the hot paths.

Measures modular matrix multiplication, flag-orbit construction, and a
full double-coset pass on representative instances.  Run from the repo
root after installing the package:

    python benchmarks/bench_kernels.py [--quick]
"""

from __future__ import annotations

import argparse
import random
import time

from parahoric.concave import generated_function, pseudo_borel_function
from parahoric.groups import _kernels_py
from parahoric.groups import kernels as selected
from parahoric.groups.group import build_group
from parahoric.groups.subgroups import subgroup_gens


def timeit(fn, *args, repeat=1):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_mat_mul(impl, n, mod, count=200_000):
    rng = random.Random(0)
    mats = [
        tuple(rng.randrange(mod) for _ in range(n * n)) for _ in range(64)
    ]
    t0 = time.perf_counter()
    acc = mats[0]
    for i in range(count):
        acc = impl.mat_mul(acc, mats[i % 64], n, mod)
    return time.perf_counter() - t0


def bench_orbit(impl, g, budget):
    orbit = impl.FlagOrbit(g.n, g.mod, g.p, g.flag_k)
    t0 = time.perf_counter()
    size = orbit.build(g.gens(), max_points=budget)
    build = time.perf_counter() - t0
    fb = pseudo_borel_function(g.rs, g.h)
    fd = generated_function(fb, set(g.rs.neg_simples))
    extra = [g.u(a, g.p ** fd[a]) for a in sorted(g.rs.negative_roots) if fd[a] < g.h]
    t0 = time.perf_counter()
    labels = orbit.quotient(extra)
    merged = orbit.left_orbit_labels(subgroup_gens(g, fb), labels)
    passes = time.perf_counter() - t0
    return size, build, passes, len(set(merged))


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true",
                        help="skip the million-point SL3(Z/81) instance")
    args = parser.parse_args()

    impls = [("python", _kernels_py)]
    if selected.IMPLEMENTATION == "cython":
        impls.append(("cython", selected))
    else:
        print("compiled kernel not available; benchmarking the fallback only")

    print(f"{'kernel':<8} {'mat_mul 3x3 mod 81 (200k)':>28}")
    for name, impl in impls:
        elapsed = bench_mat_mul(impl, 3, 81, 200_000)
        print(f"{name:<8} {elapsed:>26.2f}s")

    instances = [("A2", "adjoint", 5, 2, 30_000), ("C2", "sc", 3, 2, 30_000)]
    if not args.quick:
        instances.append(("A2", "sc", 3, 4, 1_200_000))
    for type_label, isogeny, p, h, budget in instances:
        g = build_group(type_label, isogeny, p, h)
        print(f"\n{g!r}: flag orbit + one double-coset pass")
        print(f"{'kernel':<8} {'points':>9} {'build':>9} {'passes':>9} {'cosets':>8}")
        for name, impl in impls:
            if name == "python" and budget > 100_000:
                print(f"{name:<8} {'(skipped: order-minutes in pure python)':>40}")
                continue
            size, build, passes, cosets = bench_orbit(impl, g, budget)
            print(f"{name:<8} {size:>9} {build:>8.2f}s {passes:>8.2f}s {cosets:>8}")


if __name__ == "__main__":
    main()
