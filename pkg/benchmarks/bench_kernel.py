"""Compiled vs numpy kernel timings for theta jets.

Usage::

    python benchmarks/bench_kernel.py [--repeat 5] [--quick]

Prints one row per (genus, order) with the median wall time of each kernel,
the speedup, and the largest relative difference between the two results.
"""
from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

from thetanull import Characteristic, eval_jet, validate_period
from thetanull.engine import backend
from thetanull.sampling import random_period, random_z


def _time(fn, repeat):
    out = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        out.append(time.perf_counter() - t0)
    return statistics.median(out)


def run(repeat: int = 5, genera=(1, 2, 3), orders=(0, 1, 2, 3, 4), seed: int = 0):
    try:
        backend.get_kernel("compiled")
    except ImportError:
        print("compiled kernel not built; nothing to compare")
        return []
    rng = np.random.default_rng(seed)
    rows = []
    cases = []
    for g in genera:
        tau, z = random_period(rng, g), random_z(rng, g)
        cases.append(("", g, tau, z))
        # small Im(tau): many more lattice points, kernel-bound
        cases.append(("dense", g, validate_period(tau.re + 0.15j * tau.im), z))
    for label, g, tau, z in cases:
        ch = Characteristic.zero(g)
        for order in orders:
            jets = {k: eval_jet(tau, z, ch, order, kernel=k) for k in ("compiled", "python")}
            diff = max(abs(jets["compiled"].partials[a] - v) / max(1.0, abs(v))
                       for a, v in jets["python"].partials.items())
            t_c = _time(lambda: eval_jet(tau, z, ch, order, kernel="compiled"), repeat)
            t_p = _time(lambda: eval_jet(tau, z, ch, order, kernel="python"), repeat)
            rows.append((label, g, order, jets["python"].terms_summed, t_c, t_p, t_p / t_c, diff))
    return rows


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--quick", action="store_true", help="genus 1-2, orders 0 and 2 only")
    args = p.parse_args(argv)
    kw = {"genera": (1, 2), "orders": (0, 2)} if args.quick else {}
    rows = run(args.repeat, **kw)
    if rows:
        print(f"{'case':>5} {'g':>2} {'order':>5} {'terms':>7} {'compiled ms':>12} {'python ms':>10} {'speedup':>8} {'max rel diff':>12}")
    for label, g, order, n, t_c, t_p, sp, diff in rows:
        print(f"{label:>5} {g:>2} {order:>5} {n:>7} {1e3 * t_c:>12.3f} {1e3 * t_p:>10.3f} {sp:>8.2f} {diff:>12.2e}")
    return rows


if __name__ == "__main__":
    main()
