"""Compare the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--samples N] [--panels P] [--repeat R]

Each timing is the best of ``--repeat`` runs. The end-to-end rows time a full
Monte-Carlo estimate in a fresh interpreter per backend, selected through
CAUSEBOUNDS_PURE_PYTHON, so they include the real import-time dispatch.
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from causebounds import kernels

P, Q = 0.53, 0.48

END_TO_END = """
import time
from causebounds import ExperimentalDistribution, kernels
from causebounds.oracle import mc_expected_gain
e = ExperimentalDistribution({p}, {q})
times = []
for _ in range({repeat}):
    t0 = time.perf_counter()
    mc_expected_gain(e, "lower", {n}, seed=1)
    times.append(time.perf_counter() - t0)
print(kernels.BACKEND, min(times))
"""


def best_of(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def kernel_rows(samples, panels, repeat):
    u = np.random.default_rng(0).random(samples)
    lo, hi = max(0.0, P - (1 - Q)), min(1.0, P + Q)
    rows = []
    for name in kernels.available_backends():
        impl = kernels.load_backend(name)
        rows.append((name, f"moments n={samples}",
                     best_of(lambda: impl.improvement_moments(u, lo, hi, P, Q, False), repeat)))
        rows.append((name, f"samples n={samples}",
                     best_of(lambda: impl.improvement_samples(u, lo, hi, P, Q, True), repeat)))
        rows.append((name, f"midpoint panels={panels}",
                     best_of(lambda: impl.midpoint_mean(lo, hi, P, Q, False, panels), repeat)))
    return rows


def end_to_end_rows(samples, repeat):
    rows = []
    for name, flag in (("cython", "0"), ("numpy", "1")):
        if name not in kernels.available_backends():
            continue
        env = dict(os.environ, CAUSEBOUNDS_PURE_PYTHON=flag)
        code = END_TO_END.format(p=P, q=Q, n=samples, repeat=repeat)
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                             text=True, check=True).stdout.split()
        rows.append((out[0], f"mc_expected_gain n={samples}", float(out[1])))
    return rows


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--samples", type=int, default=10**6)
    parser.add_argument("--panels", type=int, default=10_000)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    rows = kernel_rows(args.samples, args.panels, args.repeat)
    rows += end_to_end_rows(args.samples, args.repeat)
    base = {task: t for name, task, t in rows if name == "numpy"}
    print(f"{'backend':<8} {'task':<28} {'ms':>10} {'speedup':>8}")
    for name, task, t in rows:
        print(f"{name:<8} {task:<28} {t * 1e3:>10.3f} {base[task] / t:>7.1f}x")


if __name__ == "__main__":
    main()
