#!/usr/bin/env python3
"""Compare the compiled numeric kernels against the pure-numpy fallback.

Two views:

* micro: each hot-path kernel timed in-process on both backend modules
  across a few matrix sizes (best of N repeats);
* end-to-end: a realistic explanation workload (diabetes, PCA(8), KNN
  K=150, auto-alpha) run in subprocesses with LXDR_BACKEND forced to each
  backend, so module selection happens exactly as it does for users.

Usage: python benchmarks/bench_backends.py [--repeats N] [--instances N]
       [--skip-e2e]
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from lxdr.backend import available_backends

_E2E_SCRIPT = """
import os, time
import numpy as np
from lxdr import backend
from lxdr.datasets import load_bundled
from lxdr.neighborhood import NgConfig
from lxdr.reducers import pca_fit
from lxdr.surrogate import lxdr_explain

X = load_bundled("diabetes").features
model = pca_fit(X, 8)
n = int(os.environ["BENCH_INSTANCES"])
t0 = time.perf_counter()
for x in X[:n]:
    lxdr_explain(model, X, x, NgConfig(generator="knn", k=150),
                 auto_alpha=True)
print(backend.BACKEND, time.perf_counter() - t0)
"""


def _best_of(fn, args, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times)


def micro_cases(rng):
    small = rng.standard_normal((300, 10))
    big = rng.standard_normal((2000, 64))
    wide = rng.standard_normal((750, 250))
    t_small = rng.standard_normal((300, 8))
    t_wide = rng.standard_normal((750, 7))
    w_small = rng.uniform(0.1, 1.0, 300)
    w_wide = rng.uniform(0.1, 1.0, 750)
    return [
        ("row_sq_dists", "300x10", (small, small[0])),
        ("row_sq_dists", "2000x64", (big, big[0])),
        ("pairwise_sq_dists", "300x10", (small, small)),
        ("pairwise_sq_dists", "2000x64", (big, big)),
        ("rbf_kernel", "2000x64", (big, big, 1.0 / 64)),
        ("weighted_gram", "300x10", (small - small.mean(0), w_small,
                                     t_small, 1.0)),
        ("weighted_gram", "750x250", (wide - wide.mean(0), w_wide,
                                      t_wide, 1.0)),
    ]


def run_micro(repeats):
    backends = available_backends()
    if "compiled" not in backends:
        print("compiled backend not importable; micro table covers the "
              "python backend only", file=sys.stderr)
    rng = np.random.default_rng(0)
    print(f"{'kernel':<20}{'size':<10}"
          + "".join(f"{name + ' (ms)':>16}" for name in backends)
          + (f"{'speedup':>10}" if len(backends) == 2 else ""))
    for kernel, size, args in micro_cases(rng):
        times = {name: _best_of(getattr(mod, kernel), args, repeats) * 1e3
                 for name, mod in backends.items()}
        line = f"{kernel:<20}{size:<10}"
        line += "".join(f"{times[name]:>16.3f}" for name in backends)
        if "python" in times and "compiled" in times:
            line += f"{times['python'] / times['compiled']:>9.2f}x"
        print(line)


def run_e2e(instances):
    print(f"\nend-to-end: {instances} diabetes explanations "
          f"(PCA(8), K=150, auto-alpha), fresh process per backend")
    for name in available_backends():
        env = dict(os.environ, LXDR_BACKEND=name,
                   BENCH_INSTANCES=str(instances))
        out = subprocess.run([sys.executable, "-c", _E2E_SCRIPT], env=env,
                             capture_output=True, text=True, check=True)
        used, seconds = out.stdout.split()
        per = float(seconds) / instances * 1e3
        print(f"  {name:<10} backend={used:<10} total {float(seconds):6.3f}s"
              f"   {per:6.3f} ms/explanation")


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=7,
                        help="repeats per micro measurement (best-of)")
    parser.add_argument("--instances", type=int, default=200,
                        help="explanations in the end-to-end pass")
    parser.add_argument("--skip-e2e", action="store_true")
    args = parser.parse_args(argv)

    run_micro(args.repeats)
    if not args.skip_e2e:
        run_e2e(args.instances)
    return 0


if __name__ == "__main__":
    sys.exit(main())
