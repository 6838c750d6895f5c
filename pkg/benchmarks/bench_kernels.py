"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from horocyclic import kernels
from horocyclic.sol import SolEl, SolParams, SolPath, descend


def cases(rng: np.random.Generator):
    walk = rng.integers(0, 5, 20_000)
    lamp = rng.integers(0, 4, 20_000)
    pts = rng.uniform(-2, 2, (65, 3))
    path = SolPath.straight(SolEl(-1.5, 1.0, 0.4), SolEl(1.2, -0.7, -0.3))
    pr = SolParams(1.0, 2.0)
    return {
        "dl_walk DL(2,3), 2e4 steps": lambda: kernels.dl_walk(2, 3, walk),
        "lamplighter_walk p=2, 2e4 steps": lambda: kernels.lamplighter_walk(2, lamp),
        "sol_length_grad, 64 segments": lambda: kernels.sol_length_grad(pts, 1.0, 2.0),
        "Sol descent, 100 iterations": lambda: descend(path, pr, max_iter=100),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    work = cases(rng)
    timings: dict[str, dict[str, float]] = {name: {} for name in work}
    start = kernels.backend()
    for backend in sorted(kernels.BACKENDS):
        kernels.use_backend(backend)
        for name, fn in work.items():
            n, _ = timeit.Timer(fn).autorange()
            best = min(timeit.repeat(fn, number=n, repeat=args.repeat)) / n
            timings[name][backend] = best
    kernels.use_backend(start)

    print(f"{'case':36s} {'python':>12s} {'cython':>12s} {'speed-up':>9s}")
    for name, t in timings.items():
        py = t["python"]
        cy = t.get("cython")
        cy_s = f"{cy * 1e3:10.3f}ms" if cy else "    n/a"
        ratio = f"{py / cy:8.1f}x" if cy else "     n/a"
        print(f"{name:36s} {py * 1e3:10.3f}ms {cy_s} {ratio}")


if __name__ == "__main__":
    main()
