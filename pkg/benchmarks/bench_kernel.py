"""Compiled kernels against the pure-Python reference.

    python benchmarks/bench_kernel.py [--repeat 3]

Times the three hot kernels directly, then a whole self-orthogonal census in
a subprocess per backend (the backend is fixed at import time).
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import timeit

from chaincode import _kernel_py

try:
    from chaincode import _kernel
except ImportError:  # pragma: no cover - depends on the build
    _kernel = None

CENSUS = (
    "from chaincode.census import census_count;"
    "from chaincode.mixedcode import MixedAmbient;"
    "census_count(MixedAmbient(3, 4, 2, 2), 'so')"
)


def _matrices(p: int, mu: int, rows: int, cols: int, count: int, seed: int = 7) -> list[list[tuple[int, ...]]]:
    rng = random.Random(seed)
    m = p**mu
    return [[tuple(rng.randrange(m) for _ in range(cols)) for _ in range(rows)] for _ in range(count)]


def bench_howell(mod, mats, p, mu, repeat) -> float:
    return min(timeit.repeat(lambda: [mod.howell(M, p, mu) for M in mats], number=1, repeat=repeat))


def bench_reduce(mod, mats, p, mu, repeat) -> float:
    m = p**mu
    prepared = []
    for M in mats:
        H = _kernel_py.howell(M, p, mu)
        piv = [next(j for j, x in enumerate(r) if x) for r in H]
        prepared.append((H, piv, M[0]))
    return min(
        timeit.repeat(lambda: [mod.reduce_vec(v, H, piv, m) for H, piv, v in prepared], number=20, repeat=repeat)
    )


def bench_census(pure: bool, repeat: int) -> float:
    env = dict(os.environ)
    if pure:
        env["CHAINCODE_PURE"] = "1"
    else:
        env.pop("CHAINCODE_PURE", None)
    best = float("inf")
    for _ in range(repeat):
        t = timeit.default_timer()
        subprocess.run([sys.executable, "-c", CENSUS], check=True, env=env)
        best = min(best, timeit.default_timer() - t)
    return best


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _kernel is None:
        print("compiled kernel not built; only the reference backend is available")
        return 1
    p, mu = 3, 4
    mats = _matrices(p, mu, 6, 8, 200)
    rows = [
        ("howell 200 x (6x8) mod 81", bench_howell(_kernel_py, mats, p, mu, args.repeat), bench_howell(_kernel, mats, p, mu, args.repeat)),
        ("reduce_vec 4000 calls", bench_reduce(_kernel_py, mats, p, mu, args.repeat), bench_reduce(_kernel, mats, p, mu, args.repeat)),
        ("census Z81Z27 (2,2) so", bench_census(True, args.repeat), bench_census(False, args.repeat)),
    ]
    print(f"{'benchmark':32} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, slow, fast in rows:
        print(f"{name:32} {slow:10.4f} {fast:10.4f} {slow / fast:8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
