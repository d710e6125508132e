"""Compare the compiled elimination kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5] [--seed 0]

Each workload runs on identical inputs under both backends; the outputs are
checked for equality before timings are reported.
"""
from __future__ import annotations

import argparse
import copy
import random
import statistics
import time

from fincoh.exterior import koszul_boundary
from fincoh.linalg import _kernels_py as py
from fincoh.linalg import homology

try:
    from fincoh.linalg import _kernels as cy
except ImportError:
    cy = None


def random_dense(rng: random.Random, m: int, n: int, bound: int = 9) -> list[list[int]]:
    return [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)]


def koszul_diffs(n: int) -> dict:
    """Columns of the Koszul boundaries of a set of size ``n`` in the kernel's dict format."""
    out = {}
    for k in range(1, n + 1):
        D = koszul_boundary(n, k)
        out[k] = {j: dict(D.column(j)) for j in range(D.cols)}
    return out


def tate_workload():
    from fincoh.engine import CohomologyEngine
    from fincoh.groups import make_cyclic
    from fincoh.modules import trivial_module

    G = make_cyclic(6)
    return lambda: [CohomologyEngine(G, trivial_module(G, "Z/2")).tate(k).structure for k in range(-3, 4)]


def timed(fn, repeat: int) -> tuple[float, object]:
    times = []
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times), result


def use_backend(mod) -> None:
    # HomologyGroup imported the kernels by name; rebind them for end-to-end timings
    for name in ("smith_dense", "reduce_chain_complex", "project_vector", "include_vector"):
        setattr(homology, name, getattr(mod, name))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if cy is None:
        raise SystemExit("compiled kernels are not built; run `pip install -e . --no-build-isolation` first")

    rng = random.Random(args.seed)
    dense = [random_dense(rng, 40, 40) for _ in range(5)]
    lattice = random_dense(rng, 120, 60)
    kos = koszul_diffs(10)
    tate = tate_workload()

    workloads = {
        "smith_dense 5 x (40x40), with inverses":
            lambda mod: [mod.smith_dense(copy.deepcopy(a), 40, 40, True) for a in dense],
        "row_hermite 120x60":
            lambda mod: mod.row_hermite(copy.deepcopy(lattice), 60),
        "reduce_chain_complex Koszul n=10":
            lambda mod: mod.reduce_chain_complex(copy.deepcopy(kos)),
        "Tate C6, Z/2, k=-3..3 (end to end)":
            lambda mod: (use_backend(mod), tate())[1],
    }
    print(f"{'workload':42s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, work in workloads.items():
        t_py, r_py = timed(lambda: work(py), args.repeat)
        t_cy, r_cy = timed(lambda: work(cy), args.repeat)
        if r_py != r_cy:
            raise SystemExit(f"backends disagree on {name}")
        print(f"{name:42s} {t_py:9.4f}s {t_cy:9.4f}s {t_py / t_cy:7.2f}x")
    use_backend(cy)


if __name__ == "__main__":
    main()
