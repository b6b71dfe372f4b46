"""Time the numba kernels against their pure-numpy twins.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Inputs are random inner actions on M2 + M2 + M1 (dim 9) for Z2 .. Z6 and
S3; both flavours are checked to agree before timing.
"""

import argparse
import time

import numpy as np

from satlab import kernels
from satlab.algebra_core import StarAlgebra
from satlab.group_action import FiniteGroup, make_inner_action, random_inner_action


def random_action(group, rng):
    alg = StarAlgebra((2, 2, 1))
    # random characters need an abelian group; S3 gets the trivial action (same kernel cost)
    if group.is_abelian():
        return random_inner_action(alg, group, rng)
    return make_inner_action(alg, group, [alg.one()] * group.order)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    if not kernels.HAVE_NUMBA:
        print("numba not importable; only the numpy flavour is available")
        return

    groups = [FiniteGroup.cyclic(n) for n in range(2, 7)] + [FiniteGroup.symmetric(3)]
    print(f"{'kernel':<24}{'group':<6}{'numpy ms':>10}{'numba ms':>10}{'speedup':>9}")
    for group in groups:
        action = random_action(group, rng)
        m = action.algebra
        cm = m.structure_constants()
        table, maps = group.table, action.maps
        coeffs = rng.standard_normal((group.order, m.dim)) + 1j * rng.standard_normal((group.order, m.dim))
        vecs = rng.standard_normal((4 * m.dim, 2 * m.dim)) + 0j

        cases = {
            "crossed_structure": (kernels.crossed_structure_numpy, kernels.crossed_structure_numba, (table, maps, cm)),
            "regular_representation": (
                kernels.regular_representation_numpy,
                kernels.regular_representation_numba,
                (table, group.inverse, maps, coeffs, m.dense_embedding, m.trace_denominator),
            ),
            "orthonormalize": (kernels.orthonormalize_numpy, kernels.orthonormalize_numba, (vecs, 1e-9, -1)),
        }
        for name, (f_np, f_nb, fargs) in cases.items():
            a, b = f_np(*fargs), f_nb(*fargs)  # also warms up the jit
            assert a.shape == b.shape and np.allclose(a, b, atol=1e-12), name
            t_np = best_of(lambda: f_np(*fargs), args.repeat)
            t_nb = best_of(lambda: f_nb(*fargs), args.repeat)
            print(f"{name:<24}{group.name:<6}{1e3 * t_np:>10.3f}{1e3 * t_nb:>10.3f}{t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
