#!/usr/bin/env python3
"""Timing comparison of the pure numpy kernels against the compiled extension.

Times each per-sample kernel on identical inputs under both backends, plus
one end-to-end energy estimate, and prints a small table:

    python3 benchmarks/bench_kernels.py --rows 200000 --repeats 5
"""

import argparse
import time

import numpy as np

from rpenergy import _kernels as K
from rpenergy.energy_estimators import direct_energy
from rpenergy.map_model import catalog, standard_pole
from rpenergy.spherical_geometry import sample_uniform_sphere_batch


def best_of(fn, repeats: int) -> float:
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def build_cases(rows: int):
    x = sample_uniform_sphere_batch(3, 0, 0, rows)
    pole = standard_pole(3)
    rng = np.random.default_rng(0)
    j = rng.standard_normal((rows, 5, 4))
    j2 = rng.standard_normal((rows, 4, 2))
    g11 = np.einsum("ij,ij->i", j2[:, :, 0], j2[:, :, 0])
    g12 = np.einsum("ij,ij->i", j2[:, :, 0], j2[:, :, 1])
    g22 = np.einsum("ij,ij->i", j2[:, :, 1], j2[:, :, 1])
    w = rng.standard_normal((rows, 4, 3))
    return [
        ("row_norms", lambda: K.row_norms(x)),
        ("normalize_rows", lambda: K.normalize_rows(x)),
        ("frobsq", lambda: K.frobsq(j)),
        ("sv2_from_gram", lambda: K.sv2_from_gram(g11, g12, g22)),
        ("householder_frames", lambda: K.householder_frames(x)),
        ("dilation_factor", lambda: K.dilation_factor(x @ pole, 3.0)),
        ("dilation_apply", lambda: K.dilation_apply(x, pole, 3.0)),
        ("dilation_push", lambda: K.dilation_push(x, w, pole, 3.0)),
        ("fermi_split", lambda: K.fermi_split(np.abs(x), pole)),
    ]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--rows", type=int, default=200_000)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    backends = K.available_backends()
    print(f"backends: {', '.join(backends)}   rows: {args.rows}")
    if "native" not in backends:
        print("native extension not built; timing the pure backend only")

    cases = build_cases(args.rows)
    original = K.backend_name()
    results: dict[str, dict[str, float]] = {name: {} for name, _ in cases}
    results["direct_energy(polar_warp(3))"] = {}
    try:
        for backend in backends:
            K.use_backend(backend)
            for name, fn in cases:
                results[name][backend] = best_of(fn, args.repeats)
            results["direct_energy(polar_warp(3))"][backend] = best_of(
                lambda: direct_energy(catalog("polar_warp", 3), "projective",
                                      args.rows, 0),
                max(2, args.repeats // 2))
    finally:
        K.use_backend(original)

    width = max(len(name) for name in results)
    header = f"{'kernel':<{width}}  {'pure (ms)':>10}"
    if "native" in backends:
        header += f"  {'native (ms)':>11}  {'speedup':>7}"
    print(header)
    for name, timings in results.items():
        line = f"{name:<{width}}  {timings['pure'] * 1e3:>10.3f}"
        if "native" in timings:
            line += f"  {timings['native'] * 1e3:>11.3f}"
            line += f"  {timings['pure'] / timings['native']:>6.2f}x"
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
