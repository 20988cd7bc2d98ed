"""Time the compiled kernels against the pure-Python fallback.

Usage::

    python3 benchmarks/bench_kernels.py [--size 512] [--repeat 5]

Each kernel runs on the same 512x512 leaf-like silhouette with both
backends; outputs are checked for agreement before timing.
"""
import argparse
import timeit

import numpy as np

from leafshape import _kernels, synth
from leafshape.silhouette import measure, trace_contour
from leafshape.zernike import _coefficient_table, zernike_indices


def workloads(size):
    spec = synth.ShapeSpec("lobed", {"lobes": 5, "depth": 0.25, "aspect": 0.7}, 0.4 * size)
    mask = synth.render(spec, (size, size), angle=0.3)
    geom = measure(mask, trace_contour(mask))
    cx, cy = geom.centroid
    idx = zernike_indices(7)
    coeffs = _coefficient_table(idx)
    reps = np.array([m for _, m in idx])
    polar = _kernels.polar_sample(mask, cx, cy, geom.r_max, 256, 512)
    return {
        "largest_component": lambda b: _kernels.largest_component(mask, backend=b),
        "moore_trace": lambda b: _kernels.moore_trace(mask, backend=b),
        "raw_moments": lambda b: _kernels.raw_moments(mask, 3, backend=b),
        "zernike_sums": lambda b: _kernels.zernike_sums(mask, cx, cy, geom.r_max, coeffs, reps, backend=b),
        "polar_sample": lambda b: _kernels.polar_sample(mask, cx, cy, geom.r_max, 256, 512, backend=b),
        "pf2_corner": lambda b: _kernels.pf2_corner(polar, 4, 6, backend=b),
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--size", type=int, default=512)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    backends = _kernels.AVAILABLE
    if "compiled" not in backends:
        print("compiled extension not built; timing the fallback only")
    print(f"{'kernel':<18} " + " ".join(f"{name:>12}" for name in backends) + "   speedup")
    for name, fn in workloads(args.size).items():
        outs = [fn(b) for b in backends.values()]
        for o in outs[1:]:
            assert np.allclose(o, outs[0], rtol=1e-9, atol=1e-7), name
        times = {}
        for label, b in backends.items():
            times[label] = min(timeit.repeat(lambda: fn(b), number=1, repeat=args.repeat))
        speed = times["python"] / times["compiled"] if "compiled" in times else float("nan")
        cols = " ".join(f"{1e3 * t:10.2f}ms" for t in times.values())
        print(f"{name:<18} {cols}   {speed:6.1f}x")


if __name__ == "__main__":
    main()
