"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--sizes 32 64 128 256] [--repeat 3]

Inputs are random matrices over a small value grid, with a sparse diagonal
band so that closures take several squarings. Both backends must return
identical arrays; the script exits non-zero if they do not.
"""

import argparse
import sys
import timeit

import numpy as np

from possmc import _backend

GRID = np.array([0.0, 0.2, 0.5, 0.7, 0.9, 1.0])


def make_inputs(n, rng):
    a = rng.choice(GRID, size=(n, n)) * (rng.random((n, n)) < 4.0 / n)
    a[np.arange(n - 1), np.arange(1, n)] = rng.choice(GRID[1:], size=n - 1)
    b = np.zeros(n)
    b[-1] = 1.0
    return np.ascontiguousarray(a), b


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[32, 64, 128, 256])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    names = sorted(_backend.BACKENDS)
    if "compiled" not in names:
        print("compiled backend not built; timing the fallback only", file=sys.stderr)
    rng = np.random.default_rng(args.seed)
    header = f"{'kernel':<10}{'n':>6}" + "".join(f"{name + ' ms':>14}" for name in names)
    if len(names) > 1:
        header += f"{'speedup':>10}"
    print(header)
    mismatch = False
    for n in args.sizes:
        a, b = make_inputs(n, rng)
        cases = {
            "compose": lambda k: k.compose(a, a),
            "closure": lambda k: k.closure(a),
            "lfp": lambda k: k.least_fixed_point(a, b),
        }
        for kernel, call in cases.items():
            times, outputs = [], []
            for name in names:
                k = _backend.get(name)
                outputs.append(call(k))
                t = min(timeit.repeat(lambda: call(k), number=1, repeat=args.repeat))
                times.append(t * 1e3)
            ref = outputs[0]
            for other in outputs[1:]:
                same = (
                    np.array_equal(ref[0], other[0]) and ref[1] == other[1]
                    if isinstance(ref, tuple)
                    else np.array_equal(ref, other)
                )
                mismatch |= not same
            row = f"{kernel:<10}{n:>6}" + "".join(f"{t:>14.3f}" for t in times)
            if len(names) > 1:
                row += f"{times[names.index('python')] / times[names.index('compiled')]:>9.1f}x"
            print(row)
    if mismatch:
        print("backends disagree", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
