"""Numpy implementation of the max-min kernels.

Used when the compiled ``possmc._kernels`` extension is unavailable, or when
``POSSMC_PURE_PYTHON=1`` is set. Both backends return bit-identical results
because only min and max are ever applied.
"""

import numpy as np

# rows per broadcast block in compose; bounds the n*k*m temporary
_BLOCK = 64


def compose(a, b):
    n = a.shape[0]
    out = np.empty((n, b.shape[1]), dtype=np.float64)
    for start in range(0, n, _BLOCK):
        stop = min(start + _BLOCK, n)
        out[start:stop] = np.minimum(a[start:stop, :, None], b[None, :, :]).max(axis=1)
    return out


def apply(a, x):
    if a.shape[1] == 0:
        return np.zeros(a.shape[0], dtype=np.float64)
    return np.minimum(a, x[None, :]).max(axis=1)


def closure(p):
    n = p.shape[0]
    acc = np.array(p, dtype=np.float64, copy=True)
    covered = 1
    while covered < n:
        nxt = np.maximum(acc, compose(acc, acc))
        covered *= 2
        if np.array_equal(nxt, acc):
            break
        acc = nxt
    return acc


def _step(a, b, x):
    return np.maximum(apply(a, x), b)


def iterate(a, b, steps):
    x = np.zeros(a.shape[0], dtype=np.float64)
    for _ in range(steps):
        x = _step(a, b, x)
    return x


def least_fixed_point(a, b):
    n = a.shape[0]
    x = np.zeros(n, dtype=np.float64)
    count = 0
    while True:
        y = _step(a, b, x)
        if np.array_equal(x, y):
            return x, count
        count += 1
        if count > n:
            raise AssertionError("max-min iteration did not stabilise within dim steps")
        x = y
