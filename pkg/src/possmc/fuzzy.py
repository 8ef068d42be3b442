"""Max-min algebra over possibility matrices and vectors.

Only ``min`` and ``max`` are ever applied to entries, so every value produced
here is bit-identical to 0, 1 or one of the input entries. Comparisons are
therefore exact; there is no tolerance anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _backend
from .errors import ShapeError


def _frozen_array(values, ndim):
    arr = np.array(values, dtype=np.float64, copy=True)
    if arr.ndim != ndim:
        raise ShapeError(f"expected a {ndim}-dimensional array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("possibility values must be finite")
    if arr.size and (arr.min() < 0.0 or arr.max() > 1.0):
        raise ValueError("possibility values must lie in [0, 1]")
    arr = np.ascontiguousarray(arr)
    arr.flags.writeable = False
    return arr


def _check_labels(labels, n):
    labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
    if len(labels) != n:
        raise ShapeError(f"{len(labels)} labels for dimension {n}")
    if len(set(labels)) != n:
        raise ShapeError("index labels must be unique")
    return labels


@dataclass(frozen=True, eq=False)
class FuzzyMatrix:
    """Square matrix of possibility values indexed by state labels."""

    entries: np.ndarray
    labels: tuple[str, ...]

    def __init__(self, entries, labels: Sequence[str] | None = None):
        arr = _frozen_array(entries, 2)
        if arr.shape[0] != arr.shape[1]:
            raise ShapeError(f"fuzzy matrix must be square, got shape {arr.shape}")
        if arr.shape[0] == 0:
            raise ShapeError("fuzzy matrix dimension must be positive")
        object.__setattr__(self, "entries", arr)
        object.__setattr__(self, "labels", _check_labels(labels, arr.shape[0]))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def identity(cls, labels):
        labels = tuple(labels)
        return cls(np.eye(len(labels)), labels)

    @classmethod
    def zeros(cls, labels):
        labels = tuple(labels)
        return cls(np.zeros((len(labels), len(labels))), labels)

    def index(self, label) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(label) from None

    def __getitem__(self, key):
        i, j = key
        return float(self.entries[self.index(i), self.index(j)])

    def restrict(self, labels) -> "FuzzyMatrix":
        """Principal submatrix on ``labels`` (in the given order)."""
        idx = [self.index(s) for s in labels]
        return FuzzyMatrix(self.entries[np.ix_(idx, idx)], labels)

    def join(self, other: "FuzzyMatrix") -> "FuzzyMatrix":
        _same_labels(self, other)
        return FuzzyMatrix(np.maximum(self.entries, other.entries), self.labels)

    def __le__(self, other):
        _same_labels(self, other)
        return bool(np.all(self.entries <= other.entries))

    def __eq__(self, other):
        if not isinstance(other, FuzzyMatrix):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash((self.labels, self.entries.tobytes()))

    def __repr__(self):
        return f"FuzzyMatrix({self.entries.tolist()!r}, labels={list(self.labels)!r})"


@dataclass(frozen=True, eq=False)
class FuzzyVector:
    """Vector of possibility values indexed by state labels."""

    entries: np.ndarray
    labels: tuple[str, ...]

    def __init__(self, entries, labels: Sequence[str] | None = None):
        arr = _frozen_array(entries, 1)
        object.__setattr__(self, "entries", arr)
        object.__setattr__(self, "labels", _check_labels(labels, arr.shape[0]))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def zeros(cls, labels):
        labels = tuple(labels)
        return cls(np.zeros(len(labels)), labels)

    def __getitem__(self, label):
        try:
            return float(self.entries[self.labels.index(label)])
        except ValueError:
            raise KeyError(label) from None

    def as_dict(self) -> dict:
        return {s: float(v) for s, v in zip(self.labels, self.entries)}

    def join(self, other: "FuzzyVector") -> "FuzzyVector":
        _same_labels(self, other)
        return FuzzyVector(np.maximum(self.entries, other.entries), self.labels)

    def __le__(self, other):
        _same_labels(self, other)
        return bool(np.all(self.entries <= other.entries))

    def __eq__(self, other):
        if not isinstance(other, FuzzyVector):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash((self.labels, self.entries.tobytes()))

    def __repr__(self):
        return f"FuzzyVector({self.entries.tolist()!r}, labels={list(self.labels)!r})"


def _shape(x):
    kind = "matrix" if isinstance(x, FuzzyMatrix) else "vector"
    return f"{kind} of dim {x.dim} over {list(x.labels)}"


def _same_labels(x, y):
    if x.labels != y.labels:
        raise ShapeError(f"shape mismatch: {_shape(x)} vs {_shape(y)}")


def compose(a: FuzzyMatrix, b: FuzzyMatrix, *, backend: str | None = None) -> FuzzyMatrix:
    """Max-min composition ``(a o b)[i, j] = max_k min(a[i, k], b[k, j])``."""
    _same_labels(a, b)
    k = _backend.get(backend) if backend else _backend.kernels
    return FuzzyMatrix(k.compose(a.entries, b.entries), a.labels)


def apply(a: FuzzyMatrix, x: FuzzyVector, *, backend: str | None = None) -> FuzzyVector:
    """Max-min matrix-vector product ``max_k min(a[i, k], x[k])``."""
    _same_labels(a, x)
    k = _backend.get(backend) if backend else _backend.kernels
    return FuzzyVector(k.apply(a.entries, x.entries), a.labels)


def power(p: FuzzyMatrix, n: int) -> FuzzyMatrix:
    if n < 1:
        raise ValueError("power exponent must be >= 1")
    out = p
    for _ in range(n - 1):
        out = compose(out, p)
    return out


def transitive_closure(p: FuzzyMatrix, *, backend: str | None = None) -> FuzzyMatrix:
    """Join of all positive max-min powers of ``p``.

    Computed by repeated squaring, ``C <- C v (C o C)``, which after ``k``
    rounds holds the join of the first ``2**k`` powers; ``dim`` powers suffice.
    """
    k = _backend.get(backend) if backend else _backend.kernels
    return FuzzyMatrix(k.closure(p.entries), p.labels)


def closure_by_powers(p: FuzzyMatrix, count: int | None = None) -> FuzzyMatrix:
    """Reference closure: ``P v P^2 v ... v P^count`` with ``count = dim`` by default."""
    count = p.dim if count is None else count
    acc = p
    cur = p
    for _ in range(count - 1):
        cur = compose(cur, p)
        acc = acc.join(cur)
    return acc


def iterate(a: FuzzyMatrix, b: FuzzyVector, steps: int, *, backend: str | None = None) -> FuzzyVector:
    """The ``steps``-th iterate of ``X -> (a o X) v b`` started from the zero vector."""
    if steps < 0:
        raise ValueError("steps must be non-negative")
    _same_labels(a, b)
    k = _backend.get(backend) if backend else _backend.kernels
    return FuzzyVector(k.iterate(a.entries, b.entries, steps), a.labels)


def least_fixed_point(a: FuzzyMatrix, b: FuzzyVector, *, backend: str | None = None):
    """Least solution of ``X = (a o X) v b``.

    Returns ``(X, n)`` where ``n`` is the first index with ``X^(n) = X``.
    The iteration is monotone and settles in at most ``dim`` steps.
    """
    _same_labels(a, b)
    k = _backend.get(backend) if backend else _backend.kernels
    x, count = k.least_fixed_point(a.entries, b.entries)
    return FuzzyVector(x, a.labels), int(count)
