"""Possibilistic Kripke structures and the possibility measure on their paths."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import NotAPathError, UnknownStateError, ValidationError
from .fuzzy import FuzzyMatrix, FuzzyVector


@dataclass
class RawStructure:
    """Unvalidated model data, as produced by a parser or built by hand.

    ``transitions`` maps ``(src, dst)`` to a possibility; missing pairs are 0.
    ``labels`` may omit states (they get the empty label). If ``atomic_props``
    is None, the state names are used as propositions with ``L(s) = {s}``.
    """

    states: Sequence[str]
    transitions: Mapping[tuple[str, str], float]
    init: Mapping[str, float]
    atomic_props: Iterable[str] | None = None
    labels: Mapping[str, Iterable[str]] | None = None
    name: str = "M"


def _check_value(value, what, key):
    try:
        v = float(value)
    except (TypeError, ValueError):
        raise ValidationError(f"{what}: {value!r} is not a number", key) from None
    if not (0.0 <= v <= 1.0):
        raise ValidationError(f"{what}: value {value!r} outside [0, 1]", key)
    return v


def validate(raw: RawStructure) -> "PossKripke":
    """Check the well-formedness conditions and build a :class:`PossKripke`.

    Nothing is repaired: a row whose supremum is not exactly 1 is an error.
    """
    states = tuple(raw.states)
    if not states:
        raise ValidationError("state set is empty", ("states",))
    index = {}
    for s in states:
        if not isinstance(s, str) or not s:
            raise ValidationError(f"invalid state name {s!r}", ("state", s))
        if s in index:
            raise ValidationError(f"duplicate state {s!r}", ("state", s))
        index[s] = len(index)

    n = len(states)
    p = np.zeros((n, n))
    for (src, dst), value in raw.transitions.items():
        key = ("trans", src, dst)
        for s in (src, dst):
            if s not in index:
                raise UnknownStateError(f"transition {src} -> {dst}: unknown state {s!r}", key)
        p[index[src], index[dst]] = _check_value(value, f"transition {src} -> {dst}", key)

    init = np.zeros(n)
    for s, value in raw.init.items():
        key = ("init", s)
        if s not in index:
            raise UnknownStateError(f"initial value for unknown state {s!r}", key)
        init[index[s]] = _check_value(value, f"initial value of {s}", key)

    for i, s in enumerate(states):
        sup = p[i].max()
        if sup != 1.0:
            raise ValidationError(
                f"outgoing possibilities of state {s} have supremum {sup:g}, expected 1", ("row", s)
            )
    if init.max() != 1.0:
        raise ValidationError(
            f"initial distribution has supremum {init.max():g}, expected 1", ("init-sup",)
        )

    if raw.atomic_props is None:
        if raw.labels is not None:
            raise ValidationError("labels given without a set of atomic propositions", ("ap",))
        ap = frozenset(states)
        labels = {s: frozenset([s]) for s in states}
    else:
        ap = frozenset(raw.atomic_props)
        labels = {s: frozenset() for s in states}
        for s, props in (raw.labels or {}).items():
            if s not in index:
                raise UnknownStateError(f"label for unknown state {s!r}", ("label", s))
            props = frozenset(props)
            unknown = sorted(props - ap)
            if unknown:
                raise ValidationError(
                    f"label of {s} uses unknown proposition(s) {', '.join(unknown)}", ("label", s)
                )
            labels[s] = props

    return PossKripke(
        states=states,
        transitions=FuzzyMatrix(p, states),
        init=FuzzyVector(init, states),
        atomic_props=ap,
        labels=labels,
        name=raw.name,
    )


@dataclass(frozen=True, eq=False)
class PossKripke:
    """A validated finite possibilistic Kripke structure.

    Build instances through :func:`validate` or :meth:`build`; the constructor
    itself does not check the normalisation conditions.
    """

    states: tuple[str, ...]
    transitions: FuzzyMatrix
    init: FuzzyVector
    atomic_props: frozenset
    labels: Mapping[str, frozenset]
    name: str = "M"
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.states)})

    @classmethod
    def build(cls, states, transitions, init, atomic_props=None, labels=None, name="M"):
        return validate(RawStructure(states, dict(transitions), dict(init), atomic_props, labels, name))

    @classmethod
    def from_matrix(cls, states, matrix, init, atomic_props=None, labels=None, name="M"):
        states = tuple(states)
        matrix = np.asarray(matrix, dtype=float)
        trans = {
            (states[i], states[j]): matrix[i, j]
            for i in range(len(states))
            for j in range(len(states))
            if matrix[i, j] > 0
        }
        init = np.asarray(init, dtype=float)
        init_map = {s: v for s, v in zip(states, init) if v > 0}
        return cls.build(states, trans, init_map, atomic_props, labels, name)

    # -- basic access -------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.states)

    def index(self, s) -> int:
        try:
            return self._index[s]
        except (KeyError, TypeError):
            raise UnknownStateError(f"unknown state {s!r}", ("state", s)) from None

    def state_set(self, states: Iterable[str]) -> frozenset:
        """Validate that every member is a state and return them as a frozenset."""
        out = frozenset(states)
        for s in out:
            self.index(s)
        return out

    def P(self, s, t) -> float:
        return float(self.transitions.entries[self.index(s), self.index(t)])

    def I(self, s) -> float:
        return float(self.init.entries[self.index(s)])

    def label(self, s) -> frozenset:
        self.index(s)
        return self.labels[s]

    def transition_items(self):
        """Positive transitions ``(src, dst, value)`` in row-major state order."""
        p = self.transitions.entries
        for i, s in enumerate(self.states):
            for j, t in enumerate(self.states):
                if p[i, j] > 0:
                    yield s, t, float(p[i, j])

    def values(self) -> frozenset:
        """Every possibility value occurring in the structure, plus 0 and 1."""
        vals = set(self.transitions.entries.ravel().tolist())
        vals.update(self.init.entries.tolist())
        vals.update((0.0, 1.0))
        return frozenset(vals)

    # -- graph queries ------------------------------------------------------

    def post(self, s) -> frozenset:
        row = self.transitions.entries[self.index(s)]
        return frozenset(self.states[j] for j in np.flatnonzero(row > 0))

    def pre(self, s) -> frozenset:
        col = self.transitions.entries[:, self.index(s)]
        return frozenset(self.states[i] for i in np.flatnonzero(col > 0))

    def _search(self, start, step, within=None):
        seen = set(start)
        queue = deque(start)
        while queue:
            u = queue.popleft()
            for v in step(u):
                if v not in seen and (within is None or v in within):
                    seen.add(v)
                    queue.append(v)
        return frozenset(seen)

    def post_star(self, states: Iterable[str]) -> frozenset:
        """States reachable by a path of length >= 0 from some member."""
        return self._search(self.state_set(states), self.post)

    def pre_star(self, states: Iterable[str], within: Iterable[str] | None = None) -> frozenset:
        """States that reach some member by a path of length >= 0.

        With ``within``, the search only steps backwards into those states,
        i.e. every state on the path except the last must lie in ``within``.
        """
        within = None if within is None else self.state_set(within)
        return self._search(self.state_set(states), self.pre, within)

    # -- possibility measure ------------------------------------------------

    def path_possibility(self, path: Sequence[str]) -> float:
        """Min of the transition possibilities along ``path`` (1 for a single state)."""
        if len(path) == 0:
            raise NotAPathError("a path must contain at least one state")
        idx = [self.index(s) for s in path]
        p = self.transitions.entries
        value = 1.0
        for i, j in zip(idx, idx[1:]):
            v = p[i, j]
            if v == 0.0:
                raise NotAPathError(
                    f"{self.states[i]} -> {self.states[j]} has possibility 0; "
                    f"{' '.join(path)} is not a path"
                )
            value = min(value, float(v))
        return value

    def cylinder_possibility(self, path: Sequence[str]) -> float:
        """Possibility of all infinite paths extending ``path``: I(s0) min the edges."""
        value = self.path_possibility(path)
        return min(self.I(path[0]), value)

    def path_set_possibility(self, paths: Iterable[Sequence[str]]) -> float:
        """Possibility of the union of the cylinders of ``paths`` (0 for none)."""
        return max((self.cylinder_possibility(p) for p in paths), default=0.0)

    def rebase_initial(self, s) -> "PossKripke":
        """The same structure with the point initial distribution at ``s``."""
        i = self.index(s)
        init = np.zeros(self.size)
        init[i] = 1.0
        return PossKripke(
            states=self.states,
            transitions=self.transitions,
            init=FuzzyVector(init, self.states),
            atomic_props=self.atomic_props,
            labels=self.labels,
            name=self.name,
        )

    def __eq__(self, other):
        if not isinstance(other, PossKripke):
            return NotImplemented
        return (
            self.states == other.states
            and self.transitions == other.transitions
            and self.init == other.init
            and self.atomic_props == other.atomic_props
            and dict(self.labels) == dict(other.labels)
        )

    __hash__ = None

    def __repr__(self):
        return f"<PossKripke {self.name}: {self.size} states, {sum(1 for _ in self.transition_items())} transitions>"
