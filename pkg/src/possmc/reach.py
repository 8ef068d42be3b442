"""Possibility of reachability, until, bounded until and repeated reachability."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .fuzzy import FuzzyVector, iterate, least_fixed_point, transitive_closure
from .kripke import PossKripke

CLOSURE_FORMULA = "closure_formula"
FIXED_POINT = "fixed_point"
BOUNDED_ITERATION = "bounded_iteration"
REPEATED_CLOSURE = "repeated_closure"


@dataclass(frozen=True)
class PossibilityReport:
    """Per-state possibilities plus their aggregate under the initial distribution."""

    per_state: dict
    aggregate: float
    method: str
    iteration_count: int | None = None

    def values(self):
        return [self.per_state[s] for s in self.per_state]

    def to_json(self) -> dict:
        out = {
            "method": self.method,
            "aggregate": self.aggregate,
            "per_state": dict(self.per_state),
        }
        if self.iteration_count is not None:
            out["iteration_count"] = self.iteration_count
        return out


def make_report(m: PossKripke, values, method, iteration_count=None) -> PossibilityReport:
    """Wrap a per-state vector (in ``m.states`` order) and aggregate it with I."""
    values = np.asarray(values, dtype=np.float64)
    per_state = {s: float(v) for s, v in zip(m.states, values)}
    aggregate = float(np.minimum(m.init.entries, values).max())
    return PossibilityReport(per_state, aggregate, method, iteration_count)


@dataclass(frozen=True)
class UntilPartition:
    s_zero: frozenset
    s_one: frozenset
    s_query: frozenset


def _indicator(m, states):
    v = np.zeros(m.size)
    for s in states:
        v[m.index(s)] = 1.0
    return v


def reach_via_closure(m: PossKripke, target: Iterable[str]) -> PossibilityReport:
    """Possibility of eventually reaching ``target`` through the closure P+.

    ``per_state(s) = max_{t in target} P+(s, t)``, and 1 on the target itself.
    """
    target = m.state_set(target)
    cols = [m.index(t) for t in target]
    if cols:
        closure = transitive_closure(m.transitions).entries
        values = closure[:, cols].max(axis=1)
    else:
        values = np.zeros(m.size)
    values = np.maximum(values, _indicator(m, target))
    return make_report(m, values, CLOSURE_FORMULA)


def build_partition(m: PossKripke, left: Iterable[str], target: Iterable[str]) -> UntilPartition:
    """Split the states for ``left U target`` by graph analysis alone.

    ``s_one`` is the target itself; ``s_query`` holds the states outside the
    target that reach it along a path whose other states all lie in ``left``;
    everything else has possibility 0.
    """
    left = m.state_set(left)
    target = m.state_set(target)
    reaching = m.pre_star(target, within=left - target)
    s_query = reaching - target
    s_zero = frozenset(m.states) - reaching
    return UntilPartition(s_zero=s_zero, s_one=target, s_query=s_query)


def _until_system(m, part):
    """The matrix on the query states and the one-step vector into ``s_one``."""
    query = [s for s in m.states if s in part.s_query]
    q_idx = [m.index(s) for s in query]
    one_idx = [m.index(s) for s in m.states if s in part.s_one]
    p = m.transitions
    a = p.restrict(query)
    if one_idx:
        b = p.entries[np.ix_(q_idx, one_idx)].max(axis=1)
    else:
        b = np.zeros(len(query))
    return query, a, FuzzyVector(b, query)


def _assemble(m, part, query, x):
    values = _indicator(m, part.s_one)
    for s, v in zip(query, x):
        values[m.index(s)] = v
    return values


def until_possibility(m: PossKripke, left: Iterable[str], target: Iterable[str]) -> PossibilityReport:
    """Possibility of ``left U target`` as the least fixed point of ``X = A o X v b``."""
    part = build_partition(m, left, target)
    if not part.s_query:
        return make_report(m, _indicator(m, part.s_one), FIXED_POINT, 0)
    query, a, b = _until_system(m, part)
    x, count = least_fixed_point(a, b)
    return make_report(m, _assemble(m, part, query, x.entries), FIXED_POINT, count)


def bounded_until_possibility(m: PossKripke, left, target, bound: int) -> PossibilityReport:
    """Possibility of reaching ``target`` via ``left`` within ``bound`` steps."""
    if bound < 0:
        raise ValueError("bound must be non-negative")
    part = build_partition(m, left, target)
    if not part.s_query:
        return make_report(m, _indicator(m, part.s_one), BOUNDED_ITERATION, bound)
    query, a, b = _until_system(m, part)
    x = iterate(a, b, bound)
    return make_report(m, _assemble(m, part, query, x.entries), BOUNDED_ITERATION, bound)


def reach_via_fixed_point(m: PossKripke, target) -> PossibilityReport:
    """``eventually target`` computed as ``S U target``."""
    return until_possibility(m, m.states, target)


def repeated_reach_possibility(m: PossKripke, target: Iterable[str]) -> PossibilityReport:
    """Possibility of visiting ``target`` infinitely often.

    ``per_state(s) = max_{a in target} min(P+(s, a), P+(a, a))``; applied
    as is for ``s`` in the target, so a target state without a cycle scores 0.
    """
    target = m.state_set(target)
    cols = [m.index(a) for a in target]
    if not cols:
        return make_report(m, np.zeros(m.size), REPEATED_CLOSURE)
    closure = transitive_closure(m.transitions).entries
    loops = closure[cols, cols]
    values = np.minimum(closure[:, cols], loops[None, :]).max(axis=1)
    return make_report(m, values, REPEATED_CLOSURE)
