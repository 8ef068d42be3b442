"""NFA/NBA over the alphabet 2^AP, completion, and the product with a Kripke structure."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain, combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import AutomatonError
from .kripke import PossKripke, RawStructure, validate
from .reach import (
    CLOSURE_FORMULA,
    REPEATED_CLOSURE,
    PossibilityReport,
    make_report,
    reach_via_closure,
    repeated_reach_possibility,
)

NFA = "nfa"
NBA = "nba"


def all_symbols(props: Iterable[str]) -> list[frozenset]:
    """Every subset of ``props``, ordered by size then lexicographically."""
    props = sorted(props)
    return [frozenset(c) for c in chain.from_iterable(combinations(props, r) for r in range(len(props) + 1))]


@dataclass(frozen=True, eq=False)
class FiniteAutomaton:
    """Nondeterministic automaton whose letters are sets of atomic propositions.

    ``delta`` maps ``(state, symbol)`` to a frozenset of successors; pairs that
    are absent have no successor.
    """

    kind: str
    states: tuple[str, ...]
    alphabet_props: frozenset
    delta: Mapping[tuple[str, frozenset], frozenset]
    initial: frozenset
    accepting: frozenset

    def __init__(self, kind, states, alphabet_props, delta, initial, accepting):
        if kind not in (NFA, NBA):
            raise AutomatonError(f"automaton kind must be 'nfa' or 'nba', got {kind!r}")
        states = tuple(states)
        if not states:
            raise AutomatonError("automaton has no states")
        if len(set(states)) != len(states):
            raise AutomatonError("duplicate automaton state")
        known = set(states)
        props = frozenset(alphabet_props)
        initial = frozenset(initial)
        accepting = frozenset(accepting)
        if not initial:
            raise AutomatonError("automaton has no initial state")
        for q in initial | accepting:
            if q not in known:
                raise AutomatonError(f"unknown automaton state {q!r}")
        norm = {}
        for (q, symbol), targets in delta.items():
            symbol = frozenset(symbol)
            if q not in known:
                raise AutomatonError(f"transition from unknown state {q!r}")
            extra = symbol - props
            if extra:
                raise AutomatonError(f"symbol uses unknown proposition(s) {', '.join(sorted(extra))}")
            targets = frozenset(targets)
            for t in targets:
                if t not in known:
                    raise AutomatonError(f"transition to unknown state {t!r}")
            if targets:
                norm[(q, symbol)] = norm.get((q, symbol), frozenset()) | targets
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "alphabet_props", props)
        object.__setattr__(self, "delta", norm)
        object.__setattr__(self, "initial", initial)
        object.__setattr__(self, "accepting", accepting)

    @classmethod
    def from_triples(cls, kind, states, alphabet_props, triples, initial, accepting):
        """Build from ``(src, symbol, dst)`` triples."""
        delta = {}
        for q, symbol, t in triples:
            key = (q, frozenset(symbol))
            delta[key] = delta.get(key, frozenset()) | {t}
        return cls(kind, states, alphabet_props, delta, initial, accepting)

    def symbols(self) -> list[frozenset]:
        return all_symbols(self.alphabet_props)

    def step(self, q, symbol) -> frozenset:
        return self.delta.get((q, frozenset(symbol)), frozenset())

    def triples(self):
        """Transitions as ``(src, symbol, dst)`` in a deterministic order."""
        order = {q: i for i, q in enumerate(self.states)}
        sym_order = {s: i for i, s in enumerate(self.symbols())}
        for (q, symbol) in sorted(self.delta, key=lambda k: (order[k[0]], sym_order[k[1]])):
            for t in sorted(self.delta[(q, symbol)], key=order.__getitem__):
                yield q, symbol, t

    @property
    def is_complete(self) -> bool:
        return all(self.step(q, u) for q in self.states for u in self.symbols())

    def __eq__(self, other):
        if not isinstance(other, FiniteAutomaton):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.states == other.states
            and self.alphabet_props == other.alphabet_props
            and dict(self.delta) == dict(other.delta)
            and self.initial == other.initial
            and self.accepting == other.accepting
        )

    __hash__ = None

    def __repr__(self):
        return (
            f"<FiniteAutomaton {self.kind}: {len(self.states)} states, "
            f"{sum(len(v) for v in self.delta.values())} transitions>"
        )


def _fresh_name(taken, base="trap"):
    name, i = base, 0
    while name in taken:
        i += 1
        name = f"{base}{i}"
    return name


def complete(a: FiniteAutomaton) -> FiniteAutomaton:
    """Add a non-accepting absorbing trap state for every missing ``(q, u)`` move.

    A complete automaton is returned unchanged.
    """
    if a.is_complete:
        return a
    trap = _fresh_name(set(a.states))
    states = a.states + (trap,)
    delta = dict(a.delta)
    for q in states:
        for u in a.symbols():
            if not delta.get((q, u)):
                delta[(q, u)] = frozenset([trap])
    return FiniteAutomaton(a.kind, states, a.alphabet_props, delta, a.initial, a.accepting)


def _check_symbol(a, symbol):
    symbol = frozenset(symbol)
    extra = symbol - a.alphabet_props
    if extra:
        raise AutomatonError(f"symbol uses unknown proposition(s) {', '.join(sorted(extra))}")
    return symbol


def run_states(a: FiniteAutomaton, word: Sequence[Iterable[str]]) -> frozenset:
    """Set of states reachable from the initial states by reading ``word``."""
    current = a.initial
    for symbol in word:
        symbol = _check_symbol(a, symbol)
        current = frozenset().union(*(a.step(q, symbol) for q in current))
    return current


def accepts_finite(a: FiniteAutomaton, word: Sequence[Iterable[str]]) -> bool:
    """True iff some run on the finite ``word`` ends in an accepting state."""
    return bool(run_states(a, word) & a.accepting)


@dataclass(frozen=True, eq=False)
class ProductStructure:
    """The product of a Kripke structure and an automaton, with goal ``S x F``."""

    structure: PossKripke
    goal: frozenset
    pairs: Mapping[str, tuple[str, str]]
    model: PossKripke
    automaton: FiniteAutomaton

    def name_of(self, s, q) -> str:
        return product_state_name(s, q)

    def entry_states(self, s) -> list[str]:
        """Product states ``<s, q>`` with ``q`` in ``delta(q0, L(s))`` for an initial ``q0``."""
        a = self.automaton
        label = self.model.label(s)
        qs = frozenset().union(*(a.step(q0, label) for q0 in a.initial))
        return [product_state_name(s, q) for q in a.states if q in qs]


def product_state_name(s, q) -> str:
    return f"{s}|{q}"


def _check_alphabet(m: PossKripke, a: FiniteAutomaton):
    for s in m.states:
        extra = m.labels[s] - a.alphabet_props
        if extra:
            raise AutomatonError(
                f"label of {s} uses proposition(s) {', '.join(sorted(extra))} "
                "outside the automaton alphabet"
            )


def product(m: PossKripke, a: FiniteAutomaton) -> ProductStructure:
    """The product structure over ``S x Q``.

    ``P'(<s,q>, <s',q'>) = P(s, s')`` when ``q'`` is in ``delta(q, L(s'))``,
    and ``I'(<s,q>) = I(s)`` when ``q`` is in ``delta(q0, L(s))`` for some
    initial ``q0``. The automaton must be complete so that no product state
    is terminal.
    """
    if not a.is_complete:
        raise AutomatonError("automaton is not complete; call complete() first")
    _check_alphabet(m, a)

    pairs = {}
    names = []
    for s in m.states:
        for q in a.states:
            name = product_state_name(s, q)
            if name in pairs:
                raise AutomatonError(f"product state name clash on {name!r}")
            pairs[name] = (s, q)
            names.append(name)

    nq = len(a.states)
    q_index = {q: i for i, q in enumerate(a.states)}
    # moves[i][k] = automaton states reachable from q_i reading L(s_k)
    moves = [[[q_index[t] for t in a.step(q, m.labels[s])] for s in m.states] for q in a.states]
    p = m.transitions.entries
    transitions = {}
    for i, s in enumerate(m.states):
        for j, t in enumerate(m.states):
            v = p[i, j]
            if v == 0.0:
                continue
            for qi in range(nq):
                for qj in moves[qi][j]:
                    transitions[(names[i * nq + qi], names[j * nq + qj])] = float(v)

    init = {}
    for i, s in enumerate(m.states):
        v = float(m.init.entries[i])
        if v == 0.0:
            continue
        for q0 in a.initial:
            for qj in moves[q_index[q0]][i]:
                init[names[i * nq + qj]] = v

    structure = validate(
        RawStructure(
            states=names,
            transitions=transitions,
            init=init,
            atomic_props=names,
            labels={n: [n] for n in names},
            name=f"{m.name}x{a.kind}",
        )
    )
    goal = frozenset(n for n in names if pairs[n][1] in a.accepting)
    return ProductStructure(structure, goal, pairs, m, a)


def _lift(m, prod, inner: PossibilityReport, method) -> PossibilityReport:
    values = np.zeros(m.size)
    for i, s in enumerate(m.states):
        values[i] = max((inner.per_state[x] for x in prod.entry_states(s)), default=0.0)
    return make_report(m, values, method)


def check_safety(m: PossKripke, a: FiniteAutomaton) -> PossibilityReport:
    """Possibility that a trace from each state has a prefix accepted by ``a``.

    ``a`` is an NFA for the good prefixes of a regular safety property; it is
    completed first if necessary.
    """
    if a.kind != NFA:
        raise AutomatonError(f"safety checking needs an nfa, got {a.kind}")
    _check_alphabet(m, a)
    prod = product(m, complete(a))
    return _lift(m, prod, reach_via_closure(prod.structure, prod.goal), CLOSURE_FORMULA)


def check_omega(m: PossKripke, a: FiniteAutomaton) -> PossibilityReport:
    """Possibility that a path from each state has a trace accepted by the Buchi automaton ``a``."""
    if a.kind != NBA:
        raise AutomatonError(f"omega-regular checking needs an nba, got {a.kind}")
    _check_alphabet(m, a)
    prod = product(m, complete(a))
    return _lift(m, prod, repeated_reach_possibility(prod.structure, prod.goal), REPEATED_CLOSURE)
