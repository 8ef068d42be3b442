import random
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from possmc import FiniteAutomaton, PossKripke  # noqa: E402
from possmc.automata import all_symbols  # noqa: E402

GRID = (0.0, 0.2, 0.5, 0.7, 0.9, 1.0)

EXAMPLE1_P = [
    [0, 1, 0.2, 0],
    [0, 0, 1, 0.9],
    [0, 0.7, 0, 1],
    [0, 0, 0, 1],
]
EXAMPLE1_STATES = ("s0", "s1", "s2", "s3")

UNTIL_A = [[0, 1, 0.2], [0, 0, 1], [0, 0.7, 0]]
UNTIL_B = [0, 0.9, 1]


@pytest.fixture
def example1():
    return PossKripke.from_matrix(EXAMPLE1_STATES, EXAMPLE1_P, [1, 0, 0, 0], name="example1")


@pytest.fixture
def slow_exit():
    return PossKripke.build(
        ["s1", "s2"],
        {("s1", "s1"): 1, ("s1", "s2"): 0.5, ("s2", "s2"): 1},
        {"s1": 1},
        name="slow_exit",
    )


def repair(matrix, rng_choice):
    """Force every row (and the init vector) to have supremum exactly 1."""
    for row in matrix:
        if max(row) != 1.0:
            row[rng_choice(len(row))] = 1.0
    return matrix


def random_model(rng: random.Random, n=None, labels_from=None):
    """A random valid model over the value grid, rows repaired to sup 1."""
    n = n or rng.randint(2, 6)
    states = [f"s{i}" for i in range(n)]
    p = [[rng.choice(GRID) for _ in range(n)] for _ in range(n)]
    init = [rng.choice(GRID) for _ in range(n)]
    repair(p, rng.randrange)
    repair([init], rng.randrange)
    if labels_from is None:
        return PossKripke.from_matrix(states, p, init)
    props = list(labels_from)
    labels = {s: [x for x in props if rng.random() < 0.5] for s in states}
    return PossKripke.from_matrix(states, p, init, atomic_props=props, labels=labels)


def random_automaton(rng: random.Random, kind, props, n_states=None, complete=True, density=0.35):
    n_states = n_states or rng.randint(1, 3)
    states = [f"q{i}" for i in range(n_states)]
    delta = {}
    for q in states:
        for u in all_symbols(props):
            targets = {t for t in states if rng.random() < density}
            if complete and not targets:
                targets = {rng.choice(states)}
            if targets:
                delta[(q, u)] = targets
    initial = {q for q in states if rng.random() < 0.4} or {states[0]}
    accepting = {q for q in states if rng.random() < 0.4}
    return FiniteAutomaton(kind, states, props, delta, initial, accepting)


@st.composite
def models(draw, min_states=2, max_states=6):
    n = draw(st.integers(min_states, max_states))
    states = [f"s{i}" for i in range(n)]
    p = [[draw(st.sampled_from(GRID)) for _ in range(n)] for _ in range(n)]
    init = [draw(st.sampled_from(GRID)) for _ in range(n)]
    fix = draw(st.lists(st.integers(0, n - 1), min_size=n + 1, max_size=n + 1))
    for i, row in enumerate(p):
        if max(row) != 1.0:
            row[fix[i]] = 1.0
    if max(init) != 1.0:
        init[fix[n]] = 1.0
    return PossKripke.from_matrix(states, p, init)


@st.composite
def models_with_subset(draw, **kw):
    m = draw(models(**kw))
    subset = draw(st.sets(st.sampled_from(m.states)))
    return m, frozenset(subset)


@st.composite
def fuzzy_arrays(draw, n=None, shape=2):
    n = n or draw(st.integers(1, 6))
    size = n * n if shape == 2 else n
    vals = draw(st.lists(st.sampled_from(GRID), min_size=size, max_size=size))
    arr = np.array(vals, dtype=float)
    return arr.reshape((n, n)) if shape == 2 else arr


def value_closed(values, allowed):
    """Every value is exactly one of ``allowed`` (no tolerance)."""
    return all(float(v) in allowed for v in values)
