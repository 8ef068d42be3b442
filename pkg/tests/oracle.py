"""Brute-force evaluators used only by the test-suite.

Everything here works directly from the definitions, by enumerating finite
paths, lassos and permutations over a plain ``{node: {succ: value}}`` graph.
Nothing imports the analysis code in ``possmc.reach`` or ``possmc.automata``;
only ``d_t_oracle`` borrows the closure from ``possmc.fuzzy``, as the formula
it evaluates is stated in terms of P+.

Simple paths are enough everywhere: cutting a cycle out of a path keeps its
endpoints and can only raise the min over its edges.
"""

from __future__ import annotations

from itertools import permutations

from possmc.automata import all_symbols
from possmc.fuzzy import transitive_closure

MAX_STATES = 12
MAX_DT_SIZE = 6


class OracleTooLarge(ValueError):
    pass


def graph_of(m):
    """Adjacency ``{s: {t: P(s, t)}}`` over positive transitions of a PossKripke."""
    g = {s: {} for s in m.states}
    p = m.transitions.entries
    for i, s in enumerate(m.states):
        for j, t in enumerate(m.states):
            if p[i, j] > 0:
                g[s][t] = float(p[i, j])
    return g


def _checked(g):
    if len(g) > MAX_STATES:
        raise OracleTooLarge(f"{len(g)} states exceed the oracle cap of {MAX_STATES}")
    return g


def _simple_paths(g, start, max_edges=None):
    """Yield ``(path, value)`` for every simple path from ``start``.

    ``value`` is the min of the edge possibilities (1 for the empty path).
    """
    stack = [((start,), 1.0)]
    while stack:
        path, value = stack.pop()
        yield path, value
        if max_edges is not None and len(path) - 1 >= max_edges:
            continue
        for t, v in g[path[-1]].items():
            if t not in path:
                stack.append((path + (t,), min(value, v)))


# -- reachability ----------------------------------------------------------


def graph_reach(g, target, start):
    _checked(g)
    target = set(target)
    best = 0.0
    for path, value in _simple_paths(g, start):
        if path[-1] in target:
            best = max(best, value)
    return best


def enumerate_reach(m, target, start):
    """Best min-value over simple paths from ``start`` that end in ``target``."""
    m.index(start)
    return graph_reach(_checked(graph_of(m)), m.state_set(target), start)


def enumerate_until(m, left, target, start, bound=None):
    """Join over paths whose non-final states lie in ``left`` and final state in ``target``.

    With ``bound`` only paths of at most ``bound`` transitions count.
    """
    g = _checked(graph_of(m))
    left, target = m.state_set(left), m.state_set(target)
    m.index(start)
    best = 0.0
    stack = [((start,), 1.0)]
    while stack:
        path, value = stack.pop()
        last = path[-1]
        if last in target:
            best = max(best, value)
            continue
        if last not in left:
            continue
        if bound is not None and len(path) - 1 >= bound:
            continue
        for t, v in g[last].items():
            if t not in path:
                stack.append((path + (t,), min(value, v)))
    return best


# -- repeated reachability -------------------------------------------------


def best_cycle(g, y, target):
    """Best simple cycle ``y ... y`` (at least one edge) that meets ``target``."""
    best = 0.0
    stack = [((y,), 1.0, y in target)]
    while stack:
        path, value, hit = stack.pop()
        if value <= best:
            continue
        for t, v in g[path[-1]].items():
            if t == y:
                if hit:
                    best = max(best, min(value, v))
            elif t not in path:
                stack.append((path + (t,), min(value, v), hit or t in target))
    return best


def graph_repeated(g, target, start):
    """Best lasso from ``start``: a simple stem to some ``y`` followed by a simple
    cycle through ``y`` that meets ``target``. Stem and cycle are independent,
    so the best of each is combined per ``y``."""
    _checked(g)
    target = set(target)
    stem_best = {}
    for path, value in _simple_paths(g, start):
        y = path[-1]
        stem_best[y] = max(stem_best.get(y, 0.0), value)
    best = 0.0
    for y, value in stem_best.items():
        if value > best:
            best = max(best, min(value, best_cycle(g, y, target)))
    return best


def enumerate_repeated(m, target, start):
    m.index(start)
    return graph_repeated(graph_of(m), m.state_set(target), start)


# -- strongly connected subsets and D_T ---------------------------------------


def is_strongly_connected(g, subset):
    """Every ordered pair in ``subset`` (including ``(x, x)``) is joined by a
    nonempty path that stays inside ``subset``."""
    subset = set(subset)
    if not subset:
        return False
    for x in subset:
        seen = set()
        frontier = [x]
        while frontier:
            u = frontier.pop()
            for t in g[u]:
                if t in subset and t not in seen:
                    seen.add(t)
                    frontier.append(t)
        if seen != subset:
            return False
    return True


def strongly_connected_subsets(m, containing):
    g = graph_of(m)
    others = [s for s in m.states if s != containing]
    out = []
    for mask in range(1 << len(others)):
        subset = frozenset([containing] + [others[i] for i in range(len(others)) if mask >> i & 1])
        if is_strongly_connected(g, subset):
            out.append(subset)
    return out


def d_t_oracle(m, subset, s, a):
    """``max over orderings t_1..t_k of subset`` of the min of
    ``P+(s, t_1), P+(t_1, t_2), ..., P+(t_k, t_1)``."""
    subset = tuple(x for x in m.states if x in set(subset))
    if len(subset) > MAX_DT_SIZE:
        raise OracleTooLarge(f"|T| = {len(subset)} exceeds {MAX_DT_SIZE}")
    if a not in subset:
        raise ValueError(f"{a} is not in T")
    if not is_strongly_connected(graph_of(m), subset):
        raise ValueError(f"{set(subset)} is not strongly connected")
    closure = transitive_closure(m.transitions)
    best = 0.0
    for order in permutations(subset):
        chain = (s,) + order + (order[0],)
        value = min(closure[x, y] for x, y in zip(chain, chain[1:]))
        best = max(best, value)
    return best


# -- automata --------------------------------------------------------------


def words(props, max_len):
    """All words over 2^props of length 0..max_len."""
    symbols = all_symbols(props)
    layer = [()]
    for _ in range(max_len + 1):
        yield from layer
        layer = [w + (u,) for w in layer for u in symbols]


def nfa_accepts(a, word):
    """Independent subset simulation of ``a`` on a finite word."""
    current = set(a.initial)
    for u in word:
        nxt = set()
        for q in current:
            nxt.update(a.delta.get((q, frozenset(u)), ()))
        current = nxt
    return bool(current & a.accepting)


def nba_accepts_lasso(a, stem, loop):
    """Whether the Buchi automaton accepts ``stem loop loop ...``."""
    word = list(stem) + list(loop)
    n, k = len(word), len(stem)

    def succ(node):
        q, i = node
        j = i + 1 if i + 1 < n else k
        return [(t, j) for t in a.delta.get((q, frozenset(word[i])), ())]

    start = [(q, 0) for q in a.initial]
    seen = set(start)
    frontier = list(start)
    while frontier:
        u = frontier.pop()
        for v in succ(u):
            if v not in seen:
                seen.add(v)
                frontier.append(v)
    # an accepting node inside the looping part that can return to itself
    for node in seen:
        if node[0] not in a.accepting or node[1] < k:
            continue
        stack, visited = succ(node), set()
        while stack:
            v = stack.pop()
            if v == node:
                return True
            if v not in visited:
                visited.add(v)
                stack.extend(succ(v))
    return False


def good_prefix_possibility(m, a, start):
    """Join over finite paths from ``start`` whose trace ``a`` accepts.

    Paths of up to ``|S| * |Q|`` states are enough: an optimal witness
    corresponds to a simple path in the synchronised state space. Paths are
    enumerated length by length; two prefixes ending in the same model state
    with the same set of automaton states have the same futures, so only the
    better of the two is kept.
    """
    _checked(graph_of(m))
    g = graph_of(m)
    max_states = len(m.states) * len(a.states)

    def step(current, s):
        out = set()
        for q in current:
            out.update(a.delta.get((q, m.labels[s]), ()))
        return frozenset(out)

    best = 0.0
    layer = {(start, step(a.initial, start)): 1.0}
    for _ in range(max_states):
        nxt = {}
        for (s, current), value in layer.items():
            if current & a.accepting:
                best = max(best, value)
                continue
            if not current:
                continue
            for t, v in g[s].items():
                key = (t, step(current, t))
                nxt[key] = max(nxt.get(key, 0.0), min(value, v))
        layer = nxt
    return best


def raw_product(m, a):
    """The synchronised graph of ``m`` and ``a`` without any completion or checks.

    Returns ``(graph, entries, goal)`` where ``entries[s]`` lists the nodes a
    path starting at ``s`` may begin in.
    """
    g = graph_of(m)
    nodes = [(s, q) for s in m.states for q in a.states]
    graph = {x: {} for x in nodes}
    for (s, q) in nodes:
        for t, v in g[s].items():
            for q2 in a.delta.get((q, m.labels[t]), ()):
                graph[(s, q)][(t, q2)] = v
    entries = {
        s: sorted({q2 for q0 in a.initial for q2 in a.delta.get((q0, m.labels[s]), ())}, key=a.states.index)
        for s in m.states
    }
    entries = {s: [(s, q) for q in qs] for s, qs in entries.items()}
    goal = {x for x in nodes if x[1] in a.accepting}
    return graph, entries, goal


def product_lasso_possibility(m, a, start):
    """Best lasso through ``S x F`` in the raw product, from any entry node of ``start``."""
    graph, entries, goal = raw_product(m, a)
    return max((graph_repeated(graph, goal, x) for x in entries[start]), default=0.0)


def product_reach_possibility(m, a, start):
    graph, entries, goal = raw_product(m, a)
    return max((graph_reach(graph, goal, x) for x in entries[start]), default=0.0)


def lifted_paths(m, a, path):
    """Every product path ``<s0,q1> <s1,q2> ...`` that lifts ``path`` through a run of ``a``."""
    runs = [[q] for q0 in a.initial for q in a.delta.get((q0, m.labels[path[0]]), ())]
    for s in path[1:]:
        runs = [r + [q] for r in runs for q in a.delta.get((r[-1], m.labels[s]), ())]
    return [[f"{s}|{q}" for s, q in zip(path, r)] for r in runs]
