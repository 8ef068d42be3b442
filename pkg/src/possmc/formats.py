"""Text formats for models and automata, plus Graphviz DOT export.

Both formats are line oriented: one declaration per line, ``#`` starts a
comment, tokens are separated by whitespace. See ``docs/formats.md`` for the
grammar.
"""

from __future__ import annotations

import re

from .automata import NBA, NFA, FiniteAutomaton, ProductStructure
from .errors import AutomatonError, ParseError, ValidationError
from .kripke import PossKripke, RawStructure, validate

_TOKEN = re.compile(r"\{[^{}]*\}|[^\s{}]+|[{}]")
_IDENT = re.compile(r"[A-Za-z_][^\s#{},]*\Z")
_NUMBER = re.compile(r"[0-9]+(\.[0-9]+)?([eE][-+]?[0-9]+)?\Z|\.[0-9]+([eE][-+]?[0-9]+)?\Z")


def format_value(value) -> str:
    """Shortest decimal that parses back to the same double (``1`` not ``1.0``)."""
    text = repr(float(value))
    return text[:-2] if text.endswith(".0") else text


class _Token(str):
    col: int

    def __new__(cls, text, col):
        tok = super().__new__(cls, text)
        tok.col = col
        return tok


def _lines(text):
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        tokens = []
        for m in _TOKEN.finditer(body):
            if m.group() in ("{", "}"):
                raise ParseError(f"unbalanced brace {m.group()!r}", lineno, m.start() + 1)
            tokens.append(_Token(m.group(), m.start() + 1))
        if tokens:
            yield lineno, tokens


def _ident(tok, lineno, what="identifier"):
    if not _IDENT.match(tok):
        raise ParseError(f"invalid {what} {str(tok)!r}", lineno, tok.col)
    return str(tok)


def _number(tok, lineno):
    if not _NUMBER.match(tok):
        raise ParseError(f"expected a decimal number, got {str(tok)!r}", lineno, tok.col)
    return float(tok)


def _arity(tokens, lineno, n, usage):
    if len(tokens) != n:
        raise ParseError(f"expected '{usage}'", lineno, tokens[0].col)


def _ident_list(tokens, lineno, what):
    out = []
    for tok in tokens:
        name = _ident(tok, lineno, what)
        if name in out:
            raise ParseError(f"duplicate {what} {name!r}", lineno, tok.col)
        out.append(name)
    return out


# -- models ----------------------------------------------------------------


def parse_model(text: str, name: str = "M") -> PossKripke:
    """Parse a model document and validate it.

    Validation failures are reported as :class:`ParseError` carrying the line
    and column of the offending declaration.
    """
    states = None
    ap = None
    trans, init, labels = {}, {}, {}
    loc = {}

    def known(tok, lineno):
        s = _ident(tok, lineno, "state")
        if states is None:
            raise ParseError("'states' must be declared first", lineno, tok.col)
        if s not in states:
            raise ParseError(f"unknown state {s!r}", lineno, tok.col)
        return s

    for lineno, tokens in _lines(text):
        head, args = tokens[0], tokens[1:]
        if head == "model":
            _arity(tokens, lineno, 2, "model NAME")
            name = _ident(args[0], lineno, "model name")
        elif head == "states":
            if states is not None:
                raise ParseError("'states' declared twice", lineno, head.col)
            if not args:
                raise ParseError("state set is empty", lineno, head.col)
            states = _ident_list(args, lineno, "state")
            for tok in args:
                loc[("row", str(tok))] = (lineno, tok.col)
            loc[("states",)] = (lineno, head.col)
        elif head == "ap":
            if ap is not None:
                raise ParseError("'ap' declared twice", lineno, head.col)
            ap = _ident_list(args, lineno, "proposition")
            loc[("ap",)] = (lineno, head.col)
        elif head == "init":
            _arity(tokens, lineno, 3, "init STATE VALUE")
            s = known(args[0], lineno)
            if s in init:
                raise ParseError(f"duplicate initial value for {s}", lineno, head.col)
            init[s] = _number(args[1], lineno)
            loc[("init", s)] = (lineno, args[1].col)
            loc.setdefault(("init-sup",), (lineno, head.col))
        elif head == "trans":
            _arity(tokens, lineno, 4, "trans SRC DST VALUE")
            src, dst = known(args[0], lineno), known(args[1], lineno)
            if (src, dst) in trans:
                raise ParseError(f"duplicate transition {src} -> {dst}", lineno, head.col)
            trans[(src, dst)] = _number(args[2], lineno)
            loc[("trans", src, dst)] = (lineno, args[2].col)
        elif head == "label":
            if len(tokens) < 2:
                raise ParseError("expected 'label STATE PROP...'", lineno, head.col)
            s = known(args[0], lineno)
            if s in labels:
                raise ParseError(f"duplicate label declaration for {s}", lineno, head.col)
            props = _ident_list(args[1:], lineno, "proposition")
            if ap is None:
                raise ParseError("'ap' must be declared before labels", lineno, head.col)
            for tok in args[1:]:
                if str(tok) not in ap:
                    raise ParseError(f"label of {s} uses unknown proposition {str(tok)!r}", lineno, tok.col)
            labels[s] = props
            loc[("label", s)] = (lineno, head.col)
        else:
            raise ParseError(f"unknown declaration {str(head)!r}", lineno, head.col)

    if states is None:
        raise ParseError("missing 'states' declaration", 1, 1)
    if ap is None and labels:
        raise ParseError("labels given without 'ap'", *loc.get(("states",), (1, 1)))
    raw = RawStructure(states, trans, init, ap, labels if ap is not None else None, name)
    try:
        return validate(raw)
    except ValidationError as exc:
        line, col = loc.get(exc.key, loc.get(("states",), (None, None)))
        raise ParseError(str(exc), line, col) from exc


def render_model(m: PossKripke) -> str:
    lines = [f"model {m.name}", "states " + " ".join(m.states)]
    shorthand = m.atomic_props == frozenset(m.states) and all(
        m.labels[s] == frozenset([s]) for s in m.states
    )
    if not shorthand:
        lines.append("ap " + " ".join(sorted(m.atomic_props)).rstrip())
    for s in m.states:
        v = m.I(s)
        if v > 0:
            lines.append(f"init {s} {format_value(v)}")
    for s, t, v in m.transition_items():
        lines.append(f"trans {s} {t} {format_value(v)}")
    if not shorthand:
        for s in m.states:
            props = sorted(m.labels[s])
            lines.append(" ".join(["label", s, *props]))
    return "\n".join(lines) + "\n"


# -- automata --------------------------------------------------------------


def _symbol(tok, lineno, ap):
    if not (tok.startswith("{") and tok.endswith("}")):
        raise ParseError(f"expected a symbol like {{a,b}}, got {str(tok)!r}", lineno, tok.col)
    inner = tok[1:-1]
    parts = [p.strip() for p in inner.split(",")] if inner.strip() else []
    seen = []
    for p in parts:
        if not p or not _IDENT.match(p):
            raise ParseError(f"invalid proposition {p!r} in symbol", lineno, tok.col)
        if p in seen:
            raise ParseError(f"duplicate proposition {p!r} in symbol", lineno, tok.col)
        if p not in ap:
            raise ParseError(f"unknown proposition {p!r} in symbol", lineno, tok.col)
        seen.append(p)
    return frozenset(seen)


def parse_automaton(text: str) -> FiniteAutomaton:
    kind = states = ap = initial = accepting = None
    triples = []
    seen = set()

    def known(tok, lineno):
        q = _ident(tok, lineno, "automaton state")
        if states is None:
            raise ParseError("'states' must be declared first", lineno, tok.col)
        if q not in states:
            raise ParseError(f"unknown automaton state {q!r}", lineno, tok.col)
        return q

    def once(value, head, lineno):
        if value is not None:
            raise ParseError(f"'{head}' declared twice", lineno, head.col)

    for lineno, tokens in _lines(text):
        head, args = tokens[0], tokens[1:]
        if head == "kind":
            once(kind, head, lineno)
            _arity(tokens, lineno, 2, "kind nfa|nba")
            if args[0] not in (NFA, NBA):
                raise ParseError(f"kind must be 'nfa' or 'nba', got {str(args[0])!r}", lineno, args[0].col)
            kind = str(args[0])
        elif head == "ap":
            once(ap, head, lineno)
            ap = _ident_list(args, lineno, "proposition")
        elif head == "states":
            once(states, head, lineno)
            if not args:
                raise ParseError("automaton has no states", lineno, head.col)
            states = _ident_list(args, lineno, "automaton state")
        elif head == "initial":
            once(initial, head, lineno)
            initial = [known(t, lineno) for t in args]
            if not initial:
                raise ParseError("empty initial set", lineno, head.col)
        elif head == "accepting":
            once(accepting, head, lineno)
            accepting = [known(t, lineno) for t in args]
        elif head == "trans":
            _arity(tokens, lineno, 4, "trans SRC {SYMBOL} DST")
            if ap is None:
                raise ParseError("'ap' must be declared before transitions", lineno, head.col)
            q = known(args[0], lineno)
            symbol = _symbol(args[1], lineno, ap)
            t = known(args[2], lineno)
            if (q, symbol, t) in seen:
                raise ParseError("duplicate transition", lineno, head.col)
            seen.add((q, symbol, t))
            triples.append((q, symbol, t))
        else:
            raise ParseError(f"unknown declaration {str(head)!r}", lineno, head.col)

    for value, what in ((kind, "kind"), (states, "states"), (initial, "initial")):
        if value is None:
            raise ParseError(f"missing '{what}' declaration", 1, 1)
    try:
        return FiniteAutomaton.from_triples(kind, states, ap or (), triples, initial, accepting or ())
    except AutomatonError as exc:
        raise ParseError(str(exc)) from exc


def format_symbol(symbol) -> str:
    return "{" + ",".join(sorted(symbol)) + "}"


def render_automaton(a: FiniteAutomaton) -> str:
    lines = [
        f"kind {a.kind}",
        ("ap " + " ".join(sorted(a.alphabet_props))).rstrip(),
        "states " + " ".join(a.states),
        "initial " + " ".join(q for q in a.states if q in a.initial),
        ("accepting " + " ".join(q for q in a.states if q in a.accepting)).rstrip(),
    ]
    for q, symbol, t in a.triples():
        lines.append(f"trans {q} {format_symbol(symbol)} {t}")
    return "\n".join(lines) + "\n"


# -- DOT -------------------------------------------------------------------


def _escape(text) -> str:
    return str(text).replace("\\", "\\\\").replace('"', '\\"')


def _quote(text) -> str:
    return '"' + _escape(text) + '"'


def export_dot(x) -> str:
    """Graphviz text for a model or a product.

    One node per state, one edge per positive transition labelled with its
    possibility. Initial states are drawn bold with their initial value as
    ``xlabel``; goal states of a product are drawn as double circles.
    """
    if isinstance(x, ProductStructure):
        m, goal = x.structure, x.goal
    elif isinstance(x, PossKripke):
        m, goal = x, frozenset()
    else:
        raise TypeError(f"cannot export {type(x).__name__}")
    out = [f"digraph {_quote(m.name)} {{", "  rankdir=LR;"]
    for s in m.states:
        attrs = [f"shape={'doublecircle' if s in goal else 'ellipse'}"]
        props = ",".join(sorted(m.labels[s]))
        attrs.append('label="' + _escape(s) + "\\n{" + _escape(props) + '}"')
        if m.I(s) > 0:
            attrs.append("style=bold")
            attrs.append(f"xlabel={_quote('init ' + format_value(m.I(s)))}")
        out.append(f"  {_quote(s)} [{', '.join(attrs)}];")
    for s, t, v in m.transition_items():
        out.append(f"  {_quote(s)} -> {_quote(t)} [label={_quote(format_value(v))}];")
    out.append("}")
    return "\n".join(out) + "\n"
