"""Command-line front end: ``possmc <command> ...``.

Exit status is 0 on success, 1 on a usage error and 2 when a model or
automaton fails to parse or validate (or an analysis rejects its inputs).
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from . import reach
from .automata import check_omega, check_safety, complete, product
from .errors import PossmcError
from .formats import export_dot, format_value, parse_automaton, parse_model, render_model
from .fuzzy import transitive_closure

EXIT_OK, EXIT_USAGE, EXIT_INVALID = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read(ref: str, suffix: str) -> str:
    """Read a file, or a bundled document when ``ref`` is a bare name like ``example1``."""
    path = Path(ref)
    if path.exists():
        return path.read_text(encoding="utf-8")
    if "/" not in ref and "\\" not in ref:
        bundled = resources.files("possmc").joinpath("data", ref + suffix)
        if bundled.is_file():
            return bundled.read_text(encoding="utf-8")
    raise PossmcError(f"cannot read {ref!r}: no such file")


def _load_model(ref):
    return parse_model(_read(ref, ".pkm"), name=Path(ref).stem)


def _load_automaton(ref):
    return parse_automaton(_read(ref, ".aut"))


def _states(text):
    return [s.strip() for s in text.split(",") if s.strip()] if text else []


def _emit_report(rep, args, out, extra=None):
    if args.json:
        payload = dict(extra or {})
        payload.update(rep.to_json())
        out.write(json.dumps(payload, indent=2) + "\n")
        return
    out.write(format_value(rep.aggregate) + "\n")
    if args.per_state:
        for s, v in rep.per_state.items():
            out.write(f"{s} {format_value(v)}\n")


def cmd_validate(args, out):
    m = _load_model(args.model)
    n_trans = sum(1 for _ in m.transition_items())
    if args.json:
        out.write(json.dumps({"valid": True, "states": list(m.states), "transitions": n_trans}) + "\n")
    else:
        out.write(f"valid: {m.size} states, {n_trans} transitions\n")


def cmd_measure(args, out):
    m = _load_model(args.model)
    prefix = _states(args.prefix)
    if not prefix:
        raise UsageError("measure: --prefix needs at least one state")
    value = m.cylinder_possibility(prefix)
    if args.json:
        out.write(json.dumps({"prefix": prefix, "possibility": value}) + "\n")
    else:
        out.write(format_value(value) + "\n")


def cmd_reach(args, out):
    m = _load_model(args.model)
    target = _states(args.target)
    if args.method == "closure":
        rep = reach.reach_via_closure(m, target)
    else:
        rep = reach.reach_via_fixed_point(m, target)
    _emit_report(rep, args, out, {"property": "eventually", "target": target})


def cmd_until(args, out):
    m = _load_model(args.model)
    left, target = _states(args.left), _states(args.target)
    if args.bound is None:
        rep = reach.until_possibility(m, left, target)
    else:
        rep = reach.bounded_until_possibility(m, left, target, args.bound)
    extra = {"property": "until", "left": left, "target": target}
    if args.bound is not None:
        extra["bound"] = args.bound
    _emit_report(rep, args, out, extra)


def cmd_repeated(args, out):
    m = _load_model(args.model)
    target = _states(args.target)
    rep = reach.repeated_reach_possibility(m, target)
    _emit_report(rep, args, out, {"property": "infinitely_often", "target": target})


def cmd_safety(args, out):
    m = _load_model(args.model)
    a = _load_automaton(args.automaton)
    _emit_report(check_safety(m, a), args, out, {"property": "safety"})


def cmd_omega(args, out):
    m = _load_model(args.model)
    a = _load_automaton(args.automaton)
    _emit_report(check_omega(m, a), args, out, {"property": "omega"})


def cmd_closure(args, out):
    m = _load_model(args.model)
    c = transitive_closure(m.transitions)
    if args.json:
        payload = {"states": list(m.states), "closure": c.entries.tolist()}
        out.write(json.dumps(payload, indent=2) + "\n")
        return
    width = max(len(s) for s in m.states)
    cells = [[format_value(v) for v in row] for row in c.entries]
    colw = max(width, *(len(x) for row in cells for x in row))
    out.write(" " * width + " " + " ".join(s.rjust(colw) for s in m.states) + "\n")
    for s, row in zip(m.states, cells):
        out.write(s.ljust(width) + " " + " ".join(x.rjust(colw) for x in row) + "\n")


def cmd_product(args, out):
    m = _load_model(args.model)
    a = _load_automaton(args.automaton)
    prod = product(m, complete(a))
    if args.dot:
        out.write(export_dot(prod))
    else:
        out.write(render_model(prod.structure))
        out.write("# goal " + " ".join(s for s in prod.structure.states if s in prod.goal) + "\n")


def build_parser():
    parser = _Parser(prog="possmc", description="Possibilistic model checking of linear-time properties.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def report_flags(p):
        p.add_argument("--per-state", action="store_true", help="also print one 'state value' line per state")
        p.add_argument("--json", action="store_true", help="print a JSON report")

    p = sub.add_parser("validate", help="parse and validate a model")
    p.add_argument("model")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("measure", help="possibility of the cylinder of a finite path")
    p.add_argument("model")
    p.add_argument("--prefix", required=True, help="comma-separated states, e.g. s0,s1,s2")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("reach", help="possibility of eventually reaching the target")
    p.add_argument("model")
    p.add_argument("--target", required=True)
    p.add_argument("--method", choices=["closure", "fixpoint"], default="closure")
    report_flags(p)
    p.set_defaults(func=cmd_reach)

    p = sub.add_parser("until", help="possibility of LEFT until TARGET")
    p.add_argument("model")
    p.add_argument("--left", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--bound", type=int, default=None)
    report_flags(p)
    p.set_defaults(func=cmd_until)

    p = sub.add_parser("repeated", help="possibility of visiting the target infinitely often")
    p.add_argument("model")
    p.add_argument("--target", required=True)
    report_flags(p)
    p.set_defaults(func=cmd_repeated)

    p = sub.add_parser("safety", help="regular safety property given by a good-prefix NFA")
    p.add_argument("model")
    p.add_argument("automaton")
    report_flags(p)
    p.set_defaults(func=cmd_safety)

    p = sub.add_parser("omega", help="omega-regular property given by an NBA")
    p.add_argument("model")
    p.add_argument("automaton")
    report_flags(p)
    p.set_defaults(func=cmd_omega)

    p = sub.add_parser("closure", help="print the transitive closure P+")
    p.add_argument("model")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("product", help="print the product with an automaton")
    p.add_argument("model")
    p.add_argument("automaton")
    p.add_argument("--dot", action="store_true", help="emit Graphviz DOT instead of the model format")
    p.set_defaults(func=cmd_product)
    return parser


def run_cli(argv, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        try:
            args = build_parser().parse_args(argv)
        except SystemExit as exc:  # --help
            return exc.code if isinstance(exc.code, int) else EXIT_USAGE
        if getattr(args, "bound", None) is not None and args.bound < 0:
            raise UsageError("until: --bound must be non-negative")
        args.func(args, stdout)
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except PossmcError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    except OSError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    return EXIT_OK


def main(argv=None):
    sys.exit(run_cli(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
