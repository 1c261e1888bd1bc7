"""Command-line interface.

Exit status is 0 on success, 1 on malformed input or arguments, and 2 when
a search budget is exceeded or an external ILP solution is infeasible.
Items are printed 1-based as ``a1 a2 ...``.
"""

import argparse
import csv
import json
import sys

from . import __version__
from ._validation import BudgetExceededError, as_fraction
from .analysis import FAMILIES as BOUND_FAMILIES
from .analysis import bound_curves, iso_curves, parse_grid
from .datasets import KINDS, make_instance
from .exact import DEFAULT_BUDGET
from .formats import read_instance, read_preflib_soc, serialize_instance
from .greedy import GreedyStep
from .ilp import emit_lp, parse_solution, verify_solution
from .model import Instance, format_number
from .nonfinicky import SegmentStep, SlotsState
from .owa import parse_family
from .scoring import check_submodular, committee_score
from .solvers import ALGORITHMS, solve

EXIT_OK, EXIT_INPUT, EXIT_INFEASIBLE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; we reserve 2 for budget errors
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _label(a):
    return f"a{a + 1}"


def _num(x):
    return None if x is None else format_number(x)


def _guarantee(g):
    return "none" if g is None else f"{g:.6g}"


def _parse_committee(tokens, m):
    items = []
    for tok in " ".join(tokens).replace(",", " ").split():
        body = tok[1:] if tok.lower().startswith("a") else tok
        if not body.isdigit() or not 1 <= int(body) <= m:
            raise ValueError(f"bad committee member {tok!r} (items are a1..a{m})")
        items.append(int(body) - 1)
    return items


def _open_out(path):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _write_text(text, path):
    out, close = _open_out(path)
    try:
        out.write(text)
    finally:
        if close:
            out.close()


def _load(args):
    instance = read_instance(args.instance)
    if getattr(args, "owa", None):
        instance = instance.with_owa(parse_family(args.owa, instance.K))
    return instance


# trace rows ----------------------------------------------------------------

def _trace_rows(report):
    steps = report.trace
    if not steps:
        return ["iteration"], []
    first = steps[0]
    if isinstance(first, GreedyStep):
        header = ["iteration", "item", "gain", "picked"]
        rows = [[it, _label(a), _num(g), int(a == s.item)]
                for it, s in enumerate(steps, start=1) for a, g in sorted(s.gains.items())]
    elif isinstance(first, SlotsState):
        header = ["iteration", "item", "coverage", "free_total", "free", "occupied"]
        rows = [[it, _label(s.item), s.coverage, s.total_free,
                 " ".join(map(str, s.free)),
                 " ".join("|".join(f"{_label(a)}@{k}" for a, k in agent) or "-"
                          for agent in s.occupied)]
                for it, s in enumerate(steps, start=1)]
    elif isinstance(first, SegmentStep):
        header = ["iteration", "window", "picked", "survivors"]
        rows = [[s.iteration, f"{s.window[0]}-{s.window[1]}",
                 " ".join(map(_label, s.picked)),
                 " ".join(str(j + 1) for j in s.survivors)]
                for s in steps]
    else:
        header = ["iteration", "step"]
        rows = [[it, repr(s)] for it, s in enumerate(steps, start=1)]
    return header, rows


def _write_trace(report, path):
    header, rows = _trace_rows(report)
    out, close = _open_out(path)
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    finally:
        if close:
            out.close()


# subcommands ---------------------------------------------------------------

def cmd_solve(args):
    instance = _load(args)
    report = solve(instance, args.algorithm, gamma=args.gamma, ell=args.ell,
                   epsilon=args.epsilon, inner=args.inner, budget=args.budget)
    winners = [a + 1 for a in report.items]
    record = {"winners": winners, "score": _num(report.score),
              "algorithm": report.algorithm,
              "guarantee": report.guarantee}
    if args.format == "json-lines":
        print(json.dumps(record))
    elif args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["winners", "score", "algorithm", "guarantee"])
        writer.writerow([" ".join(map(str, winners)), record["score"], report.algorithm,
                         _guarantee(report.guarantee)])
    else:
        print(report.winners)
        print(f"algorithm {report.algorithm}")
        print(f"guarantee {_guarantee(report.guarantee)}")
        for note in report.notes:
            print(f"note {note}")
    if args.trace:
        _write_trace(report, args.trace)
    return EXIT_OK


def cmd_score(args):
    instance = _load(args)
    items = _parse_committee(args.committee, instance.m)
    if len(items) != instance.K:
        raise ValueError(f"committee has {len(items)} items, expected K={instance.K}")
    br = committee_score(instance, items)
    if args.format == "json-lines":
        for i, (s, vals) in enumerate(zip(br.per_agent, br.per_agent_sorted_utilities), start=1):
            print(json.dumps({"agent": i, "score": _num(s), "sorted": [_num(v) for v in vals]}))
        print(json.dumps({"total": _num(br.total)}))
    elif args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["agent", "score", "sorted_utilities"])
        for i, (s, vals) in enumerate(zip(br.per_agent, br.per_agent_sorted_utilities), start=1):
            writer.writerow([i, _num(s), " ".join(map(_num, vals))])
        writer.writerow(["total", _num(br.total), ""])
    else:
        for i, (s, vals) in enumerate(zip(br.per_agent, br.per_agent_sorted_utilities), start=1):
            print(f"agent {i}: {_num(s)} ({' '.join(map(_num, vals))})")
        print(f"total {_num(br.total)}")
    return EXIT_OK


def cmd_gen(args):
    kw = {}
    if args.kind == "approval":
        kw["rate"] = args.rate
    elif args.kind == "uniform":
        kw["max_utility"] = args.max_utility
    instance = make_instance(args.kind, args.n, args.m, args.K, owa=args.owa, seed=args.seed, **kw)
    _write_text(serialize_instance(instance), args.output)
    return EXIT_OK


def cmd_import_preflib(args):
    if args.file == "-":
        text = sys.stdin.read()
    else:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    utilities = read_preflib_soc(text)
    instance = Instance(utilities, parse_family(args.owa, args.K))
    _write_text(serialize_instance(instance), args.output)
    return EXIT_OK


def cmd_ilp_export(args):
    _write_text(emit_lp(_load(args)), args.output)
    return EXIT_OK


def cmd_ilp_verify(args):
    instance = read_instance(args.instance)
    with open(args.solution, encoding="utf-8") as fh:
        assignment = parse_solution(fh.read())
    result = verify_solution(instance, assignment)
    committee = None if result.committee is None else [a + 1 for a in result.committee]
    if args.format == "json-lines":
        print(json.dumps({"ok": result.ok, "objective": _num(result.objective),
                          "committee": committee,
                          "committee_score": _num(result.committee_score),
                          "violations": result.violations}))
    elif args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["ok", "objective", "committee", "committee_score", "violations"])
        writer.writerow([int(result.ok), _num(result.objective),
                         "" if committee is None else " ".join(map(str, committee)),
                         _num(result.committee_score), "; ".join(result.violations)])
    else:
        if result.ok:
            print(f"ok objective {_num(result.objective)}")
            print(" ".join(f"a{a}" for a in committee))
        else:
            print("infeasible")
            for v in result.violations:
                print(v)
    return EXIT_OK if result.ok else EXIT_INFEASIBLE


def cmd_bounds(args):
    axes = parse_grid(args.grid)
    unknown = set(axes) - {"beta", "gamma", "ratio", "target"}
    if unknown:
        raise ValueError(f"unknown grid axis {sorted(unknown)[0]!r}; use beta, gamma, ratio, target")
    betas = axes.get("beta", [1.0])
    gammas = axes.get("gamma", [1.0])
    ratios = axes.get("ratio", [1.0])
    if "target" in axes:
        text = iso_curves(axes["target"], gammas, ratios, axes.get("beta", []))
    else:
        text = bound_curves(args.family, betas, gammas, ratios, ell=args.ell)
    _write_text(text, args.output)
    return EXIT_OK


def cmd_check_submodular(args):
    instance = _load(args)
    w = check_submodular(instance, mode=args.mode, sample_count=args.samples, seed=args.seed)
    if args.format == "json-lines":
        rec = {"ok": w is None}
        if w is not None:
            rec.update(W=[a + 1 for a in w.W], W_prime=[a + 1 for a in w.W_prime],
                       a=w.a + 1, gain_W=_num(w.lhs), gain_W_prime=_num(w.rhs))
        print(json.dumps(rec))
    elif w is None:
        print("ok")
    else:
        print(f"violation W={{{' '.join(map(_label, w.W))}}} "
              f"W'={{{' '.join(map(_label, w.W_prime))}}} a={_label(w.a)} "
              f"gain {_num(w.lhs)} < {_num(w.rhs)}")
    return EXIT_OK


# parser --------------------------------------------------------------------

def _fraction_arg(text):
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def build_parser():
    parser = _Parser(prog="owawinner", description="OWA-based committee selection.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    fmt = dict(choices=("plain", "csv", "json-lines"), default="plain")

    p = sub.add_parser("solve", help="compute a committee")
    p.add_argument("instance", help="instance file (.owi) or - for stdin")
    p.add_argument("--algorithm", choices=ALGORITHMS, default="greedy")
    p.add_argument("--owa", help="override the instance OWA with a family spec, e.g. 'kbest 2'")
    p.add_argument("--gamma", type=_fraction_arg)
    p.add_argument("--ell", type=int)
    p.add_argument("--epsilon", type=_fraction_arg)
    p.add_argument("--inner", choices=("greedy", "brute", "slots"), default="greedy")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--trace", metavar="FILE", help="write the iteration trace as CSV (- for stdout)")
    p.add_argument("--format", **fmt)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("score", help="score a given committee")
    p.add_argument("instance")
    p.add_argument("committee", nargs="+", help="items, e.g. a1 a2 a6 or 1,2,6")
    p.add_argument("--owa")
    p.add_argument("--format", **fmt)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("--kind", choices=KINDS, default="uniform")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--owa", default="harmonic")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rate", type=float, default=0.5, help="approval probability")
    p.add_argument("--max-utility", type=int, default=10)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("import-preflib", help="convert a PrefLib .soc file to an instance")
    p.add_argument("file")
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--owa", default="harmonic")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_import_preflib)

    p = sub.add_parser("ilp-export", help="write the integer program in LP format")
    p.add_argument("instance")
    p.add_argument("--owa")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_ilp_export)

    p = sub.add_parser("ilp-verify", help="check an external ILP solution")
    p.add_argument("instance")
    p.add_argument("solution", help="file of 'name value' lines")
    p.add_argument("--format", **fmt)
    p.set_defaults(func=cmd_ilp_verify)

    p = sub.add_parser("bounds", help="emit approximation-bound curves as CSV")
    p.add_argument("--family", choices=BOUND_FAMILIES, default="slots")
    p.add_argument("--grid", required=True,
                   help="e.g. 'beta=0.5:1:6; gamma=0.1,0.5; ratio=1:10:10'; "
                        "add target=... for iso-bound curves")
    p.add_argument("--ell", type=int, default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("check-submodular", help="search for a submodularity violation")
    p.add_argument("instance")
    p.add_argument("--owa")
    p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("plain", "json-lines"), default="plain")
    p.set_defaults(func=cmd_check_submodular)
    return parser


def main(argv=None):
    """Run the CLI and return the exit status."""
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"owawinner: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, OSError) as exc:
        print(f"owawinner: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
