"""Command-line front end.

Exit codes: 0 success, 1 counterexample or non-terminating term found,
2 usage or parse error, 3 budget exhausted before a verdict.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Iterator, Optional

from adjourn import arl, harness
from adjourn.parsing import ParseError
from adjourn.syntax import Node

EXIT_OK, EXIT_FOUND, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

RootSteps = Callable[[Node], list]


# --------------------------------------------------------------------------
# per-calculus plumbing


def parse_term(calculus: str, text: str) -> Node:
    from adjourn.ljq import parse_ljq
    from adjourn.parsing import parse_lambda, parse_marked

    return {"lambda": parse_lambda, "marked": parse_marked, "ljq": parse_ljq}[calculus](text)


def show_term(calculus: str, t: Node) -> str:
    from adjourn import lam, ljq, marked

    return {"lambda": lam.show, "marked": marked.show, "ljq": ljq.show}[calculus](t)


def _lambda_root(rel: str) -> RootSteps:
    from adjourn.lam import App, Lam, sigma_root
    from adjourn.syntax import instantiate

    def root(t: Node) -> list:
        out = []
        if rel in ("beta", "sigmabeta") and type(t) is App and type(t.fun) is Lam:
            out.append(("beta", instantiate(t.fun.body, t.arg)))
        if rel in ("sigma", "sigmabeta"):
            r = sigma_root(t)
            if r is not None:
                out.append(("sigma", r))
        return out

    return root


def _marked_root(t: Node) -> list:
    from adjourn.lam import App, Lam
    from adjourn.marked import Ml, StepKind, _root_kind, _sigmm_root
    from adjourn.syntax import instantiate

    out = []
    if type(t) is App and type(t.fun) is Lam:
        out.append((str(_root_kind(t.fun.body, t.arg)), instantiate(t.fun.body, t.arg)))
        out.append((str(StepKind.ACTIV), Ml(t.fun.body, t.arg, t.fun.hint)))
    elif type(t) is Ml:
        out.append((str(_root_kind(t.body, t.arg)), instantiate(t.body, t.arg)))
        r = _sigmm_root(t)
        if r is not None:
            out.append((str(StepKind.SIGMM), r))
    return out


def _ljq_root(relaxed: bool) -> RootSteps:
    from adjourn.ljq import root_steps

    return lambda t: [(str(r), u) for r, u in root_steps(t, relaxed)]


def root_for(calculus: str, rel: Optional[str] = None, relaxed: bool = False) -> RootSteps:
    if calculus == "lambda":
        return _lambda_root(rel or "beta")
    if calculus == "marked":
        return _marked_root
    return _ljq_root(relaxed)


def replace_at(t: Node, path: tuple[int, ...], new: Node) -> Node:
    if not path:
        return new
    kids = list(t.kids())
    kids[path[0]] = replace_at(kids[path[0]], path[1:], new)
    return t.rebuild(tuple(kids))


def positioned_steps(t: Node, root: RootSteps, calculus: str = "") -> Iterator[tuple[tuple, str, Node]]:
    """Every ``(position, rule, reduct)`` under full contextual closure, in preorder."""
    from adjourn.lam import iter_positions

    for path, s in iter_positions(t):
        for rule, r in root(s):
            if calculus == "marked" and rule != "Activ" and rule != "Sigmm" and _in_marked_body(t, path):
                rule = "Kaco"
            yield path, rule, replace_at(t, path, r)


def _in_marked_body(t: Node, path: tuple) -> bool:
    from adjourn.marked import Ml

    for i in path:
        if type(t) is Ml and i == 0:
            return True
        t = t.kids()[i]
    return False


def leftmost_innermost(steps: list[tuple[tuple, str, Node]]) -> Optional[tuple[tuple, str, Node]]:
    """The first step at the leftmost of the innermost redex positions."""
    if not steps:
        return None
    positions = {p for p, _, _ in steps}
    inner = [p for p in positions if not any(q != p and q[:len(p)] == p for q in positions)]
    best = min(inner)
    return next(s for s in steps if s[0] == best)


def trace(t: Node, root: RootSteps, calculus: str, max_steps: int) -> tuple[list, bool]:
    """Deterministic reduction sequence; the flag tells whether a normal form was reached."""
    seq = [("", t)]
    for _ in range(max_steps):
        step = leftmost_innermost(list(positioned_steps(seq[-1][1], root, calculus)))
        if step is None:
            return seq, True
        seq.append((step[1], step[2]))
    return seq, not list(positioned_steps(seq[-1][1], root, calculus))


# --------------------------------------------------------------------------
# subcommands


def _read_terms(args, count: int) -> list[str]:
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
        if count == 1:
            return [text.strip()]
        lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        if len(lines) != count:
            raise UsageError(f"expected {count} terms in {args.file}, found {len(lines)}")
        return lines
    if len(args.terms) != count:
        raise UsageError(f"expected {count} term argument(s), got {len(args.terms)}")
    return list(args.terms)


class UsageError(ValueError):
    pass


def _emit(args, text: str, data) -> None:
    if args.format == "json":
        print(json.dumps(data, indent=2, ensure_ascii=False))
    else:
        print(text)


def cmd_reduce(args) -> int:
    t = parse_term(args.calculus, _read_terms(args, 1)[0])
    root = root_for(args.calculus, args.rel, args.relaxed)
    steps = list(positioned_steps(t, root, args.calculus))
    rows = [(rule, show_term(args.calculus, r), list(p)) for p, rule, r in steps]
    text = "\n".join(f"{rule:16} {r}" for rule, r, _ in rows) or "(normal form)"
    _emit(args, text, [{"rule": rule, "reduct": r, "position": p} for rule, r, p in rows])
    return EXIT_OK


def cmd_trace(args, final_only: bool = False) -> int:
    t = parse_term(args.calculus, _read_terms(args, 1)[0])
    root = root_for(args.calculus, args.rel, args.relaxed)
    seq, normal = trace(t, root, args.calculus, args.depth)
    shown = [(rule, show_term(args.calculus, u)) for rule, u in seq]
    if final_only:
        _emit(args, shown[-1][1], {"normal_form": shown[-1][1] if normal else None,
                                   "last": shown[-1][1], "steps": len(seq) - 1, "complete": normal})
    else:
        lines = [shown[0][1]] + [f"-> [{rule}] {u}" for rule, u in shown[1:]]
        _emit(args, "\n".join(lines), {"steps": [{"rule": r, "term": u} for r, u in shown],
                                       "complete": normal})
    if not normal:
        print(f"step limit {args.depth} reached before a normal form", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def cmd_encode(args) -> int:
    from adjourn import folpo, lam, ljq, marked

    text = _read_terms(args, 1)[0]
    if args.via == "fgt":
        out = lam.show(marked.fgt(parse_term("marked", text)))
    elif args.via == "ql":
        out = lam.show(ljq.ql(parse_term("ljq", text)))
    else:
        t = parse_term("ljq", text)
        try:
            out = folpo.show(folpo.foc(t, oracle=ljq.beta_oracle(args.budget)))
        except folpo.NotBounded as e:
            print(f"not beta-bounded: {e}", file=sys.stderr)
            return EXIT_FOUND
    _emit(args, out, {"via": args.via, "image": out})
    return EXIT_OK


def cmd_lpo_compare(args) -> int:
    from adjourn import folpo

    a, b = (folpo.parse_foterm(x) for x in _read_terms(args, 2))
    lpo = folpo.Lpo(folpo.LabelOrder(args.budget))
    try:
        verdict = lpo.compare(a, b)
    except folpo.NotSN as e:
        print(f"label is not sigma-beta SN: {e}", file=sys.stderr)
        return EXIT_FOUND
    except folpo.BudgetExceeded as e:
        print(f"budget {args.budget} exhausted: {e}", file=sys.stderr)
        return EXIT_BUDGET
    _emit(args, str(verdict), {"verdict": str(verdict)})
    return EXIT_OK


_SN_RELATIONS = {
    "beta": "lambda", "sigma": "lambda", "sigmabeta": "lambda", "bet3": "marked", "ljq": "ljq",
}


def _sn_view(rel: str, relaxed: bool) -> arl.RelView:
    from adjourn import lam, ljq, marked

    if rel == "beta":
        return lam.BETA
    if rel == "sigma":
        return lam.SIGMA
    if rel == "sigmabeta":
        return lam.SIGMA_BETA
    if rel == "bet3":
        return marked.BET3
    return ljq.LJQ_RELAXED if relaxed else ljq.LJQ


def cmd_sn(args) -> int:
    calculus = _SN_RELATIONS[args.rel]
    t = parse_term(calculus, _read_terms(args, 1)[0])
    v = arl.sn_classify(_sn_view(args.rel, args.relaxed), t, args.budget)
    data = {"kind": str(v.kind), "max_path_len": v.max_path_len}
    text = str(v)
    if v.kind is arl.Verdict.NON_SN:
        cycle = _cycle(v.witness)
        data["witness"] = [show_term(calculus, s) for s in v.witness]
        data["cycle_length"] = cycle
        text = f"NonSN, cycle of length {cycle}\n" + "\n".join(
            f"  {show_term(calculus, s)}" for s in v.witness)
    elif v.kind is arl.Verdict.UNKNOWN:
        data["witness"] = v.witness
        text = f"Unknown: node budget {args.budget} exhausted"
    _emit(args, text, data)
    return {arl.Verdict.SN: EXIT_OK, arl.Verdict.NON_SN: EXIT_FOUND}.get(v.kind, EXIT_BUDGET)


def _cycle(witness: list) -> int:
    last = witness[-1]
    return len(witness) - 1 - witness.index(last)


def cmd_check(args) -> int:
    params = {"size": args.size, "depth": args.depth, "budget": args.budget, "seed": args.seed,
              "samples": args.samples, "triples": args.triples}
    # the budget flag always has a value; pass it only where it was changed
    if params["budget"] == arl.DEFAULT_NODE_BUDGET:
        params["budget"] = None
    try:
        rep = harness.run_suite(args.suite, params, args.report)
    except harness.UnknownSuite as e:
        raise UsageError(e.args[0]) from None
    if args.format == "json":
        print(rep.dumps(harness.render))
    else:
        print(rep.summary())
        for name, counts in rep.parts.items():
            print(f"  {name}: {counts}")
        for c in rep.counterexamples[:5]:
            print(f"  counterexample: {harness.render(c.input)} [{c.step}] expected {c.expected}")
    return EXIT_OK if rep.ok else EXIT_FOUND


def cmd_examples(args) -> int:
    rep = harness.run_suite("examples", {"budget": args.budget})
    if args.format == "json":
        print(rep.dumps(harness.render))
    else:
        print("Example 1 (relaxed mode):")
        for rule, term in zip([""] + rep.params.get("cycle_rules", []), rep.params.get("cycle", [])):
            print(f"  {'-> [' + rule + '] ' if rule else ''}{term}")
        print(f"Example 1 (strict mode): {rep.params.get('strict_verdict')}")
        print("Example 2 decreases:")
        for pair, ok in rep.params.get("decreases", {}).items():
            print(f"  {pair}: {'holds' if ok else 'FAILS'}")
        print(rep.summary())
    return EXIT_OK if rep.ok else EXIT_FOUND


# --------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--budget", type=int, default=arl.DEFAULT_NODE_BUDGET,
                        help="node budget for SN searches")
    common.add_argument("--file", help="read the term(s) from this file")

    calc = argparse.ArgumentParser(add_help=False)
    calc.add_argument("--calculus", choices=harness.CALCULI, default="lambda")
    calc.add_argument("--rel", choices=("beta", "sigma", "sigmabeta"),
                      help="lambda-calculus relation (default beta)")
    calc.add_argument("--relaxed", action="store_true", help="lambda-LJQ without side conditions")

    p = argparse.ArgumentParser(prog="adjourn", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("reduce", parents=[common, calc], help="all one-step reducts")
    s.add_argument("terms", nargs="*")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("trace", parents=[common, calc], help="a maximal reduction sequence")
    s.add_argument("terms", nargs="*")
    s.add_argument("--depth", type=int, default=1000, help="step limit")
    s.set_defaults(func=cmd_trace)

    s = sub.add_parser("normalize", parents=[common, calc], help="normal form along the trace")
    s.add_argument("terms", nargs="*")
    s.add_argument("--depth", type=int, default=1000, help="step limit")
    s.set_defaults(func=lambda a: cmd_trace(a, final_only=True))

    s = sub.add_parser("encode", parents=[common], help="image under an encoding")
    s.add_argument("terms", nargs="*")
    s.add_argument("--via", choices=("fgt", "ql", "foc"), required=True)
    s.set_defaults(func=cmd_encode)

    s = sub.add_parser("lpo-compare", parents=[common], help="compare two first-order terms")
    s.add_argument("terms", nargs="*")
    s.set_defaults(func=cmd_lpo_compare)

    s = sub.add_parser("sn", parents=[common], help="classify strong normalisation")
    s.add_argument("terms", nargs="*")
    s.add_argument("--rel", choices=tuple(_SN_RELATIONS), default="beta")
    s.add_argument("--relaxed", action="store_true")
    s.set_defaults(func=cmd_sn)

    s = sub.add_parser("check", parents=[common], help="run a verification suite")
    s.add_argument("suite", help=", ".join(harness.SUITES))
    s.add_argument("--size", type=int)
    s.add_argument("--depth", type=int)
    s.add_argument("--seed", type=int)
    s.add_argument("--samples", type=int)
    s.add_argument("--triples", type=int)
    s.add_argument("--report", help="also write the JSON report here")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("examples", parents=[common], help="replay the worked examples")
    s.set_defaults(func=cmd_examples)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    if getattr(args, "budget", 1) < 1:
        print("error: --budget must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    if getattr(args, "depth", None) is not None and args.depth < 0:
        print("error: --depth must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except ParseError as e:
        print(f"parse error at line {e.line}, column {e.column}: {e.message}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, harness.CapExceeded, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except arl.BudgetIndecision as e:
        print(f"budget exhausted: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
