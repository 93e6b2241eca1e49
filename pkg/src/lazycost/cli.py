"""Command line entry point.

    lazycost translate FILE [--ticks full|simplified] [--emit ir-json|ir-pretty]
    lazycost eval FILE [--demand SPEC] [--mode enumerate|min|max] [--input x=LIT]
    lazycost oracle FILE [--demand SPEC] [--which need|ccv|both] [--input x=LIT]
    lazycost check FILE --mode pessimistic|optimistic --cost "[lo, hi]"
    lazycost case-study NAME|all [--grid xs=6,ys=3,n=6]
    lazycost validate-rules [RULE|all] [--kind pessimistic|optimistic|both]

FILE is a path to a surface program (``.lz``), an IR program written by
``translate --emit ir-json`` (``.json``), the name of a bundled surface
program, or ``hand:NAME`` for a hand-written IR program.

Exit status: 0 when every verdict holds, 1 when one fails, 2 when a check
ran out of budget, 64 on usage errors.
"""
from __future__ import annotations

import argparse
import itertools
import json
import sys
from pathlib import Path

from . import approx, clair, corpus, ir, translate
from .approx import LiteralError, is_total, parse_demand, parse_value, to_pure
from .clair import BudgetExceeded, EvalError
from .corpus import handwritten
from .front import ParseError, SurfaceProgram, TypeCheckError, load
from .oracle import DemandUnsatisfiable, ccv_outcomes, eval_need, eval_pure
from .speclab import (
    CASES, KINDS, RULES, WEAK, AnyValue, Context, CostPredicate, ExprError, Grid, IsApprox,
    IsExact, Meets, check_optimistic, check_pessimistic, exit_code,
    format_table, run_case_study, summary, validate_rule,
)
from .speclab.report import EXIT_ABSTAIN, EXIT_OK, EXIT_USAGE, to_json
from .values import ThunkV, UndefinedV, show
from .values import to_json as value_json


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# -- loading ----------------------------------------------------------------

def _load(spec: str):
    """A SurfaceProgram or an IrProgram, from a path or a built-in name."""
    if spec.startswith("hand:"):
        try:
            return handwritten.get(spec[5:])
        except KeyError as e:
            raise UsageError(e.args[0]) from None
    path = Path(spec)
    if path.is_file():
        text = path.read_text(encoding="utf-8")
        if path.suffix == ".json":
            return ir.program_from_json(json.loads(text))
        return load(text, path.stem)
    if spec in corpus.surface_names():
        return corpus.load_surface(spec)
    raise UsageError(f"no such file or built-in program: {spec!r}")


def _surface(spec: str) -> SurfaceProgram:
    p = _load(spec)
    if not isinstance(p, SurfaceProgram):
        raise UsageError(f"{spec}: this command needs a surface program")
    return p


def _as_ir(p, ticks: str) -> ir.IrProgram:
    if isinstance(p, SurfaceProgram):
        return translate.translate_program(p, ticks)
    return p


def _inputs(pairs: list[str], names) -> dict:
    out = {}
    for item in pairs or []:
        name, sep, lit = item.partition("=")
        if not sep:
            raise UsageError(f"--input expects NAME=LITERAL, got {item!r}")
        try:
            v = parse_value(lit)
        except LiteralError as e:
            raise UsageError(str(e)) from None
        out[name.strip()] = v if isinstance(v, UndefinedV) else ThunkV(v)
    unknown = sorted(set(out) - set(names))
    if unknown:
        raise UsageError(f"unknown input(s): {', '.join(unknown)}")
    missing = [n for n in names if n not in out]
    if missing:
        raise UsageError(f"missing --input for: {', '.join(missing)}")
    return out


def _outcome_json(o) -> dict:
    return {"value": value_json(o.value), "show": show(o.value), "cost": o.cost}


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2))


# -- subcommands ------------------------------------------------------------

def cmd_translate(a) -> int:
    p = _as_ir(_load(a.file), a.ticks)
    if a.emit == "ir-json":
        print(ir.dumps(p))
    else:
        print(ir.pretty_program(p))
    return EXIT_OK


def cmd_eval(a) -> int:
    p = _as_ir(_load(a.file), a.ticks)
    env = _inputs(a.input, p.inputs)
    d = _demand(a.demand)
    try:
        if a.mode == "enumerate":
            outs = clair.run_program(p, env, a.budget)
            if a.demand is not None:
                outs = frozenset(o for o in outs if approx.meets(d, o.value))
            outs = sorted(outs, key=lambda o: (o.cost, show(o.value)))
            if a.json:
                _print_json({"program": p.name, "mode": "enumerate", "demand": a.demand,
                             "outcomes": [_outcome_json(o) for o in outs]})
            else:
                for o in outs:
                    print(f"{o.cost}\t{show(o.value)}")
            return EXIT_OK
        search = clair.search_min if a.mode == "min" else clair.search_max
        res = search(p.main, env, d, p, a.budget)
    except BudgetExceeded as e:
        print(f"budget exceeded ({e.budget} steps)", file=sys.stderr)
        return EXIT_ABSTAIN
    if a.json:
        _print_json({"program": p.name, "mode": a.mode, "demand": a.demand or "whnf",
                     "cost": res.cost,
                     "witness": None if res.witness is None else _outcome_json(res.witness)})
    elif res.cost is None:
        print("no execution meets the demand")
    else:
        print(f"{res.cost}\t{show(res.witness.value)}")
    return EXIT_OK


def _demand(spec: str | None):
    if spec is None:
        return approx.WHNF
    try:
        d = parse_demand(spec)
        approx.check_first_order(d)
    except (LiteralError, ValueError) as e:
        raise UsageError(f"bad demand {spec!r}: {e}") from None
    return d


def cmd_oracle(a) -> int:
    sp = _surface(a.file)
    p = translate.translate_program(sp, "full")
    env = _inputs(a.input, p.inputs)
    d = _demand(a.demand or "full")
    out: dict = {"program": sp.name, "demand": a.demand or "full", "ticks": "full"}
    ok = True
    try:
        res = clair.search_min(p.main, env, d, p, a.budget)
        out["min_cost"] = res.cost
        if a.which in ("need", "both"):
            try:
                need = eval_need(sp, d, env)
                out["need"] = {"cost": need.cost, "value": show(need.value), "cells": need.cells}
                hi = clair.max_cost(p.main, env, d, p, a.budget)
                out["max_cost"] = hi
                out["bracketing"] = res.cost is not None and res.cost == need.cost <= hi
            except DemandUnsatisfiable as e:
                out["need"] = {"error": str(e)}
                out["bracketing"] = res.cost is None
            ok = ok and out["bracketing"]
        if a.which in ("ccv", "both"):
            ccv = ccv_outcomes(sp, env, a.budget)
            enum = clair.run_program(p, env, a.budget)
            out["ccv"] = {"outcomes": len(ccv), "equal_to_enumeration": ccv == enum}
            ok = ok and ccv == enum
    except BudgetExceeded as e:
        out["budget"] = f"exceeded ({e.budget} steps)"
        _emit_oracle(out, a.json)
        return EXIT_ABSTAIN
    out["verdict"] = "pass" if ok else "fail"
    _emit_oracle(out, a.json)
    return EXIT_OK if ok else 1


def _emit_oracle(out: dict, as_json: bool) -> None:
    if as_json:
        _print_json(out)
        return
    for k, v in out.items():
        print(f"{k}: {v}")


def _value_cond(spec: str | None):
    if spec in (None, "any"):
        return AnyValue()
    if spec == "approx":
        return IsApprox()
    if spec == "exact":
        return IsExact()
    if spec.startswith("meets:"):
        return Meets(_demand(spec[6:]))
    raise UsageError(f"--value must be any, approx, exact or meets:DEMAND, got {spec!r}")


def _grid_bounds(text: str | None) -> dict:
    out: dict = {}
    for part in filter(None, (p.strip() for p in (text or "").split(","))):
        k, sep, v = part.partition("=")
        if not sep or not v.strip().isdigit():
            raise UsageError(f"bad grid entry {part!r}; expected NAME=N")
        out[k.strip()] = int(v)
    return out


def cmd_check(a) -> int:
    sp = _surface(a.file)
    p = translate.translate_program(sp, a.ticks)
    try:
        r = CostPredicate.interval(a.cost, _value_cond(a.value))
    except ExprError as e:
        raise UsageError(str(e)) from None
    d = _demand(a.demand) if a.demand else None
    if a.input:
        points = [_inputs(a.input, p.inputs)]
    else:
        bounds = _grid_bounds(a.grid)
        unknown = sorted(set(bounds) - set(p.inputs))
        if unknown:
            raise UsageError(f"--grid names unknown input(s): {', '.join(unknown)}")
        choices = [corpus.values_of(ty, bounds.get(n, 3), bounds.get(n, 3))
                   for n, ty in sp.inputs]
        points = [{n: approx.exact_t(v) for (n, _), v in zip(sp.inputs, combo)}
                  for combo in itertools.product(*choices)]
    check = check_pessimistic if a.mode == "pessimistic" else check_optimistic
    reports = []
    for env in points:
        pure_in = {n: to_pure(v) for n, v in env.items() if is_total(v)}
        pure_res = eval_pure(sp, pure_in) if len(pure_in) == len(env) else None
        ctx = Context.of(pure_in, env, pure_res)
        shown = {n: show(v) for n, v in env.items()}
        try:
            rep = check(p.main, env, r, defs=p, ctx=ctx, demand=d, budget=a.budget,
                        program=sp.name, inputs=shown)
        except (ExprError, ValueError) as e:
            raise UsageError(str(e)) from None
        reports.append(rep)
    _emit_reports(reports, a.json)
    return exit_code(reports)


def _emit_reports(reports: list, as_json: bool) -> None:
    if as_json:
        print(to_json(reports))
    else:
        print(format_table(reports))
        print(summary(reports))


def cmd_case_study(a) -> int:
    names = CASES if a.name == "all" else (a.name,)
    if a.name != "all" and a.name not in CASES:
        raise UsageError(f"unknown case study {a.name!r}; known: {', '.join(CASES)}, all")
    try:
        grid = Grid.parse(a.grid) if a.grid else Grid()
    except ValueError as e:
        raise UsageError(str(e)) from None
    reports = [r for n in names for r in run_case_study(n, grid, a.budget)]
    _emit_reports(reports, a.json)
    return exit_code(reports)


def cmd_validate_rules(a) -> int:
    rules = RULES + (WEAK,) if a.rule == "all" else (a.rule,)
    if a.rule != "all" and a.rule not in RULES + (WEAK,):
        raise UsageError(f"unknown rule {a.rule!r}; known: {', '.join(RULES + (WEAK,))}, all")
    kinds = KINDS if a.kind == "both" else (a.kind,)
    reports = [validate_rule(r, k, a.trials, a.seed)
               for k in kinds for r in rules if r != WEAK or k == "optimistic"]
    _emit_reports(reports, a.json)
    return exit_code(reports)


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="lazycost", description="Cost analysis of lazy programs by "
                  "translation into a nondeterministic cost monad.")
    sub = top.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def common(sp, ticks=True, inputs=True):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--budget", type=int, default=clair.DEFAULT_BUDGET,
                        help="evaluation step budget")
        if ticks:
            sp.add_argument("--ticks", choices=translate.TICK_MODES, default="full")
        if inputs:
            sp.add_argument("--input", action="append", metavar="NAME=LIT",
                            help="bind an input to an approximation literal")

    t = sub.add_parser("translate", help="print the translated IR")
    t.add_argument("file")
    t.add_argument("--ticks", choices=translate.TICK_MODES, default="full")
    t.add_argument("--emit", choices=("ir-json", "ir-pretty"), default="ir-pretty")
    t.set_defaults(run=cmd_translate)

    e = sub.add_parser("eval", help="enumerate outcomes or search for min/max cost")
    e.add_argument("file")
    e.add_argument("--demand", help="whnf, full, conses(N) or a literal")
    e.add_argument("--mode", choices=("enumerate", "min", "max"), default="enumerate")
    common(e)
    e.set_defaults(run=cmd_eval)

    o = sub.add_parser("oracle", help="compare with the reference semantics")
    o.add_argument("file")
    o.add_argument("--demand", help="defaults to full")
    o.add_argument("--which", choices=("need", "ccv", "both"), default="both")
    common(o, ticks=False)
    o.set_defaults(run=cmd_oracle)

    c = sub.add_parser("check", help="check a cost specification")
    c.add_argument("file")
    c.add_argument("--mode", choices=("pessimistic", "optimistic"), required=True)
    c.add_argument("--cost", required=True, help='cost interval, e.g. "[1, sizeX1(xs)]"')
    c.add_argument("--value", help="any, approx, exact or meets:DEMAND")
    c.add_argument("--demand", help="only outcomes meeting this demand")
    c.add_argument("--grid", help="largest size per input, e.g. xs=4,n=3 (default 3)")
    common(c)
    c.set_defaults(run=cmd_check)

    s = sub.add_parser("case-study", help="run a case study over its input grid")
    s.add_argument("name", help=f"one of {', '.join(CASES)}, or all")
    s.add_argument("--grid", help="xs=N,ys=N,n=N (default xs=6,ys=3,n=6)")
    common(s, ticks=False, inputs=False)
    s.set_defaults(run=cmd_case_study)

    v = sub.add_parser("validate-rules", help="validate the reasoning rules on random terms")
    v.add_argument("rule", nargs="?", default="all")
    v.add_argument("--kind", choices=KINDS + ("both",), default="both")
    v.add_argument("--trials", type=int, default=500)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--json", action="store_true")
    v.set_defaults(run=cmd_validate_rules)
    return top


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.run(args)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, TypeCheckError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except EvalError as e:
        print(f"evaluation error: {e}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        # output cut short by a pager or head; not an error of ours
        sys.stdout = None
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
