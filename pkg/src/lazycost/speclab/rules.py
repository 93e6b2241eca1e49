"""Randomized semantic validation of the reasoning rules.

Each trial draws a small IR term and random finite relations, evaluates every
premise of a rule semantically (by enumeration), and, whenever the premises
hold, checks the conclusion.  A rule is validated when no trial has true
premises and a false conclusion.

The ``weak-conjunction`` entry is the optimistic conjunction rule with its
pessimistic premise replaced by an optimistic one; it is unsound, and the
harness is expected to find counterexamples for it.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..approx import random_avalue, random_tval
from ..clair import enumerate_outcomes
from ..ir import (
    Bind, Forcing, IrTerm, IUnit, IVar, MkCons, MkNil, Ret, RetNat, ThunkOf, Tick, pretty,
    tick_then,
)
from ..values import UNDEFINED, UNIT, Env, ThunkV, UndefinedV

RULES = ("ret", "bind", "tick", "thunk", "forcing", "monotonicity", "conjunction")
KINDS = ("pessimistic", "optimistic")
WEAK = "weak-conjunction"


# -- random terms -----------------------------------------------------------

class TermGen:
    """Well-formed random terms over an environment of thunks and values."""

    def __init__(self, rng: random.Random) -> None:
        self.rng = rng
        self.names = 0

    def fresh(self) -> str:
        self.names += 1
        return f"x{self.names}"

    def env(self) -> tuple[Env, dict]:
        rng = self.rng
        env, kinds = {}, {}
        for i in range(rng.randint(1, 3)):
            env[f"t{i}"] = random_tval(rng, 4)
            kinds[f"t{i}"] = "thunk"
        for i in range(rng.randint(0, 2)):
            env[f"v{i}"] = random_avalue(rng, 4)
            kinds[f"v{i}"] = "val"
        return Env(env), kinds

    def term(self, depth: int, scope: dict, want: str | None = None) -> IrTerm:
        rng = self.rng
        want = want or rng.choice(["val", "val", "thunk", "unit"])
        if depth <= 0:
            return self.leaf(scope, want)
        thunks = [n for n, k in scope.items() if k == "thunk"]
        opts = ["bind", "tick", "leaf"]
        if thunks:
            opts.append("forcing")
        if want == "thunk":
            opts += ["thunk", "thunk"]
        choice = rng.choice(opts)
        if choice == "bind":
            k1 = rng.choice(["val", "thunk", "unit"])
            x = self.fresh()
            first = self.term(depth - 1, scope, k1)
            return Bind(first, x, self.term(depth - 1, {**scope, x: k1}, want))
        if choice == "tick":
            return tick_then(self.term(depth - 1, scope, want))
        if choice == "forcing":
            b = self.fresh()
            return Forcing(rng.choice(thunks), b, self.term(depth - 1, {**scope, b: "val"}, want))
        if choice == "thunk":
            return ThunkOf(self.term(depth - 1, scope, "val"))
        return self.leaf(scope, want)

    def leaf(self, scope: dict, want: str) -> IrTerm:
        rng = self.rng
        of_kind = [n for n, k in scope.items() if k == want]
        if want == "unit":
            return rng.choice([Tick(), Ret(IUnit())])
        if want == "thunk":
            if of_kind and rng.random() < 0.6:
                return Ret(IVar(rng.choice(of_kind)))
            return ThunkOf(self.leaf(scope, "val"))
        thunks = [n for n, k in scope.items() if k == "thunk"]
        opts = ["nat", "nil"]
        if of_kind:
            opts.append("var")
        if thunks:
            opts.append("cons")
        c = rng.choice(opts)
        if c == "nat":
            return RetNat(rng.randrange(3))
        if c == "nil":
            return MkNil()
        if c == "var":
            return Ret(IVar(rng.choice(of_kind)))
        return MkCons(rng.choice(thunks), rng.choice(thunks))


# -- random relations -------------------------------------------------------

def _table(rng: random.Random, universe: set) -> frozenset:
    q = rng.choice([0.3, 0.6, 0.9, 1.0, 1.0])
    return frozenset(p for p in universe if rng.random() < q)


def _universe(rng: random.Random, *sets) -> set:
    out = {(UNDEFINED, 0), (UNIT, 1), (UNIT, 0)}
    for s in sets:
        out |= set(s)
    # a few unrelated pairs, so relations are not just subsets of the outcomes
    for _ in range(2):
        out.add((random_avalue(rng, 3), rng.randrange(4)))
    return out


def _pes(outs, r) -> bool:
    return all(p in r for p in outs)


def _opt(outs, r) -> bool:
    return any(p in r for p in outs)


def _outs(t: IrTerm, env: Env) -> frozenset:
    return frozenset((o.value, o.cost) for o in enumerate_outcomes(t, env))


# -- rule instances ---------------------------------------------------------
# Each returns (premises hold, conclusion holds, description).

def _inst_ret(g: TermGen, kind: str):
    rng = g.rng
    env, kinds = g.env()
    name = rng.choice(sorted(kinds))
    x = env[name]
    t = Ret(IVar(name))
    r = _table(rng, _universe(rng, {(x, 0)}))
    conc = _outs(t, env)
    return (x, 0) in r, (_pes if kind == "pessimistic" else _opt)(conc, r), t


def _inst_tick(g: TermGen, kind: str):
    rng = g.rng
    r = _table(rng, _universe(rng))
    conc = _outs(Tick(), Env())
    return (UNIT, 1) in r, (_pes if kind == "pessimistic" else _opt)(conc, r), Tick()


def _inst_bind(g: TermGen, kind: str):
    rng = g.rng
    env, kinds = g.env()
    k1 = rng.choice(["val", "thunk", "unit"])
    u = g.term(rng.randint(0, 2), kinds, k1)
    x = g.fresh()
    k = g.term(rng.randint(0, 2), {**kinds, x: k1})
    t = Bind(u, x, k)
    conc_outs = _outs(t, env)
    r = _table(rng, _universe(rng, conc_outs))
    quant = all if kind == "pessimistic" else any
    first = _outs(u, env)
    prem = quant(quant((y, n + m) in r for y, m in _outs(k, env.extend(x, v)))
                 for v, n in first)
    conc = (_pes if kind == "pessimistic" else _opt)(conc_outs, r)
    return prem, conc, t


def _inst_thunk(g: TermGen, kind: str):
    rng = g.rng
    env, kinds = g.env()
    u = g.term(rng.randint(0, 3), kinds, "val")
    t = ThunkOf(u)
    inner = _outs(u, env)
    conc_outs = _outs(t, env)
    r = _table(rng, _universe(rng, conc_outs))
    if kind == "pessimistic":
        prem = (UNDEFINED, 0) in r and all((ThunkV(v), n) in r for v, n in inner)
        return prem, _pes(conc_outs, r), t
    prem = (UNDEFINED, 0) in r or any((ThunkV(v), n) in r for v, n in inner)
    return prem, _opt(conc_outs, r), t


def _inst_forcing(g: TermGen, kind: str):
    rng = g.rng
    env, kinds = g.env()
    thunk = rng.choice([n for n, k in kinds.items() if k == "thunk"])
    b = g.fresh()
    k = g.term(rng.randint(0, 3), {**kinds, b: "val"})
    t = Forcing(thunk, b, k)
    conc_outs = _outs(t, env)
    tv = env[thunk]
    body = frozenset() if isinstance(tv, UndefinedV) else _outs(k, env.extend(b, tv.value))
    r = _table(rng, _universe(rng, conc_outs, body))
    if kind == "pessimistic":
        prem = isinstance(tv, UndefinedV) or _pes(body, r)
        return prem, _pes(conc_outs, r), t
    prem = isinstance(tv, ThunkV) and _opt(body, r)
    return prem, _opt(conc_outs, r), t


def _inst_monotonicity(g: TermGen, kind: str):
    rng = g.rng
    env, kinds = g.env()
    u = g.term(rng.randint(0, 3), kinds)
    outs = _outs(u, env)
    uni = _universe(rng, outs)
    r = _table(rng, uni)
    r2 = _table(rng, uni)
    if rng.random() < 0.7:
        r2 = r2 | r
    check = _pes if kind == "pessimistic" else _opt
    prem = check(outs, r) and r <= r2
    return prem, check(outs, r2), u


def _inst_conjunction(g: TermGen, kind: str, weak: bool = False):
    rng = g.rng
    env, kinds = g.env()
    u = g.term(rng.randint(0, 3), kinds)
    outs = _outs(u, env)
    uni = _universe(rng, outs)
    r, r2 = _table(rng, uni), _table(rng, uni)
    both = r & r2
    if kind == "pessimistic":
        return _pes(outs, r) and _pes(outs, r2), _pes(outs, both), u
    first = (_opt if weak else _pes)(outs, r)
    return first and _opt(outs, r2), _opt(outs, both), u


_INSTANCES = {
    "ret": _inst_ret, "bind": _inst_bind, "tick": _inst_tick, "thunk": _inst_thunk,
    "forcing": _inst_forcing, "monotonicity": _inst_monotonicity,
    "conjunction": _inst_conjunction,
}


@dataclass
class RuleReport:
    rule: str
    kind: str
    trials: int
    premises_held: int = 0
    failures: int = 0
    counterexample: str | None = None
    expect_unsound: bool = False
    seed: int = 0
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        if self.expect_unsound:
            return self.failures > 0
        return self.failures == 0

    def to_json(self) -> dict:
        return {
            "rule": self.rule, "kind": self.kind, "trials": self.trials,
            "premises_held": self.premises_held, "failures": self.failures,
            "counterexample": self.counterexample, "expect_unsound": self.expect_unsound,
            "passed": self.passed, "seed": self.seed,
        }


def validate_rule(rule: str, kind: str = "pessimistic", trials: int = 500,
                  seed: int = 0) -> RuleReport:
    """Run ``trials`` random instances of a rule (or ``weak-conjunction``)."""
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    weak = rule == WEAK
    if weak and kind != "optimistic":
        raise ValueError("the weakened conjunction is an optimistic rule")
    if not weak and rule not in _INSTANCES:
        raise ValueError(f"unknown rule {rule!r}; expected one of {RULES + (WEAK,)}")
    rng = random.Random(f"{rule}/{kind}/{seed}")
    g = TermGen(rng)
    rep = RuleReport(rule, kind, trials, expect_unsound=weak, seed=seed)
    for _ in range(trials):
        if weak:
            prem, conc, t = _inst_conjunction(g, kind, weak=True)
        else:
            prem, conc, t = _INSTANCES[rule](g, kind)
        if prem:
            rep.premises_held += 1
            if not conc:
                rep.failures += 1
                if rep.counterexample is None:
                    rep.counterexample = pretty(t)
    return rep


def validate_all(trials: int = 500, seed: int = 0) -> list[RuleReport]:
    out = [validate_rule(r, k, trials, seed) for k in KINDS for r in RULES]
    out.append(validate_rule(WEAK, "optimistic", trials, seed))
    return out
