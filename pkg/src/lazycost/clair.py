"""Clairvoyant evaluation of IR terms.

``enumerate_outcomes`` computes the denotation of a term as a finite set of
(value, cost) pairs, composing sets bottom-up.  ``min_cost`` and ``max_cost``
walk individual executions depth-first instead, pruning on cost, and are
checked against the set semantics in the test suite.
"""
from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from typing import NamedTuple

from . import ir
from .approx import FULL, Demand, check_first_order, meets
from .ir import (
    Bind, CallLam, CaseListIr, DefCall, FoldrIr, Forcing, IrDef, IrProgram,
    IrTerm, IUnit, MkCons, MkLam, MkNil, NatCaseIr, Ret, RetNat, ThunkOf, Tick,
)
from .values import (
    EMPTY_ENV, NIL, UNDEFINED, UNIT, AValue, ClosV, ConsV, Env, NatV, NilV, ThunkV,
    UndefinedV,
)

DEFAULT_BUDGET = 10**7


class Outcome(NamedTuple):
    value: AValue
    cost: int


class BudgetExceeded(RuntimeError):
    """The node budget ran out before the search finished."""

    def __init__(self, budget: int) -> None:
        super().__init__(f"evaluation budget of {budget} nodes exceeded")
        self.budget = budget


class EvalError(TypeError):
    """Ill-formed IR (unbound variable, wrong kind of value)."""


def _defs(defs) -> Mapping[str, IrDef]:
    if defs is None:
        return {}
    if isinstance(defs, IrProgram):
        return defs.def_map()
    if isinstance(defs, Mapping):
        return defs
    return {d.name: d for d in defs}


def _lookup(env: Env, name: str):
    try:
        return env[name]
    except KeyError:
        raise EvalError(f"unbound variable {name!r}") from None


def _closure(env: Env, param: str, body: IrTerm) -> ClosV:
    return ClosV(env.restrict(ir.free_vars(body) - {param}), param, body)


def _as_nat(v, where: str) -> int | None:
    """Unwrap a (possibly thunked) natural; None when undefined."""
    if isinstance(v, UndefinedV):
        return None
    if isinstance(v, ThunkV):
        v = v.value
    if not isinstance(v, NatV):
        raise EvalError(f"{where}: expected a natural, got {v!r}")
    return v.n


# ---------------------------------------------------------------------------
# set semantics

class _Enumerator:
    def __init__(self, defs: Mapping[str, IrDef], budget: int) -> None:
        self.defs = defs
        self.budget = budget
        self.nodes = 0

    def step(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(self.budget)

    def eval(self, t: IrTerm, env: Env) -> set[tuple]:
        self.step()
        if isinstance(t, Ret):
            v = UNIT if isinstance(t.value, IUnit) else _lookup(env, t.value.name)
            return {(v, 0)}
        if isinstance(t, RetNat):
            return {(NatV(t.n), 0)}
        if isinstance(t, Tick):
            return {(UNIT, 1)}
        if isinstance(t, Bind):
            return self.bind(self.eval(t.first, env), t.binder, t.rest, env)
        if isinstance(t, ThunkOf):
            out = {(ThunkV(v), c) for v, c in self.eval(t.body, env)}
            out.add((UNDEFINED, 0))
            return out
        if isinstance(t, Forcing):
            th = _lookup(env, t.thunk_var)
            if isinstance(th, UndefinedV):
                return set()
            if not isinstance(th, ThunkV):
                raise EvalError(f"forcing {t.thunk_var!r}: not a thunk: {th!r}")
            return self.eval(t.rest, env.extend(t.binder, th.value))
        if isinstance(t, CallLam):
            return self.apply(_lookup(env, t.fn_var), _lookup(env, t.arg_var))
        if isinstance(t, MkLam):
            return {(_closure(env, t.param, t.body), 0)}
        if isinstance(t, MkNil):
            return {(NIL, 0)}
        if isinstance(t, MkCons):
            return {(ConsV(_lookup(env, t.head_var), _lookup(env, t.tail_var)), 0)}
        if isinstance(t, FoldrIr):
            return self.foldr(t, env)
        if isinstance(t, CaseListIr):
            v = _lookup(env, t.scrut_var)
            if isinstance(v, NilV):
                return self.eval(t.nil_branch, env)
            if isinstance(v, ConsV):
                return self.eval(t.cons_branch,
                                 env.update({t.head_param: v.head, t.tail_param: v.tail}))
            raise EvalError(f"case on {t.scrut_var!r}: not an evaluated list: {v!r}")
        if isinstance(t, NatCaseIr):
            n = _as_nat(_lookup(env, t.scrut_var), "natcase")
            if n is None:
                return set()
            if n == 0:
                return self.eval(t.zero_branch, env)
            return self.eval(t.succ_branch, env.extend(t.pred_name, ThunkV(NatV(n - 1))))
        if isinstance(t, DefCall):
            return self.call(t.name, [_lookup(env, a) for a in t.arg_vars])
        raise EvalError(f"not an IR term: {t!r}")

    def bind(self, first: set, binder: str, rest: IrTerm, env: Env) -> set:
        by_value: dict = defaultdict(set)
        for v, c in first:
            by_value[v].add(c)
        out = set()
        for v, costs in by_value.items():
            for w, d in self.eval(rest, env.extend(binder, v)):
                for c in costs:
                    out.add((w, c + d))
        return out

    def apply(self, f, arg) -> set:
        if not isinstance(f, ClosV):
            raise EvalError(f"applying a non-function: {f!r}")
        return self.eval(f.body, f.env.extend(f.param, arg))

    def call(self, name: str, args: list) -> set:
        try:
            d = self.defs[name]
        except KeyError:
            raise EvalError(f"unknown definition {name!r}") from None
        k = len(d.params)
        if len(args) < k:
            raise EvalError(f"{name} expects at least {k} arguments, got {len(args)}")
        res = self.eval(d.body, Env(zip(d.params, args[:k])))
        for a in args[k:]:
            nxt = set()
            for f, c in res:
                for w, e in self.apply(f, a):
                    nxt.add((w, c + e))
            res = nxt
        return res

    def foldr(self, t: FoldrIr, env: Env) -> set:
        x = _lookup(env, t.scrut_var)
        if isinstance(x, UndefinedV):
            return set()
        memo: dict = {}
        tick = 1 if t.ticking else 0

        def unfold(lst: AValue) -> set:
            if lst in memo:
                return memo[lst]
            self.step()
            if isinstance(lst, NilV):
                res = self.eval(t.nil_case, env)
            elif isinstance(lst, ConsV):
                acc = {(UNDEFINED, 0)}
                if isinstance(lst.tail, ThunkV):
                    acc |= {(ThunkV(v), c) for v, c in unfold(lst.tail.value)}
                res = set()
                by_acc: dict = defaultdict(set)
                for a, c in acc:
                    by_acc[a].add(c)
                for a, costs in by_acc.items():
                    body_env = env.update({t.head_param: lst.head, t.acc_param: a})
                    for w, d in self.eval(t.cons_case, body_env):
                        for c in costs:
                            res.add((w, c + d))
            else:
                raise EvalError(f"foldr over a non-list: {lst!r}")
            res = {(w, c + tick) for w, c in res}
            memo[lst] = res
            return res

        return unfold(x.value)


def enumerate_outcomes(
    t: IrTerm,
    env: Mapping | None = None,
    defs=None,
    budget: int = DEFAULT_BUDGET,
) -> frozenset[Outcome]:
    """Every (value, cost) pair the term can produce.

    The empty set means every execution fails; running out of budget raises
    ``BudgetExceeded`` instead.
    """
    ev = _Enumerator(_defs(defs), budget)
    env = env if isinstance(env, Env) else Env(env or {})
    return frozenset(Outcome(v, c) for v, c in ev.eval(t, env))


def run_program(p: IrProgram, inputs: Mapping | None = None, budget: int = DEFAULT_BUDGET):
    """Outcomes of ``p.main`` with input thunks bound by name."""
    return enumerate_outcomes(p.main, _input_env(p, inputs), p, budget)


def _input_env(p: IrProgram, inputs: Mapping | None) -> Env:
    inputs = dict(inputs or {})
    missing = [n for n in p.inputs if n not in inputs]
    if missing:
        raise EvalError(f"missing inputs: {', '.join(missing)}")
    return Env(inputs)


def outcomes_meeting(t: IrTerm, env=None, d: Demand = UNDEFINED, defs=None,
                     budget: int = DEFAULT_BUDGET) -> frozenset[Outcome]:
    check_first_order(d)
    return frozenset(o for o in enumerate_outcomes(t, env, defs, budget) if meets(d, o.value))


# ---------------------------------------------------------------------------
# execution paths

@dataclass
class _SearchState:
    budget: int
    minimize: bool | None  # None: no pruning
    best: int | None = None
    nodes: int = 0
    skip_first: bool = True

    def step(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(self.budget)

    def pruned(self, cost: int) -> bool:
        return self.minimize is True and self.best is not None and cost >= self.best


class _Paths:
    """One execution at a time, as generators of (value, cost)."""

    def __init__(self, defs: Mapping[str, IrDef], st: _SearchState) -> None:
        self.defs = defs
        self.st = st

    def run(self, t: IrTerm, env: Env, cost: int) -> Iterator[tuple]:
        st = self.st
        st.step()
        if isinstance(t, Ret):
            yield (UNIT if isinstance(t.value, IUnit) else _lookup(env, t.value.name)), cost
        elif isinstance(t, RetNat):
            yield NatV(t.n), cost
        elif isinstance(t, Tick):
            if not st.pruned(cost + 1):
                yield UNIT, cost + 1
        elif isinstance(t, Bind):
            for v, c in self.run(t.first, env, cost):
                yield from self.run(t.rest, env.extend(t.binder, v), c)
        elif isinstance(t, ThunkOf):
            if st.skip_first:
                yield UNDEFINED, cost
            for v, c in self.run(t.body, env, cost):
                yield ThunkV(v), c
            if not st.skip_first:
                yield UNDEFINED, cost
        elif isinstance(t, Forcing):
            th = _lookup(env, t.thunk_var)
            if isinstance(th, ThunkV):
                yield from self.run(t.rest, env.extend(t.binder, th.value), cost)
            elif not isinstance(th, UndefinedV):
                raise EvalError(f"forcing {t.thunk_var!r}: not a thunk: {th!r}")
        elif isinstance(t, CallLam):
            yield from self.apply(_lookup(env, t.fn_var), _lookup(env, t.arg_var), cost)
        elif isinstance(t, MkLam):
            yield _closure(env, t.param, t.body), cost
        elif isinstance(t, MkNil):
            yield NIL, cost
        elif isinstance(t, MkCons):
            yield ConsV(_lookup(env, t.head_var), _lookup(env, t.tail_var)), cost
        elif isinstance(t, FoldrIr):
            x = _lookup(env, t.scrut_var)
            if isinstance(x, ThunkV):
                yield from self.unfold(t, env, x.value, cost)
        elif isinstance(t, CaseListIr):
            v = _lookup(env, t.scrut_var)
            if isinstance(v, NilV):
                yield from self.run(t.nil_branch, env, cost)
            elif isinstance(v, ConsV):
                yield from self.run(
                    t.cons_branch, env.update({t.head_param: v.head, t.tail_param: v.tail}), cost)
            else:
                raise EvalError(f"case on {t.scrut_var!r}: not an evaluated list: {v!r}")
        elif isinstance(t, NatCaseIr):
            n = _as_nat(_lookup(env, t.scrut_var), "natcase")
            if n == 0:
                yield from self.run(t.zero_branch, env, cost)
            elif n is not None:
                yield from self.run(t.succ_branch,
                                    env.extend(t.pred_name, ThunkV(NatV(n - 1))), cost)
        elif isinstance(t, DefCall):
            yield from self.call(t.name, [_lookup(env, a) for a in t.arg_vars], cost)
        else:
            raise EvalError(f"not an IR term: {t!r}")

    def apply(self, f, arg, cost: int):
        if not isinstance(f, ClosV):
            raise EvalError(f"applying a non-function: {f!r}")
        yield from self.run(f.body, f.env.extend(f.param, arg), cost)

    def call(self, name: str, args: list, cost: int):
        d = self.defs.get(name)
        if d is None:
            raise EvalError(f"unknown definition {name!r}")
        k = len(d.params)

        def rest(res, extra):
            if not extra:
                yield from res
                return
            for f, c in res:
                yield from rest(self.apply(f, extra[0], c), extra[1:])

        yield from rest(self.run(d.body, Env(zip(d.params, args[:k])), cost), args[k:])

    def unfold(self, t: FoldrIr, env: Env, lst: AValue, cost: int):
        st = self.st
        st.step()
        if t.ticking:
            cost += 1
            if st.pruned(cost):
                return
        if isinstance(lst, NilV):
            yield from self.run(t.nil_case, env, cost)
            return
        if not isinstance(lst, ConsV):
            raise EvalError(f"foldr over a non-list: {lst!r}")

        def accs():
            if st.skip_first:
                yield UNDEFINED, cost
            if isinstance(lst.tail, ThunkV):
                for v, c in self.unfold(t, env, lst.tail.value, cost):
                    yield ThunkV(v), c
            if not st.skip_first:
                yield UNDEFINED, cost

        for a, c in accs():
            yield from self.run(t.cons_case, env.update({t.head_param: lst.head, t.acc_param: a}), c)


def executions(t: IrTerm, env=None, defs=None, budget: int = DEFAULT_BUDGET,
               skip_first: bool = True) -> Iterator[Outcome]:
    """Every execution in depth-first order; duplicates are not removed."""
    st = _SearchState(budget, None, skip_first=skip_first)
    env = env if isinstance(env, Env) else Env(env or {})
    for v, c in _Paths(_defs(defs), st).run(t, env, 0):
        yield Outcome(v, c)


@dataclass
class SearchResult:
    cost: int | None
    witness: Outcome | None
    nodes: int


def _never_skip(t: IrTerm, env: Env, defs, budget: int) -> Outcome | None:
    st = _SearchState(budget, None, skip_first=False)
    for v, c in _Paths(defs, st).run(t, env, 0):
        return Outcome(v, c)
    return None


def search_min(t: IrTerm, env=None, d: Demand = UNDEFINED, defs=None,
               budget: int = DEFAULT_BUDGET) -> SearchResult:
    """Branch-and-bound for the cheapest execution meeting ``d``.

    The first execution that evaluates every thunk it can is tried first; it
    is usually the most defined one, and if it meets ``d`` its cost seeds the
    bound.  Thunks are then explored skip-first.  Costs only grow along a
    path, so a partial path whose cost reaches the bound is cut.
    """
    check_first_order(d)
    defs = _defs(defs)
    env = env if isinstance(env, Env) else Env(env or {})
    st = _SearchState(budget, True)
    witness = None
    first = _never_skip(t, env, defs, budget)
    if first is not None and meets(d, first.value):
        st.best, witness = first.cost, first
    for v, c in _Paths(defs, st).run(t, env, 0):
        if meets(d, v) and (st.best is None or c < st.best):
            st.best, witness = c, Outcome(v, c)
    return SearchResult(st.best, witness, st.nodes)


def search_max(t: IrTerm, env=None, d: Demand = UNDEFINED, defs=None,
               budget: int = DEFAULT_BUDGET) -> SearchResult:
    check_first_order(d)
    st = _SearchState(budget, None, skip_first=False)
    env = env if isinstance(env, Env) else Env(env or {})
    best, witness = None, None
    for v, c in _Paths(_defs(defs), st).run(t, env, 0):
        if meets(d, v) and (best is None or c > best):
            best, witness = c, Outcome(v, c)
    return SearchResult(best, witness, st.nodes)


def min_cost(t: IrTerm, env=None, d: Demand = UNDEFINED, defs=None,
             budget: int = DEFAULT_BUDGET) -> int | None:
    return search_min(t, env, d, defs, budget).cost


def max_cost(t: IrTerm, env=None, d: Demand = UNDEFINED, defs=None,
             budget: int = DEFAULT_BUDGET) -> int | None:
    return search_max(t, env, d, defs, budget).cost


__all__ = [
    "BudgetExceeded", "DEFAULT_BUDGET", "EMPTY_ENV", "EvalError", "FULL", "Outcome",
    "SearchResult", "enumerate_outcomes", "executions", "max_cost", "min_cost",
    "outcomes_meeting", "run_program", "search_max", "search_min",
]
