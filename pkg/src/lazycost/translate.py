"""Monadic translation of surface programs into the cost-instrumented IR.

Full mode is the verbatim translation: every non-value construct ticks once.

    let x = t in u   ~>  tick >> let~ x := [t] in [u]
    x                ~>  tick >> force x
    t x              ~>  tick >> let! f := [t] in f x
    fun x -> t       ~>  ret (fun x => [t])
    nil, cons x y    ~>  ret NilA, ret (ConsA x y)
    foldr n c x      ~>  foldrA [n] [c] x

Simplified mode floats ticks outward and collapses runs of ticks.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Union

from . import ir
from .front import anf as _anf
from .front.syntax import (
    Ann, App, Arrow, ConsE, DefRef, FoldrE, Lam, Let, List, Nat, NatCase, NatLit, NilE,
    SurfaceProgram, Term, Ty, Unit, UnitE, Var,
)
from .ir import (
    UNUSED, Bind, CaseListIr, DefCall, FoldrIr, Forcing, IrDef, IrProgram, IrTerm, IUnit,
    IVar, MkCons, MkLam, MkNil, NatCaseIr, Ret, RetNat, ThunkOf, Tick, is_tick_prefixed,
    tick_then,
)

TICK_MODES = ("full", "simplified")


# -- types ------------------------------------------------------------------

@dataclass(frozen=True)
class UnitA:
    def __str__(self) -> str:
        return "unit"


@dataclass(frozen=True)
class NatA:
    def __str__(self) -> str:
        return "nat"


@dataclass(frozen=True)
class Thunked:
    ty: ApproxTy

    def __str__(self) -> str:
        return f"T ({self.ty})"


@dataclass(frozen=True)
class Comp:
    ty: ApproxTy

    def __str__(self) -> str:
        return f"M ({self.ty})"


@dataclass(frozen=True)
class ListA:
    """``listA a``: both constructor fields are thunked."""

    elem: ApproxTy

    @property
    def head_field(self) -> Thunked:
        return Thunked(self.elem)

    @property
    def tail_field(self) -> Thunked:
        return Thunked(self)

    def __str__(self) -> str:
        return f"listA ({self.elem})"


@dataclass(frozen=True)
class ArrowA:
    dom: Thunked
    cod: Comp

    def __str__(self) -> str:
        return f"{self.dom} -> {self.cod}"


ApproxTy = Union[UnitA, NatA, ListA, ArrowA]


def translate_type(t: Ty) -> ApproxTy:
    if isinstance(t, Unit):
        return UnitA()
    if isinstance(t, Nat):
        return NatA()
    if isinstance(t, List):
        return ListA(translate_type(t.elem))
    if isinstance(t, Arrow):
        return ArrowA(Thunked(translate_type(t.dom)), Comp(translate_type(t.cod)))
    raise TypeError(f"not a type: {t!r}")


# -- terms ------------------------------------------------------------------

class _Translator:
    def __init__(self) -> None:
        self.ids = itertools.count()

    def fresh(self, base: str) -> str:
        # surface names cannot start with an underscore
        return f"_{base}{next(self.ids)}"

    def tr(self, t: Term) -> IrTerm:
        if isinstance(t, Var):
            y = self.fresh("y")
            return tick_then(Forcing(t.name, y, Ret(IVar(y))))
        if isinstance(t, DefRef):
            return DefCall(t.name, ())
        if isinstance(t, Let):
            return tick_then(Bind(ThunkOf(self.tr(t.bound)), t.name, self.tr(t.body)))
        if isinstance(t, Lam):
            return MkLam(t.param, self.tr(t.body))
        if isinstance(t, App):
            if not isinstance(t.arg, Var):
                raise ValueError("translation expects A-normal form (application argument)")
            f = self.fresh("f")
            return tick_then(Bind(self.tr(t.fn), f, ir.CallLam(f, t.arg.name)))
        if isinstance(t, NilE):
            return MkNil()
        if isinstance(t, ConsE):
            if not (isinstance(t.head, Var) and isinstance(t.tail, Var)):
                raise ValueError("translation expects A-normal form (constructor fields)")
            return MkCons(t.head.name, t.tail.name)
        if isinstance(t, UnitE):
            return Ret(IUnit())
        if isinstance(t, NatLit):
            return RetNat(t.n)
        if isinstance(t, FoldrE):
            if not isinstance(t.scrutinee, Var):
                raise ValueError("translation expects A-normal form (foldr scrutinee)")
            return FoldrIr(self.tr(t.nil_case), t.head_param, t.acc_param,
                           self.tr(t.cons_case), t.scrutinee.name)
        if isinstance(t, NatCase):
            if not isinstance(t.scrutinee, Var):
                raise ValueError("translation expects A-normal form (natcase scrutinee)")
            return NatCaseIr(t.scrutinee.name, self.tr(t.zero_case), t.pred_name,
                             self.tr(t.succ_case))
        if isinstance(t, Ann):
            return self.tr(t.expr)
        raise TypeError(f"not a surface term: {t!r}")


def translate_term(t: Term, ticks: str = "full") -> IrTerm:
    """Translate an A-normal term; ``simplified`` also floats ticks."""
    _check_mode(ticks)
    out = _Translator().tr(t)
    return float_ticks(out)[0] if ticks == "simplified" else out


def translate_program(p: SurfaceProgram, ticks: str = "full") -> IrProgram:
    """Translate a type-checked program (A-normalized here if it is not yet)."""
    _check_mode(ticks)
    p = _anf.to_anf_program(p)
    tr = _Translator()
    defs = []
    k = 1
    for d in p.defs:
        body = tr.tr(d.body)
        if d.nocost:
            body = ir.strip_ticks(body)
        if ticks == "simplified":
            body, kd = float_ticks(body)
            k = max(k, kd)
        defs.append(IrDef(d.name, (), body, d.nocost))
    main = tr.tr(p.main)
    if ticks == "simplified":
        main, km = float_ticks(main)
        k = max(k, km)
    return IrProgram(tuple(defs), main, p.input_names(), p.name,
                     meta={"ticks": ticks, "chain": k})


def _check_mode(ticks: str) -> None:
    if ticks not in TICK_MODES:
        raise ValueError(f"unknown tick mode {ticks!r}; expected one of {TICK_MODES}")


# -- tick floating ----------------------------------------------------------
#
# Rewrites, applied bottom-up until none fires:
#   bind t (fun x => tick >> k)   ==>  tick >> bind t k          (exact)
#   thunk (tick >> u)             ==>  tick >> thunk u           (raises cost of a skip)
#   bind (tick >> t) k            ==>  tick >> bind t k          (associativity, exact)
#   forcing x (tick >> k)         ==>  tick >> forcing x k       (exact)
#   match with every branch tick-prefixed  ==>  tick >> match    (exact)
# Then each run of consecutive ticks, and a fold's unfolding tick together
# with a tick heading one of its branches, is collapsed into a single tick.

def _pull(t: IrTerm) -> tuple[int, IrTerm]:
    """Split leading ticks off a term."""
    n = 0
    while is_tick_prefixed(t):
        n += 1
        t = t.rest
    if isinstance(t, Tick):
        return n + 1, Ret(IUnit())
    return n, t


def _ticks(n: int, t: IrTerm) -> IrTerm:
    for _ in range(n):
        t = tick_then(t)
    return t


def _bind(a: IrTerm, x: str, k: IrTerm) -> IrTerm:
    # a and k are already normal
    if isinstance(a, Tick) and x == UNUSED:
        return tick_then(k)
    na, a = _pull(a) if is_tick_prefixed(a) else (0, a)
    nk, k = _pull(k) if is_tick_prefixed(k) else (0, k)
    if isinstance(a, Ret) and isinstance(a.value, IUnit) and na and x == UNUSED:
        # tick >> ret tt >> k  is  tick >> k
        return _ticks(na + nk, k)
    return _ticks(na + nk, Bind(a, x, k))


def float_only(t: IrTerm) -> IrTerm:
    """Apply the floating rewrites to fixpoint, without collapsing."""
    if isinstance(t, Bind):
        return _bind(float_only(t.first), t.binder, float_only(t.rest))
    if isinstance(t, ThunkOf):
        body = float_only(t.body)
        n, body = _pull(body) if _starts_with_tick(body) else (0, body)
        return _ticks(n, ThunkOf(body))
    if isinstance(t, Forcing):
        rest = float_only(t.rest)
        n, rest = _pull(rest) if is_tick_prefixed(rest) else (0, rest)
        return _ticks(n, Forcing(t.thunk_var, t.binder, rest))
    if isinstance(t, MkLam):
        return MkLam(t.param, float_only(t.body))
    if isinstance(t, FoldrIr):
        return FoldrIr(float_only(t.nil_case), t.head_param, t.acc_param,
                       float_only(t.cons_case), t.scrut_var, t.ticking)
    if isinstance(t, CaseListIr):
        a, b = float_only(t.nil_branch), float_only(t.cons_branch)
        n = min(_lead(a), _lead(b))
        a, b = _drop(n, a), _drop(n, b)
        return _ticks(n, CaseListIr(t.scrut_var, a, t.head_param, t.tail_param, b))
    if isinstance(t, NatCaseIr):
        a, b = float_only(t.zero_branch), float_only(t.succ_branch)
        n = min(_lead(a), _lead(b))
        a, b = _drop(n, a), _drop(n, b)
        return _ticks(n, NatCaseIr(t.scrut_var, a, t.pred_name, b))
    return t


def _starts_with_tick(t: IrTerm) -> bool:
    return is_tick_prefixed(t) or isinstance(t, Tick)


def _lead(t: IrTerm) -> int:
    n = 0
    while is_tick_prefixed(t):
        n += 1
        t = t.rest
    return n


def _drop(n: int, t: IrTerm) -> IrTerm:
    for _ in range(n):
        t = t.rest
    return t


class _Collapser:
    def __init__(self) -> None:
        self.k = 1

    def run(self, t: IrTerm) -> IrTerm:
        if is_tick_prefixed(t) or isinstance(t, Tick):
            n, rest = _pull(t)
            self.k = max(self.k, n)
            if _was_bare_tick_chain(t):
                return Tick()
            return tick_then(self.run(rest))
        if isinstance(t, Bind):
            return Bind(self.run(t.first), t.binder, self.run(t.rest))
        if isinstance(t, ThunkOf):
            return ThunkOf(self.run(t.body))
        if isinstance(t, Forcing):
            return Forcing(t.thunk_var, t.binder, self.run(t.rest))
        if isinstance(t, MkLam):
            return MkLam(t.param, self.run(t.body))
        if isinstance(t, FoldrIr):
            nil_case, cons_case = self.run(t.nil_case), self.run(t.cons_case)
            if t.ticking:
                nil_case = self.merge(nil_case, t.nil_case)
                cons_case = self.merge(cons_case, t.cons_case)
            return FoldrIr(nil_case, t.head_param, t.acc_param, cons_case, t.scrut_var,
                           t.ticking)
        if isinstance(t, CaseListIr):
            return CaseListIr(t.scrut_var, self.run(t.nil_branch), t.head_param,
                              t.tail_param, self.run(t.cons_branch))
        if isinstance(t, NatCaseIr):
            return NatCaseIr(t.scrut_var, self.run(t.zero_branch), t.pred_name,
                             self.run(t.succ_branch))
        return t

    def merge(self, collapsed: IrTerm, original: IrTerm) -> IrTerm:
        """Fold the branch's leading tick into the unfolding tick."""
        if is_tick_prefixed(collapsed):
            self.k = max(self.k, 1 + _pull(original)[0])
            return collapsed.rest
        if isinstance(collapsed, Tick):
            self.k = max(self.k, 1 + _pull(original)[0])
            return Ret(IUnit())
        return collapsed


def _was_bare_tick_chain(t: IrTerm) -> bool:
    while is_tick_prefixed(t):
        t = t.rest
    return isinstance(t, Tick)


def collapse_ticks(t: IrTerm) -> tuple[IrTerm, int]:
    c = _Collapser()
    out = c.run(t)
    return out, c.k


def float_ticks(t: IrTerm) -> tuple[IrTerm, int]:
    """Float, then collapse; returns the term and the longest collapsed run."""
    return collapse_ticks(float_only(t))
