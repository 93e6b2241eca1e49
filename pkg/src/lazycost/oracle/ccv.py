"""Clairvoyant call-by-value, as a big-step relation searched exhaustively.

A ``let`` either evaluates its bound term right away and stores the value,
or stores BOTTOM, guessing the value will never be needed; reaching a BOTTOM
cell makes that derivation fail.  A fold makes the same choice for its
recursive result.  Cells are written once, at allocation, so heaps are
persistent tuples.

Ticks follow the full-mode translation; docs/tick-mapping.md has the table.
"""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from typing import NamedTuple, Union

from ..clair import DEFAULT_BUDGET, BudgetExceeded
from ..front import anf as _anf
from ..front.syntax import (
    Ann, App, ConsE, DefRef, FoldrE, Lam, Let, NatCase, NatLit, NilE, SurfaceProgram, Term,
    UnitE, Var, free_vars,
)
from ..values import (
    NIL, UNDEFINED, UNIT, AValue, ConsV, NatV, NilV, ThunkV, UndefinedV, UnitV,
)


@dataclass(frozen=True)
class VLam:
    param: str
    body: Term
    env: tuple  # sorted (name, location) pairs
    free: bool = False


@dataclass(frozen=True)
class VNil:
    pass


@dataclass(frozen=True)
class VCons:
    head: int
    tail: int


@dataclass(frozen=True)
class VUnit:
    pass


@dataclass(frozen=True)
class VNat:
    n: int


ValueTerm = Union[VLam, VNil, VCons, VUnit, VNat]


class _Bottom:
    def __repr__(self) -> str:
        return "BOTTOM"


BOTTOM = _Bottom()


class Derivation(NamedTuple):
    value: ValueTerm
    heap: tuple
    cost: int


def _locs(v: ValueTerm):
    if isinstance(v, VCons):
        return (v.head, v.tail)
    if isinstance(v, VLam):
        return tuple(loc for _, loc in v.env)
    return ()


def _relocate(v: ValueTerm, f) -> ValueTerm:
    if isinstance(v, VCons):
        return VCons(f(v.head), f(v.tail))
    if isinstance(v, VLam):
        return VLam(v.param, v.body, tuple((n, f(loc)) for n, loc in v.env), v.free)
    return v


def normalize(v: ValueTerm, heap: tuple, base: int) -> tuple[ValueTerm, tuple]:
    """Drop cells at or above ``base`` that ``v`` cannot reach; renumber the rest.

    Cells below ``base`` are left alone.  Since cells are immutable, only the
    value can point at cells allocated while it was computed.
    """
    order: dict[int, int] = {}
    stack = [loc for loc in reversed(_locs(v)) if loc >= base]
    seen = []
    while stack:
        loc = stack.pop()
        if loc in order:
            continue
        order[loc] = base + len(seen)
        seen.append(loc)
        cell = heap[loc]
        if cell is not BOTTOM:
            stack.extend(x for x in reversed(_locs(cell)) if x >= base and x not in order)

    def f(loc: int) -> int:
        return order.get(loc, loc)

    new_cells = tuple(BOTTOM if heap[loc] is BOTTOM else _relocate(heap[loc], f) for loc in seen)
    return _relocate(v, f), heap[:base] + new_cells


class _Search:
    def __init__(self, prog: SurfaceProgram, budget: int) -> None:
        self.defs = prog.def_map()
        self.budget = budget
        self.nodes = 0

    def step(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(self.budget)

    def eval(self, t: Term, env: dict, heap: tuple, free: bool) -> set:
        """All (value, heap, cost) with the new part of the heap normalized."""
        self.step()
        base = len(heap)
        out = set()
        for v, h, c in self._eval(t, env, heap, free):
            v, h = normalize(v, h, base)
            out.add(Derivation(v, h, c))
        return out

    def _eval(self, t: Term, env: dict, heap: tuple, free: bool):
        tick = 0 if free else 1
        while isinstance(t, Ann):
            t = t.expr
        if isinstance(t, Var):
            cell = heap[env[t.name]]
            if cell is not BOTTOM:
                yield cell, heap, tick
            return
        if isinstance(t, DefRef):
            d = self.defs[t.name]
            yield from self.eval(d.body, {}, heap, d.nocost)
            return
        if isinstance(t, Lam):
            keep = free_vars(t.body) - {t.param}
            yield VLam(t.param, t.body,
                       tuple(sorted((k, v) for k, v in env.items() if k in keep)), free), heap, 0
            return
        if isinstance(t, App):
            for f, h1, c1 in self.eval(t.fn, env, heap, free):
                body_env = {**dict(f.env), f.param: env[t.arg.name]}
                for v, h2, c2 in self.eval(f.body, body_env, h1, f.free):
                    yield v, h2, tick + c1 + c2
            return
        if isinstance(t, Let):
            # skip: x is bound to a cell nobody may read
            h = heap + (BOTTOM,)
            for v, h2, c in self.eval(t.body, {**env, t.name: len(heap)}, h, free):
                yield v, h2, tick + c
            for b, h1, c1 in self.eval(t.bound, env, heap, free):
                h = h1 + (b,)
                for v, h2, c2 in self.eval(t.body, {**env, t.name: len(h1)}, h, free):
                    yield v, h2, tick + c1 + c2
            return
        if isinstance(t, NilE):
            yield VNil(), heap, 0
            return
        if isinstance(t, ConsE):
            yield VCons(env[t.head.name], env[t.tail.name]), heap, 0
            return
        if isinstance(t, UnitE):
            yield VUnit(), heap, 0
            return
        if isinstance(t, NatLit):
            yield VNat(t.n), heap, 0
            return
        if isinstance(t, FoldrE):
            yield from self.fold(t, env, env[t.scrutinee.name], heap, free)
            return
        if isinstance(t, NatCase):
            cell = heap[env[t.scrutinee.name]]
            if cell is BOTTOM:
                return
            if cell.n == 0:
                yield from self.eval(t.zero_case, env, heap, free)
                return
            h = heap + (VNat(cell.n - 1),)
            yield from self.eval(t.succ_case, {**env, t.pred_name: len(heap)}, h, free)
            return
        raise TypeError(f"not an A-normal term: {t!r}")

    def fold(self, t: FoldrE, env: dict, loc: int, heap: tuple, free: bool):
        self.step()
        tick = 0 if free else 1
        cell = heap[loc]
        if cell is BOTTOM:
            return
        if isinstance(cell, VNil):
            for v, h, c in self.eval(t.nil_case, env, heap, free):
                yield v, h, tick + c
            return
        base = len(heap)
        accs = [(heap + (BOTTOM,), 0)]
        for r, h1, c1 in self.fold(t, env, cell.tail, heap, free):
            r, h1 = normalize(r, h1, base)
            accs.append((h1 + (r,), c1))
        for h1, c1 in accs:
            body_env = {**env, t.head_param: cell.head, t.acc_param: len(h1) - 1}
            for v, h2, c2 in self.eval(t.cons_case, body_env, h1, free):
                yield v, h2, tick + c1 + c2


def read_back(heap: tuple, v: ValueTerm) -> AValue:
    if isinstance(v, VUnit):
        return UNIT
    if isinstance(v, VNat):
        return NatV(v.n)
    if isinstance(v, VNil):
        return NIL
    if isinstance(v, VCons):
        return ConsV(_rb(heap, v.head), _rb(heap, v.tail))
    raise TypeError("functions have no first-order read-back")


def _rb(heap: tuple, loc: int):
    cell = heap[loc]
    return UNDEFINED if cell is BOTTOM else ThunkV(read_back(heap, cell))


def input_heap(inputs: list) -> tuple[list[int], tuple]:
    """Lay out input approximations; undefined thunks become BOTTOM cells."""
    cells: list = []

    def put(x) -> int:
        if isinstance(x, UndefinedV):
            cells.append(BOTTOM)
            return len(cells) - 1
        if isinstance(x, ThunkV):
            x = x.value
        if isinstance(x, UnitV):
            cells.append(VUnit())
        elif isinstance(x, NatV):
            cells.append(VNat(x.n))
        elif isinstance(x, NilV):
            cells.append(VNil())
        elif isinstance(x, ConsV):
            h = put(x.head)
            tl = put(x.tail)
            cells.append(VCons(h, tl))
        else:
            raise TypeError(f"inputs must be first-order, got {x!r}")
        return len(cells) - 1

    locs = [put(x) for x in inputs]
    return locs, tuple(cells)


def eval_ccv(p: SurfaceProgram, inputs: Mapping | None = None,
             budget: int = DEFAULT_BUDGET) -> frozenset[Derivation]:
    """Every derivation of main; the heap part covers inputs plus reachable cells."""
    p = _anf.to_anf_program(p)
    inputs = dict(inputs or {})
    missing = [n for n in p.input_names() if n not in inputs]
    if missing:
        raise ValueError(f"missing inputs: {', '.join(missing)}")
    locs, heap = input_heap([inputs[n] for n in p.input_names()])
    env = dict(zip(p.input_names(), locs))
    return frozenset(_Search(p, budget).eval(p.main, env, heap, False))


def ccv_outcomes(p: SurfaceProgram, inputs: Mapping | None = None,
                 budget: int = DEFAULT_BUDGET) -> frozenset:
    """Read-back (value, cost) pairs, comparable with ``enumerate_outcomes``."""
    from ..clair import Outcome

    return frozenset(Outcome(read_back(d.heap, d.value), d.cost)
                     for d in eval_ccv(p, inputs, budget))
