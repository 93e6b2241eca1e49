"""Call-by-need evaluation on a mutable heap, with tick counting.

Ticks are charged at the same places as the full-mode translation: once per
``let``, variable occurrence, application and fold unfolding, nowhere inside
a cost-free definition.  A heap cell is evaluated at most once; re-forcing an
evaluated cell costs nothing.
"""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from typing import Union

from ..approx import FULL, Demand, FullDemand, check_first_order
from ..front import anf as _anf
from ..front.syntax import (
    Ann, App, ConsE, DefRef, FoldrE, Lam, Let, NatCase, NatLit, NilE, SurfaceProgram, Term,
    UnitE, Var, free_vars,
)
from ..values import (
    NIL, UNDEFINED, UNIT, AValue, ConsV, NatV, NilV, ThunkV, UndefinedV, UnitV,
)

TAIL = "%tail"  # holds the rest of the list in a suspended fold; not a source name


class DemandUnsatisfiable(ValueError):
    """The demand asks for structure the result does not have."""


class NeedError(RuntimeError):
    pass


# -- values and cells -------------------------------------------------------

@dataclass(frozen=True)
class UnitNV:
    pass


@dataclass(frozen=True)
class NatNV:
    n: int


@dataclass(frozen=True)
class NilNV:
    pass


@dataclass(frozen=True)
class ConsNV:
    head: int
    tail: int


@dataclass(frozen=True)
class ClosNV:
    env: tuple  # sorted (name, location) pairs
    param: str
    body: Term
    free: bool = False


NeedValue = Union[UnitNV, NatNV, NilNV, ConsNV, ClosNV]


@dataclass
class Unevaluated:
    term: Term
    env: dict
    free: bool


@dataclass
class Evaluated:
    value: NeedValue


@dataclass
class Absent:
    """An input thunk the caller left undefined; forcing it is an error."""


class Heap:
    def __init__(self) -> None:
        self.cells: list = []
        self.writes: list[int] = []

    def alloc(self, cell) -> int:
        self.cells.append(cell)
        self.writes.append(1)
        return len(self.cells) - 1

    def update(self, loc: int, v: NeedValue) -> None:
        if not isinstance(self.cells[loc], Unevaluated):
            raise NeedError(f"cell {loc} updated twice")
        self.writes[loc] += 1
        assert self.writes[loc] <= 2
        self.cells[loc] = Evaluated(v)

    def __getitem__(self, loc: int):
        return self.cells[loc]

    def __len__(self) -> int:
        return len(self.cells)


@dataclass(frozen=True)
class NeedResult:
    value: AValue
    cost: int
    cells: int


class _Machine:
    def __init__(self, prog: SurfaceProgram, heap: Heap) -> None:
        self.defs = prog.def_map()
        self.heap = heap
        self.cost = 0

    def tick(self, free: bool) -> None:
        if not free:
            self.cost += 1

    def force(self, loc: int) -> NeedValue:
        cell = self.heap[loc]
        if isinstance(cell, Evaluated):
            return cell.value
        if isinstance(cell, Absent):
            raise DemandUnsatisfiable("an undefined input was forced")
        v = self.eval(cell.term, cell.env, cell.free)
        self.heap.update(loc, v)
        return v

    def eval(self, t: Term, env: dict, free: bool) -> NeedValue:
        while isinstance(t, Ann):
            t = t.expr
        if isinstance(t, Var):
            self.tick(free)
            return self.force(env[t.name])
        if isinstance(t, DefRef):
            d = self.defs[t.name]
            return self.eval(d.body, {}, d.nocost)
        if isinstance(t, Lam):
            keep = free_vars(t.body) - {t.param}
            return ClosNV(tuple(sorted((k, v) for k, v in env.items() if k in keep)),
                          t.param, t.body, free)
        if isinstance(t, App):
            self.tick(free)
            f = self.eval(t.fn, env, free)
            if not isinstance(f, ClosNV):
                raise NeedError(f"applying a non-function {f!r}")
            return self.eval(f.body, {**dict(f.env), f.param: env[t.arg.name]}, f.free)
        if isinstance(t, Let):
            self.tick(free)
            loc = self.heap.alloc(Unevaluated(t.bound, env, free))
            return self.eval(t.body, {**env, t.name: loc}, free)
        if isinstance(t, NilE):
            return NilNV()
        if isinstance(t, ConsE):
            return ConsNV(env[t.head.name], env[t.tail.name])
        if isinstance(t, UnitE):
            return UnitNV()
        if isinstance(t, NatLit):
            return NatNV(t.n)
        if isinstance(t, FoldrE):
            v = self.force(env[t.scrutinee.name])
            self.tick(free)
            if isinstance(v, NilNV):
                return self.eval(t.nil_case, env, free)
            if not isinstance(v, ConsNV):
                raise NeedError(f"foldr over {v!r}")
            rest = FoldrE(t.nil_case, t.head_param, t.acc_param, t.cons_case, Var(TAIL))
            acc = self.heap.alloc(Unevaluated(rest, {**env, TAIL: v.tail}, free))
            return self.eval(t.cons_case, {**env, t.head_param: v.head, t.acc_param: acc}, free)
        if isinstance(t, NatCase):
            v = self.force(env[t.scrutinee.name])
            if not isinstance(v, NatNV):
                raise NeedError(f"natcase on {v!r}")
            if v.n == 0:
                return self.eval(t.zero_case, env, free)
            pred = self.heap.alloc(Evaluated(NatNV(v.n - 1)))
            return self.eval(t.succ_case, {**env, t.pred_name: pred}, free)
        raise NeedError(f"not an A-normal term: {t!r}")

    # -- demand --

    def drive(self, v: NeedValue, d: Demand) -> None:
        """Force what ``d`` marks as demanded below the already-evaluated ``v``."""
        if isinstance(d, UndefinedV):
            return
        if isinstance(d, ThunkV):
            d = d.value
        if isinstance(d, FullDemand):
            if isinstance(v, ConsNV):
                self.drive(self.force(v.head), FULL)
                self.drive(self.force(v.tail), FULL)
            return
        if isinstance(d, NilV):
            if not isinstance(v, NilNV):
                raise DemandUnsatisfiable(f"demand nil, result is {_shape(v)}")
        elif isinstance(d, ConsV):
            if not isinstance(v, ConsNV):
                raise DemandUnsatisfiable(f"demand a cons cell, result is {_shape(v)}")
            if isinstance(d.head, ThunkV):
                self.drive(self.force(v.head), d.head)
            if isinstance(d.tail, ThunkV):
                self.drive(self.force(v.tail), d.tail)
        elif isinstance(d, NatV):
            if not (isinstance(v, NatNV) and v.n == d.n):
                raise DemandUnsatisfiable(f"demand {d.n}, result is {_shape(v)}")
        elif isinstance(d, UnitV):
            if not isinstance(v, UnitNV):
                raise DemandUnsatisfiable(f"demand unit, result is {_shape(v)}")
        else:
            raise ValueError(f"unsupported demand {d!r}")


def _shape(v: NeedValue) -> str:
    return {UnitNV: "unit", NatNV: "a natural", NilNV: "nil", ConsNV: "a cons cell",
            ClosNV: "a function"}[type(v)]


def read_back_need(heap: Heap, v: NeedValue) -> AValue:
    """Evaluated cells are read back; cells never forced become UNDEFINED."""
    if isinstance(v, UnitNV):
        return UNIT
    if isinstance(v, NatNV):
        return NatV(v.n)
    if isinstance(v, NilNV):
        return NIL
    if isinstance(v, ConsNV):
        return ConsV(_rb_loc(heap, v.head), _rb_loc(heap, v.tail))
    raise TypeError("functions have no first-order read-back")


def _rb_loc(heap: Heap, loc: int):
    cell = heap[loc]
    if isinstance(cell, Evaluated):
        return ThunkV(read_back_need(heap, cell.value))
    return UNDEFINED


def alloc_input(heap: Heap, v) -> int:
    """Store an input approximation; undefined parts become unforceable cells."""
    if isinstance(v, UndefinedV):
        return heap.alloc(Absent())
    if isinstance(v, ThunkV):
        v = v.value
    if isinstance(v, UnitV):
        nv: NeedValue = UnitNV()
    elif isinstance(v, NatV):
        nv = NatNV(v.n)
    elif isinstance(v, NilV):
        nv = NilNV()
    elif isinstance(v, ConsV):
        nv = ConsNV(alloc_input(heap, v.head), alloc_input(heap, v.tail))
    else:
        raise TypeError(f"inputs must be first-order, got {v!r}")
    return heap.alloc(Evaluated(nv))


def eval_need(p: SurfaceProgram, d: Demand = FULL, inputs: Mapping | None = None) -> NeedResult:
    """Evaluate main to WHNF, force what ``d`` demands, read back the result."""
    check_first_order(d)
    p = _anf.to_anf_program(p)
    inputs = dict(inputs or {})
    heap = Heap()
    env = {}
    for name in p.input_names():
        if name not in inputs:
            raise ValueError(f"missing input {name!r}")
        env[name] = alloc_input(heap, inputs[name])
    m = _Machine(p, heap)
    v = m.eval(p.main, env, False)
    m.drive(v, d)
    if isinstance(v, ClosNV):
        raise TypeError("main has a function type; nothing to read back")
    return NeedResult(read_back_need(heap, v), m.cost, len(heap))
