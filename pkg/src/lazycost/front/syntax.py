"""Surface syntax: types, terms, programs."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

Pos = Optional[tuple]  # (line, column), 1-based


# -- types ------------------------------------------------------------------

@dataclass(frozen=True)
class Unit:
    def __str__(self) -> str:
        return "unit"


@dataclass(frozen=True)
class Nat:
    def __str__(self) -> str:
        return "nat"


@dataclass(frozen=True)
class List:
    elem: Ty

    def __str__(self) -> str:
        inner = str(self.elem)
        if isinstance(self.elem, Arrow):
            inner = f"({inner})"
        return f"list {inner}"


@dataclass(frozen=True)
class Arrow:
    dom: Ty
    cod: Ty

    def __str__(self) -> str:
        d = str(self.dom)
        if isinstance(self.dom, Arrow):
            d = f"({d})"
        return f"{d} -> {self.cod}"


Ty = Union[Unit, Nat, List, Arrow]

UNIT_T = Unit()
NAT_T = Nat()


def arrows(*tys: Ty) -> Ty:
    """``arrows(a, b, c)`` is ``a -> b -> c``."""
    out = tys[-1]
    for t in reversed(tys[:-1]):
        out = Arrow(t, out)
    return out


# -- terms ------------------------------------------------------------------
# Positions never take part in equality.

def _pos():
    return field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Var:
    name: str
    pos: Pos = _pos()


@dataclass(frozen=True)
class Lam:
    param: str
    body: Term
    ann: Optional[Ty] = field(default=None, compare=False)
    pos: Pos = _pos()


@dataclass(frozen=True)
class App:
    fn: Term
    arg: Term
    pos: Pos = _pos()


@dataclass(frozen=True)
class Let:
    name: str
    bound: Term
    body: Term
    pos: Pos = _pos()


@dataclass(frozen=True)
class NilE:
    pos: Pos = _pos()


@dataclass(frozen=True)
class ConsE:
    head: Term
    tail: Term
    pos: Pos = _pos()


@dataclass(frozen=True)
class FoldrE:
    nil_case: Term
    head_param: str
    acc_param: str
    cons_case: Term
    scrutinee: Term
    pos: Pos = _pos()


@dataclass(frozen=True)
class UnitE:
    pos: Pos = _pos()


@dataclass(frozen=True)
class NatLit:
    n: int
    pos: Pos = _pos()


@dataclass(frozen=True)
class NatCase:
    scrutinee: Term
    zero_case: Term
    pred_name: str
    succ_case: Term
    pos: Pos = _pos()


@dataclass(frozen=True)
class DefRef:
    name: str
    pos: Pos = _pos()


@dataclass(frozen=True)
class Ann:
    """``(e : ty)``; erased after type checking."""

    expr: Term
    ty: Ty
    pos: Pos = _pos()


Term = Union[Var, Lam, App, Let, NilE, ConsE, FoldrE, UnitE, NatLit, NatCase, DefRef, Ann]


@dataclass(frozen=True)
class Def:
    name: str
    ty: Ty
    body: Term
    nocost: bool = False
    pos: Pos = _pos()


@dataclass(frozen=True)
class SurfaceProgram:
    defs: tuple[Def, ...]
    main: Term
    inputs: tuple[tuple[str, Ty], ...] = ()
    name: str = "main"

    def def_map(self) -> dict[str, Def]:
        return {d.name: d for d in self.defs}

    def input_names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.inputs)


# -- generic helpers --------------------------------------------------------

def children(t: Term) -> list[Term]:
    if isinstance(t, Lam):
        return [t.body]
    if isinstance(t, App):
        return [t.fn, t.arg]
    if isinstance(t, Let):
        return [t.bound, t.body]
    if isinstance(t, ConsE):
        return [t.head, t.tail]
    if isinstance(t, FoldrE):
        return [t.nil_case, t.cons_case, t.scrutinee]
    if isinstance(t, NatCase):
        return [t.scrutinee, t.zero_case, t.succ_case]
    if isinstance(t, Ann):
        return [t.expr]
    return []


def subterms(t: Term):
    yield t
    for c in children(t):
        yield from subterms(c)


def binders(t: Term) -> set[str]:
    out: set[str] = set()
    for s in subterms(t):
        if isinstance(s, (Lam,)):
            out.add(s.param)
        elif isinstance(s, Let):
            out.add(s.name)
        elif isinstance(s, FoldrE):
            out |= {s.head_param, s.acc_param}
        elif isinstance(s, NatCase):
            out.add(s.pred_name)
    return out


def all_names(t: Term) -> set[str]:
    """Every variable name that occurs, bound or free."""
    return binders(t) | {s.name for s in subterms(t) if isinstance(s, Var)}


def free_vars(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Lam):
        return free_vars(t.body) - {t.param}
    if isinstance(t, Let):
        return free_vars(t.bound) | (free_vars(t.body) - {t.name})
    if isinstance(t, FoldrE):
        return (free_vars(t.nil_case) | free_vars(t.scrutinee)
                | (free_vars(t.cons_case) - {t.head_param, t.acc_param}))
    if isinstance(t, NatCase):
        return (free_vars(t.scrutinee) | free_vars(t.zero_case)
                | (free_vars(t.succ_case) - {t.pred_name}))
    out: set[str] = set()
    for c in children(t):
        out |= free_vars(c)
    return out


def erase_annotations(t: Term) -> Term:
    if isinstance(t, Ann):
        return erase_annotations(t.expr)
    if isinstance(t, Lam):
        return Lam(t.param, erase_annotations(t.body), t.ann, t.pos)
    if isinstance(t, App):
        return App(erase_annotations(t.fn), erase_annotations(t.arg), t.pos)
    if isinstance(t, Let):
        return Let(t.name, erase_annotations(t.bound), erase_annotations(t.body), t.pos)
    if isinstance(t, ConsE):
        return ConsE(erase_annotations(t.head), erase_annotations(t.tail), t.pos)
    if isinstance(t, FoldrE):
        return FoldrE(erase_annotations(t.nil_case), t.head_param, t.acc_param,
                      erase_annotations(t.cons_case), erase_annotations(t.scrutinee), t.pos)
    if isinstance(t, NatCase):
        return NatCase(erase_annotations(t.scrutinee), erase_annotations(t.zero_case),
                       t.pred_name, erase_annotations(t.succ_case), t.pos)
    return t
