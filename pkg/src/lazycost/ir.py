"""Cost-instrumented monadic intermediate form.

Each node is a computation in the clairvoyance monad.  Variables name either
thunks (``TVal``) or evaluated values, depending on how they were bound:
``Bind`` binds whatever its first computation returns, ``Forcing`` binds the
contents of a thunk, lambda and fold parameters bind thunks.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, fields
from functools import lru_cache
from typing import Union


@dataclass(frozen=True)
class IVar:
    name: str


@dataclass(frozen=True)
class IUnit:
    pass


IrValue = Union[IVar, IUnit]


@dataclass(frozen=True)
class Ret:
    value: IrValue


@dataclass(frozen=True)
class RetNat:
    n: int


@dataclass(frozen=True)
class Bind:
    first: IrTerm
    binder: str
    rest: IrTerm


@dataclass(frozen=True)
class Tick:
    pass


@dataclass(frozen=True)
class ThunkOf:
    body: IrTerm


@dataclass(frozen=True)
class Forcing:
    thunk_var: str
    binder: str
    rest: IrTerm


@dataclass(frozen=True)
class CallLam:
    fn_var: str
    arg_var: str


@dataclass(frozen=True)
class MkLam:
    param: str
    body: IrTerm


@dataclass(frozen=True)
class MkNil:
    pass


@dataclass(frozen=True)
class MkCons:
    head_var: str
    tail_var: str


@dataclass(frozen=True)
class FoldrIr:
    nil_case: IrTerm
    head_param: str
    acc_param: str
    cons_case: IrTerm
    scrut_var: str
    ticking: bool = True  # one tick per unfolding; False inside cost-free defs


@dataclass(frozen=True)
class CaseListIr:
    scrut_var: str
    nil_branch: IrTerm
    head_param: str
    tail_param: str
    cons_branch: IrTerm


@dataclass(frozen=True)
class NatCaseIr:
    scrut_var: str
    zero_branch: IrTerm
    pred_name: str
    succ_branch: IrTerm


@dataclass(frozen=True)
class DefCall:
    name: str
    arg_vars: tuple[str, ...] = ()


IrTerm = Union[
    Ret, RetNat, Bind, Tick, ThunkOf, Forcing, CallLam, MkLam, MkNil, MkCons,
    FoldrIr, CaseListIr, NatCaseIr, DefCall,
]

NODE_TYPES = {
    cls.__name__: cls
    for cls in (
        IVar, IUnit, Ret, RetNat, Bind, Tick, ThunkOf, Forcing, CallLam, MkLam,
        MkNil, MkCons, FoldrIr, CaseListIr, NatCaseIr, DefCall,
    )
}

UNUSED = "_"


@dataclass(frozen=True)
class IrDef:
    """A top-level definition.

    ``DefCall(name, args)`` binds the first ``len(params)`` arguments to
    ``params`` and evaluates ``body``; any remaining arguments are applied to
    the resulting closure one at a time.
    """

    name: str
    params: tuple[str, ...]
    body: IrTerm
    nocost: bool = False


@dataclass(frozen=True)
class IrProgram:
    defs: tuple[IrDef, ...]
    main: IrTerm
    inputs: tuple[str, ...] = ()
    name: str = "main"
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def def_map(self) -> dict[str, IrDef]:
        return {d.name: d for d in self.defs}


# -- construction helpers ---------------------------------------------------

def seq(*terms: IrTerm) -> IrTerm:
    """``a >> b >> ... >> z``"""
    out = terms[-1]
    for t in reversed(terms[:-1]):
        out = Bind(t, UNUSED, out)
    return out


def tick_then(t: IrTerm) -> IrTerm:
    return Bind(Tick(), UNUSED, t)


def lazy_let(name: str, bound: IrTerm, body: IrTerm) -> IrTerm:
    """``let~ name := bound in body``"""
    return Bind(ThunkOf(bound), name, body)


def force(var: str, binder: str | None = None) -> IrTerm:
    b = binder or f"{var}'"
    return Forcing(var, b, Ret(IVar(b)))


def is_tick_prefixed(t: IrTerm) -> bool:
    return isinstance(t, Bind) and isinstance(t.first, Tick) and t.binder == UNUSED


# -- traversal --------------------------------------------------------------

def children(t: IrTerm) -> list[IrTerm]:
    if isinstance(t, Bind):
        return [t.first, t.rest]
    if isinstance(t, ThunkOf):
        return [t.body]
    if isinstance(t, (Forcing, MkLam)):
        return [t.rest if isinstance(t, Forcing) else t.body]
    if isinstance(t, FoldrIr):
        return [t.nil_case, t.cons_case]
    if isinstance(t, CaseListIr):
        return [t.nil_branch, t.cons_branch]
    if isinstance(t, NatCaseIr):
        return [t.zero_branch, t.succ_branch]
    return []


def subterms(t: IrTerm):
    yield t
    for c in children(t):
        yield from subterms(c)


def count_ticks(t: IrTerm) -> int:
    """Explicit Tick nodes plus ticking folds."""
    return sum(isinstance(s, Tick) or (isinstance(s, FoldrIr) and s.ticking)
               for s in subterms(t))


@lru_cache(maxsize=None)
def free_vars(t: IrTerm) -> frozenset[str]:
    if isinstance(t, Ret):
        return frozenset([t.value.name]) if isinstance(t.value, IVar) else frozenset()
    if isinstance(t, Bind):
        return free_vars(t.first) | (free_vars(t.rest) - {t.binder})
    if isinstance(t, ThunkOf):
        return free_vars(t.body)
    if isinstance(t, Forcing):
        return frozenset([t.thunk_var]) | (free_vars(t.rest) - {t.binder})
    if isinstance(t, CallLam):
        return frozenset([t.fn_var, t.arg_var])
    if isinstance(t, MkLam):
        return free_vars(t.body) - {t.param}
    if isinstance(t, MkCons):
        return frozenset([t.head_var, t.tail_var])
    if isinstance(t, FoldrIr):
        return (
            frozenset([t.scrut_var])
            | free_vars(t.nil_case)
            | (free_vars(t.cons_case) - {t.head_param, t.acc_param})
        )
    if isinstance(t, CaseListIr):
        return (
            frozenset([t.scrut_var])
            | free_vars(t.nil_branch)
            | (free_vars(t.cons_branch) - {t.head_param, t.tail_param})
        )
    if isinstance(t, NatCaseIr):
        return (
            frozenset([t.scrut_var])
            | free_vars(t.zero_branch)
            | (free_vars(t.succ_branch) - {t.pred_name})
        )
    if isinstance(t, DefCall):
        return frozenset(t.arg_vars)
    return frozenset()


def strip_ticks(t: IrTerm) -> IrTerm:
    """Remove every Tick, keeping thunk and bind structure intact."""
    if is_tick_prefixed(t):
        return strip_ticks(t.rest)
    if isinstance(t, Tick):
        return Ret(IUnit())
    if isinstance(t, Bind):
        return Bind(strip_ticks(t.first), t.binder, strip_ticks(t.rest))
    if isinstance(t, ThunkOf):
        return ThunkOf(strip_ticks(t.body))
    if isinstance(t, Forcing):
        return Forcing(t.thunk_var, t.binder, strip_ticks(t.rest))
    if isinstance(t, MkLam):
        return MkLam(t.param, strip_ticks(t.body))
    if isinstance(t, FoldrIr):
        return FoldrIr(strip_ticks(t.nil_case), t.head_param, t.acc_param,
                       strip_ticks(t.cons_case), t.scrut_var, ticking=False)
    if isinstance(t, CaseListIr):
        return CaseListIr(t.scrut_var, strip_ticks(t.nil_branch), t.head_param,
                          t.tail_param, strip_ticks(t.cons_branch))
    if isinstance(t, NatCaseIr):
        return NatCaseIr(t.scrut_var, strip_ticks(t.zero_branch), t.pred_name,
                         strip_ticks(t.succ_branch))
    return t


# -- JSON -------------------------------------------------------------------

def to_json(node) -> dict:
    out: dict = {"tag": type(node).__name__}
    for f in fields(node):
        out[f.name] = _encode(getattr(node, f.name))
    return out


def _encode(x):
    if type(x).__name__ in NODE_TYPES:
        return to_json(x)
    if isinstance(x, tuple):
        return [_encode(y) for y in x]
    return x


def from_json(obj: dict):
    cls = NODE_TYPES[obj["tag"]]
    kwargs = {}
    for f in fields(cls):
        v = obj[f.name]
        if isinstance(v, dict) and "tag" in v:
            v = from_json(v)
        elif isinstance(v, list):
            v = tuple(v)
        kwargs[f.name] = v
    return cls(**kwargs)


def program_to_json(p: IrProgram) -> dict:
    return {
        "name": p.name,
        "inputs": list(p.inputs),
        "defs": [
            {"name": d.name, "params": list(d.params), "nocost": d.nocost,
             "body": to_json(d.body)}
            for d in p.defs
        ],
        "main": to_json(p.main),
    }


def program_from_json(obj: dict) -> IrProgram:
    defs = tuple(
        IrDef(d["name"], tuple(d["params"]), from_json(d["body"]), d.get("nocost", False))
        for d in obj["defs"]
    )
    return IrProgram(defs, from_json(obj["main"]), tuple(obj.get("inputs", ())),
                     obj.get("name", "main"))


def dumps(p: IrProgram) -> str:
    return json.dumps(program_to_json(p), indent=2, sort_keys=True)


# -- pretty printing --------------------------------------------------------

def pretty(t: IrTerm, indent: int = 0) -> str:
    pad = "  " * indent
    return pad + _pp(t, indent)


def _pp(t: IrTerm, ind: int) -> str:
    nl = "\n" + "  " * ind
    nl1 = "\n" + "  " * (ind + 1)
    if isinstance(t, Ret):
        return "ret " + (t.value.name if isinstance(t.value, IVar) else "tt")
    if isinstance(t, RetNat):
        return f"ret {t.n}"
    if isinstance(t, Tick):
        return "tick"
    if is_tick_prefixed(t):
        return "tick >>" + nl + _pp(t.rest, ind)
    if isinstance(t, Bind):
        if isinstance(t.first, ThunkOf):
            return (f"let~ {t.binder} :=" + nl1 + _pp(t.first.body, ind + 1)
                    + nl + "in" + nl + _pp(t.rest, ind))
        return (f"let! {t.binder} :=" + nl1 + _pp(t.first, ind + 1)
                + nl + "in" + nl + _pp(t.rest, ind))
    if isinstance(t, ThunkOf):
        return "thunk (" + nl1 + _pp(t.body, ind + 1) + ")"
    if isinstance(t, Forcing):
        return f"(fun {t.binder} =>" + nl1 + _pp(t.rest, ind + 1) + f") $! {t.thunk_var}"
    if isinstance(t, CallLam):
        return f"{t.fn_var} {t.arg_var}"
    if isinstance(t, MkLam):
        return f"ret (fun {t.param} =>" + nl1 + _pp(t.body, ind + 1) + ")"
    if isinstance(t, MkNil):
        return "ret NilA"
    if isinstance(t, MkCons):
        return f"ret (ConsA {t.head_var} {t.tail_var})"
    if isinstance(t, FoldrIr):
        name = "foldrA" if t.ticking else "foldrA_nocost"
        return (name + " (" + nl1 + _pp(t.nil_case, ind + 1) + ")"
                + nl + f"(fun {t.head_param} {t.acc_param} =>" + nl1
                + _pp(t.cons_case, ind + 1) + f") {t.scrut_var}")
    if isinstance(t, CaseListIr):
        return (f"match {t.scrut_var} with" + nl + "| NilA =>" + nl1
                + _pp(t.nil_branch, ind + 1) + nl
                + f"| ConsA {t.head_param} {t.tail_param} =>" + nl1
                + _pp(t.cons_branch, ind + 1) + nl + "end")
    if isinstance(t, NatCaseIr):
        return (f"match {t.scrut_var} with" + nl + "| O =>" + nl1
                + _pp(t.zero_branch, ind + 1) + nl + f"| S {t.pred_name} =>" + nl1
                + _pp(t.succ_branch, ind + 1) + nl + "end")
    if isinstance(t, DefCall):
        return " ".join((t.name,) + t.arg_vars)
    raise TypeError(f"not an IR term: {t!r}")


def pretty_program(p: IrProgram) -> str:
    parts = []
    for d in p.defs:
        head = " ".join((d.name,) + d.params)
        tag = "  (* nocost *)" if d.nocost else ""
        parts.append(f"Definition {head} :={tag}\n{pretty(d.body, 1)}.")
    ins = " ".join(p.inputs)
    parts.append(f"Definition main {ins} :=\n{pretty(p.main, 1)}.".replace("main  :=", "main :="))
    return "\n\n".join(parts) + "\n"
