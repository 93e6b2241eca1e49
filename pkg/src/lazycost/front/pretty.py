"""Print surface programs back in the syntax the parser reads."""
from __future__ import annotations

from .syntax import (
    Ann, App, ConsE, DefRef, FoldrE, Lam, Let, NatCase, NatLit, NilE, SurfaceProgram, Term,
    UnitE, Var,
)


def _atomic(t: Term) -> bool:
    return isinstance(t, (Var, DefRef, NatLit, NilE, UnitE, Ann))


def _atom(t: Term) -> str:
    s = show_term(t)
    return s if _atomic(t) else f"({s})"


def show_term(t: Term) -> str:
    if isinstance(t, (Var, DefRef)):
        return t.name
    if isinstance(t, NatLit):
        return str(t.n)
    if isinstance(t, NilE):
        return "nil"
    if isinstance(t, UnitE):
        return "unit"
    if isinstance(t, Ann):
        return f"({show_term(t.expr)} : {t.ty})"
    if isinstance(t, Lam):
        params = []
        body: Term = t
        while isinstance(body, Lam):
            params.append(body.param if body.ann is None else f"({body.param} : {body.ann})")
            body = body.body
        return f"fun {' '.join(params)} -> {show_term(body)}"
    if isinstance(t, Let):
        return f"let {t.name} = {show_term(t.bound)} in {show_term(t.body)}"
    if isinstance(t, App):
        fn = show_term(t.fn) if isinstance(t.fn, (App, Var, DefRef)) else _atom(t.fn)
        return f"{fn} {_atom(t.arg)}"
    if isinstance(t, ConsE):
        return f"cons {_atom(t.head)} {_atom(t.tail)}"
    if isinstance(t, FoldrE):
        return (f"foldr {_atom(t.nil_case)} (fun {t.head_param} {t.acc_param} -> "
                f"{show_term(t.cons_case)}) {_atom(t.scrutinee)}")
    if isinstance(t, NatCase):
        return (f"natcase {_atom(t.scrutinee)} {_atom(t.zero_case)} "
                f"(fun {t.pred_name} -> {show_term(t.succ_case)})")
    raise TypeError(f"not a term: {t!r}")


def show_program(p: SurfaceProgram) -> str:
    lines = []
    for d in p.defs:
        tag = " @nocost" if d.nocost else ""
        lines.append(f"{d.name} : {d.ty} =\n  {show_term(d.body)}{tag}\n")
    ins = "".join(f" ({n} : {ty})" for n, ty in p.inputs)
    lines.append(f"main{ins} =\n  {show_term(p.main)}\n")
    return "\n".join(lines)
