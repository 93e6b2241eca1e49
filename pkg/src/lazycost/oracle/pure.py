"""Reference interpreter for the pure meaning of a surface program."""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass

from ..approx import ConsP, NatP, NilP, PureValue, UnitP, to_pure
from ..front.syntax import (
    Ann, App, ConsE, DefRef, FoldrE, Lam, Let, NatCase, NatLit, NilE, SurfaceProgram, Term,
    UnitE, Var,
)


@dataclass(frozen=True)
class PureClosure:
    param: str
    body: Term
    env: tuple


class _Pure:
    """Call-by-value is fine here: every program terminates."""

    def __init__(self, prog: SurfaceProgram) -> None:
        self.defs = prog.def_map()

    def eval(self, t: Term, env: dict):
        while isinstance(t, Ann):
            t = t.expr
        if isinstance(t, Var):
            return env[t.name]
        if isinstance(t, DefRef):
            return self.eval(self.defs[t.name].body, {})
        if isinstance(t, Lam):
            return PureClosure(t.param, t.body, tuple(env.items()))
        if isinstance(t, App):
            f = self.eval(t.fn, env)
            return self.apply(f, self.eval(t.arg, env))
        if isinstance(t, Let):
            return self.eval(t.body, {**env, t.name: self.eval(t.bound, env)})
        if isinstance(t, NilE):
            return NilP()
        if isinstance(t, ConsE):
            return ConsP(self.eval(t.head, env), self.eval(t.tail, env))
        if isinstance(t, UnitE):
            return UnitP()
        if isinstance(t, NatLit):
            return NatP(t.n)
        if isinstance(t, FoldrE):
            xs = self.eval(t.scrutinee, env)
            items = []
            while isinstance(xs, ConsP):
                items.append(xs.head)
                xs = xs.tail
            acc = self.eval(t.nil_case, env)
            for x in reversed(items):
                acc = self.eval(t.cons_case, {**env, t.head_param: x, t.acc_param: acc})
            return acc
        if isinstance(t, NatCase):
            n = self.eval(t.scrutinee, env).n
            if n == 0:
                return self.eval(t.zero_case, env)
            return self.eval(t.succ_case, {**env, t.pred_name: NatP(n - 1)})
        raise TypeError(f"not a term: {t!r}")

    def apply(self, f, arg):
        return self.eval(f.body, {**dict(f.env), f.param: arg})


def eval_pure(p: SurfaceProgram, inputs: Mapping | None = None) -> PureValue:
    inputs = dict(inputs or {})
    env = {n: to_pure(inputs[n]) if not isinstance(inputs[n], (UnitP, NatP, NilP, ConsP))
           else inputs[n] for n in p.input_names()}
    v = _Pure(p).eval(p.main, env)
    if isinstance(v, PureClosure):
        raise TypeError("main has a function type")
    return v
