"""Monomorphic type checking by unification.

Top-level definitions and program inputs carry annotations; local binders
are inferred.  A definition or main type that is still ambiguous after
inference is an error rather than being defaulted.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .syntax import (
    NAT_T, UNIT_T, Ann, App, Arrow, ConsE, DefRef, FoldrE, Lam, Let, List, Nat, NatCase,
    NatLit, NilE, SurfaceProgram, Term, Ty, Unit, UnitE, Var,
)


class TypeCheckError(Exception):
    def __init__(self, msg: str, pos=None) -> None:
        where = f"{pos[0]}:{pos[1]}: " if pos else ""
        super().__init__(where + msg)
        self.msg = msg
        self.pos = pos


@dataclass(frozen=True)
class Meta:
    id: int

    def __str__(self) -> str:
        return f"?{self.id}"


class _Unifier:
    def __init__(self) -> None:
        self.sub: dict[int, object] = {}
        self.ids = itertools.count()

    def fresh(self) -> Meta:
        return Meta(next(self.ids))

    def walk(self, t):
        while isinstance(t, Meta) and t.id in self.sub:
            t = self.sub[t.id]
        return t

    def zonk(self, t):
        t = self.walk(t)
        if isinstance(t, List):
            return List(self.zonk(t.elem))
        if isinstance(t, Arrow):
            return Arrow(self.zonk(t.dom), self.zonk(t.cod))
        return t

    def occurs(self, m: Meta, t) -> bool:
        t = self.walk(t)
        if t == m:
            return True
        if isinstance(t, List):
            return self.occurs(m, t.elem)
        if isinstance(t, Arrow):
            return self.occurs(m, t.dom) or self.occurs(m, t.cod)
        return False

    def unify(self, a, b, pos, what: str) -> None:
        a, b = self.walk(a), self.walk(b)
        if a == b:
            return
        if isinstance(a, Meta) or isinstance(b, Meta):
            m, t = (a, b) if isinstance(a, Meta) else (b, a)
            if self.occurs(m, t):
                raise TypeCheckError(f"{what}: infinite type {m} ~ {self.zonk(t)}", pos)
            self.sub[m.id] = t
            return
        if isinstance(a, List) and isinstance(b, List):
            self.unify(a.elem, b.elem, pos, what)
            return
        if isinstance(a, Arrow) and isinstance(b, Arrow):
            self.unify(a.dom, b.dom, pos, what)
            self.unify(a.cod, b.cod, pos, what)
            return
        raise TypeCheckError(
            f"{what}: type mismatch, expected {self.zonk(b)} but got {self.zonk(a)}", pos)


def _has_meta(t) -> bool:
    if isinstance(t, Meta):
        return True
    if isinstance(t, List):
        return _has_meta(t.elem)
    if isinstance(t, Arrow):
        return _has_meta(t.dom) or _has_meta(t.cod)
    return False


class _Checker:
    def __init__(self, def_types: dict[str, Ty]) -> None:
        self.u = _Unifier()
        self.def_types = def_types

    def infer(self, t: Term, env: dict):
        u = self.u
        pos = getattr(t, "pos", None)
        if isinstance(t, Var):
            if t.name not in env:
                raise TypeCheckError(f"unbound variable {t.name!r}", pos)
            return env[t.name]
        if isinstance(t, DefRef):
            if t.name not in self.def_types:
                raise TypeCheckError(f"unknown definition {t.name!r}", pos)
            return self.def_types[t.name]
        if isinstance(t, Lam):
            dom = t.ann if t.ann is not None else u.fresh()
            cod = self.infer(t.body, {**env, t.param: dom})
            return Arrow(dom, cod)
        if isinstance(t, App):
            f = self.infer(t.fn, env)
            a = self.infer(t.arg, env)
            r = u.fresh()
            u.unify(f, Arrow(a, r), pos, "application")
            return r
        if isinstance(t, Let):
            b = self.infer(t.bound, env)
            return self.infer(t.body, {**env, t.name: b})
        if isinstance(t, NilE):
            return List(u.fresh())
        if isinstance(t, ConsE):
            h = self.infer(t.head, env)
            tl = self.infer(t.tail, env)
            u.unify(tl, List(h), getattr(t.tail, "pos", pos), "cons tail")
            return List(h)
        if isinstance(t, UnitE):
            return UNIT_T
        if isinstance(t, NatLit):
            return NAT_T
        if isinstance(t, FoldrE):
            elem = u.fresh()
            u.unify(self.infer(t.scrutinee, env), List(elem),
                    getattr(t.scrutinee, "pos", pos), "foldr scrutinee")
            acc = self.infer(t.nil_case, env)
            body = self.infer(t.cons_case, {**env, t.head_param: elem, t.acc_param: acc})
            u.unify(body, acc, getattr(t.cons_case, "pos", pos),
                    "foldr cons case against nil case")
            return acc
        if isinstance(t, NatCase):
            u.unify(self.infer(t.scrutinee, env), NAT_T,
                    getattr(t.scrutinee, "pos", pos), "natcase scrutinee")
            z = self.infer(t.zero_case, env)
            s = self.infer(t.succ_case, {**env, t.pred_name: NAT_T})
            u.unify(s, z, getattr(t.succ_case, "pos", pos), "natcase successor case")
            return z
        if isinstance(t, Ann):
            got = self.infer(t.expr, env)
            u.unify(got, t.ty, pos, "annotation")
            return t.ty
        raise TypeCheckError(f"not a term: {t!r}", pos)

    def resolved(self, t, what: str, pos) -> Ty:
        z = self.u.zonk(t)
        if _has_meta(z):
            raise TypeCheckError(f"cannot infer a type for {what}: got {z}; add an annotation",
                                 pos)
        return z


def is_value(t: Term) -> bool:
    if isinstance(t, Ann):
        return is_value(t.expr)
    return isinstance(t, (Lam, NilE, UnitE, NatLit))


def typecheck(p: SurfaceProgram) -> dict[str, Ty]:
    """Type of every definition plus ``"main"``."""
    out: dict[str, Ty] = {}
    for d in p.defs:
        if not is_value(d.body):
            raise TypeCheckError(
                f"definition {d.name!r} must be a value (fun, nil, unit or a literal)", d.pos)
        ck = _Checker(dict(out))
        got = ck.infer(d.body, {})
        ck.u.unify(got, d.ty, d.pos, f"definition {d.name!r}")
        out[d.name] = ck.resolved(d.ty, d.name, d.pos)
    ck = _Checker(dict(out))
    env = dict(p.inputs)
    main_t = ck.infer(p.main, env)
    out["main"] = ck.resolved(main_t, "main", getattr(p.main, "pos", None))
    return out


def infer_type(t: Term, env: dict | None = None, defs: dict | None = None) -> Ty:
    """Type of a standalone expression."""
    ck = _Checker(dict(defs or {}))
    return ck.resolved(ck.infer(t, dict(env or {})), "expression", getattr(t, "pos", None))


def is_first_order(t: Ty) -> bool:
    if isinstance(t, (Unit, Nat)):
        return True
    if isinstance(t, List):
        return is_first_order(t.elem)
    return False
