"""A-normalization and the syntactic utilities its properties are stated in.

After ``to_anf`` every application argument, constructor field, fold
scrutinee and natcase scrutinee is a variable.  Function positions are left
alone.  Fresh names are ``t0, t1, ...`` skipping any name already in use.
"""
from __future__ import annotations

import itertools

from .syntax import (
    Ann, App, ConsE, Def, DefRef, FoldrE, Lam, Let, NatCase, SurfaceProgram, Term, Var,
    all_names, children, free_vars,
)


class _Fresh:
    def __init__(self, avoid: set[str]) -> None:
        self.avoid = set(avoid)
        self.counter = itertools.count()

    def __call__(self) -> str:
        while True:
            n = f"t{next(self.counter)}"
            if n not in self.avoid:
                self.avoid.add(n)
                return n


def _spine(t: Term):
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fn
    return t, args[::-1]


def _anf(t: Term, fresh: _Fresh) -> Term:
    if isinstance(t, App):
        head, args = _spine(t)
        pending: list[tuple[str, Term]] = []
        names = []
        for a in args:
            if isinstance(a, Var):
                names.append(a)
            else:
                n = fresh()
                pending.append((n, a))
                names.append(Var(n))
        out = _anf(head, fresh)
        for v in names:
            out = App(out, v, t.pos)
        return _wrap(pending, out, fresh)
    if isinstance(t, ConsE):
        (h, tl), pending = _atoms([t.head, t.tail], fresh)
        return _wrap(pending, ConsE(h, tl, t.pos), fresh)
    if isinstance(t, FoldrE):
        (s,), pending = _atoms([t.scrutinee], fresh)
        body = FoldrE(_anf(t.nil_case, fresh), t.head_param, t.acc_param,
                      _anf(t.cons_case, fresh), s, t.pos)
        return _wrap(pending, body, fresh)
    if isinstance(t, NatCase):
        (s,), pending = _atoms([t.scrutinee], fresh)
        body = NatCase(s, _anf(t.zero_case, fresh), t.pred_name, _anf(t.succ_case, fresh), t.pos)
        return _wrap(pending, body, fresh)
    if isinstance(t, Lam):
        return Lam(t.param, _anf(t.body, fresh), t.ann, t.pos)
    if isinstance(t, Let):
        return Let(t.name, _anf(t.bound, fresh), _anf(t.body, fresh), t.pos)
    if isinstance(t, Ann):
        return Ann(_anf(t.expr, fresh), t.ty, t.pos)
    return t


def _atoms(terms, fresh: _Fresh):
    pending, out = [], []
    for a in terms:
        if isinstance(a, Var):
            out.append(a)
        else:
            n = fresh()
            pending.append((n, a))
            out.append(Var(n))
    return out, pending


def _wrap(pending, body: Term, fresh: _Fresh) -> Term:
    # names are allocated before the bound terms are normalized, so that the
    # outermost binding gets the smallest counter
    bounds = [(n, _anf(b, fresh)) for n, b in pending]
    for n, b in reversed(bounds):
        body = Let(n, b, body, getattr(b, "pos", None))
    return body


def to_anf(t: Term, avoid: set[str] | None = None) -> Term:
    fresh = _Fresh(all_names(t) | set(avoid or ()))
    return _anf(t, fresh)


def to_anf_program(p: SurfaceProgram) -> SurfaceProgram:
    avoid = {d.name for d in p.defs} | set(p.input_names()) | all_names(p.main)
    for d in p.defs:
        avoid |= all_names(d.body)
    fresh = _Fresh(avoid)
    defs = tuple(Def(d.name, d.ty, _anf(d.body, fresh), d.nocost, d.pos) for d in p.defs)
    return SurfaceProgram(defs, _anf(p.main, fresh), p.inputs, p.name)


def is_anf(t: Term) -> bool:
    for s in _subterms(t):
        if isinstance(s, App) and not isinstance(s.arg, Var):
            return False
        if isinstance(s, ConsE) and not (isinstance(s.head, Var) and isinstance(s.tail, Var)):
            return False
        if isinstance(s, (FoldrE, NatCase)) and not isinstance(s.scrutinee, Var):
            return False
    return True


def _subterms(t: Term):
    yield t
    for c in children(t):
        yield from _subterms(c)


# -- substitution ------------------------------------------------------------

def _rename_avoiding(name: str, avoid: set[str]) -> str:
    i = 0
    while f"{name}_{i}" in avoid:
        i += 1
    return f"{name}_{i}"


def subst(t: Term, x: str, s: Term) -> Term:
    """Capture-avoiding ``t[s/x]``."""
    fv_s = free_vars(s)

    def bind(param: str, body: Term):
        """Substitute under a binder, renaming it if it would capture."""
        if param == x:
            return param, body
        if param in fv_s:
            new = _rename_avoiding(param, fv_s | free_vars(body) | {x})
            body = subst(body, param, Var(new))
            param = new
        return param, subst(body, x, s)

    if isinstance(t, Var):
        return s if t.name == x else t
    if isinstance(t, Lam):
        p, b = bind(t.param, t.body)
        return Lam(p, b, t.ann, t.pos)
    if isinstance(t, App):
        return App(subst(t.fn, x, s), subst(t.arg, x, s), t.pos)
    if isinstance(t, Let):
        n, b = bind(t.name, t.body)
        return Let(n, subst(t.bound, x, s), b, t.pos)
    if isinstance(t, ConsE):
        return ConsE(subst(t.head, x, s), subst(t.tail, x, s), t.pos)
    if isinstance(t, FoldrE):
        h, acc, body = t.head_param, t.acc_param, t.cons_case
        if x not in (h, acc):
            if h in fv_s or acc in fv_s:
                avoid = fv_s | free_vars(body) | {x, h, acc}
                for old in (h, acc):
                    if old in fv_s:
                        new = _rename_avoiding(old, avoid)
                        avoid.add(new)
                        body = subst(body, old, Var(new))
                        h, acc = (new, acc) if old == h else (h, new)
            body = subst(body, x, s)
        return FoldrE(subst(t.nil_case, x, s), h, acc, body, subst(t.scrutinee, x, s), t.pos)
    if isinstance(t, NatCase):
        p, b = bind(t.pred_name, t.succ_case)
        return NatCase(subst(t.scrutinee, x, s), subst(t.zero_case, x, s), p, b, t.pos)
    if isinstance(t, Ann):
        return Ann(subst(t.expr, x, s), t.ty, t.pos)
    return t


def inline_lets(t: Term) -> Term:
    """Erase every ``let`` by substitution."""
    if isinstance(t, Let):
        return subst(inline_lets(t.body), t.name, inline_lets(t.bound))
    if isinstance(t, Lam):
        return Lam(t.param, inline_lets(t.body), t.ann, t.pos)
    if isinstance(t, App):
        return App(inline_lets(t.fn), inline_lets(t.arg), t.pos)
    if isinstance(t, ConsE):
        return ConsE(inline_lets(t.head), inline_lets(t.tail), t.pos)
    if isinstance(t, FoldrE):
        return FoldrE(inline_lets(t.nil_case), t.head_param, t.acc_param,
                      inline_lets(t.cons_case), inline_lets(t.scrutinee), t.pos)
    if isinstance(t, NatCase):
        return NatCase(inline_lets(t.scrutinee), inline_lets(t.zero_case), t.pred_name,
                       inline_lets(t.succ_case), t.pos)
    if isinstance(t, Ann):
        return Ann(inline_lets(t.expr), t.ty, t.pos)
    return t


def alpha_eq(a: Term, b: Term) -> bool:
    """Equality up to renaming of bound variables (annotations ignored)."""
    counter = itertools.count()

    def go(a, b, ea: dict, eb: dict) -> bool:
        while isinstance(a, Ann):
            a = a.expr
        while isinstance(b, Ann):
            b = b.expr
        if type(a) is not type(b):
            return False
        if isinstance(a, Var):
            return ea.get(a.name, ("free", a.name)) == eb.get(b.name, ("free", b.name))
        if isinstance(a, DefRef):
            return a.name == b.name

        def under(names_a, names_b):
            k = next(counter)
            na, nb = dict(ea), dict(eb)
            for i, (x, y) in enumerate(zip(names_a, names_b)):
                na[x] = nb[y] = ("bound", k, i)
            return na, nb

        if isinstance(a, Lam):
            na, nb = under([a.param], [b.param])
            return go(a.body, b.body, na, nb)
        if isinstance(a, Let):
            na, nb = under([a.name], [b.name])
            return go(a.bound, b.bound, ea, eb) and go(a.body, b.body, na, nb)
        if isinstance(a, FoldrE):
            na, nb = under([a.head_param, a.acc_param], [b.head_param, b.acc_param])
            return (go(a.nil_case, b.nil_case, ea, eb) and go(a.scrutinee, b.scrutinee, ea, eb)
                    and go(a.cons_case, b.cons_case, na, nb))
        if isinstance(a, NatCase):
            na, nb = under([a.pred_name], [b.pred_name])
            return (go(a.scrutinee, b.scrutinee, ea, eb) and go(a.zero_case, b.zero_case, ea, eb)
                    and go(a.succ_case, b.succ_case, na, nb))
        if isinstance(a, (App, ConsE)):
            return all(go(x, y, ea, eb) for x, y in zip(children(a), children(b)))
        return a == b

    return go(a, b, {}, {})
