"""Programs written directly in the IR, with a single tick per call.

These are written the way one writes them by hand in the monad: wrappers
that only force their argument do not tick; each call of a recursive worker
ticks once.  Matching a primitive natural costs nothing of its own.
"""
from __future__ import annotations

from dataclasses import fields, replace

from ..ir import (
    CallLam, CaseListIr, DefCall, Forcing, IrDef, IrProgram, IrTerm, MkCons, MkLam, MkNil,
    NatCaseIr, Bind, force, lazy_let, strip_ticks, tick_then,
)


def _force_then(var: str, fn: str, *args: str, first: bool = True) -> IrTerm:
    """``fn ... $! var``: force ``var`` and pass its value as one argument."""
    v = var + "'"
    call = (v,) + args if first else args + (v,)
    return Forcing(var, v, DefCall(fn, call))


def _rename_calls(t: IrTerm, mapping: dict[str, str]) -> IrTerm:
    if isinstance(t, DefCall):
        return DefCall(mapping.get(t.name, t.name), t.arg_vars)
    changes = {}
    for f in fields(t):
        v = getattr(t, f.name)
        if type(v).__module__ == DefCall.__module__ and hasattr(v, "__dataclass_fields__"):
            changes[f.name] = _rename_calls(v, mapping)
    return replace(t, **changes) if changes else t


def nocost_copy(defs: list[IrDef], suffix: str = "_nocost") -> list[IrDef]:
    """Cost-free variants: same thunks and binds, no ticks, calls renamed."""
    mapping = {d.name: d.name + suffix for d in defs}
    return [IrDef(mapping[d.name], d.params, _rename_calls(strip_ticks(d.body), mapping), True)
            for d in defs]


# -- append -----------------------------------------------------------------

APPEND = [
    IrDef("appendA", ("xs", "ys"), _force_then("xs", "append_", "ys")),
    IrDef("append_", ("xs'", "ys"), tick_then(
        CaseListIr("xs'", force("ys"), "x", "xs1",
                   lazy_let("zs", _force_then("xs1", "append_", "ys"),
                            MkCons("x", "zs"))))),
]

# -- take -------------------------------------------------------------------
# n is matched before xs is forced, so take 0 leaves xs alone.

TAKE = [
    IrDef("takeA", ("n", "xs"), tick_then(
        NatCaseIr("n", MkNil(), "m",
                  Forcing("xs", "xs'", CaseListIr(
                      "xs'", MkNil(), "x", "xs1",
                      lazy_let("zs", DefCall("takeA", ("m", "xs1")), MkCons("x", "zs"))))))),
]

# -- reversal ---------------------------------------------------------------
# revA is the accumulator version; rev'A appends each element at the end.

REV = [
    IrDef("revA", ("xs",), lazy_let("nil", MkNil(), DefCall("revA_", ("nil", "xs")))),
    IrDef("revA_", ("ys", "xs"), tick_then(Forcing("xs", "xs'", CaseListIr(
        "xs'", force("ys"), "x", "xs1",
        lazy_let("ys1", MkCons("x", "ys"), DefCall("revA_", ("ys1", "xs1"))))))),
]

REV_NOCOST = nocost_copy(REV)

REV_PRIME = [
    IrDef("rev'A", ("xs",), tick_then(Forcing("xs", "xs'", CaseListIr(
        "xs'", MkNil(), "x", "xs1",
        lazy_let("r", DefCall("rev'A", ("xs1",)),
                 lazy_let("one", lazy_let("nil", MkNil(), MkCons("x", "nil")),
                          DefCall("appendA_nocost", ("r", "one")))))))),
]

# -- tail-recursive take ----------------------------------------------------

TAKE_PRIME = [
    IrDef("take'A", ("n", "xs"), lazy_let("acc", MkNil(), DefCall("take'A_", ("n", "xs", "acc")))),
    IrDef("take'A_", ("n", "xs", "acc"), tick_then(NatCaseIr(
        "n", DefCall("revA_nocost", ("acc",)), "m",
        Forcing("xs", "xs'", CaseListIr(
            "xs'", DefCall("revA_nocost", ("acc",)), "x", "xs1",
            lazy_let("acc1", MkCons("x", "acc"), DefCall("take'A_", ("m", "xs1", "acc1")))))))),
]

# -- folds ------------------------------------------------------------------
# f is an evaluated two-argument closure.

FOLDS = [
    IrDef("foldrA", ("f", "v", "xs"), _force_then("xs", "foldrA_", "f", "v", first=False)),
    IrDef("foldrA_", ("f", "v", "xs'"), tick_then(CaseListIr(
        "xs'", force("v"), "x", "xs1",
        lazy_let("r", _force_then("xs1", "foldrA_", "f", "v", first=False),
                 Bind(CallLam("f", "x"), "g", CallLam("g", "r")))))),
    IrDef("foldlA", ("f", "acc", "xs"), _force_then("xs", "foldlA_", "f", "acc", first=False)),
    IrDef("foldlA_", ("f", "acc", "xs'"), tick_then(CaseListIr(
        "xs'", force("acc"), "x", "xs1",
        lazy_let("acc1", Bind(CallLam("f", "acc"), "g", CallLam("g", "x")),
                 _force_then("xs1", "foldlA_", "f", "acc1", first=False))))),
]

# f x r = x :: r, and its flipped form for the left fold; one tick each
CONS_FN = MkLam("a", MkLam("b", tick_then(MkCons("a", "b"))))
SNOC_FN = MkLam("b", MkLam("a", tick_then(MkCons("a", "b"))))


def _fold_main(fold: str, fn: IrTerm) -> IrTerm:
    return Bind(fn, "f", lazy_let("v", MkNil(), DefCall(fold, ("f", "v", "xs"))))


def _program(name: str, defs, main: IrTerm, inputs, **meta) -> IrProgram:
    return IrProgram(tuple(defs), main, tuple(inputs), name, meta=dict(meta))


APPEND_NOCOST = nocost_copy(APPEND)

PROGRAMS: dict[str, IrProgram] = {
    p.name: p
    for p in [
        _program("append", APPEND, DefCall("appendA", ("xs", "ys")), ("xs", "ys")),
        _program("take", TAKE, DefCall("takeA", ("n", "xs")), ("n", "xs")),
        _program("append_take", APPEND + TAKE,
                 lazy_let("zs", DefCall("appendA", ("xs", "ys")), DefCall("takeA", ("n", "zs"))),
                 ("n", "xs", "ys")),
        _program("take_prime", REV_NOCOST + TAKE_PRIME, DefCall("take'A", ("n", "xs")),
                 ("n", "xs")),
        _program("rev", REV, DefCall("revA", ("xs",)), ("xs",)),
        _program("rev_prime", APPEND_NOCOST + REV_PRIME, DefCall("rev'A", ("xs",)), ("xs",)),
        _program("foldr", FOLDS, _fold_main("foldrA", CONS_FN), ("xs",)),
        _program("foldl", FOLDS, _fold_main("foldlA", SNOC_FN), ("xs",)),
    ]
}


def get(name: str) -> IrProgram:
    try:
        return PROGRAMS[name]
    except KeyError:
        raise KeyError(f"unknown corpus program {name!r}; known: {sorted(PROGRAMS)}") from None
