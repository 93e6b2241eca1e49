"""Shared machinery for the cross-checking tests."""
from dataclasses import replace

from lazycost import clair, corpus
from lazycost.approx import FULL, meets
from lazycost.translate import float_only, translate_program


def grid_envs(p, max_len=3, max_n=3):
    """Exact input thunks for every point of a surface program's grid."""
    return [corpus.exact_inputs(pt) for pt in corpus.input_grid(p, max_len, max_n)]


def float_only_program(prog):
    defs = tuple(replace(d, body=float_only(d.body)) for d in prog.defs)
    return replace(prog, defs=defs, main=float_only(prog.main))


def float_violations(sp, env):
    """Check the floating inequalities at one input point; returns failures."""
    full = translate_program(sp, "full")
    flo = float_only_program(full)
    simp = translate_program(sp, "simplified")
    k = simp.meta["chain"]
    L = clair.run_program(full, env)
    F = clair.run_program(flo, env)
    C = clair.run_program(simp, env)
    bad = []
    values = {o.value for o in L}
    if {o.value for o in F} != values or {o.value for o in C} != values:
        bad.append("value sets differ")
    for o in F:
        if not any(l.value == o.value and l.cost <= o.cost for l in L):
            bad.append(f"floated outcome {o} has no cheaper original")
    for o in C:
        if not any(l.value == o.value and l.cost <= k * o.cost for l in L):
            bad.append(f"collapsed outcome {o} has no original within k={k}")
    for d in (None, FULL):
        lo = [o.cost for o in L if d is None or meets(d, o.value)]
        co = [o.cost for o in C if d is None or meets(d, o.value)]
        if lo and co and min(co) > k * min(lo):
            bad.append(f"min {min(co)} > {k} * {min(lo)} under {d}")
    return bad
