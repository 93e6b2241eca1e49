"""One program, three evaluators: enumeration, call-by-need, clairvoyant CBV.

    python demos/oracle_triangle.py
"""
from lazycost import clair, corpus
from lazycost.approx import FULL, demand_conses, exact_t, pure
from lazycost.oracle import DemandUnsatisfiable, ccv_outcomes, eval_need
from lazycost.translate import translate_program
from lazycost.values import show

sp = corpus.load_surface("sharing")
p = translate_program(sp, "full")
env = {"xs": exact_t(pure([1, 2])), "ys": exact_t(pure([3]))}

outs = clair.run_program(p, env)
print(f"{len(outs)} outcomes; ccv agrees: {ccv_outcomes(sp, env) == outs}")
for d, label in ((demand_conses(1), "conses(1)"), (demand_conses(3), "conses(3)"), (FULL, "full")):
    lo = clair.min_cost(p.main, env, d, p)
    try:
        r = eval_need(sp, d, env)
        print(f"{label:10} min {lo:3}  need {r.cost:3}  value {show(r.value)}")
    except DemandUnsatisfiable:
        print(f"{label:10} unsatisfiable")
