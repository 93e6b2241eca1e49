"""Lazy take against a tail-recursive take that reverses its accumulator.

Under weak-head demand the lazy version only builds the first cell.

    python demos/take_vs_take_prime.py
"""
from lazycost import clair, corpus
from lazycost.approx import WHNF, FULL, NatP, exact_t

take, takep = corpus.handwritten.get("take"), corpus.handwritten.get("take_prime")
xs = exact_t(corpus.list_input(5))

print("n  demand  take  take'")
for n in range(1, 6):
    env = {"n": exact_t(NatP(n)), "xs": xs}
    for d, label in ((WHNF, "whnf"), (FULL, "full")):
        a = clair.min_cost(take.main, env, d, take)
        b = clair.min_cost(takep.main, env, d, takep)
        print(f"{n}  {label:6}  {a:4}  {b:5}")
