"""Cheapest full evaluation of ``take n (append xs ys)`` against 2n+1.

    python demos/append_take_bound.py
"""
from lazycost import clair, corpus
from lazycost.approx import FULL, NatP, exact_t

prog = corpus.handwritten.get("append_take")
ys = exact_t(corpus.list_input(2, 100))

print("n  |xs|  min cost  2n+1")
for n in range(5):
    for lx in (0, 2, 4):
        env = {"n": exact_t(NatP(n)), "xs": exact_t(corpus.list_input(lx)), "ys": ys}
        c = clair.min_cost(prog.main, env, FULL, prog)
        mark = "=" if c == 2 * n + 1 else "<"
        print(f"{n}  {lx:4}  {c:8}  {2 * n + 1:4}  {mark}")
