"""The case studies, run exhaustively over small input grids.

Each study returns a flat list of reports, one per claim and grid point.
Exact cost figures used here were read off full enumeration and are kept in
the ``GOLDEN`` table so that tests and reports share one source.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..approx import FULL, WHNF, NatP, demand_conses, exact_t, meets, show_demand
from ..clair import DEFAULT_BUDGET, BudgetExceeded, enumerate_outcomes, search_min
from ..corpus import handwritten, list_input
from ..values import Env
from .checks import ABSTAIN, SpecReport, check_optimistic, check_pessimistic, compare_report
from .predicates import CostPredicate, Context, Meets

CASES = ("append_take", "take_vs_take_prime", "rev_vs_rev_prime", "foldl_vs_foldr")

# exact figures from enumeration (n, L = |xs|)
GOLDEN = {
    "take_prime_cost": lambda n, L: min(n, L) + 1,
    "take_whnf_min": lambda n, L: 1,
    "rev_cost": lambda L: L + 1,
    "rev_prime_cost": lambda L: L + 1,
    "foldr_full_min": lambda L: 2 * L + 1,
    "foldl_full_min": lambda L: 2 * L + 1,
    "foldr_conses1_min": lambda L: 2 if L >= 1 else None,
    "foldl_conses1_min": lambda L: L + 2 if L >= 1 else None,
}


@dataclass(frozen=True)
class Grid:
    """Largest |xs|, |ys| and n to visit; every smaller value is visited too."""

    xs: int = 6
    ys: int = 3
    n: int = 6

    @classmethod
    def parse(cls, text: str) -> "Grid":
        """``xs=6,ys=3,n=6``; missing keys keep their defaults."""
        vals = {}
        for part in filter(None, (p.strip() for p in text.split(","))):
            key, sep, val = part.partition("=")
            if not sep or key.strip() not in ("xs", "ys", "n") or not val.strip().isdigit():
                raise ValueError(f"bad grid entry {part!r}; expected xs=N, ys=N or n=N")
            vals[key.strip()] = int(val)
        return cls(**vals)


def _nat(n: int):
    return exact_t(NatP(n))


def _lst(k: int, start: int = 1):
    return exact_t(list_input(k, start))


def _min(prog, env, d, budget):
    return search_min(prog.main, env, d, prog, budget).cost


def _guard(fn, program, claim, inputs):
    """Turn a budget overrun into an abstaining report."""
    try:
        return fn()
    except BudgetExceeded:
        rep = SpecReport(program, "compare", claim, ABSTAIN, inputs)
        rep.budget = "exceeded"
        return rep


# -- append_take --------------------------------------------------------------

def _append_take(grid: Grid, budget: int) -> list[SpecReport]:
    prog = handwritten.get("append_take")
    out = []
    for n in range(grid.n + 1):
        for lx in range(grid.xs + 1):
            for ly in range(grid.ys + 1):
                inputs = dict(n=n, xs=lx, ys=ly)
                env = Env({"n": _nat(n), "xs": _lst(lx), "ys": _lst(ly, 100)})

                def one(n=n, lx=lx, env=env, inputs=inputs):
                    c = _min(prog, env, FULL, budget)
                    exact = 0 < n <= lx
                    ok = c is not None and (c == 2 * n + 1 if exact else c <= 2 * n + 1)
                    claim = "min cost (full) = 2n+1" if exact else "min cost (full) <= 2n+1"
                    return compare_report("append_take", claim, ok, inputs, min_cost=c,
                                          bound=2 * n + 1)

                out.append(_guard(one, "append_take", "min cost (full) <= 2n+1", inputs))
    return out


# -- take vs take' ------------------------------------------------------------

def _take_vs_take_prime(grid: Grid, budget: int) -> list[SpecReport]:
    take, takep = handwritten.get("take"), handwritten.get("take_prime")
    out = []
    for n in range(grid.n + 1):
        for lx in range(grid.xs + 1):
            inputs = dict(n=n, xs=lx)
            env = Env({"n": _nat(n), "xs": _lst(lx)})
            ctx = Context.of({"n": NatP(n), "xs": list_input(lx)})
            k_max = min(n, lx)
            exact = CostPredicate.make(lo="min(n, |xs|) + 1", hi="min(n, |xs|) + 1")
            out.append(check_pessimistic(takep.main, env, exact, defs=takep, ctx=ctx,
                                         budget=budget, program="take'A", inputs=inputs))
            for k in range(k_max + 1):
                d = demand_conses(k)
                r = CostPredicate.make(Meets(d), hi=f"max(1, {k})")
                out.append(check_optimistic(take.main, env, r, defs=take, ctx=ctx, demand=d,
                                            budget=budget, program="takeA", inputs=inputs))

            def cmp(n=n, lx=lx, env=env, inputs=inputs):
                a = _min(take, env, WHNF, budget)
                b = _min(takep, env, WHNF, budget)
                strict = n >= 2 and lx >= n
                ok = a is not None and b is not None and (a < b if strict else a <= b)
                claim = "takeA beats take'A under whnf" if strict else \
                    "takeA no worse than take'A under whnf"
                return compare_report("take_vs_take_prime", claim, ok, inputs,
                                      take_min=a, take_prime_min=b, demand="whnf")

            out.append(_guard(cmp, "take_vs_take_prime", "whnf comparison", inputs))
    return out


# -- rev vs rev' --------------------------------------------------------------

def _demands(lx: int):
    return [WHNF] + [demand_conses(k) for k in range(1, lx + 1)] + [FULL]


def _rev_vs_rev_prime(grid: Grid, budget: int) -> list[SpecReport]:
    out = []
    for name, label in (("rev", "revA"), ("rev_prime", "rev'A")):
        prog = handwritten.get(name)
        for lx in range(grid.xs + 1):
            inputs = dict(xs=lx)
            env = Env({"xs": _lst(lx)})
            ctx = Context.of({"xs": list_input(lx)})
            r = CostPredicate.make(lo="|xs| + 1", hi="|xs| + 1")
            out.append(check_pessimistic(prog.main, env, r, defs=prog, ctx=ctx, budget=budget,
                                         program=label, inputs=inputs))

            def indep(prog=prog, env=env, lx=lx, label=label, inputs=inputs):
                outs = enumerate_outcomes(prog.main, env, prog, budget)
                per = {}
                for d in _demands(lx):
                    per[show_demand(d)] = sorted({o.cost for o in outs if meets(d, o.value)})
                costs = {c for cs in per.values() for c in cs}
                ok = len(costs) == 1 and all(per.values())
                return compare_report(label, "cost independent of demand", ok, inputs,
                                      costs_by_demand=per)

            out.append(_guard(indep, label, "cost independent of demand", inputs))
    return out


# -- foldl vs foldr -----------------------------------------------------------

def _foldl_vs_foldr(grid: Grid, budget: int) -> list[SpecReport]:
    fr, fl = handwritten.get("foldr"), handwritten.get("foldl")
    out = []
    for lx in range(grid.xs + 1):
        inputs = dict(xs=lx)
        env = Env({"xs": _lst(lx)})

        def full(env=env, inputs=inputs):
            a, b = _min(fr, env, FULL, budget), _min(fl, env, FULL, budget)
            return compare_report("foldl_vs_foldr", "equal min cost under full demand",
                                  a is not None and a == b, inputs, foldr_min=a, foldl_min=b,
                                  demand="full")

        out.append(_guard(full, "foldl_vs_foldr", "equal min cost under full demand", inputs))
        if lx >= 1:
            def part(env=env, lx=lx, inputs=inputs):
                d = demand_conses(1)
                a, b = _min(fr, env, d, budget), _min(fl, env, d, budget)
                strict = lx >= 2
                ok = a is not None and b is not None and (a < b if strict else a <= b)
                claim = "foldr cheaper under conses(1)" if strict else \
                    "foldr no worse under conses(1)"
                return compare_report("foldl_vs_foldr", claim, ok, inputs, foldr_min=a,
                                      foldl_min=b, demand="conses(1)")

            out.append(_guard(part, "foldl_vs_foldr", "conses(1) comparison", inputs))
    return out


_RUNNERS = {
    "append_take": _append_take,
    "take_vs_take_prime": _take_vs_take_prime,
    "rev_vs_rev_prime": _rev_vs_rev_prime,
    "foldl_vs_foldr": _foldl_vs_foldr,
}


def run_case_study(name: str, grid: Grid | None = None,
                   budget: int = DEFAULT_BUDGET) -> list[SpecReport]:
    if name not in _RUNNERS:
        raise KeyError(f"unknown case study {name!r}; known: {', '.join(CASES)}")
    return _RUNNERS[name](grid or Grid(), budget)

