import json
import random

import pytest

from lazycost.approx import (
    FULL, NatP, demand_conses, exact_t, meets, pure, random_approx, random_pure,
)
from lazycost.clair import Outcome, enumerate_outcomes, min_cost, run_program
from lazycost.corpus import handwritten, list_input, load_surface
from lazycost.ir import MkNil, ThunkOf, Tick
from lazycost.oracle import eval_pure
from lazycost.speclab import (
    ABSTAIN, CASES, FAIL, GOLDEN, PASS, VACUOUS, And, AnyValue, Context, CostPredicate, Expr,
    ExprError, Fn, Grid, IsApprox, IsExact, Meets, Not, Table, check_optimistic,
    check_pessimistic, exit_code, format_table, replay, run_case_study, to_json, validate_rule,
)
from lazycost.speclab.rules import KINDS, RULES, WEAK, TermGen
from lazycost.values import UNDEFINED, UNIT, NatV, ThunkV

APPEND = handwritten.get("append")


def append_env(xs, ys):
    return {"xs": exact_t(pure(xs)), "ys": exact_t(pure(ys))}


def append_ctx(xs, ys, approx=None):
    pi = {"xs": pure(xs), "ys": pure(ys)}
    return Context.of(pi, approx, eval_pure(load_surface("append"), pi))


class TestExpr:
    def test_bars_and_primes(self):
        e = Expr.parse("|xs| + 1")
        assert e.eval({"xs": Context.of({"xs": pure([1, 2])}).args["xs"]}) == 3
        assert Expr.parse("n'").eval({"n'": 4}) == 4

    @pytest.mark.parametrize("bad", ["__import__('os')", "x / 2", "x ** 2", "[1]", "a or b"])
    def test_rejected(self, bad):
        with pytest.raises(ExprError):
            Expr.parse(bad)

    def test_unknown_name(self):
        with pytest.raises(ExprError, match="unknown name"):
            Expr.parse("m + 1").eval({})

    def test_functions(self):
        ctx = Context.of({"xs": pure([1, 2, 3]), "n": NatP(2)})
        env = dict(ctx.args)
        assert Expr.parse("max(1, min(n, sizeX0(xs)))").eval(env) == 2
        assert Expr.parse("sizeX1(xs)").eval(env) == 4

    def test_interval_parsing(self):
        r = CostPredicate.interval("[1, *]")
        assert r.lo is not None and r.hi is None
        assert CostPredicate.interval("[, 3]").describe() == "cost in [*, 3]"
        with pytest.raises(ExprError):
            CostPredicate.interval("1, 3")
        with pytest.raises(ExprError):
            CostPredicate.interval("[1]")

    def test_interval_with_calls(self):
        r = CostPredicate.interval("[max(1, 2), min(5, 7)]")
        assert str(r.lo) == "max(1, 2)" and str(r.hi) == "min(5, 7)"


class TestPessimistic:
    def test_append_interval_and_correctness(self):
        for a in range(7):
            for b in range(7):
                xs, ys = list(range(a)), list(range(10, 10 + b))
                r = CostPredicate.make(IsApprox(), lo="1", hi="sizeX1(xs)")
                rep = check_pessimistic(APPEND.main, append_env(xs, ys), r, defs=APPEND,
                                        ctx=append_ctx(xs, ys))
                assert rep.verdict == PASS, rep.to_json()

    def test_tick_counterexample(self):
        rep = check_pessimistic(Tick(), {}, CostPredicate.interval("[0, 0]"))
        assert rep.verdict == FAIL and rep.counterexample == Outcome(UNIT, 1)

    def test_vacuous(self):
        rep = check_pessimistic(APPEND.main, append_env([1], []), CostPredicate.interval("[0, 0]"),
                                defs=APPEND, demand=demand_conses(3))
        assert rep.verdict == VACUOUS and rep.ok and rep.outcomes == 0

    def test_take_prime_exact_cost(self):
        p = handwritten.get("take_prime")
        r = CostPredicate.make(lo="min(n, |xs|) + 1", hi="min(n, |xs|) + 1")
        for n in range(5):
            for k in range(5):
                env = {"n": exact_t(NatP(n)), "xs": exact_t(list_input(k))}
                ctx = Context.of({"n": NatP(n), "xs": list_input(k)})
                assert check_pessimistic(p.main, env, r, defs=p, ctx=ctx).verdict == PASS

    def test_budget_abstains(self):
        rep = check_pessimistic(APPEND.main, append_env([1, 2, 3], [4]), CostPredicate(),
                                defs=APPEND, budget=5)
        assert rep.verdict == ABSTAIN and rep.budget == "exceeded" and not rep.ok


class TestOptimistic:
    def test_prefix_cost(self):
        for a in range(1, 7):
            xs = list(range(a))
            for n in range(1, a + 1):
                r = CostPredicate.make(Meets(demand_conses(n)), hi=str(n))
                rep = check_optimistic(APPEND.main, append_env(xs, [9]), r, defs=APPEND)
                assert rep.verdict == PASS and rep.witness.cost <= n

    def test_full_cost_with_partial_second_list(self):
        rng = random.Random(1)
        for _ in range(100):
            xs, ys = random_pure(rng, 5, "list"), random_pure(rng, 5, "list")
            ys_a = ThunkV(random_approx(rng, ys))
            env = {"xs": exact_t(xs), "ys": ys_a}
            ctx = Context.of({"xs": xs}, {"ys": ys_a})
            r = CostPredicate.make(hi="|xs| + 1",
                                   where=["sizeX1(result) == |xs| + sizeX1(ys)"])
            rep = check_optimistic(APPEND.main, env, r, defs=APPEND, ctx=ctx)
            assert rep.verdict == PASS, rep.to_json()

    def test_unsatisfiable(self):
        r = CostPredicate.make(IsExact(), hi="0")
        rep = check_optimistic(APPEND.main, append_env([1], [2]), r, defs=APPEND,
                               ctx=append_ctx([1], [2]))
        assert rep.verdict == FAIL and rep.witness is None


def _random_cases(n, seed=0):
    rng = random.Random(seed)
    g = TermGen(rng)
    for _ in range(n):
        env, kinds = g.env()
        t = g.term(rng.randint(1, 4), kinds)
        outs = list(enumerate_outcomes(t, env))
        pairs = frozenset(o for o in outs if rng.random() < 0.5)
        yield t, env, Table(pairs)


class TestProperties:
    def test_duality(self):
        for t, env, r in _random_cases(300):
            pes = check_pessimistic(t, env, r)
            opt = check_optimistic(t, env, Not(r))
            assert pes.ok == (opt.verdict == FAIL)

    def test_replay(self):
        for t, env, r in _random_cases(300, 1):
            for rep in (check_pessimistic(t, env, r), check_optimistic(t, env, r)):
                assert replay(rep, t, env, r)

    def test_combinators(self):
        ctx = Context()
        hi = CostPredicate.interval("[*, 2]")
        lo = CostPredicate.interval("[1, *]")
        assert And(hi, lo).holds(NatV(0), 1, ctx) and not And(hi, lo).holds(NatV(0), 3, ctx)
        assert Not(hi).holds(NatV(0), 3, ctx)
        assert Fn(lambda v, c: c == 5, "five").holds(UNDEFINED, 5, ctx)
        assert AnyValue().holds(NatV(1), ctx)

    def test_meets_condition(self):
        assert Meets(FULL).holds(exact_t(pure([1])).value, Context())


class TestRules:
    @pytest.mark.parametrize("kind", KINDS)
    @pytest.mark.parametrize("rule", RULES)
    def test_sound(self, rule, kind):
        rep = validate_rule(rule, kind, trials=150, seed=7)
        assert rep.failures == 0 and rep.premises_held > 0 and rep.passed

    def test_weakened_conjunction_is_caught(self):
        rep = validate_rule(WEAK, "optimistic", trials=500, seed=0)
        assert rep.failures > 0 and rep.counterexample and rep.passed

    def test_optimistic_thunk_left_disjunct(self):
        r = Table(frozenset({(UNDEFINED, 0)}))
        rep = check_optimistic(ThunkOf(Tick()), {}, r)
        assert rep.verdict == PASS and rep.witness == Outcome(UNDEFINED, 0)
        assert check_optimistic(ThunkOf(MkNil()), {}, r).verdict == PASS

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            validate_rule("cut", "pessimistic")
        with pytest.raises(ValueError):
            validate_rule(WEAK, "pessimistic")
        with pytest.raises(ValueError):
            validate_rule("ret", "both")

    def test_deterministic(self):
        a = validate_rule("bind", "optimistic", 50, seed=3).to_json()
        b = validate_rule("bind", "optimistic", 50, seed=3).to_json()
        assert a == b


class TestCases:
    @pytest.mark.parametrize("name", CASES)
    def test_small_grid(self, name):
        reps = run_case_study(name, Grid(4, 2, 4))
        assert reps and all(r.ok for r in reps), [r.to_json() for r in reps if not r.ok]

    def test_unknown(self):
        with pytest.raises(KeyError):
            run_case_study("append_drop")

    def test_grid_parse(self):
        assert Grid.parse("xs=2, n=1") == Grid(2, 3, 1)
        with pytest.raises(ValueError):
            Grid.parse("zs=1")

    def test_instantiated_bound(self):
        reps = run_case_study("append_take", Grid(6, 3, 2))
        point = [r for r in reps if r.inputs == {"n": 2, "xs": 6, "ys": 3}]
        assert point and point[0].details["min_cost"] <= 5

    def test_take_whnf_example(self):
        reps = run_case_study("take_vs_take_prime", Grid(6, 0, 4))
        (cmp,) = [r for r in reps if r.mode == "compare" and r.inputs == {"n": 4, "xs": 6}]
        assert cmp.details["take_min"] <= 2 < cmp.details["take_prime_min"]

    def test_budget_abstains(self):
        reps = run_case_study("foldl_vs_foldr", Grid(3, 0, 0), budget=20)
        assert any(r.verdict == ABSTAIN for r in reps)
        assert exit_code(reps) == 2


class TestGoldens:
    """Exact figures read off the enumeration, frozen."""

    def test_take_prime(self):
        p = handwritten.get("take_prime")
        for n in range(7):
            for k in range(7):
                env = {"n": exact_t(NatP(n)), "xs": exact_t(list_input(k))}
                assert {o.cost for o in run_program(p, env)} == {GOLDEN["take_prime_cost"](n, k)}

    def test_take_conses(self):
        p = handwritten.get("take")
        for n in range(7):
            for k in range(7):
                env = {"n": exact_t(NatP(n)), "xs": exact_t(list_input(k))}
                assert min_cost(p.main, env, demand_conses(0), p) == \
                    GOLDEN["take_whnf_min"](n, k)
                for j in range(1, min(n, k) + 1):
                    assert min_cost(p.main, env, demand_conses(j), p) == j

    @pytest.mark.parametrize("name,key", [("rev", "rev_cost"), ("rev_prime", "rev_prime_cost")])
    def test_rev(self, name, key):
        p = handwritten.get(name)
        for k in range(7):
            costs = {o.cost for o in run_program(p, {"xs": exact_t(list_input(k))})}
            assert costs == {GOLDEN[key](k)}

    def test_folds(self):
        fr, fl = handwritten.get("foldr"), handwritten.get("foldl")
        for k in range(7):
            env = {"xs": exact_t(list_input(k))}
            assert min_cost(fr.main, env, FULL, fr) == GOLDEN["foldr_full_min"](k)
            assert min_cost(fl.main, env, FULL, fl) == GOLDEN["foldl_full_min"](k)
            assert min_cost(fr.main, env, demand_conses(1), fr) == GOLDEN["foldr_conses1_min"](k)
            assert min_cost(fl.main, env, demand_conses(1), fl) == GOLDEN["foldl_conses1_min"](k)

    def test_append_take_counts(self):
        p = handwritten.get("append_take")
        env = {"n": exact_t(NatP(6)), "xs": exact_t(list_input(6)),
               "ys": exact_t(list_input(3, 100))}
        outs = run_program(p, env)
        assert len(outs) == 29
        assert min(o.cost for o in outs if meets(FULL, o.value)) == 13

    def test_append_take_full_min(self):
        p = handwritten.get("append_take")
        want = {0: 1, 1: 3, 2: 5, 3: 7, 4: 9}
        for n, c in want.items():
            env = {"n": exact_t(NatP(n)), "xs": exact_t(list_input(3)),
                   "ys": exact_t(list_input(2, 100))}
            assert min_cost(p.main, env, FULL, p) == c


class TestReport:
    def test_json_schema(self):
        reps = run_case_study("rev_vs_rev_prime", Grid(2, 0, 0))
        data = json.loads(to_json(reps))
        keys = {"program", "mode", "inputs", "demand", "predicate", "verdict", "witness",
                "counterexample", "outcomes", "branches", "budget", "details"}
        assert all(set(d) == keys for d in data)

    def test_outcome_encoding(self):
        rep = check_pessimistic(Tick(), {}, CostPredicate.interval("[0, 0]"))
        d = rep.to_json()
        assert d["counterexample"]["cost"] == 1 and d["counterexample"]["show"] == "unit"

    def test_table(self):
        reps = run_case_study("foldl_vs_foldr", Grid(1, 0, 0))
        text = format_table(reps)
        assert text.splitlines()[0].split()[:3] == ["program", "mode", "inputs"]
        assert len(text.splitlines()) == len(reps) + 2

    def test_exit_codes(self):
        ok = check_pessimistic(Tick(), {}, CostPredicate.interval("[1, 1]"))
        bad = check_pessimistic(Tick(), {}, CostPredicate.interval("[0, 0]"))
        cut = check_pessimistic(Tick(), {}, CostPredicate(), budget=0)
        assert exit_code([ok]) == 0
        assert exit_code([ok, bad]) == 1
        assert exit_code([ok, cut]) == 2
        assert exit_code([bad, cut]) == 1
