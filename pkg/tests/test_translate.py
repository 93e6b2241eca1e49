import itertools

import pytest

from lazycost import clair, corpus
from lazycost.approx import exact_t
from lazycost.corpus import handwritten, list_input
from lazycost.front import parse_expr, parse_type
from lazycost.ir import (
    Bind, CallLam, CaseListIr, DefCall, Forcing, IVar, MkNil, Ret, ThunkOf, Tick, count_ticks,
    free_vars, seq, subterms, tick_then,
)
from lazycost.translate import (
    ArrowA, Comp, ListA, NatA, Thunked, UnitA, collapse_ticks, float_only, float_ticks,
    translate_program, translate_term, translate_type,
)

from helpers import float_violations, grid_envs


class TestTypes:
    def test_list(self):
        t = translate_type(parse_type("list nat"))
        assert t == ListA(NatA())
        assert t.head_field == Thunked(NatA()) and t.tail_field == Thunked(t)

    def test_arrow(self):
        t = translate_type(parse_type("list nat -> list nat"))
        assert t == ArrowA(Thunked(ListA(NatA())), Comp(ListA(NatA())))

    def test_unit(self):
        assert translate_type(parse_type("unit")) == UnitA()


def _force(x, y):
    return Forcing(x, y, Ret(IVar(y)))


class TestTerms:
    def test_let_of_var(self):
        t = translate_term(parse_expr("let x = nil in x"))
        assert t == tick_then(Bind(ThunkOf(MkNil()), "x", tick_then(_force("x", "_y0"))))

    def test_var(self):
        assert translate_term(parse_expr("x")) == tick_then(_force("x", "_y0"))

    def test_app(self):
        t = translate_term(parse_expr("f x"))
        assert t == tick_then(Bind(tick_then(_force("f", "_y1")), "_f0", CallLam("_f0", "x")))

    def test_requires_anf(self):
        with pytest.raises(ValueError, match="A-normal"):
            translate_term(parse_expr("f (g x)"))

    def test_bad_mode(self):
        with pytest.raises(ValueError, match="tick mode"):
            translate_term(parse_expr("x"), "lazy")

    @pytest.mark.parametrize("name", corpus.surface_names())
    def test_no_case_nodes_and_well_scoped(self, name):
        p = translate_program(corpus.load_surface(name))
        for d in p.defs:
            assert not any(isinstance(s, CaseListIr) for s in subterms(d.body))
            assert free_vars(d.body) == frozenset()
        assert free_vars(p.main) <= set(p.inputs)

    @pytest.mark.parametrize("name", corpus.surface_names())
    def test_thunks_are_bound(self, name):
        p = translate_program(corpus.load_surface(name))
        for body in [d.body for d in p.defs] + [p.main]:
            thunks = [s for s in subterms(body) if isinstance(s, ThunkOf)]
            binds = [s.first for s in subterms(body) if isinstance(s, Bind)]
            assert all(any(t is b for b in binds) for t in thunks)

    def test_nocost_has_no_ticks(self):
        p = translate_program(corpus.load_surface("rev_nocost"))
        marked = [d for d in p.defs if d.nocost]
        assert marked and all(count_ticks(d.body) == 0 for d in marked)
        assert any(count_ticks(d.body) > 0 for d in p.defs if not d.nocost)

    def test_simplified_append_matches_hand_written(self):
        p = translate_program(corpus.load_surface("append"), "simplified")
        call = Bind(DefCall("append", ()), "f", Bind(CallLam("f", "xs"), "g", CallLam("g", "ys")))
        hand = handwritten.get("append")
        for a, b in itertools.product(range(5), repeat=2):
            env = {"xs": exact_t(list_input(a)), "ys": exact_t(list_input(b, 10))}
            assert clair.enumerate_outcomes(call, env, p) == clair.run_program(hand, env)


class TestFloat:
    def test_bind_continuation(self):
        t = Bind(Ret(IVar("v")), "x", tick_then(Ret(IVar("x"))))
        out, k = float_ticks(t)
        assert out == tick_then(Bind(Ret(IVar("v")), "x", Ret(IVar("x"))))
        assert k == 1

    def test_chain_collapse(self):
        out, k = float_ticks(seq(Tick(), Tick(), Ret(IVar("v"))))
        assert out == tick_then(Ret(IVar("v"))) and k == 2

    def test_thunk(self):
        assert float_only(ThunkOf(tick_then(MkNil()))) == tick_then(ThunkOf(MkNil()))

    def test_collapse_leaves_single_ticks(self):
        t = tick_then(Bind(ThunkOf(MkNil()), "x", Ret(IVar("x"))))
        assert collapse_ticks(t) == (t, 1)

    @pytest.mark.parametrize("name", corpus.surface_names())
    def test_floating_inequalities(self, name):
        sp = corpus.load_surface(name)
        for env in grid_envs(sp, 2, 2):
            assert float_violations(sp, env) == []

    @pytest.mark.parametrize("name", corpus.surface_names())
    def test_simplified_has_fewer_ticks(self, name):
        sp = corpus.load_surface(name)
        full, simp = translate_program(sp, "full"), translate_program(sp, "simplified")
        assert count_ticks(simp.main) <= count_ticks(full.main)
        assert simp.meta["chain"] >= 1
