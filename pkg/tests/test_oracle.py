import pytest

from lazycost import clair, corpus
from lazycost.approx import FULL, WHNF, NatP, demand_conses, exact, exact_t, pure
from lazycost.clair import Outcome
from lazycost.front import load
from lazycost.oracle import (
    BOTTOM, DemandUnsatisfiable, ccv_outcomes, eval_ccv, eval_need, eval_pure, read_back,
    read_back_need,
)
from lazycost.oracle.ccv import VCons, VNat, VNil, normalize
from lazycost.oracle.need import ConsNV, Evaluated, Heap, NeedError, NilNV, Unevaluated
from lazycost.translate import translate_program
from lazycost.values import NIL, UNDEFINED, ConsV, NatV, ThunkV

from helpers import grid_envs

APPEND_IN = {"xs": exact_t(pure([1, 2, 3])), "ys": exact_t(pure([4]))}


class TestNeed:
    def test_append_full(self):
        sp = corpus.load_surface("append")
        r = eval_need(sp, FULL, APPEND_IN)
        assert r.value == exact(pure([1, 2, 3, 4]))
        assert r.cost == clair.min_cost(*_main(sp, APPEND_IN, FULL))

    def test_append_one_cons(self):
        # full-mode ticks; the hand-written version costs 1 here
        sp = corpus.load_surface("append")
        r = eval_need(sp, demand_conses(1), APPEND_IN)
        assert r.cost == 3
        assert r.value == ConsV(ThunkV(NatV(1)), UNDEFINED)

    def test_value_main_costs_nothing(self):
        sp = load("main = (nil : list nat)")
        assert eval_need(sp, WHNF).cost == 0

    def test_unsatisfiable(self):
        sp = corpus.load_surface("append")
        with pytest.raises(DemandUnsatisfiable):
            eval_need(sp, demand_conses(5), {"xs": exact_t(pure([1])), "ys": exact_t(pure([2]))})

    def test_deterministic(self):
        sp = corpus.load_surface("append_take")
        env = {"n": exact_t(NatP(2)), "xs": exact_t(pure([1, 2, 3])),
               "ys": exact_t(pure([4]))}
        assert eval_need(sp, FULL, env) == eval_need(sp, FULL, env)

    def test_missing_input(self):
        with pytest.raises(ValueError, match="missing"):
            eval_need(corpus.load_surface("append"), FULL, {"xs": exact_t(pure([]))})

    def test_double_update_rejected(self):
        h = Heap()
        loc = h.alloc(Unevaluated(None, {}, False))
        h.update(loc, NilNV())
        with pytest.raises(NeedError):
            h.update(loc, NilNV())

    def test_read_back(self):
        h = Heap()
        assert read_back_need(h, NilNV()) == NIL
        a = h.alloc(Evaluated(NilNV()))
        b = h.alloc(Unevaluated(None, {}, False))
        assert read_back_need(h, ConsNV(a, b)) == ConsV(ThunkV(NIL), UNDEFINED)

    @pytest.mark.parametrize("name", corpus.surface_names())
    def test_full_read_back_is_exact(self, name):
        sp = corpus.load_surface(name)
        for point in corpus.input_grid(sp, 2, 2):
            r = eval_need(sp, FULL, corpus.exact_inputs(point))
            assert r.value == exact(eval_pure(sp, point))

    @pytest.mark.parametrize("name", corpus.surface_names())
    def test_bracketing(self, name):
        sp = corpus.load_surface(name)
        for env in grid_envs(sp, 2, 2):
            for d in (WHNF, demand_conses(1), FULL):
                t, e, dd, p = _main(sp, env, d)
                lo, hi = clair.min_cost(t, e, dd, p), clair.max_cost(t, e, dd, p)
                try:
                    need = eval_need(sp, d, env).cost
                except DemandUnsatisfiable:
                    assert lo is None
                    continue
                assert lo == need <= hi


def _main(sp, env, d):
    p = translate_program(sp, "full")
    return p.main, env, d, p


class TestCcv:
    def test_value_term(self):
        sp = load("main = (nil : list nat)")
        ds = eval_ccv(sp)
        assert len(ds) == 1
        (d,) = ds
        assert d.value == VNil() and d.cost == 0 and d.heap == ()

    def test_unused_let_both_ways(self):
        sp = load("main (xs : list nat) = let y = cons 1 xs in xs")
        outs = ccv_outcomes(sp, {"xs": exact_t(pure([]))})
        assert {o.value for o in outs} == {NIL}
        cs = sorted(o.cost for o in outs)
        assert len(cs) == 2 and cs[1] > cs[0]

    @pytest.mark.parametrize("name", corpus.surface_names())
    def test_equals_enumeration(self, name):
        sp = corpus.load_surface(name)
        p = translate_program(sp, "full")
        for env in grid_envs(sp, 2, 2):
            assert ccv_outcomes(sp, env) == clair.run_program(p, env)

    def test_undefined_input_is_bottom(self):
        sp = corpus.load_surface("append")
        env = {"xs": exact_t(pure([1])), "ys": UNDEFINED}
        p = translate_program(sp)
        assert ccv_outcomes(sp, env) == clair.run_program(p, env)

    def test_read_back(self):
        heap = (VNat(1), BOTTOM)
        assert read_back(heap, VCons(0, 1)) == ConsV(ThunkV(NatV(1)), UNDEFINED)
        assert read_back((), VNil()) == NIL

    def test_normalize_renumbers(self):
        heap = (VNat(1), VNil(), VCons(0, 1), VNat(7))
        v, h = normalize(VCons(0, 1), heap, 0)
        assert read_back(h, v) == read_back(heap, VCons(0, 1))

    def test_outcome_type(self):
        outs = ccv_outcomes(load("main = (nil : list nat)"))
        assert outs == {Outcome(NIL, 0)}
