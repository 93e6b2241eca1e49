import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lazycost.approx import (
    FULL, WHNF, ConsP, LiteralError, NatP, NilP, UnitP, demand_conses, exact, exact_t,
    is_approx, is_defined, less_defined, meets, parse_demand, parse_pure, parse_value, pure,
    random_approx, random_pure, show_demand, size_x, to_pure,
)
from lazycost.values import NIL, UNDEFINED, UNIT, ConsV, NatV, ThunkV, show

from strategies import chains, coarsen, list_and_approx, pure_and_approx, pure_values

MANY = settings(max_examples=300, deadline=None)


class TestExact:
    def test_nil(self):
        assert exact(NilP()) == NIL

    def test_singleton(self):
        assert exact(pure([1])) == ConsV(ThunkV(NatV(1)), ThunkV(NIL))

    def test_unit_and_nat(self):
        assert exact(UnitP()) == UNIT
        assert exact(NatP(3)) == NatV(3)

    @MANY
    @given(pure_values)
    def test_is_approx_of_itself(self, p):
        assert is_approx(exact(p), p)

    @MANY
    @given(pure_values)
    def test_round_trip_through_to_pure(self, p):
        assert to_pure(exact(p)) == p


class TestLessDefined:
    def test_undefined_head_below_defined(self):
        a = ConsV(UNDEFINED, ThunkV(NIL))
        assert less_defined(a, exact(pure([7])))
        assert not less_defined(exact(pure([7])), a)

    def test_shape_clash_is_false(self):
        assert not less_defined(ConsV(ThunkV(NatV(1)), UNDEFINED), NIL)

    def test_undefined_is_bottom(self):
        assert less_defined(UNDEFINED, exact_t(pure([1, 2])))
        assert not less_defined(exact_t(NilP()), UNDEFINED)

    @MANY
    @given(pure_and_approx)
    def test_reflexive(self, pa):
        assert less_defined(pa[1], pa[1])

    @MANY
    @given(chains(3))
    def test_transitive(self, pc):
        a, b, c = pc[1]
        assert less_defined(a, b) and less_defined(b, c) and less_defined(a, c)

    @MANY
    @given(pure_and_approx, pure_and_approx)
    def test_antisymmetric(self, x, y):
        a, b = x[1], y[1]
        if less_defined(a, b) and less_defined(b, a):
            assert a == b

    @MANY
    @given(chains(2))
    def test_coarsen_is_below(self, pc):
        assert less_defined(*pc[1])


class TestIsApprox:
    @MANY
    @given(pure_and_approx)
    def test_iff_below_exact(self, pa):
        p, a = pa
        assert is_approx(a, p) == less_defined(a, exact(p))

    @MANY
    @given(pure_and_approx, pure_values)
    def test_iff_below_exact_unrelated(self, pa, q):
        a = pa[1]
        assert is_approx(a, q) == less_defined(a, exact(q))

    @MANY
    @given(chains(2))
    def test_downward_closed(self, pc):
        p, (a, b) = pc
        assert is_approx(b, p) and is_approx(a, p)

    @MANY
    @given(pure_and_approx)
    def test_exact_is_maximal(self, pa):
        p, a = pa
        if less_defined(exact(p), a):
            assert a == exact(p)


class TestSizeX:
    def test_undefined(self):
        assert size_x(0, UNDEFINED) == 0

    def test_nil_weight(self):
        assert size_x(1, ThunkV(NIL)) == 1
        assert size_x(0, ThunkV(NIL)) == 0

    def test_three_elements(self):
        assert size_x(1, exact_t(pure([1, 2, 3]))) == 4
        assert size_x(0, exact_t(pure([1, 2, 3]))) == 3

    def test_partial_spine(self):
        v = parse_value("cons(_, cons(4, undef))")
        assert size_x(0, ThunkV(v)) == 2 and size_x(1, ThunkV(v)) == 2

    @MANY
    @given(list_and_approx.flatmap(lambda pa: st.tuples(coarsen(pa[1]), st.just(pa[1]))))
    def test_monotone(self, ab):
        a, b = ab
        assert size_x(0, a) <= size_x(0, b)

    def test_is_defined(self):
        assert is_defined(ThunkV(NIL)) and not is_defined(UNDEFINED)


class TestDemand:
    def test_conses_zero_is_whnf(self):
        assert demand_conses(0) == WHNF

    def test_conses_two(self):
        assert demand_conses(2) == ConsV(UNDEFINED, ThunkV(ConsV(UNDEFINED, UNDEFINED)))

    def test_negative(self):
        with pytest.raises(ValueError):
            demand_conses(-1)

    def test_meets(self):
        v = exact(pure([1, 2]))
        assert meets(FULL, v) and meets(WHNF, v) and meets(demand_conses(2), v)
        assert not meets(demand_conses(3), v)
        assert not meets(FULL, ConsV(UNDEFINED, ThunkV(NIL)))

    @pytest.mark.parametrize("text", ["whnf", "full", "conses(3)", "cons(_, cons(4, undef))"])
    def test_parse_show_round_trip(self, text):
        d = parse_demand(text)
        assert parse_demand(show_demand(d)) == d

    def test_demands_are_approximations(self):
        rng = random.Random(3)
        for _ in range(200):
            p = random_pure(rng, kind="list")
            k = rng.randrange(8)
            d = demand_conses(k)
            below = less_defined(d, exact(p))
            assert below == (k <= size_x(0, exact_t(p)))


class TestLiterals:
    def test_list_sugar(self):
        assert parse_value("[1, 2]") == exact(pure([1, 2]))

    def test_parse_pure_rejects_partial(self):
        with pytest.raises(LiteralError):
            parse_pure("cons(_, nil)")

    @pytest.mark.parametrize("bad", ["cons(1", "[1,", "foo", "1 2"])
    def test_errors(self, bad):
        with pytest.raises(LiteralError):
            parse_value(bad)

    def test_show_round_trip(self):
        rng = random.Random(0)
        for _ in range(200):
            p = random_pure(rng)
            a = random_approx(rng, p)
            assert parse_value(show(a)) == a

    def test_pure_of_nested(self):
        assert pure([[1], []]) == ConsP(ConsP(NatP(1), NilP()), ConsP(NilP(), NilP()))
