import pytest

from lazycost import corpus
from lazycost.approx import NatP, UnitP, pure, pure_length
from lazycost.clair import run_program
from lazycost.front import load, show_program
from lazycost.front.syntax import List, Nat, Unit
from lazycost.oracle import eval_pure
from lazycost.translate import translate_program

NAMES = corpus.surface_names()

EXPECTED = {
    "append": ({"xs": [1, 2], "ys": [3]}, [1, 2, 3]),
    "append_take": ({"n": 2, "xs": [1, 2, 3], "ys": [4]}, [1, 2]),
    "concat": ({"xss": [[1], [], [2, 3]]}, [1, 2, 3]),
    "drop": ({"n": 1, "xs": [1, 2, 3]}, [2, 3]),
    "identity": ({"xs": [4, 5]}, [4, 5]),
    "rev_acc": ({"xs": [1, 2, 3]}, [3, 2, 1]),
    "rev_naive": ({"xs": [1, 2, 3]}, [3, 2, 1]),
    "take": ({"n": 2, "xs": [7, 8, 9]}, [7, 8]),
    "sharing": ({"xs": [1], "ys": [2]}, [1, 2, 1, 2]),
    "twice": ({"xs": [1]}, [1, 1, 1, 1]),
}


def test_at_least_twelve_programs():
    assert len(NAMES) >= 12
    assert {"append", "take", "append_take", "rev_naive", "rev_acc"} <= set(NAMES)


@pytest.mark.parametrize("name", NAMES)
def test_every_program_loads_and_round_trips(name):
    p = corpus.load_surface(name)
    assert p.name == name
    again = load(show_program(p), name)
    point = corpus.input_grid(p, 2, 2)[-1]
    assert eval_pure(again, point) == eval_pure(p, point)


@pytest.mark.parametrize("name", NAMES)
def test_every_program_has_a_grid(name):
    p = corpus.load_surface(name)
    grid = corpus.input_grid(p, 2, 2)
    assert grid and all(set(pt) == set(p.input_names()) for pt in grid)


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_programs_compute_what_they_say(name):
    inputs, want = EXPECTED[name]
    p = corpus.load_surface(name)
    point = {k: NatP(v) if isinstance(v, int) else pure(v) for k, v in inputs.items()}
    assert eval_pure(p, point) == pure(want)


def test_load_is_cached():
    assert corpus.load_surface("append") is corpus.load_surface("append")


def test_unknown_surface_program():
    with pytest.raises(KeyError, match="known"):
        corpus.surface_source("quicksort")


def test_values_of():
    assert corpus.values_of(Unit()) == [UnitP()]
    assert corpus.values_of(Nat(), max_n=2) == [NatP(0), NatP(1), NatP(2)]
    lists = corpus.values_of(List(Nat()), max_len=3)
    assert [pure_length(v) for v in lists] == [0, 1, 2, 3]
    nested = corpus.values_of(List(List(Nat())), max_len=2)
    assert pure([]) in nested and pure([[0, 1], [2, 3]]) in nested
    assert len(nested) == 1 + 3 + 9


def test_values_of_rejects_functions():
    from lazycost.front.syntax import Arrow
    with pytest.raises(ValueError):
        corpus.values_of(Arrow(Nat(), Nat()))


def test_input_grid_size():
    p = corpus.load_surface("append_take")
    assert len(corpus.input_grid(p, 3, 2)) == 3 * 4 * 4


def test_list_input_is_distinct():
    assert corpus.list_input(3) == pure([1, 2, 3])
    assert corpus.list_input(2, 100) == pure([100, 101])


@pytest.mark.parametrize("name", sorted(corpus.handwritten.PROGRAMS))
def test_handwritten_programs_run(name):
    p = corpus.handwritten.get(name)
    env = {}
    for x in p.inputs:
        env[x] = NatP(2) if x == "n" else corpus.list_input(2)
    outs = run_program(p, corpus.exact_inputs(env))
    assert outs and all(o.cost >= 0 for o in outs)


def test_handwritten_unknown():
    with pytest.raises(KeyError, match="known"):
        corpus.handwritten.get("nope")


def test_handwritten_nocost_has_no_ticks():
    from lazycost.ir import strip_ticks
    p = corpus.handwritten.get("take_prime")
    stripped = [d for d in p.defs if d.name.endswith("_nocost")]
    assert stripped and all(strip_ticks(d.body) == d.body for d in stripped)


@pytest.mark.parametrize("name", NAMES)
def test_translation_both_modes(name):
    p = corpus.load_surface(name)
    for ticks in ("full", "simplified"):
        ir = translate_program(p, ticks)
        assert ir.inputs == p.input_names()
