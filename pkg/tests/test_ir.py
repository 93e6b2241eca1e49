import json

import pytest

from lazycost import corpus, ir
from lazycost.corpus import handwritten
from lazycost.ir import (
    Bind, IVar, MkNil, Ret, ThunkOf, Tick, count_ticks, force, free_vars, from_json,
    is_tick_prefixed, lazy_let, pretty, program_from_json, program_to_json, seq, strip_ticks,
    tick_then, to_json,
)
from lazycost.translate import translate_program


def test_seq_and_tick_then():
    assert seq(Tick(), Tick(), MkNil()) == tick_then(tick_then(MkNil()))
    assert is_tick_prefixed(tick_then(MkNil())) and not is_tick_prefixed(MkNil())


def test_lazy_let_and_force():
    t = lazy_let("x", MkNil(), force("x"))
    assert t == Bind(ThunkOf(MkNil()), "x", ir.Forcing("x", "x'", Ret(IVar("x'"))))
    assert free_vars(t) == frozenset()
    assert free_vars(force("y")) == {"y"}


def test_strip_ticks():
    t = tick_then(lazy_let("x", tick_then(MkNil()), force("x")))
    assert count_ticks(t) == 2 and count_ticks(strip_ticks(t)) == 0


@pytest.mark.parametrize("name", sorted(handwritten.PROGRAMS))
def test_json_round_trip_hand_written(name):
    p = handwritten.get(name)
    text = json.dumps(program_to_json(p))
    assert program_from_json(json.loads(text)) == p
    assert from_json(to_json(p.main)) == p.main


@pytest.mark.parametrize("name", corpus.surface_names())
@pytest.mark.parametrize("ticks", ["full", "simplified"])
def test_json_round_trip_translated(name, ticks):
    p = translate_program(corpus.load_surface(name), ticks)
    assert program_from_json(json.loads(ir.dumps(p))) == p


def test_json_is_tagged():
    assert to_json(Tick()) == {"tag": "Tick"}
    assert to_json(Ret(IVar("x")))["tag"] == "Ret"


def test_from_json_rejects_unknown_tags():
    with pytest.raises((KeyError, ValueError)):
        from_json({"tag": "Launch"})


def test_pretty_mentions_ticks():
    text = pretty(tick_then(force("x")))
    assert text.startswith("tick >>")
    assert "Definition takeA" in ir.pretty_program(handwritten.get("take"))
