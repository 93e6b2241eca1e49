"""Pure values, approximations, and demands.

``exact`` injects a pure value into the approximation universe,
``less_defined`` is the definedness order, and ``is_approx`` relates an
approximation to the pure value it approximates.  A demand is an
approximation pattern that a result has to dominate.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Union

from .values import (
    NIL, UNDEFINED, UNIT, AValue, ClosV, ConsV, NatV, NilV, ThunkV, TVal,
    UndefinedV, UnitV, is_total,
)


@dataclass(frozen=True)
class UnitP:
    pass


@dataclass(frozen=True)
class NatP:
    n: int


@dataclass(frozen=True)
class NilP:
    pass


@dataclass(frozen=True)
class ConsP:
    head: PureValue
    tail: PureValue


PureValue = Union[UnitP, NatP, NilP, ConsP]


def pure(obj) -> PureValue:
    """Convert a Python int / list / None into a PureValue."""
    if isinstance(obj, (UnitP, NatP, NilP, ConsP)):
        return obj
    if obj is None or obj == ():
        return UnitP()
    if isinstance(obj, bool):
        raise TypeError("booleans are not pure values")
    if isinstance(obj, int):
        if obj < 0:
            raise ValueError("naturals are nonnegative")
        return NatP(obj)
    if isinstance(obj, list):
        out: PureValue = NilP()
        for x in reversed(obj):
            out = ConsP(pure(x), out)
        return out
    raise TypeError(f"cannot convert {obj!r} to a pure value")


def to_python(p: PureValue):
    if isinstance(p, UnitP):
        return None
    if isinstance(p, NatP):
        return p.n
    items = []
    while isinstance(p, ConsP):
        items.append(to_python(p.head))
        p = p.tail
    return items


def pure_length(p: PureValue) -> int:
    n = 0
    while isinstance(p, ConsP):
        n += 1
        p = p.tail
    if not isinstance(p, NilP):
        raise TypeError("not a list")
    return n


# -- the three relations ----------------------------------------------------

def exact(p: PureValue) -> AValue:
    if isinstance(p, UnitP):
        return UNIT
    if isinstance(p, NatP):
        return NatV(p.n)
    if isinstance(p, NilP):
        return NIL
    if isinstance(p, ConsP):
        return ConsV(ThunkV(exact(p.head)), ThunkV(exact(p.tail)))
    raise TypeError(f"not a pure value: {p!r}")


def exact_t(p: PureValue) -> TVal:
    return ThunkV(exact(p))


def less_defined(a: AValue | TVal, b: AValue | TVal) -> bool:
    if isinstance(a, UndefinedV):
        return True
    if isinstance(b, UndefinedV):
        return False
    if isinstance(a, ThunkV):
        return isinstance(b, ThunkV) and less_defined(a.value, b.value)
    if isinstance(b, ThunkV):
        return False
    if isinstance(a, ConsV):
        return (isinstance(b, ConsV) and less_defined(a.head, b.head)
                and less_defined(a.tail, b.tail))
    if isinstance(a, ClosV):
        return a == b
    # UnitV, NilV, NatV: structural equality
    return a == b


def is_approx(a: AValue | TVal, p: PureValue) -> bool:
    if isinstance(a, UndefinedV):
        return True
    if isinstance(a, ThunkV):
        return is_approx(a.value, p)
    if isinstance(a, UnitV):
        return isinstance(p, UnitP)
    if isinstance(a, NatV):
        return isinstance(p, NatP) and p.n == a.n
    if isinstance(a, NilV):
        return isinstance(p, NilP)
    if isinstance(a, ConsV):
        return isinstance(p, ConsP) and is_approx(a.head, p.head) and is_approx(a.tail, p.tail)
    return False


def size_x(n0: int, xs: TVal | AValue) -> int:
    """Spine length of a list approximation; a present nil weighs ``n0``."""
    if isinstance(xs, NilV | ConsV):
        xs = ThunkV(xs)
    count = 0
    while True:
        if isinstance(xs, UndefinedV):
            return count
        v = xs.value
        if isinstance(v, NilV):
            return count + n0
        if not isinstance(v, ConsV):
            raise TypeError(f"size_x expects a list approximation, got {v!r}")
        count += 1
        xs = v.tail


def is_defined(t: TVal) -> bool:
    return isinstance(t, ThunkV)


def lub_shape(a: AValue | TVal) -> int:
    """Number of defined constructor cells; used for ordering reports."""
    if isinstance(a, UndefinedV):
        return 0
    if isinstance(a, ThunkV):
        return lub_shape(a.value)
    if isinstance(a, ConsV):
        return 1 + lub_shape(a.head) + lub_shape(a.tail)
    return 1


# -- demands ----------------------------------------------------------------

@dataclass(frozen=True)
class FullDemand:
    """The result must be fully defined."""

    def __repr__(self) -> str:
        return "FULL"


FULL = FullDemand()
WHNF = UNDEFINED

Demand = Union[AValue, UndefinedV, ThunkV, FullDemand]


def demand_conses(n: int) -> Demand:
    """At least ``n`` cons cells, heads not demanded."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return UNDEFINED
    out: TVal = UNDEFINED
    for _ in range(n - 1):
        out = ThunkV(ConsV(UNDEFINED, out))
    return ConsV(UNDEFINED, out)


def meets(d: Demand, v: AValue) -> bool:
    if isinstance(d, FullDemand):
        return is_total(v)
    if isinstance(d, ThunkV):
        d = d.value
    return less_defined(d, v)


def check_first_order(d: Demand) -> None:
    if isinstance(d, ClosV):
        raise ValueError("demands on closures are not supported")
    if isinstance(d, ThunkV):
        check_first_order(d.value)
    if isinstance(d, ConsV):
        check_first_order(d.head)
        check_first_order(d.tail)


def demand_less_defined(d1: Demand, d2: Demand) -> bool:
    if isinstance(d2, FullDemand):
        return True
    if isinstance(d1, FullDemand):
        return False
    return less_defined(d1, d2)


# -- literal syntax ---------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class LiteralError(ValueError):
    pass


def _tokens(text: str) -> list[str]:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        tok = m.group(1) or m.group(2) or m.group(3)
        if tok is not None and not tok.isspace():
            out.append(tok)
        pos = m.end()
    return out


class _LitParser:
    def __init__(self, text: str) -> None:
        self.toks = _tokens(text)
        self.i = 0
        self.text = text

    def peek(self) -> str | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise LiteralError(f"in {self.text!r}: expected {expected or 'a token'}, found {tok!r}")
        self.i += 1
        return tok

    def thunk(self) -> TVal:
        if self.peek() in ("_", "undef"):
            self.take()
            return UNDEFINED
        return ThunkV(self.value())

    def value(self) -> AValue:
        tok = self.take()
        if tok.isdigit():
            return NatV(int(tok))
        if tok == "unit":
            return UNIT
        if tok == "nil":
            return NIL
        if tok == "cons":
            self.take("(")
            h = self.thunk()
            self.take(",")
            t = self.thunk()
            self.take(")")
            return ConsV(h, t)
        if tok == "[":
            items: list[TVal] = []
            if self.peek() != "]":
                items.append(self.thunk())
                while self.peek() == ",":
                    self.take(",")
                    items.append(self.thunk())
            self.take("]")
            out: AValue = NIL
            for h in reversed(items):
                out = ConsV(h, ThunkV(out))
            return out
        raise LiteralError(f"in {self.text!r}: unexpected {tok!r}")

    def done(self) -> None:
        if self.peek() is not None:
            raise LiteralError(f"in {self.text!r}: trailing input at {self.peek()!r}")


def parse_value(text: str) -> AValue | UndefinedV:
    """Parse ``cons(_, cons(4, undef))``, ``[1, 2]``, ``nil``, ``3``, ``_``."""
    p = _LitParser(text)
    out = p.thunk()
    p.done()
    return out.value if isinstance(out, ThunkV) else out


def parse_pure(text: str) -> PureValue:
    v = parse_value(text)
    if not is_total(v):
        raise LiteralError(f"{text!r} is not a fully defined value")
    return to_pure(v)


def to_pure(v: AValue | TVal) -> PureValue:
    if isinstance(v, ThunkV):
        return to_pure(v.value)
    if isinstance(v, UnitV):
        return UnitP()
    if isinstance(v, NatV):
        return NatP(v.n)
    if isinstance(v, NilV):
        return NilP()
    if isinstance(v, ConsV):
        return ConsP(to_pure(v.head), to_pure(v.tail))
    raise ValueError(f"{v!r} has no pure counterpart")


_CONSES = re.compile(r"^\s*conses\s*\(\s*(\d+)\s*\)\s*$")


def parse_demand(spec: str) -> Demand:
    """``whnf`` | ``full`` | ``conses(N)`` | an approximation literal."""
    s = spec.strip()
    if s == "whnf":
        return WHNF
    if s == "full":
        return FULL
    m = _CONSES.match(s)
    if m:
        return demand_conses(int(m.group(1)))
    return parse_value(s)


def show_demand(d: Demand) -> str:
    from .values import show

    if isinstance(d, FullDemand):
        return "full"
    if isinstance(d, UndefinedV):
        return "whnf"
    return show(d)


# -- random generation ------------------------------------------------------

def random_pure(rng: random.Random, depth: int = 6, kind: str | None = None) -> PureValue:
    """Random first-order value; lists of nats or lists of lists of nats."""
    kind = kind or rng.choice(["nat", "list", "list", "nested"])
    if kind == "unit":
        return UnitP()
    if kind == "nat":
        return NatP(rng.randrange(5))
    elem = "nat" if kind == "list" else "list"
    n = rng.randrange(depth + 1)
    out: PureValue = NilP()
    for _ in range(n):
        out = ConsP(random_pure(rng, max(depth - 2, 0), elem), out)
    return out


def random_approx(rng: random.Random, p: PureValue, p_undef: float = 0.3) -> AValue:
    """A random approximation of ``p`` (top constructor always present)."""
    if isinstance(p, ConsP):
        return ConsV(_random_thunk(rng, p.head, p_undef), _random_thunk(rng, p.tail, p_undef))
    return exact(p)


def _random_thunk(rng: random.Random, p: PureValue, p_undef: float) -> TVal:
    if rng.random() < p_undef:
        return UNDEFINED
    return ThunkV(random_approx(rng, p, p_undef))


def random_tval(rng: random.Random, depth: int = 6) -> TVal:
    """Arbitrary thunk, not tied to any pure value (shapes may clash)."""
    if rng.random() < 0.25:
        return UNDEFINED
    return ThunkV(random_avalue(rng, depth))


def random_avalue(rng: random.Random, depth: int = 6) -> AValue:
    r = rng.random()
    if depth <= 0 or r < 0.25:
        return NIL
    if r < 0.4:
        return NatV(rng.randrange(3))
    if r < 0.45:
        return UNIT
    return ConsV(random_tval(rng, depth - 2), random_tval(rng, depth - 1))
