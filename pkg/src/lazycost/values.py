"""Runtime values of the clairvoyant evaluator.

Approximation values are constructor trees whose fields are thunks.  A thunk
is either ``ThunkV(v)`` or the ``UNDEFINED`` placeholder left behind by a
skipped computation.
"""
from __future__ import annotations

from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from typing import Any, Union


@dataclass(frozen=True)
class UndefinedV:
    def __repr__(self) -> str:
        return "UNDEFINED"


UNDEFINED = UndefinedV()


@dataclass(frozen=True)
class ThunkV:
    value: AValue


@dataclass(frozen=True)
class UnitV:
    def __repr__(self) -> str:
        return "UNIT"


UNIT = UnitV()


@dataclass(frozen=True)
class NatV:
    n: int


@dataclass(frozen=True)
class NilV:
    def __repr__(self) -> str:
        return "NIL"


NIL = NilV()


@dataclass(frozen=True)
class ConsV:
    head: TVal
    tail: TVal


@dataclass(frozen=True)
class ClosV:
    env: Env
    param: str
    body: Any  # an IrTerm; kept untyped to avoid an import cycle


AValue = Union[UnitV, NatV, NilV, ConsV, ClosV]
TVal = Union[ThunkV, UndefinedV]


class Env(Mapping):
    """Immutable, hashable name -> value mapping."""

    __slots__ = ("_d", "_hash")

    def __init__(self, items: Mapping | Iterator | tuple = ()) -> None:
        self._d = dict(items)
        self._hash: int | None = None

    def __getitem__(self, key: str) -> Any:
        return self._d[key]

    def __iter__(self):
        return iter(self._d)

    def __len__(self) -> int:
        return len(self._d)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._d.items()))
        return self._hash

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Env):
            return self._d == other._d
        return NotImplemented

    def __repr__(self) -> str:
        return f"Env({self._d!r})"

    def extend(self, name: str, value: Any) -> Env:
        d = dict(self._d)
        d[name] = value
        return Env(d)

    def update(self, pairs: Mapping) -> Env:
        d = dict(self._d)
        d.update(pairs)
        return Env(d)

    def restrict(self, names) -> Env:
        return Env({k: v for k, v in self._d.items() if k in names})


EMPTY_ENV = Env()


def list_value(elems) -> AValue:
    """Build a fully defined list approximation from AValues."""
    out: AValue = NIL
    for e in reversed(list(elems)):
        out = ConsV(ThunkV(e), ThunkV(out))
    return out


def is_total(v: AValue | TVal) -> bool:
    """True when no UNDEFINED occurs anywhere inside ``v``."""
    if isinstance(v, UndefinedV):
        return False
    if isinstance(v, ThunkV):
        return is_total(v.value)
    if isinstance(v, ConsV):
        return is_total(v.head) and is_total(v.tail)
    return True


def show(v: AValue | TVal) -> str:
    """Render in the literal syntax accepted by the demand parser."""
    if isinstance(v, UndefinedV):
        return "_"
    if isinstance(v, ThunkV):
        return show(v.value)
    if isinstance(v, UnitV):
        return "unit"
    if isinstance(v, NatV):
        return str(v.n)
    if isinstance(v, NilV):
        return "nil"
    if isinstance(v, ConsV):
        if is_total(v):
            items = []
            cur: AValue = v
            while isinstance(cur, ConsV):
                items.append(show(cur.head))
                cur = cur.tail.value  # type: ignore[union-attr]
            return "[" + ", ".join(items) + "]"
        return f"cons({show(v.head)}, {show(v.tail)})"
    if isinstance(v, ClosV):
        return f"<fun {v.param}>"
    raise TypeError(f"not a value: {v!r}")


def to_json(v: AValue | TVal) -> Any:
    """JSON-friendly tree used in reports."""
    if isinstance(v, UndefinedV):
        return None
    if isinstance(v, ThunkV):
        return to_json(v.value)
    if isinstance(v, UnitV):
        return {"unit": True}
    if isinstance(v, NatV):
        return v.n
    if isinstance(v, NilV):
        return []
    if isinstance(v, ConsV):
        return {"cons": [to_json(v.head), to_json(v.tail)]}
    if isinstance(v, ClosV):
        return {"closure": v.param}
    raise TypeError(f"not a value: {v!r}")
