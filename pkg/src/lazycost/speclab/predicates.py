"""Decidable predicates over (value, cost) outcomes.

A ``CostPredicate`` combines a value condition with an interval on the cost
and optional extra comparisons.  Bounds are arithmetic expressions over the
inputs::

    n, |xs|, sizeX0(xs), sizeX1(result), max(a, b), min(a, b), +, -, *

``|xs|`` is the length of the pure input; ``sizeX0``/``sizeX1`` measure
approximations (inputs or ``result``).
"""
from __future__ import annotations

import ast
import re
from dataclasses import dataclass, field
from typing import Any, Protocol

from ..approx import (
    FULL, Demand, NatP, PureValue, exact, exact_t, is_approx, meets, pure_length, show_demand,
    size_x,
)
from ..values import ThunkV, UndefinedV, show


class Predicate(Protocol):
    def holds(self, value, cost: int, ctx: "Context") -> bool: ...

    def describe(self) -> str: ...


@dataclass(frozen=True)
class Arg:
    """An input as seen by expressions: its pure value and its approximation."""

    pure: PureValue | None
    approx: Any = None


@dataclass
class Context:
    """What a predicate may refer to besides the outcome itself."""

    args: dict = field(default_factory=dict)   # name -> Arg | int
    pure_result: PureValue | None = None

    @classmethod
    def of(cls, pure_inputs: dict | None = None, approx_inputs: dict | None = None,
           pure_result: PureValue | None = None) -> "Context":
        pure_inputs = dict(pure_inputs or {})
        approx_inputs = dict(approx_inputs or {})
        args: dict = {}
        for name in set(pure_inputs) | set(approx_inputs):
            p = pure_inputs.get(name)
            if isinstance(p, NatP):
                args[name] = p.n
            else:
                a = approx_inputs.get(name)
                if a is None and p is not None:
                    a = exact_t(p)
                args[name] = Arg(p, a)
        return cls(args, pure_result)


# -- expressions ------------------------------------------------------------

class ExprError(ValueError):
    pass


_ALLOWED_FUNCS = {"len", "sizeX0", "sizeX1", "max", "min"}


def _approx_of(a) -> Any:
    if isinstance(a, Arg):
        return a.approx if a.approx is not None else exact_t(a.pure)
    raise ExprError("sizeX expects a list argument")


def _len(a) -> int:
    if isinstance(a, Arg):
        if a.pure is not None:
            return pure_length(a.pure)
        return size_x(0, a.approx)
    raise ExprError("|.| expects a list argument")


_FUNCS = {
    "len": _len,
    "sizeX0": lambda a: size_x(0, _approx_of(a)),
    "sizeX1": lambda a: size_x(1, _approx_of(a)),
    "max": max,
    "min": min,
}

_BAR = re.compile(r"\|\s*([A-Za-z_][A-Za-z0-9_']*)\s*\|")


@dataclass(frozen=True)
class Expr:
    """A whitelisted arithmetic (or comparison) expression."""

    text: str
    tree: Any = field(compare=False, repr=False, default=None)

    @classmethod
    def parse(cls, text: str) -> "Expr":
        src = _BAR.sub(r"len(\1)", str(text)).replace("'", "_q")
        try:
            tree = ast.parse(src.strip(), mode="eval")
        except SyntaxError as e:
            raise ExprError(f"cannot parse {text!r}: {e.msg}") from None
        _validate(tree.body, text)
        return cls(str(text), tree)

    def names(self) -> set[str]:
        return {n.id for n in ast.walk(self.tree) if isinstance(n, ast.Name)} - _ALLOWED_FUNCS

    def eval(self, env: dict):
        return _eval(self.tree.body, env, self.text)

    def __str__(self) -> str:
        return self.text


_BINOPS = {ast.Add: lambda a, b: a + b, ast.Sub: lambda a, b: a - b,
           ast.Mult: lambda a, b: a * b}
_CMPOPS = {ast.Eq: lambda a, b: a == b, ast.NotEq: lambda a, b: a != b,
           ast.Lt: lambda a, b: a < b, ast.LtE: lambda a, b: a <= b,
           ast.Gt: lambda a, b: a > b, ast.GtE: lambda a, b: a >= b}


def _validate(node, text: str) -> None:
    if isinstance(node, ast.Constant) and isinstance(node.value, int) \
            and not isinstance(node.value, bool):
        return
    if isinstance(node, ast.Name):
        return
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        _validate(node.left, text)
        _validate(node.right, text)
        return
    if isinstance(node, ast.Compare) and all(type(o) in _CMPOPS for o in node.ops):
        _validate(node.left, text)
        for c in node.comparators:
            _validate(c, text)
        return
    if isinstance(node, ast.BoolOp) and isinstance(node.op, ast.And):
        for v in node.values:
            _validate(v, text)
        return
    if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
            and node.func.id in _ALLOWED_FUNCS and not node.keywords):
        for a in node.args:
            _validate(a, text)
        return
    raise ExprError(f"unsupported syntax in {text!r}: {ast.unparse(node)!r}")


def _eval(node, env: dict, text: str):
    if isinstance(node, ast.Constant):
        return node.value
    if isinstance(node, ast.Name):
        key = node.id.replace("_q", "'")
        if key not in env:
            raise ExprError(f"unknown name {key!r} in {text!r}")
        return env[key]
    if isinstance(node, ast.BinOp):
        return _BINOPS[type(node.op)](_eval(node.left, env, text), _eval(node.right, env, text))
    if isinstance(node, ast.Compare):
        left = _eval(node.left, env, text)
        for op, c in zip(node.ops, node.comparators):
            right = _eval(c, env, text)
            if not _CMPOPS[type(op)](left, right):
                return False
            left = right
        return True
    if isinstance(node, ast.BoolOp):
        return all(_eval(v, env, text) for v in node.values)
    if isinstance(node, ast.Call):
        return _FUNCS[node.func.id](*(_eval(a, env, text) for a in node.args))
    raise ExprError(f"cannot evaluate {text!r}")


def _expr_env(value, ctx: Context) -> dict:
    env = dict(ctx.args)
    res = value if isinstance(value, (ThunkV, UndefinedV)) else ThunkV(value)
    env["result"] = Arg(None, res)
    return env


# -- value conditions -------------------------------------------------------

@dataclass(frozen=True)
class AnyValue:
    def holds(self, value, ctx: Context) -> bool:
        return True

    def describe(self) -> str:
        return "any"


@dataclass(frozen=True)
class IsApprox:
    """``result`` approximates ``target`` (default: the pure result)."""

    target: PureValue | None = None

    def holds(self, value, ctx: Context) -> bool:
        p = self.target if self.target is not None else ctx.pure_result
        if p is None:
            raise ValueError("is_approx needs a pure result")
        return is_approx(value, p)

    def describe(self) -> str:
        return "is_approx " + (show(exact(self.target)) if self.target is not None else "pure")


@dataclass(frozen=True)
class IsExact:
    target: PureValue | None = None

    def holds(self, value, ctx: Context) -> bool:
        p = self.target if self.target is not None else ctx.pure_result
        if p is None:
            raise ValueError("exact needs a pure result")
        return value == exact(p)

    def describe(self) -> str:
        return "= exact " + (show(exact(self.target)) if self.target is not None else "pure")


@dataclass(frozen=True)
class Meets:
    demand: Demand = FULL

    def holds(self, value, ctx: Context) -> bool:
        return meets(self.demand, value)

    def describe(self) -> str:
        return f"meets {show_demand(self.demand)}"


ValueCond = AnyValue | IsApprox | IsExact | Meets


@dataclass(frozen=True)
class CostPredicate:
    value: Any = AnyValue()
    lo: Expr | None = None
    hi: Expr | None = None
    where: tuple[Expr, ...] = ()

    @classmethod
    def make(cls, value: Any = None, lo=None, hi=None, where=()) -> "CostPredicate":
        def ex(x):
            return None if x is None else (x if isinstance(x, Expr) else Expr.parse(str(x)))

        return cls(value or AnyValue(), ex(lo), ex(hi), tuple(ex(w) for w in where))

    @classmethod
    def interval(cls, text: str, value: Any = None, where=()) -> "CostPredicate":
        """Parse ``[lo, hi]``; either side may be empty or ``*`` for unbounded."""
        s = text.strip()
        if not (s.startswith("[") and s.endswith("]")):
            raise ExprError(f"cost interval must look like [lo, hi], got {text!r}")
        parts = _split_top(s[1:-1])
        if len(parts) != 2:
            raise ExprError(f"cost interval needs exactly two bounds, got {text!r}")
        lo, hi = (None if p.strip() in ("", "*") else p.strip() for p in parts)
        return cls.make(value, lo, hi, where)

    def holds(self, value, cost: int, ctx: Context) -> bool:
        if not self.value.holds(value, ctx):
            return False
        env = None
        if self.lo is not None or self.hi is not None or self.where:
            env = _expr_env(value, ctx)
        if self.lo is not None and cost < self.lo.eval(env):
            return False
        if self.hi is not None and cost > self.hi.eval(env):
            return False
        return all(w.eval(env) for w in self.where)

    def describe(self) -> str:
        parts = []
        if not isinstance(self.value, AnyValue):
            parts.append(self.value.describe())
        if self.lo is not None or self.hi is not None:
            parts.append(f"cost in [{self.lo if self.lo is not None else '*'}, "
                         f"{self.hi if self.hi is not None else '*'}]")
        parts.extend(str(w) for w in self.where)
        return " and ".join(parts) or "true"


def _split_top(s: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return parts


# -- combinators ------------------------------------------------------------

@dataclass(frozen=True)
class Not:
    inner: Any

    def holds(self, value, cost: int, ctx: Context) -> bool:
        return not self.inner.holds(value, cost, ctx)

    def describe(self) -> str:
        return f"not ({self.inner.describe()})"


@dataclass(frozen=True)
class And:
    left: Any
    right: Any

    def holds(self, value, cost: int, ctx: Context) -> bool:
        return self.left.holds(value, cost, ctx) and self.right.holds(value, cost, ctx)

    def describe(self) -> str:
        return f"({self.left.describe()}) and ({self.right.describe()})"


@dataclass(frozen=True)
class Table:
    """An explicit finite relation; used for randomized rule checking."""

    pairs: frozenset
    name: str = "r"

    def holds(self, value, cost: int, ctx: Context | None = None) -> bool:
        return (value, cost) in self.pairs

    def describe(self) -> str:
        return f"{self.name} ({len(self.pairs)} pairs)"


@dataclass(frozen=True)
class Fn:
    """Wrap a Python callable ``f(value, cost) -> bool``."""

    f: Any
    name: str = "fn"

    def holds(self, value, cost: int, ctx: Context | None = None) -> bool:
        return bool(self.f(value, cost))

    def describe(self) -> str:
        return self.name
