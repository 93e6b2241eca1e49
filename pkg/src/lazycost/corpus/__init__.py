"""Built-in programs: surface files plus hand-written IR, and their input grids."""
from __future__ import annotations

import itertools
from functools import lru_cache
from importlib import resources

from ..approx import ConsP, NatP, NilP, PureValue, UnitP, exact_t, pure
from ..front import SurfaceProgram, load
from ..front.syntax import List, Nat, Ty, Unit
from . import handwritten

_PKG = "lazycost.corpus"


def surface_names() -> list[str]:
    return sorted(p.name[:-3] for p in (resources.files(_PKG) / "programs").iterdir()
                  if p.name.endswith(".lz"))


def surface_source(name: str) -> str:
    f = resources.files(_PKG) / "programs" / f"{name}.lz"
    if not f.is_file():
        raise KeyError(f"unknown surface program {name!r}; known: {surface_names()}")
    return f.read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def load_surface(name: str) -> SurfaceProgram:
    """Parsed, checked and A-normalized."""
    return load(surface_source(name), name)


def values_of(ty: Ty, max_len: int = 3, max_n: int = 3) -> list[PureValue]:
    """Small values of a first-order type, lists numbered 0, 1, 2, ..."""
    if isinstance(ty, Unit):
        return [UnitP()]
    if isinstance(ty, Nat):
        return [NatP(n) for n in range(max_n + 1)]
    if isinstance(ty, List) and isinstance(ty.elem, Nat):
        return [pure(list(range(k))) for k in range(max_len + 1)]
    if isinstance(ty, List) and isinstance(ty.elem, List):
        out = []
        for outer in range(min(max_len, 2) + 1):
            for inner in itertools.product(range(3), repeat=outer):
                counter = itertools.count()
                out.append(pure([[next(counter) for _ in range(k)] for k in inner]))
        return out
    raise ValueError(f"no grid for inputs of type {ty}")


def input_grid(p: SurfaceProgram, max_len: int = 3, max_n: int = 3) -> list[dict]:
    """Every combination of small pure inputs, in a fixed order."""
    names = [n for n, _ in p.inputs]
    choices = [values_of(ty, max_len, max_n) for _, ty in p.inputs]
    return [dict(zip(names, combo)) for combo in itertools.product(*choices)]


def exact_inputs(point: dict) -> dict:
    return {k: exact_t(v) for k, v in point.items()}


def list_input(n: int, start: int = 1) -> PureValue:
    """``[start, start+1, ...]`` of length n: distinct elements."""
    return pure(list(range(start, start + n)))


__all__ = [
    "ConsP", "NatP", "NilP", "exact_inputs", "handwritten", "input_grid", "list_input",
    "load_surface", "surface_names", "surface_source", "values_of",
]
