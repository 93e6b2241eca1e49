"""lazycost: cost analysis of lazy programs.

Surface programs are parsed, type-checked and A-normalized (``front``), then
translated into a nondeterministic cost monad (``translate``) whose outcome
sets are computed by ``clair``.  ``oracle`` holds independent reference
semantics, ``approx`` the approximation order and demands, and ``speclab``
the specification checks and case studies.
"""
from .approx import FULL, WHNF, demand_conses, exact, exact_t, is_approx, less_defined, size_x
from .clair import Outcome, enumerate_outcomes, max_cost, min_cost, run_program, search_min
from .front import load
from .translate import float_ticks, translate_program

__version__ = "0.1.0"

__all__ = [
    "FULL", "Outcome", "WHNF", "demand_conses", "enumerate_outcomes", "exact", "exact_t",
    "float_ticks", "is_approx", "less_defined", "load", "max_cost", "min_cost", "run_program",
    "search_min", "size_x", "translate_program",
]
