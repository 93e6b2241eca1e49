"""Pessimistic and optimistic checks by enumeration."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..approx import Demand, meets, show_demand
from ..clair import DEFAULT_BUDGET, BudgetExceeded, Outcome, enumerate_outcomes
from ..values import show, to_json
from .predicates import Context

PASS, FAIL, VACUOUS, ABSTAIN = "pass", "fail", "vacuous", "abstain"


@dataclass
class SpecReport:
    program: str
    mode: str  # pessimistic | optimistic | compare
    predicate: str
    verdict: str
    inputs: dict = field(default_factory=dict)
    demand: str | None = None
    witness: Outcome | None = None
    counterexample: Outcome | None = None
    outcomes: int | None = None      # after demand filtering
    branches: int | None = None      # before filtering
    budget: str = "complete"
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        """Vacuous passes count as passes; callers decide whether to care."""
        return self.verdict in (PASS, VACUOUS)

    def to_json(self) -> dict:
        def oc(o):
            return None if o is None else {"value": to_json(o.value), "show": show(o.value),
                                           "cost": o.cost}

        return {
            "program": self.program,
            "mode": self.mode,
            "inputs": self.inputs,
            "demand": self.demand,
            "predicate": self.predicate,
            "verdict": self.verdict,
            "witness": oc(self.witness),
            "counterexample": oc(self.counterexample),
            "outcomes": self.outcomes,
            "branches": self.branches,
            "budget": self.budget,
            "details": self.details,
        }


def _order(o: Outcome):
    return (o.cost, show(o.value))


def _outcomes(t, env, defs, budget):
    return enumerate_outcomes(t, env, defs, budget)


def check_pessimistic(t, env, r, *, defs=None, ctx: Context | None = None,
                      demand: Demand | None = None, budget: int = DEFAULT_BUDGET,
                      program: str = "", inputs: dict | None = None) -> SpecReport:
    """Every outcome (meeting ``demand``, if given) satisfies ``r``.

    No outcome at all makes the verdict ``vacuous``: it holds, but says
    nothing about any execution.
    """
    ctx = ctx or Context()
    rep = SpecReport(program, "pessimistic", r.describe(), ABSTAIN, dict(inputs or {}),
                     None if demand is None else show_demand(demand))
    try:
        outs = _outcomes(t, env, defs, budget)
    except BudgetExceeded:
        rep.budget = "exceeded"
        return rep
    rep.branches = len(outs)
    if demand is not None:
        outs = frozenset(o for o in outs if meets(demand, o.value))
    rep.outcomes = len(outs)
    bad = sorted((o for o in outs if not r.holds(o.value, o.cost, ctx)), key=_order)
    if bad:
        rep.verdict, rep.counterexample = FAIL, bad[0]
    elif not outs:
        rep.verdict = VACUOUS
    else:
        rep.verdict = PASS
    return rep


def check_optimistic(t, env, r, *, defs=None, ctx: Context | None = None,
                     demand: Demand | None = None, budget: int = DEFAULT_BUDGET,
                     program: str = "", inputs: dict | None = None) -> SpecReport:
    """Some outcome (meeting ``demand``, if given) satisfies ``r``; the
    cheapest such outcome is reported as the witness."""
    ctx = ctx or Context()
    rep = SpecReport(program, "optimistic", r.describe(), ABSTAIN, dict(inputs or {}),
                     None if demand is None else show_demand(demand))
    try:
        outs = _outcomes(t, env, defs, budget)
    except BudgetExceeded:
        rep.budget = "exceeded"
        return rep
    rep.branches = len(outs)
    if demand is not None:
        outs = frozenset(o for o in outs if meets(demand, o.value))
    rep.outcomes = len(outs)
    good = sorted((o for o in outs if r.holds(o.value, o.cost, ctx)), key=_order)
    if good:
        rep.verdict, rep.witness = PASS, good[0]
    else:
        rep.verdict = FAIL
    return rep


def replay(rep: SpecReport, t, env, r, *, defs=None, ctx: Context | None = None,
           budget: int = DEFAULT_BUDGET) -> bool:
    """Re-check a report's witness or counterexample against a fresh enumeration."""
    ctx = ctx or Context()
    outs = enumerate_outcomes(t, env, defs, budget)
    if rep.witness is not None:
        return rep.witness in outs and r.holds(rep.witness.value, rep.witness.cost, ctx)
    if rep.counterexample is not None:
        o = rep.counterexample
        return o in outs and not r.holds(o.value, o.cost, ctx)
    return True


def compare_report(program: str, claim: str, ok: bool, inputs: dict | None = None,
                   **details: Any) -> SpecReport:
    """A report for a relation between two numbers, not a single spec."""
    return SpecReport(program, "compare", claim, PASS if ok else FAIL, dict(inputs or {}),
                      details=details)
