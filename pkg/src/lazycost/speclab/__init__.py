"""Checking cost specifications by enumeration, rule validation, case studies."""
from .cases import CASES, GOLDEN, Grid, run_case_study
from .checks import (
    ABSTAIN, FAIL, PASS, VACUOUS, SpecReport, check_optimistic, check_pessimistic,
    compare_report, replay,
)
from .predicates import (
    And, AnyValue, Arg, Context, CostPredicate, Expr, ExprError, Fn, IsApprox, IsExact, Meets,
    Not, Table,
)
from .report import exit_code, format_table, summary, to_json
from .rules import KINDS, RULES, WEAK, RuleReport, validate_all, validate_rule

__all__ = [
    "ABSTAIN", "And", "AnyValue", "Arg", "CASES", "Context", "CostPredicate", "Expr",
    "ExprError", "FAIL", "Fn", "GOLDEN", "Grid", "IsApprox", "IsExact", "KINDS", "Meets", "Not",
    "PASS", "RULES", "RuleReport", "SpecReport", "Table", "VACUOUS", "WEAK", "check_optimistic",
    "check_pessimistic", "compare_report", "exit_code", "format_table", "replay",
    "run_case_study", "summary", "to_json", "validate_all", "validate_rule",
]
