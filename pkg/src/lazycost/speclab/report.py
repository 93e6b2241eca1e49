"""Rendering reports as JSON or as an aligned text table, and exit codes."""
from __future__ import annotations

import json
from collections.abc import Iterable

from ..values import show
from .checks import ABSTAIN, FAIL, SpecReport

EXIT_OK, EXIT_FAIL, EXIT_ABSTAIN, EXIT_USAGE = 0, 1, 2, 64


def exit_code(reports: Iterable) -> int:
    """A definite failure wins over an abstention."""
    verdicts = {_verdict(r) for r in reports}
    if FAIL in verdicts:
        return EXIT_FAIL
    if ABSTAIN in verdicts:
        return EXIT_ABSTAIN
    return EXIT_OK


def _verdict(r) -> str:
    if isinstance(r, SpecReport):
        return r.verdict
    return "pass" if r.passed else FAIL


def to_json(reports: Iterable, indent: int | None = 2) -> str:
    return json.dumps([r.to_json() for r in reports], indent=indent, sort_keys=False)


def _inputs(d: dict) -> str:
    return " ".join(f"{k}={v}" for k, v in d.items())


def _outcome(o) -> str:
    return "" if o is None else f"{show(o.value)} @ {o.cost}"


def _row(r) -> list[str]:
    if isinstance(r, SpecReport):
        extra = _outcome(r.witness) or _outcome(r.counterexample)
        if not extra and r.details:
            extra = " ".join(f"{k}={v}" for k, v in r.details.items())
        return [r.program, r.mode, _inputs(r.inputs), r.demand or "", r.predicate,
                r.verdict, extra]
    j = r.to_json()
    return [j["rule"], j["kind"], f"trials={j['trials']}", "",
            f"premises held {j['premises_held']}", "pass" if r.passed else FAIL,
            f"failures={j['failures']}"]


HEADER = ["program", "mode", "inputs", "demand", "claim", "verdict", "evidence"]


def format_table(reports: Iterable) -> str:
    rows = [HEADER] + [_row(r) for r in reports]
    widths = [max(len(row[i]) for row in rows) for i in range(len(HEADER) - 1)]
    lines = []
    for row in rows:
        cells = [c.ljust(w) for c, w in zip(row, widths)] + [row[-1]]
        lines.append("  ".join(cells).rstrip())
    lines.insert(1, "  ".join("-" * w for w in widths) + "  " + "-" * len(HEADER[-1]))
    return "\n".join(lines)


def summary(reports: list) -> str:
    counts: dict[str, int] = {}
    for r in reports:
        v = _verdict(r)
        counts[v] = counts.get(v, 0) + 1
    return ", ".join(f"{n} {v}" for v, n in sorted(counts.items()))
