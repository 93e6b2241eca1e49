"""Random semantic validation of the reasoning rules.

The last line is the optimistic conjunction rule with its pessimistic premise
weakened; it should come with a counterexample.

    python demos/validate_rules.py
"""
from lazycost.speclab import rules

for r in rules.validate_all(trials=300, seed=1):
    status = "ok" if r.passed else "FAILED"
    print(f"{r.rule:17} {r.kind:12} premises held {r.premises_held:3}  "
          f"failures {r.failures:3}  {status}")
    if r.expect_unsound and r.counterexample:
        print("  counterexample term:", r.counterexample)
