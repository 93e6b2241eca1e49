import json
import subprocess
import sys

import pytest

from lazycost.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_unknown_subcommand(capsys):
    code, _, err = run(capsys, "frobnicate")
    assert code == 64 and "invalid choice" in err


def test_missing_argument(capsys):
    assert run(capsys, "check", "append")[0] == 64


def test_translate_pretty(capsys):
    code, out, _ = run(capsys, "translate", "append")
    assert code == 0 and "Definition append" in out and "tick" in out


def test_translate_json_feeds_eval(capsys, tmp_path):
    code, out, _ = run(capsys, "translate", "append", "--emit", "ir-json", "--ticks",
                       "simplified")
    assert code == 0
    f = tmp_path / "append.json"
    f.write_text(out)
    code, out, _ = run(capsys, "eval", str(f), "--input", "xs=[1,2]", "--input", "ys=[3]",
                       "--mode", "max")
    assert code == 0
    code, direct, _ = run(capsys, "eval", "append", "--ticks", "simplified", "--input", "xs=[1,2]",
                          "--input", "ys=[3]", "--mode", "max")
    assert out == direct


def test_eval_enumerate_json(capsys):
    code, out, _ = run(capsys, "eval", "hand:append", "--input", "xs=[1,2,3]",
                       "--input", "ys=[4]", "--json")
    data = json.loads(out)
    assert code == 0
    assert {o["cost"] for o in data["outcomes"]} == {1, 2, 3, 4}


def test_eval_min_with_demand(capsys):
    code, out, _ = run(capsys, "eval", "hand:append", "--input", "xs=[1,2,3]",
                       "--input", "ys=[4]", "--mode", "min", "--demand", "conses(2)")
    assert code == 0 and out.split()[0] == "2"


def test_eval_unmeetable_demand(capsys):
    code, out, _ = run(capsys, "eval", "hand:append", "--input", "xs=[]", "--input", "ys=[]",
                       "--mode", "min", "--demand", "conses(1)")
    assert code == 0 and "no execution" in out


def test_eval_budget(capsys):
    code, _, err = run(capsys, "eval", "hand:append_take", "--input", "n=4",
                       "--input", "xs=[1,2,3,4]", "--input", "ys=[5]", "--budget", "10")
    assert code == 2 and "budget" in err


@pytest.mark.parametrize("argv", [
    ["eval", "hand:append", "--input", "xs=[1"],
    ["eval", "hand:append", "--input", "xs=[1]"],
    ["eval", "hand:append", "--input", "xs=[1]", "--input", "ys=[]", "--input", "zs=[]"],
    ["eval", "hand:append", "--input", "xs", "--input", "ys=[]"],
    ["eval", "nosuchprogram"],
    ["eval", "hand:nosuch"],
    ["eval", "hand:append", "--input", "xs=[]", "--input", "ys=[]", "--demand", "cons("],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 64


def test_oracle_both(capsys):
    code, out, _ = run(capsys, "oracle", "append_take", "--input", "n=2",
                       "--input", "xs=[1,2,3]", "--input", "ys=[4]", "--json")
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "pass"
    assert data["min_cost"] == data["need"]["cost"] <= data["max_cost"]
    assert data["ccv"]["equal_to_enumeration"]


def test_oracle_unsatisfiable_demand(capsys):
    code, out, _ = run(capsys, "oracle", "append", "--input", "xs=[1]", "--input", "ys=[]",
                       "--demand", "conses(3)", "--which", "need", "--json")
    data = json.loads(out)
    assert code == 0 and data["min_cost"] is None and "error" in data["need"]


def test_oracle_needs_surface(capsys):
    assert run(capsys, "oracle", "hand:append")[0] == 64


def test_check_needs_surface(capsys):
    code = run(capsys, "check", "hand:append", "--mode", "pessimistic", "--cost", "[1, 9]")[0]
    assert code == 64


def test_check_surface_pessimistic(capsys, tmp_path):
    f = tmp_path / "prog.lz"
    f.write_text("main (xs : list nat) = cons 1 xs\n")
    code, out, _ = run(capsys, "check", str(f), "--mode", "pessimistic", "--cost", "[1, 1]",
                       "--value", "approx", "--json")
    data = json.loads(out)
    assert code == 0 and len(data) == 4 and all(d["verdict"] == "pass" for d in data)


def test_check_failure_exit(capsys):
    code, out, _ = run(capsys, "check", "append", "--mode", "pessimistic",
                       "--cost", "[0, 1]", "--grid", "xs=1,ys=1")
    assert code == 1 and "fail" in out


def test_check_optimistic_single_point(capsys):
    code, out, _ = run(capsys, "check", "append", "--mode", "optimistic", "--cost",
                       "[*, 2*|xs| + 2]", "--value", "exact", "--input", "xs=[1,2]",
                       "--input", "ys=[3]", "--json")
    data = json.loads(out)
    assert code == 0 and data[0]["witness"]["show"] == "[1, 2, 3]"


def test_check_bad_expression(capsys):
    assert run(capsys, "check", "append", "--mode", "optimistic", "--cost", "[0, zz]")[0] == 64
    assert run(capsys, "check", "append", "--mode", "optimistic", "--cost", "[0, x/2]")[0] == 64


def test_check_bad_grid(capsys):
    code = run(capsys, "check", "append", "--mode", "optimistic", "--cost", "[0, 9]",
               "--grid", "q=2")[0]
    assert code == 64


def test_case_study_json(capsys):
    code, out, _ = run(capsys, "case-study", "append_take", "--json", "--grid", "xs=3,ys=1,n=3")
    data = json.loads(out)
    assert code == 0 and all(d["verdict"] == "pass" for d in data)


def test_case_study_unknown(capsys):
    assert run(capsys, "case-study", "quicksort")[0] == 64


def test_validate_rules(capsys):
    code, out, _ = run(capsys, "validate-rules", "--trials", "50", "--json")
    data = json.loads(out)
    assert code == 0 and len(data) == 15
    weak = [d for d in data if d["rule"] == "weak-conjunction"]
    assert weak and weak[0]["expect_unsound"]


def test_validate_single_rule(capsys):
    code, out, _ = run(capsys, "validate-rules", "thunk", "--kind", "optimistic", "--trials", "20")
    assert code == 0 and "thunk" in out


def test_parse_error_is_usage(capsys, tmp_path):
    f = tmp_path / "bad.lz"
    f.write_text("main = let in\n")
    code, _, err = run(capsys, "eval", str(f))
    assert code == 64 and "1:" in err


def test_console_script_entry():
    r = subprocess.run([sys.executable, "-m", "lazycost.cli", "case-study", "foldl_vs_foldr",
                        "--grid", "xs=2"], capture_output=True, text=True)
    assert r.returncode == 0 and "pass" in r.stdout
