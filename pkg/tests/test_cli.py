import json

from gramcalc.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_family_text(capsys):
    code, out, _ = run_cli(capsys, "family", "deriv_P", "--n", "3")
    assert code == 0
    assert out.strip() == "6*x^4 + 8*x^2 + 2"


def test_family_seed(capsys):
    code, out, _ = run_cli(capsys, "family", "eulerian_biv", "--n", "0")
    assert code == 0 and out.strip() == "y"


def test_family_json(capsys):
    code, out, _ = run_cli(capsys, "family", "dumont", "--n", "1", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"vars": ["u", "v"], "terms": [{"coeff": "1", "exps": [1, 0]}]}


def test_family_bad_n(capsys):
    code, _, err = run_cli(capsys, "family", "dumont", "--n", "-1")
    assert code == 2
    assert "error" in err


def test_check_single_pass(capsys):
    code, out, _ = run_cli(capsys, "check", "gessel", "--max-n", "10", "--points", "x=3/4")
    assert code == 0
    assert out.startswith("pass gessel")


def test_check_unknown_exits_2(capsys):
    code, _, err = run_cli(capsys, "check", "nosuch")
    assert code == 2
    assert "unknown identity" in err


def test_check_all_small(capsys):
    from gramcalc.identities import IDENTITY_NAMES

    code, out, _ = run_cli(capsys, "check", "all", "--max-n", "4", "--oracle-max-n", "3")
    assert code == 0
    lines = [line for line in out.splitlines() if line.startswith("pass")]
    # exact count: a silently deregistered identity must fail this
    assert len(lines) == len(IDENTITY_NAMES) >= 30


def test_check_json_deterministic(capsys):
    code1, out1, _ = run_cli(capsys, "check", "springer", "--max-n", "5", "--format", "json")
    code2, out2, _ = run_cli(capsys, "check", "springer", "--max-n", "5", "--format", "json")
    assert code1 == code2 == 0
    payload1 = json.loads(out1)
    payload2 = json.loads(out2)
    for payload in (payload1, payload2):
        for report in payload:
            report.pop("millis")
    assert payload1 == payload2


def test_oracle_diff(capsys):
    code, out, _ = run_cli(capsys, "oracle", "deriv_Q", "--n", "2", "--diff")
    assert code == 0
    assert "2*x^2 + 1" in out
    assert "equal" in out


def test_oracle_plain(capsys):
    code, out, _ = run_cli(capsys, "oracle", "lr_peak_biv", "--n", "2")
    assert code == 0 and out.strip() == "2*x^2*y"


def test_oracle_bound_exceeded(capsys):
    code, _, err = run_cli(capsys, "oracle", "eulerian_biv", "--n", "10")
    assert code == 2
    assert "bound" in err


def test_oracle_bound_override_warns(capsys):
    code, out, err = run_cli(capsys, "trees", "tree_012", "--n", "10", "--count", "--bound", "10")
    assert code == 0
    assert out.strip() == "50521"
    assert "warning" in err


def test_label_commands(capsys):
    code, out, _ = run_cli(capsys, "label", "L", "314562")
    assert code == 0
    assert out.strip() == "0 x 3 x 1 y 4 y 5 x 6 x 2 x 0 | x^5*y^2"
    code, out, _ = run_cli(capsys, "label", "W", "1")
    assert out.strip() == "0 x 1 x 0 | x^2"
    code, out, _ = run_cli(capsys, "label", "M", "21")
    assert out.strip() == "0 x 2 y 1 x 0 | x^2*y"
    code, out, _ = run_cli(capsys, "label", "M", "2,1")
    assert out.strip() == "0 x 2 y 1 x 0 | x^2*y"


def test_label_invalid_permutation(capsys):
    code, _, err = run_cli(capsys, "label", "L", "122")
    assert code == 2


def test_series_elementary(capsys):
    code, out, _ = run_cli(capsys, "series", "tan", "--order", "5")
    assert code == 0
    assert [line.split(": ")[1] for line in out.strip().splitlines()] == [
        "0", "1", "0", "2", "0", "16"
    ]


def test_series_closed_form(capsys):
    code, out, _ = run_cli(capsys, "series", "hoffman_Q", "--order", "3")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[2].endswith("2*x^2 + 1")
    assert lines[3].endswith("6*x^3 + 5*x")


def test_series_radical_point(capsys):
    code, out, _ = run_cli(capsys, "series", "gessel_L", "--order", "2", "--at", "x=3/4")
    assert code == 0
    assert [line.split(": ")[1] for line in out.strip().splitlines()] == ["1", "1", "7/4"]


def test_series_invalid_witness_exits_2(capsys):
    code, _, err = run_cli(capsys, "series", "gessel_L", "--order", "2", "--at", "x=1/3")
    assert code == 2
    assert "rational square" in err


def test_series_family(capsys):
    code, out, _ = run_cli(capsys, "series", "deriv_Q", "--order", "3")
    assert code == 0
    assert out.strip().splitlines()[2].endswith("2*x^2 + 1")


def test_trees_listing(capsys):
    code, out, _ = run_cli(capsys, "trees", "jv_tree", "--n", "2")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 4
    assert all(json.loads(line) for line in lines)


def test_errata_output(capsys):
    code, out, _ = run_cli(capsys, "errata")
    assert code == 0
    assert "secant-table-n2" in out
    code, out, _ = run_cli(capsys, "errata", "--format", "json")
    entries = json.loads(out)
    assert {entry["id"] for entry in entries} >= {"secant-table-n2", "forest-table-n2"}


def test_byte_determinism(capsys):
    first = run_cli(capsys, "family", "eulerian_biv", "--n", "6", "--format", "json")
    second = run_cli(capsys, "family", "eulerian_biv", "--n", "6", "--format", "json")
    assert first == second
