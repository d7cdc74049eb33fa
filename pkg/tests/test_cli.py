"""Command-line interface: document shape and exit codes."""

import json

import pytest

from hb.cli import EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, main


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, argv):
    code, out = run(capsys, argv)
    return code, json.loads(out)


def test_weyl_value_document(capsys):
    code, doc = run_json(capsys, ["building", "weyl", "--q", "2",
                                  "--k", "2,1,0"])
    assert code == EXIT_OK
    assert doc["tool"] == "hb"
    assert doc["op"] == "building.weyl"
    assert doc["result"] == -32
    assert doc["config"]["q"] == 2
    assert set(doc) >= {"version", "params", "diagnostics"}


def test_neighbors_count(capsys):
    code, doc = run_json(capsys, ["building", "neighbors", "--q", "3",
                                  "--r", "2"])
    assert code == EXIT_OK
    assert doc["result"]["count"] == 4
    assert doc["diagnostics"]["expected_count"] == 4


def test_delta_coeff(capsys):
    code, doc = run_json(capsys, ["delta", "coeff", "--q", "2", "--r", "2",
                                  "--a", "T", "--y", "3"])
    assert code == EXIT_OK
    assert doc["result"] == "9/4"


def test_eisenstein_anchor_match(capsys):
    code, doc = run_json(capsys, ["eisenstein", "eval", "--q", "2",
                                  "--n", "0,0", "--s", "2"])
    assert code == EXIT_OK
    assert doc["result"] == "64/15"
    assert doc["paper_expected"] == "64/15"
    assert doc["match"] is True
    assert doc["diagnostics"]["within_tail"] is True


def test_cusps_order_anchor(capsys):
    code, doc = run_json(capsys, ["cusps", "order", "--q", "3", "--r", "2",
                                  "--p", "T^3+T^2+2"])
    assert code == EXIT_OK
    assert doc["result"] == 13 and doc["match"] is True


def test_units_root_order(capsys):
    code, doc = run_json(capsys, ["units", "root-order", "--q", "3",
                                  "--r", "2", "--n", "T"])
    assert code == EXIT_OK
    assert doc["result"] == 2 * (3 - 1)
    assert doc["diagnostics"]["gcd_ok"] is True


def test_text_format(capsys):
    code, out = run(capsys, ["building", "weyl", "--q", "2", "--k", "1,0",
                             "--format", "text"])
    assert code == EXIT_OK
    assert out.strip() == "building.weyl: -4"


def test_usage_error_exit_code(capsys):
    code = main(["building", "weyl", "--q", "2"])  # missing --k
    assert code == EXIT_USAGE
    code = main(["nonsense"])
    assert code == EXIT_USAGE


def test_internal_error_exit_code(capsys):
    # reducible level for the cuspidal order -> exit 1, message on stderr
    code = main(["cusps", "order", "--q", "2", "--r", "2", "--p", "T^2+T"])
    err = capsys.readouterr().err
    assert code == 1
    assert "error" in err


def test_theta_eval_matrix_argument(capsys):
    code, doc = run_json(capsys, ["theta", "eval", "--q", "2", "--r", "2",
                                  "--n", "T", "--g", "1,0;0,1"])
    assert code == EXIT_OK
    assert doc["result"] == 2


def test_oracle_pdelta_check(capsys):
    code, doc = run_json(capsys, ["oracle", "pdelta", "--q", "2", "--r", "2",
                                  "--g", "T,0;0,1", "--deg-bound", "5",
                                  "--check"])
    assert code == EXIT_OK
    assert doc["result"] == -4
    assert doc["match"] is True
