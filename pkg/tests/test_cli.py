# The MIT License (MIT)
#
# Copyright (c) 2026, elliptic_gfn developers
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.


'''
Tests for the command line interface.
'''

import json
import os

import pytest

from elliptic_gfn.cli import main, parse_args
from elliptic_gfn.verification import CSV_COLUMNS


def run_json(capsys, args):
    status = main(args + ["--json"])
    return status, json.loads(capsys.readouterr().out)


def test_parse_defaults():
    args = parse_args(["verify"])
    assert args.output == "pretty"
    assert "e6-two-route" in args.suite
    assert args.s_grid == ["1/4", "1/2", "3/4", "1", "3/2"]
    args = parse_args(["g", "--model", "e6t", "--t", "0.3", "--json"])
    assert args.output == "json"
    assert args.t == "3/10"
    assert parse_args(["verify", "--csv"]).output == "csv"


@pytest.mark.parametrize("command", [
    ["g", "--model", "e6t", "--t", "0.3"], ["coxeter", "--group", "H3"],
    ["halphen"], ["getzler"]])
def test_csv_only_for_verify(command):
    with pytest.raises(SystemExit):
        parse_args(command + ["--csv"])


def test_bad_rational():
    with pytest.raises(SystemExit):
        parse_args(["invert", "--model", "e6t", "--t", "abc"])


def test_g_closed(capsys):
    status, out = run_json(capsys, ["g", "--model", "e6t", "--t", "0"])
    assert status == 0
    assert out["route"] == "closed"
    assert out["model"] == "E6t"
    assert out["precision_digits"] == 64
    assert float(out["value"]) == 0


def test_g_ring(capsys):
    status, out = run_json(capsys, ["g", "--model", "e6t", "--route", "ring",
                                    "--s", "1/2"])
    assert status == 0
    assert float(out["value"]) != 0


def test_invert(capsys):
    status, out = run_json(capsys, ["invert", "--model", "e7t", "--s",
                                    "1/2"])
    assert status == 0
    t = out["t"]
    status, out = run_json(capsys, ["invert", "--model", "e7t", "--t", t])
    assert abs(float(out["s"]) - 0.5) < 1e-12
    assert out["iterations"] <= 20


def test_coxeter_and_fold(capsys):
    status, out = run_json(capsys, ["coxeter", "--group", "H3"])
    assert status == 0
    assert out["log_kappa_coefficients"] == [[5, "-1/20"]]
    status, out = run_json(capsys, ["fold", "--system", "b3-11"])
    assert out["gamma"] == "-1/48"
    assert out["log_coefficients"]["kappa"] == "-1/48"


def test_table(capsys):
    status, out = run_json(capsys, ["table", "--model", "e6t", "--s", "1"])
    assert status == 0
    assert out["model"] == "E6t"
    assert len(out["c"]) == 8


def test_getzler(capsys, data_dir):
    path = os.path.join(data_dir, "a2_prepotential.json")
    status, out = run_json(capsys, ["getzler", "--prepotential", path,
                                    "--points", "2"])
    assert status == 0
    assert float(out["max_residual"]) < 1e-30
    status, out = run_json(capsys, ["getzler", "--g", "perturbed",
                                    "--points", "2"])
    assert float(out["max_residual"]) > 1e-6


def test_halphen(capsys):
    status, out = run_json(capsys, ["halphen", "--tau", "2i"])
    assert status == 0
    assert float(out["residual"]) < 1e-40


def test_verify_exit_codes(capsys):
    assert main(["verify", "--suite", "anomalies", "--suite",
                 "folding-table"]) == 0
    assert "PASS" in capsys.readouterr().out
    assert main(["verify", "--suite", "e6-two-route", "--tol", "1e-300",
                 "--s-grid", "1/2", "--csv"]) == 1
    out = capsys.readouterr().out
    assert out.splitlines()[0] == ",".join(CSV_COLUMNS)


def test_errors_exit_2(capsys):
    assert main(["g", "--model", "e7t", "--route", "ring", "--s", "1/2"]) == 2
    assert "error" in capsys.readouterr().err
    assert main(["coxeter", "--group", "X9"]) == 2
    assert main(["g", "--model", "e6t", "--precision", "10", "--t", "0"]) == 2


def test_precision_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("GFN_PRECISION", "80")
    status, out = run_json(capsys, ["g", "--model", "e6t", "--t", "0"])
    assert out["precision_digits"] == 80
