import io
import json
import subprocess
import sys

import pytest

from starpi.cli import main, run
from starpi.parse import parse_poly


def test_ut4_refutation_prints_witness():
    code, rep, human = run(["check", "--algebra", "UT4", "[y1,z1][y2,z2][y3,z3]"])
    assert code == 1 and rep["is_identity"] is False
    assert set(rep["witness"]) == {"z1", "z2", "z3", "y1", "y2", "y3"}
    assert "NOT" in human


def test_identity_on_A():
    code, rep, _ = run(["check", "--algebra", "A", "[y1,z1][y2,z2][y3,z3]"])
    assert code == 0 and rep["is_identity"] is True


def test_expression_from_stdin():
    code, rep, _ = run(["check"], stdin=io.StringIO("[y1,y2][y3,y4][y5,y6]\n"))
    assert code == 0 and rep["algebra"] == "A"


def test_theorem_report():
    code, rep, _ = run(["theorem", "--sym", "4", "--skew", "0"])
    assert code == 0
    assert rep["equal"] is True and rep["dim_ideal"] == rep["dim_kernel"] == 4


def test_dims_and_enumerate():
    code, rep, _ = run(["dims", "--algebra", "B", "--sym", "4"])
    assert code == 0 and rep["dim_kernel"] == 6 and rep["dim_space"] == 24
    code, rep, _ = run(["enumerate", "omega_y", "--sym", "4"])
    assert code == 0 and rep["count"] == 2
    assert {parse_poly(t) for t in rep["items"]} == {parse_poly("[y4,y3][y2,y1]"), parse_poly("[y4,y2][y3,y1]")}


def test_reduce():
    code, rep, _ = run(["reduce", "[y2,y1][y4,y3]"])
    assert code == 0 and rep["canonical"] == [{"coeff": "1", "shape": "[y4,y3][y2,y1]"}]
    code, rep, _ = run(["reduce", "y2 y1"])
    assert code == 0 and rep["canonical"] is None and len(rep["proper_decomposition"]) == 2


@pytest.mark.parametrize("argv", [
    ["check", "[y1]"],
    ["check", "--algebra", "C", "y1"],
    ["theorem", "--sym", "7"],
    ["theorem", "--sym", "3", "--max-degree", "2"],
    ["enumerate", "omega_z", "--sym", "3"],
    ["frobnicate"],
    [],
])
def test_usage_errors(argv):
    code, rep, _ = run(argv)
    assert code == 2 and "error" in rep


def test_bound_message_names_flag():
    _, rep, human = run(["theorem", "--sym", "7"])
    assert "--max-degree" in rep["message"] and "--max-degree" in human


def test_exit_code_independent_of_jobs():
    a = run(["theorem", "--sym", "2", "--skew", "2", "--jobs", "1"])
    b = run(["theorem", "--sym", "2", "--skew", "2", "--jobs", "2"])
    assert a[0] == b[0] and a[1] == b[1]


def test_main_prints_json(capsys):
    assert main(["check", "--algebra", "UT2", "[y1,y2]"]) == 0
    out = capsys.readouterr()
    assert json.loads(out.out)["is_identity"] is True
    assert "identity" in out.err


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "starpi.cli", "check", "--algebra", "UT4", "[y1,z1][y2,z2][y3,z3]"],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["value"] == "-2"
