"""End-to-end checks of the command-line surface.

Runs the entry point in-process; one subprocess test covers the module
runner wiring.  Exit codes: 0 ok, 1 bad input or domain error, 2 failing
fixture under the fixture and report verbs.
"""

import io
import json
import subprocess
import sys
from fractions import Fraction

from virlog.cli import main
from virlog.fixtures import FixtureResult
from virlog.modules import JordanVermaModule, shapovalov_determinant, shapovalov_matrix
from virlog.serialize import deserialize


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- documented invocations -------------------------------------------------


def test_fusion_logarithmic_case(capsys):
    code, out, _ = run(capsys, "fusion", "--c", "-2", "--h1", "-1/8", "--h2", "-1/8")
    assert code == 0
    doc = json.loads(out)
    assert doc["logarithmic"] is True
    assert doc["roots"] == [["0", 2]]


def test_det_symbolic_level3(capsys):
    code, out, _ = run(capsys, "det", "--level", "3", "--jordan", "2", "--symbolic")
    assert code == 0
    want = shapovalov_determinant(JordanVermaModule("c", "h", 2), 3)
    assert out.strip() == want.render()


def test_shapovalov_symbolic_level1(capsys):
    code, out, _ = run(
        capsys, "shapovalov", "--level", "1", "--jordan", "2", "--symbolic", "--json"
    )
    assert code == 0
    got = deserialize(out, "matrix")
    assert got == shapovalov_matrix(JordanVermaModule("c", "h", 2), 1)


def test_singular_and_radical_numeric(capsys):
    code, out, _ = run(
        capsys, "singular", "--c", "1", "--h", "1", "--level", "3", "--jordan", "2"
    )
    assert code == 0
    assert len(out.strip().splitlines()) == 2
    code, out, _ = run(
        capsys, "radical", "--c", "1", "--h", "1", "--level", "3", "--jordan", "2"
    )
    assert code == 0
    assert out.strip() == "2"


def test_hom_check_certifies(capsys):
    code, out, _ = run(capsys, "hom-check", "--c", "1", "--h", "1", "--level", "3")
    assert code == 0
    assert "certified: true" in out


def test_ope_coeff_and_degenerate_charge(capsys):
    code, out, _ = run(capsys, "ope-coeff", "--c", "3", "--h", "5/4")
    assert code == 0
    assert out.strip() == "5/6"
    code, _, err = run(capsys, "ope-coeff", "--c", "0", "--h", "1")
    assert code == 1
    assert "error" in err


def test_determine_b(capsys):
    code, out, _ = run(capsys, "determine-b", "--h", "5/8")
    assert code == 0
    assert out.strip() == "5/2"


def test_euler_solve_stdin(capsys, monkeypatch):
    doc = {
        "op": {
            "terms": [
                {"xpow": 0, "dorder": 2, "coeff": "1"},
                {"xpow": -1, "dorder": 1, "coeff": "3/2"},
                {"xpow": -2, "dorder": 0, "coeff": "-15/16"},
            ]
        },
        "rhs": {
            "terms": [
                {
                    "exponent": "-5/4",
                    "logpower": 0,
                    "coeff": {
                        "vars": ["b"],
                        "terms": [{"coeff": "2/3", "exps": [1]}],
                    },
                }
            ]
        },
    }
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(doc)))
    code, out, _ = run(capsys, "euler-solve")
    assert code == 0
    parsed = json.loads(out)
    assert parsed["particular"]["terms"][0]["exponent"] == "3/4"
    assert parsed["particular"]["terms"][0]["logpower"] == 1


# -- wlog verbs -------------------------------------------------------------


def test_wlog_bracket_render(capsys):
    code, out, _ = run(
        capsys, "wlog", "bracket", "-1:2", "1:-2", "--cocycle", "residue"
    )
    assert code == 0
    assert out.strip() == "2*t^(-1)(0) + 4*t^(0)(0) - b"


def test_wlog_cocycle_orientations(capsys):
    code, out, _ = run(capsys, "wlog", "cocycle", "-1:2", "0:-2")
    assert code == 0 and out.strip() == "-2/3"
    code, out, _ = run(
        capsys, "wlog", "cocycle", "-1:2", "0:-2", "--cocycle", "closed"
    )
    assert code == 0 and out.strip() == "2/3"
    code, out, _ = run(
        capsys, "wlog", "cocycle", "-1:2", "0:-2", "--cocycle", "none"
    )
    assert code == 0 and out.strip() == "0"


def test_wlog_cocycle_domain_error(capsys):
    code, _, err = run(
        capsys, "wlog", "cocycle", "3:0", "-1:0", "--cocycle", "closed"
    )
    assert code == 1
    assert "residue" in err


def test_wlog_vev(capsys):
    code, out, _ = run(capsys, "wlog", "vev", "-1:2", "0:-2")
    assert code == 0
    assert out.strip() == "-2/3*b"
    code, out, _ = run(capsys, "wlog", "vev")
    assert code == 0
    assert out.strip() == "1"


def test_wlog_jacobi(capsys):
    code, out, _ = run(capsys, "wlog", "jacobi", "--level", "1")
    assert code == 0
    assert "violations:" in out
    assert "checked: 165" in out


# -- contract plumbing ------------------------------------------------------


def test_unknown_verb_and_flag_exit_one(capsys):
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "det", "--level", "1", "--symbolic", "--bogus")[0] == 1
    assert run(capsys)[0] == 1
    assert run(capsys, "wlog")[0] == 1


def test_decimal_input_rejected(capsys):
    code, _, err = run(capsys, "ope-coeff", "--c", "0.5", "--h", "1")
    assert code == 1
    assert "rational" in err


def test_symbolic_excludes_numeric(capsys):
    code, _, err = run(
        capsys, "shapovalov", "--level", "1", "--symbolic", "--c", "1"
    )
    assert code == 1
    assert "symbolic" in err


def test_missing_numeric_parameters(capsys):
    assert run(capsys, "det", "--level", "2")[0] == 1
    assert run(capsys, "singular", "--level", "2", "--c", "1")[0] == 1


def test_help_exits_zero(capsys):
    assert run(capsys, "--help")[0] == 0


def test_out_file(tmp_path, capsys):
    target = tmp_path / "b.txt"
    code, out, _ = run(capsys, "determine-b", "--h", "5/8", "--out", str(target))
    assert code == 0
    assert out == ""
    assert target.read_text(encoding="utf-8") == "5/2\n"


def test_byte_determinism(capsys):
    argv = ["det", "--level", "3", "--jordan", "2", "--symbolic", "--json"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second
    argv = ["fusion", "--c", "1", "--h1", "1", "--h2", "1/4"]
    assert run(capsys, *argv) == run(capsys, *argv)


def test_fixture_listing_and_single_run(capsys):
    code, out, _ = run(capsys, "fixture")
    assert code == 0
    ids = out.strip().splitlines()
    assert "01-appendix-matrix" in ids and "09f-wlog-orientation" in ids
    code, out, _ = run(capsys, "fixture", "06b-determine-b", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["status"] == "pass"
    assert doc["provenance"] == "published"


def test_fixture_known_deviation_exits_zero(capsys):
    code, out, _ = run(capsys, "fixture", "09g-wlog-vertical-center", "--json")
    assert code == 0
    assert json.loads(out)["status"] == "known-deviation"


def test_unknown_fixture_exits_one(capsys):
    assert run(capsys, "fixture", "no-such-id")[0] == 1


def test_failing_fixture_exits_two(capsys, monkeypatch):
    def broken(fixture_id):
        return FixtureResult(fixture_id, "published", "fail", "x", "y", 0.0)

    monkeypatch.setattr("virlog.cli.run_fixture", broken)
    code, out, _ = run(capsys, "fixture", "01-appendix-matrix")
    assert code == 2
    assert "fail" in out


def test_module_runner_smoke():
    proc = subprocess.run(
        [sys.executable, "-m", "virlog", "determine-b", "--h", "5/8"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "5/2"
