import io
import json
import subprocess
import sys

import pytest

from spectralops.cli import EXIT_CHECK, EXIT_INPUT, EXIT_OK, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture(scope="module")
def reproduce_output():
    return run("reproduce")


def test_reproduce_passes(reproduce_output):
    code, text = reproduce_output
    assert code == EXIT_OK
    assert text.endswith("all checks passed\n")
    assert "A = 1" in text
    assert "P1 = (-2-sqrt(2):1, -1/2*sqrt(2):1)" in text
    assert "reference D(lambda2)[2,2]" in text


def test_reproduce_is_deterministic(reproduce_output):
    assert run("reproduce") == reproduce_output


def test_reproduce_quiet():
    code, text = run("reproduce", "--quiet")
    assert (code, text) == (EXIT_OK, "all checks passed\n")


def test_reproduce_scaled_session():
    code, text = run("--session", "sessions/scaled_gluing.yaml", "reproduce", "--quiet")
    assert code == EXIT_OK


def test_section_failure_exit_code(tmp_path):
    p = tmp_path / "s.yaml"
    p.write_text("p1: [1, 0]\np2: [0, 1]\nform: {alpha: 1, beta: 0, gamma: 0, delta: 0}\n")
    code, text = run("reproduce", "--session", str(p))
    assert code == EXIT_CHECK
    assert "section condition" in text and "FAIL" in text


def test_bad_session_exit_code(tmp_path, capsys):
    p = tmp_path / "s.yaml"
    p.write_text("p1: [1, 0]\np2: [2, 0]\nform: {alpha: 1, beta: 1, gamma: 0, delta: 1}\n")
    assert run("reproduce", "--session", str(p))[0] == EXIT_INPUT
    assert "p1 equals p2" in capsys.readouterr().err
    p.write_text("p1: [1, 0]\np2: [0, 1]\nform: {alpha: 1.5, beta: 1, gamma: 0, delta: 1}\n")
    assert run("reproduce", "--session", str(p))[0] == EXIT_INPUT
    assert "line 3" in capsys.readouterr().err
    assert run("reproduce", "--session", str(tmp_path / "missing.yaml"))[0] == EXIT_INPUT


def test_construct_named():
    code, text = run("construct", "--named", "lambda1")
    assert code == EXIT_OK
    assert text == "# D(lambda1)  eigen check: pass\nD[1,1] = 1/4*dx + 1/4*dy\nD[1,2] = 0\nD[2,1] = 0\nD[2,2] = 1/4*dx + 1/4*dy\n"


def test_construct_terms_matches_named():
    code, by_terms = run("construct", "--order", "2", "--term", "1,1,1", "--format", "json")
    assert code == EXIT_OK
    _, named = run("construct", "--named", "lambda3", "--format", "json")
    a, b = json.loads(by_terms), json.loads(named)
    assert a["entries"] == b["entries"] and a["eigen_check"] is True


def test_construct_full_method():
    assert run("construct", "--named", "lambda2", "--method", "full", "--quiet") == (EXIT_OK, "eigen check: pass\n")


def test_construct_input_errors():
    assert run("construct", "--named", "lambda9")[0] == EXIT_INPUT
    assert run("construct", "--term", "1,1,1")[0] == EXIT_INPUT
    assert run("construct", "--order", "1", "--term", "1,0,1")[0] == EXIT_INPUT  # does not descend
    assert run("construct", "--order", "1", "--term", "2,0,1")[0] == EXIT_INPUT
    assert run("construct", "--order", "1", "--term", "0,1,u")[0] == EXIT_INPUT


def test_emit_round_trip(tmp_path):
    _, doc = run("emit", "--named", "lambda4", "--format", "json")
    p = tmp_path / "d4.json"
    p.write_text(doc)
    code, text = run("emit", "--input", str(p))
    assert code == EXIT_OK
    _, direct = run("construct", "--named", "lambda4")
    assert direct.split("\n", 1)[1] == text


def test_verify_commute(tmp_path):
    code, text = run("verify-commute", "--named", "lambda1", "--named", "lambda2")
    assert code == EXIT_OK and text.endswith("all commute\n")
    _, doc = run("emit", "--named", "lambda3", "--format", "json")
    p = tmp_path / "d3.json"
    p.write_text(doc)
    assert run("verify-commute", "--named", "lambda4", "--operator", str(p))[0] == EXIT_OK
    assert run("verify-commute", "--named", "lambda4")[0] == EXIT_INPUT


def test_verify_commute_detects_failure(tmp_path):
    bump = {
        "schema": 1,
        "entries": [[[{"a": 0, "b": 0, "coefficient": {"num": [{"u": 1, "v": 0, "c": "1"}], "den": [{"u": 0, "v": 0, "c": "1"}]}}], []], [[], []]],
    }
    p = tmp_path / "bump.json"
    p.write_text(json.dumps(bump))
    code, text = run("verify-commute", "--named", "lambda1", "--operator", str(p))
    assert code == EXIT_CHECK and "FAIL" in text


def test_rank_table():
    code, text = run("rank", "--n-max", "5")
    assert code == EXIT_OK
    lines = text.splitlines()
    assert lines[0].split() == ["n", "rank", "expected", "match"]
    assert [line.split()[:3] for line in lines[1:]] == [[str(n), str(n * (n + 1)), str(n * (n + 1))] for n in range(1, 6)]
    assert run("rank", "--n-max", "0")[0] == EXIT_INPUT


def test_global_options_before_subcommand():
    assert run("--quiet", "reproduce") == (EXIT_OK, "all checks passed\n")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "spectralops", "rank", "--n-max", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and "✓" in proc.stdout
