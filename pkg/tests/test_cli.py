import io
import json
import subprocess
import sys

import pytest

from linkcalc.cli import main
from linkcalc.corpus import CORPUS


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_trivial_unlink3(capsys):
    code, out = run_json(capsys, "trivial", "corpus:unlink3")
    assert code == 0 and out["kind"] == "Trivial"


def test_classify_hopf_json(capsys):
    code, out = run_json(capsys, "classify", "corpus:hopf")
    assert code == 0
    assert out["homologically_trivial"] is False
    assert out["htb"] == "refuted"
    assert {"homologically_trivial", "brunnian", "htb", "trivial", "trace"} <= set(out)


def test_small_budget_is_exit_two(capsys):
    code, out = run_json(capsys, "trivial", "corpus:borromean", "--max-nodes", "1000")
    assert code == 2 and out["kind"] == "Inconclusive" and "report" in out


def test_nontrivial_carries_a_witness(capsys):
    code, out = run_json(capsys, "trivial", "corpus:hopf")
    assert code == 0 and out["witness"]["value"] in (1, -1)
    code, text, _ = run(capsys, "trivial", "corpus:chain4")
    assert code == 0 and "components 1,4" in text


@pytest.mark.parametrize(
    "argv",
    [
        ["validate", "corpus:trefoil"],
        ["invariants", "corpus:borromean"],
        ["moves", "corpus:hopf"],
        ["moves", "corpus:hopf", "--apply", "0"],
        ["reduce", "corpus:double-kink"],
        ["reduce", "corpus:whitehead", "--target", "bundled", "--component", "2"],
        ["unknot", "corpus:kink"],
        ["twist", "corpus:key-chain", "--component", "3", "--q", "2"],
        ["twist", "corpus:key-chain", "--component", "3", "--keep"],
        ["slopes", "corpus:borromean-bundled", "--slopes", "1/1,*,inf"],
        ["corpus", "list"],
        ["corpus", "show", "hopf"],
    ],
)
def test_definite_commands_exit_zero_in_both_formats(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    code, out = run_json(capsys, *argv)
    assert code == 0 and isinstance(out, dict)


def test_inconclusive_commands_exit_two(capsys):
    assert run(capsys, "unknot", "corpus:trefoil", "--max-crossings", "5")[0] == 2
    assert run(capsys, "reduce", "corpus:trefoil", "--max-crossings", "4")[0] == 2
    assert run(capsys, "slopes", "corpus:borromean", "--slopes", "1/1,*,*")[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["frobnicate"],
        ["validate"],
        ["validate", "/nonexistent/file.pd"],
        ["validate", "corpus:nope"],
        ["twist", "corpus:hopf"],
        ["twist", "corpus:hopf", "--component", "7"],
        ["slopes", "corpus:hopf", "--slopes", "2/3,*"],
        ["unknot", "corpus:hopf"],
        ["moves", "corpus:hopf", "--apply", "999"],
        ["trivial", "corpus:hopf", "--max-nodes", "0"],
        ["corpus", "show", "nope"],
    ],
)
def test_errors_exit_one(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1
    assert err


def test_file_and_stdin_inputs(tmp_path, capsys, monkeypatch):
    path = tmp_path / "k.pd"
    path.write_text(CORPUS["trefoil"].pd)
    code, out = run_json(capsys, "invariants", str(path))
    assert code == 0 and out["writhe"] == 3
    monkeypatch.setattr(sys, "stdin", io.StringIO(CORPUS["hopf"].pd))
    code, out = run_json(capsys, "validate", "-")
    assert code == 0 and out["components"] == 2
    path.write_text("X[1,2,3]")
    assert run(capsys, "validate", str(path))[0] == 1


def test_json_diagram_input(tmp_path, capsys):
    code, out = run_json(capsys, "moves", "corpus:hopf", "--apply", "0")
    path = tmp_path / "d.json"
    path.write_text(json.dumps(out["diagram"]))
    code, inv = run_json(capsys, "invariants", str(path))
    assert code == 0 and inv["crossings"] == 3


def test_trace_file(tmp_path, capsys):
    path = tmp_path / "trace.jsonl"
    code, out, _ = run(capsys, "reduce", "corpus:trefoil", "--max-crossings", "5", "--trace", str(path))
    lines = [json.loads(l) for l in path.read_text().splitlines()]
    assert code == 2 and len(lines) == 174


def test_corpus_entries_all_validate(capsys):
    for name in CORPUS:
        assert run(capsys, "validate", f"corpus:{name}")[0] == 0


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "linkcalc", "trivial", "corpus:unlink2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and "Trivial" in proc.stdout
