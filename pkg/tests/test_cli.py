import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from flucid import pipelined
from flucid.cli import EXIT_EVAL, EXIT_OK, EXIT_PARSE, Repl, main, parse_bindings, parse_window
from flucid.values import BoundedStream

FIXTURES = Path(__file__).parent / "fixtures"


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_run_expression(capsys):
    assert run(capsys, "run", "-e", "#.d where dimension d end") == (EXIT_OK, "0\n", "")


def test_run_stream_window(capsys):
    status, out, _ = run(capsys, "run", str(FIXTURES / "upon.fl"), "--stream", "d", "--window", "0..10")
    assert status == EXIT_OK and out == "1 2 2 2 3 3 3 4 5 5\n"
    _, out, _ = run(capsys, "run", str(FIXTURES / "upon.fl"), "--stream", "d", "--window", "0..14")
    assert out.split()[-1] == "eod"


def test_run_with_context(capsys):
    _, out, _ = run(capsys, "run", str(FIXTURES / "raining.fl"), "--ctx", "city=2,day=4")
    assert out == "T\n"


def test_run_trace(capsys):
    status, out, _ = run(capsys, "run", "-e", "X where dimension d; X = #.d end", "--trace")
    lines = out.splitlines()
    assert status == EXIT_OK
    assert lines[0].startswith("Q_dim") and lines[-1] == "0"
    _, out, _ = run(capsys, "run", "-e", "1 + 2", "--trace-json")
    tree = json.loads(out[: out.rindex("]") + 1])
    assert tree[0]["rule"] == "E_op" and len(tree[0]["children"]) == 2


@pytest.mark.parametrize(
    "argv, status",
    [
        (["run", "-e", "x +"], EXIT_PARSE),
        (["run", "-e", "@{"], EXIT_PARSE),
        (["run", "-e", "1 / 0"], EXIT_EVAL),
        (["run", "-e", "nope"], EXIT_EVAL),
        (["run", "-e", "X where X = next X end", "--depth", "500"], EXIT_EVAL),
        (["run", "/no/such/file.fl"], EXIT_PARSE),
    ],
)
def test_run_failures(capsys, argv, status):
    code, out, err = run(capsys, *argv)
    assert code == status
    assert out == "" and err


def test_malformed_file(tmp_path, capsys):
    bad = tmp_path / "bad.fl"
    bad.write_text("x where y = end")
    code, _, err = run(capsys, "run", str(bad))
    assert code == EXIT_PARSE and "1:13" in err


def test_check(capsys):
    status, out, _ = run(capsys, "check", "--only", "table1")
    assert status == EXIT_OK
    assert all(line.startswith(("ok", "note")) for line in out.splitlines()[:-1])
    assert out.splitlines()[-1].endswith("0 failed")


def test_check_default_seed_passes(capsys):
    status, out, _ = run(capsys, "check", "--cases", "100")
    assert status == EXIT_OK and "FAIL" not in out


def test_check_catches_injected_bug(capsys, monkeypatch):
    real = pipelined.p_upon
    monkeypatch.setattr(pipelined, "p_upon", lambda x, y: BoundedStream(real(x, y).elements[1:]))
    status, out, _ = run(capsys, "check", "--only", "propositions,table1", "--cases", "50")
    assert status != EXIT_OK
    assert "FAIL pipelined = indexed: upon" in out and "counterexample" in out


def test_check_unknown_suite(capsys):
    assert run(capsys, "check", "--only", "nope")[0] == EXIT_PARSE


def test_dump_ast(capsys):
    status, out, _ = run(capsys, "dump-ast", "-e", "second X")
    assert status == EXIT_OK and out.splitlines()[0] == "UnOp second"
    _, out, _ = run(capsys, "dump-ast", "-e", "second X", "--desugared")
    assert out.splitlines()[:2] == ["UnOp first.d", "  UnOp next.d"]
    assert run(capsys, "dump-ast", "-e", "(")[0] == EXIT_PARSE


def test_argument_parsers():
    assert parse_bindings("d=3, e=0") == {"d": 3, "e": 0}
    assert parse_window("2..5") == (2, 5)
    with pytest.raises(Exception):
        parse_bindings("d")
    with pytest.raises(Exception):
        parse_window("5..2")


def test_repl_session():
    out, err = io.StringIO(), io.StringIO()
    repl = Repl(out=out, err=err)
    script = ["dimension d", "#.d", "x = #.d * 2", ":ctx d=3", "x", ":trace on", "1", "oops +", ":q", "never"]
    status = repl.loop(io.StringIO("\n".join(script) + "\n"))
    assert status == EXIT_OK
    lines = out.getvalue().splitlines()
    assert lines[:5] == ["defined d", "0", "defined x", "[d:3]", "6"]
    assert lines[-1] == "1" and lines[-2].startswith("E_cid")
    assert "syntax error" in err.getvalue()


def test_repl_rejects_undeclared_dimension():
    out, err = io.StringIO(), io.StringIO()
    repl = Repl(out=out, err=err)
    repl.handle(":ctx zz=1")
    assert "not a declared dimension" in err.getvalue()


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "flucid", "run", "-e", "6 * 7"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "42\n"
