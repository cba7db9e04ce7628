import json
import subprocess
import sys

import pytest

from recurrent_aft.cli import CliConfig, main, run
from recurrent_aft.selftest import golden_path


def path(name):
    return str(golden_path(name))


def test_lfp(capsys):
    assert main(["lfp", path("ex1.kb")]) == 0
    assert capsys.readouterr().out.splitlines()[-1] == "least stable fixpoint: T={a'} P={a'}"


def test_enumerate(capsys):
    assert main(["enumerate", path("ex1_rule4.kb")]) == 0
    out = capsys.readouterr().out
    assert out.startswith("3 stable fixpoints") and out.count("model=yes") == 2


def test_enumerate_all(capsys):
    assert main(["enumerate", path("ex1_rule4.kb"), "--all"]) == 0
    assert capsys.readouterr().out.startswith("4 stable fixpoints")


def test_check(capsys):
    assert main(["check", path("ex1_rule4.kb"), "--T=a,b", "--P=a,b"]) == 0
    assert "model: yes" in capsys.readouterr().out


def test_check_unknown_atom(capsys):
    assert main(["check", path("ex1_rule4.kb"), "--T=z", "--P=a"]) == 2
    err = capsys.readouterr().err
    assert "[check]" in err and "unknown atom" in err


def test_check_needs_atoms():
    code, out = run(CliConfig("check", path("ex1.kb"), t="a"))
    assert code == 2 and "--P" in out


def test_trace_json(capsys):
    assert main(["trace", path("ex1.kb"), "--format", "json"]) == 0
    assert "inner" in json.loads(capsys.readouterr().out)


def test_filter_and_legacy(capsys):
    assert main(["lfp", path("ex1.kb"), "--legacy"]) == 0
    assert capsys.readouterr().out.splitlines()[-1].endswith("T={} P={a,a'}")
    assert main(["lfp", path("ex3.kb"), "--filter", "subsets:2"]) == 0


def test_bad_filter():
    code, out = run(CliConfig("lfp", path("ex1.kb"), filter="subsets:-2"))
    assert code == 2 and "non-negative" in out


def test_nonconvergence_exit_code(monkeypatch):
    from recurrent_aft import cli
    from recurrent_aft.errors import NonConvergence

    def give_up(*args, **kwargs):
        raise NonConvergence("no fixpoint after 3 iterations")

    monkeypatch.setattr(cli, "compute_lfp", give_up)
    code, out = run(CliConfig("lfp", path("ex1.kb")))
    assert code == 1 and out.startswith("error [least fixpoint]")


def test_parse_error(tmp_path):
    kb = tmp_path / "bad.kb"
    kb.write_text("%rules\na :- X.\n")
    code, out = run(CliConfig("lfp", str(kb)))
    assert code == 2 and out.startswith("error [parse]") and "line 2" in out


def test_missing_file(tmp_path):
    code, out = run(CliConfig("lfp", str(tmp_path / "nope.kb")))
    assert code == 2 and out.startswith("error [read]")


def test_too_large(tmp_path):
    kb = tmp_path / "big.kb"
    kb.write_text("%rules\n" + "".join(f"p{i}.\n" for i in range(5)))
    code, out = run(CliConfig("enumerate", str(kb), cap=4))
    assert code == 1 and out.startswith("error [enumerate]")


def test_selftest(capsys):
    assert main(["selftest"]) == 0
    assert capsys.readouterr().out.splitlines()[-1].endswith("0 failed")


def test_usage_error():
    with pytest.raises(SystemExit) as err:
        main([])
    assert err.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "recurrent_aft", "lfp", path("ex1.kb")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "T={a'} P={a'}" in proc.stdout
