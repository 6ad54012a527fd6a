import io
import json
import sys

import pytest

from folkman.canon import canonical_g6
from folkman.cli import main
from folkman.graph import complement, complete, cycle
from folkman.graph6 import encode


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_complete7(capsys):
    code, out, _ = run(capsys, "check", "--tuple", "2,2,5", "--g6", encode(complete(7)))
    assert code == 0 and out.strip() == "arrows: true"


def test_check_witness(capsys):
    code, out, _ = run(capsys, "check", "--tuple", "2,2", "--witness", "--g6", encode(cycle(4)))
    assert code == 0 and out.startswith("arrows: false witness: ")


def test_check_uni_cycle_complement(capsys):
    code, out, _ = run(capsys, "check-uni", "-m", "6", "-p", "5", "--g6", encode(complement(cycle(11))))
    assert code == 0 and out.strip() == "true"


def test_gen_7(capsys):
    code, out, _ = run(capsys, "gen", "-n", "7", "--jobs", "1")
    assert code == 0 and len(out.split()) == 1044


def test_gen_filters(capsys):
    code, out, _ = run(capsys, "gen", "-n", "5", "--max-clique", "3", "--filter", "alpha<3")
    assert code == 0 and out.split() == [canonical_g6(cycle(5))]


def test_domain_errors(capsys):
    assert run(capsys, "check", "--tuple", "2,0", "--g6", "Dhc")[0] == 1
    assert run(capsys, "classify", "--tuple", "2,3", "--q", "3", "--g6", "Dhc")[0] == 1
    assert run(capsys, "check", "--tuple", "2,2", "--g6", "D!!")[0] == 1
    assert run(capsys, "gen", "-n", "13")[0] == 1
    assert run(capsys, "frobnicate")[0] == 1


def test_io_error(capsys, tmp_path):
    code, _, err = run(capsys, "canon", "--in", str(tmp_path / "missing.g6"))
    assert code == 2 and "error" in err


def test_normalization_notice(capsys):
    code, out, err = run(capsys, "check", "--tuple", "5,1,2,2", "--g6", encode(complete(7)))
    assert code == 0 and "normalized" in err


def test_canon_idempotent_and_stdin(capsys, monkeypatch, tmp_path):
    lines = [encode(cycle(6).relabel([3, 1, 4, 0, 5, 2])), encode(complete(4)), encode(cycle(5))]
    src = tmp_path / "in.g6"
    src.write_text("\n".join(lines) + "\n")
    _, first, _ = run(capsys, "canon", "--in", str(src))
    canon_file = tmp_path / "c.g6"
    canon_file.write_text(first)
    _, second, _ = run(capsys, "canon", "--in", str(canon_file))
    assert first == second
    _, piped, _ = run(capsys, "canon", stdin="\n".join(lines) + "\n", monkeypatch=monkeypatch)
    assert piped == first
    _, aut, _ = run(capsys, "canon", "--aut", "--g6", encode(cycle(5)))
    assert aut.split()[1] == "10"


def test_classify_and_kfree(capsys):
    code, out, _ = run(capsys, "classify", "--tuple", "2,2", "--q", "3", "--g6", encode(cycle(5)))
    assert "bicritical: true" in out
    code, out, _ = run(capsys, "kfree", "--t", "2", "--g6", encode(cycle(5)))
    assert out.splitlines()[0].endswith(" 5") and len(out.splitlines()) == 6


def test_set_commands(capsys, tmp_path):
    base = tmp_path / "base.g6"
    code, out, _ = run(capsys, "gen", "-n", "5", "--max-clique", "3", "--filter", "arrows:2", "--out", str(base))
    assert code == 0
    ext = tmp_path / "ext.g6"
    code, _, _ = run(capsys, "extend", "--tuple", "2,2", "--q", "3", "--k", "3", "--in", str(base), "--out", str(ext), "--jobs", "1")
    assert code == 0 and len(ext.read_text().split()) > 0
    code, out, _ = run(capsys, "closure", "--tuple", "2,2", "--q", "3", "--in", str(ext), "--jobs", "1")
    assert code == 0 and len(out.split()) >= len(ext.read_text().split())
    code, out, _ = run(capsys, "populate", "--tuple", "2,2", "--q", "3", "--in", str(ext), "--jobs", "1")
    assert code == 0 and sorted(out.split()) == sorted(ext.read_text().split())
    code, out, _ = run(capsys, "props", "--in", str(ext))
    assert code == 0 and out.startswith("edges")
    code, out, _ = run(capsys, "deletion-check", "--tuple", "2,2", "--q", "3", "--g6", encode(cycle(5)))
    assert out.strip() == "no deletion stays in the family"
    code, out, _ = run(capsys, "filter", "omega=2", "--in", str(base))
    assert code == 0 and len(out.split()) == 13


def test_pipeline_and_verdicts(capsys, tmp_path, monkeypatch):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({
        "target": "2,2,2;3;11",
        "base_tuple": "2",
        "ladder": [{"k": 3, "tuple": "2,2"}, {"k": 3, "tuple": "2,2,2"}],
    }))
    monkeypatch.setenv("FOLKMAN_WORKDIR", str(tmp_path / "wd"))
    code, out, _ = run(capsys, "pipeline", "--spec", str(spec), "--workdir", str(tmp_path / "wd"), "--jobs", "1")
    assert code == 0
    assert out.splitlines()[-1].startswith("H(2,2,2;3;11) maximal=1 critical=1")
    ledger = str(tmp_path / "v.jsonl")
    code, _, _ = run(capsys, "verdicts", "record", "--ledger", ledger, "--tuple", "2,2,2", "--q", "3", "--upper", "11", "--lower", "10")
    assert code == 0
    code, out, _ = run(capsys, "verdicts", "bounds", "--ledger", ledger, "--tuple", "2,2,2", "--q", "3")
    assert out.strip() == "F_v(2,2,2;3) = 11"
    code, out, _ = run(capsys, "verdicts", "check", "--ledger", ledger)
    assert code == 0 and out.strip() == "consistent"
    code, out, _ = run(capsys, "verdicts", "sandwich", "--ledger", ledger, "--tuple", "2,3,4")
    assert "wFv(7|4|6)" in out
    assert run(capsys, "verdicts", "bounds", "--ledger", ledger)[0] == 1
