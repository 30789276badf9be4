import json

import pytest

from quiverlab import parse_quiver_text, quiver_to_text, seed
from quiverlab.cli import main


def _write_quiver(tmp_path, q, name="q.txt"):
    path = tmp_path / name
    path.write_text(quiver_to_text(q))
    return str(path)


def test_mutate_involution_roundtrip(tmp_path, capsys):
    path = _write_quiver(tmp_path, seed("D-tilde", 7))
    assert main(["mutate", "--at", "1", "--at", "1", path]) == 0
    out = capsys.readouterr().out
    assert parse_quiver_text(out) == seed("D-tilde", 7)


def test_mutate_rejects_bad_vertex(tmp_path, capsys):
    path = _write_quiver(tmp_path, seed("A", 3))
    assert main(["mutate", "--at", "7", path]) == 2


def test_classify_emits_json_lines(tmp_path, capsys):
    p1 = _write_quiver(tmp_path, seed("A", 5), "a.txt")
    p2 = _write_quiver(tmp_path, seed("D-tilde", 6), "d.txt")
    assert main(["classify", "--certificate", p1, p2]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    recs = [json.loads(ln) for ln in lines]
    assert recs[0]["family"] == "A" and recs[0]["file"].endswith("a.txt")
    assert recs[1]["family"] == "D-tilde" and recs[1]["subtype"] == "I-I"
    assert recs[1]["certificate"]["roles"]


def test_enumerate_summary_and_save(tmp_path, capsys):
    out = tmp_path / "reg"
    assert main(["enumerate", "--family", "A-tilde", "--n", "7", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "A-tilde n=7: 340 quivers" in text
    assert (out / "A-tilde_7.reg").exists()


def test_classify_with_registry(tmp_path, capsys):
    out = tmp_path / "reg"
    assert main(["enumerate", "--family", "E-tilde", "--n", "7", "--out", str(out)]) == 0
    capsys.readouterr()
    path = _write_quiver(tmp_path, seed("E-tilde", 7))
    assert main(["classify", "--registry", str(out), path]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["family"] == "E-tilde" and rec["method"] == "registry-lookup"


def test_verify_oracle_n7_exit_zero(capsys):
    assert main(["verify", "--suite", "oracle", "--n", "7"]) == 0
    assert "[PASS]" in capsys.readouterr().out


def test_verify_mutation_suite(capsys):
    assert main(["verify", "--suite", "mutation", "--trials", "300"]) == 0


def test_export_sizegen_cli(tmp_path, capsys):
    assert main([
        "export", "--protocol", "sizegen", "--out", str(tmp_path),
        "--sizes", "7", "--cap", "25",
    ]) == 0
    out = capsys.readouterr().out
    assert "records" in out
    lines = (tmp_path / "sizegen.jsonl").read_text().splitlines()
    assert all(json.loads(ln)["split"] == "sizegen" for ln in lines)
