import json

import pytest

from chirogrid.cli import main
from chirogrid.grid import EncodedConfig
from chirogrid.sampling import load_config


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_sample_round_encode_decode(tmp_path, capsys):
    pts, rounded, enc, dec = (tmp_path / f for f in ("s.txt", "r.txt", "e.bin", "d.txt"))
    assert run(capsys, "sample", "--n", "12", "--d", "2", "--seed", "3", "--out", str(pts))[0] == 0
    assert load_config(pts).n == 12
    assert run(capsys, "round", str(pts), "--M", "1000", "--out", str(rounded))[0] == 0
    code, out = run(capsys, "encode", str(rounded), "--M", "1000", "--out", str(enc))
    assert code == 0 and "payload_bits=264" in out.err  # 12 * 2 * 11
    assert EncodedConfig.from_bytes(enc.read_bytes()).M == 1000
    assert run(capsys, "decode", str(enc), "--out", str(dec))[0] == 0
    assert load_config(dec).points == load_config(rounded).points


def test_chirotope_and_compare(tmp_path, capsys):
    pts, rounded, chi = tmp_path / "s.txt", tmp_path / "r.txt", tmp_path / "c.txt"
    run(capsys, "sample", "--n", "30", "--seed", "1", "--out", str(pts))
    run(capsys, "round", str(pts), "--M", "4", "--out", str(rounded))
    run(capsys, "chirotope", str(pts), "--out", str(chi))
    assert chi.read_text().startswith("chirotope 2 30\n1 2 3 ")
    assert run(capsys, "compare", str(chi), str(pts))[0] == 0
    code, out = run(capsys, "compare", str(chi), str(rounded))
    assert code == 1 and out.out


def test_bound(capsys):
    code, out = run(capsys, "bound", "--n", "32", "--d", "2", "--eps", "1/2")
    assert code == 0 and "M=185364" in out.out and "success_paper=0.8719" in out.out


def test_experiment_theorem_outputs(tmp_path, capsys):
    rec, csv = tmp_path / "r.jsonl", tmp_path / "s.csv"
    code, out = run(capsys, "experiment", "theorem", "--n", "10", "--d", "2", "--eps", "1",
                    "--trials", "3", "--records", str(rec), "--csv", str(csv))
    summary = json.loads(out.out)
    assert code == 0 and sum(summary["counts"].values()) == 3
    assert len(rec.read_text().splitlines()) == 3
    header, row = csv.read_text().splitlines()
    assert header.startswith("n,d,eps,M,trials,preserved") and row.startswith("10,2,1,10000,3,")


def test_experiment_per_event(capsys):
    code, out = run(capsys, "experiment", "per-event", "--d", "1", "--M", "100", "--samples", "2000")
    data = json.loads(out.out)
    assert code == 0 and data["samples"] == 2000 and data["bound_exact"] == pytest.approx(0.02)


def test_verify_exit_codes(capsys):
    assert run(capsys, "verify", "lemma1", "--d", "2", "--trials", "50")[0] == 0
    assert run(capsys, "verify", "lemma2", "--d", "2", "--trials", "50", "--M", "100")[0] == 0
    # the S-family claim fails in three dimensions, which the verifier reports
    code, out = run(capsys, "verify", "lemma1", "--d", "3", "--trials", "40")
    assert code == 1 and "counterexamples=" in out.out
