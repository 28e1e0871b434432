"""Command line entry points (serve excluded: covered via the app factory)."""

from __future__ import annotations

import json

import pytest

from talentmatch.cli import main


def test_gen_then_match_then_report(tmp_path, capsys):
    snap = tmp_path / "corpus.snap"
    assert main(["gen", "--seed", "7", "--candidates", "12", "--jobs", "4",
                 "--out", str(snap)]) == 0
    assert snap.exists()

    prefix = tmp_path / "run"
    assert main(["match", "--snapshot", str(snap), "--out-prefix", str(prefix)]) == 0
    out = capsys.readouterr().out
    assert "scored" in out
    report = json.loads((tmp_path / "run.json").read_text(encoding="utf-8"))
    assert report["schema"] == 1

    assert main(["report", "--report", str(tmp_path / "run.json")]) == 0
    rendered = capsys.readouterr().out
    assert rendered.startswith("match report")
    assert rendered == (tmp_path / "run.txt").read_text(encoding="utf-8")

    out_file = tmp_path / "again.txt"
    assert main(["report", "--report", str(tmp_path / "run.json"),
                 "--out", str(out_file)]) == 0
    assert out_file.read_text(encoding="utf-8").startswith("match report")


def test_match_with_custom_weights_and_as_of(tmp_path):
    snap = tmp_path / "corpus.snap"
    main(["gen", "--seed", "7", "--candidates", "10", "--jobs", "3", "--out", str(snap)])
    weights = tmp_path / "weights.json"
    weights.write_text(json.dumps({
        "skills": 0.50, "personality": 0.20, "salary": 0.10, "location": 0.08,
        "employment": 0.04, "age": 0.04, "gender": 0.04}), encoding="utf-8")
    assert main(["match", "--snapshot", str(snap), "--out-prefix", str(tmp_path / "w"),
                 "--weights", str(weights), "--as-of", "2027-06-01"]) == 0
    report = json.loads((tmp_path / "w.json").read_text(encoding="utf-8"))
    assert report["weights"]["skills"] == 0.50
    assert report["as_of"] == "2027-06-01"


def test_gen_rejects_bad_config(tmp_path, capsys):
    code = main(["gen", "--seed", "1", "--candidates", "0", "--jobs", "3",
                 "--out", str(tmp_path / "x.snap")])
    assert code == 1
    assert "error:" in capsys.readouterr().err


def test_match_complains_about_missing_snapshot(tmp_path, capsys):
    code = main(["match", "--snapshot", str(tmp_path / "ghost.snap"),
                 "--out-prefix", str(tmp_path / "r")])
    assert code == 1
    assert "error:" in capsys.readouterr().err


def test_invalid_weights_file_fails(tmp_path, capsys):
    snap = tmp_path / "corpus.snap"
    main(["gen", "--seed", "7", "--candidates", "5", "--jobs", "2", "--out", str(snap)])
    weights = tmp_path / "weights.json"
    weights.write_text('{"skills": 1.5}', encoding="utf-8")
    assert main(["match", "--snapshot", str(snap), "--out-prefix", str(tmp_path / "r"),
                 "--weights", str(weights)]) == 1


def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as err:
        main(["transmogrify"])
    assert err.value.code == 2
