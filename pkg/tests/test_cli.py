import json
import subprocess
import sys

import pytest

from unknotter.cli import run
from unknotter.diagram import parse, validate
from unknotter.dissect import ChordSystem
from unknotter.resolve import descending_resolution
from unknotter.verify import reidemeister_reduce

TREFOIL_SHADOW = "P 6 3 1 4\nP 4 1 5 2\nP 2 5 3 6\n"
TRUE_TREFOIL = "O1 U2 O3 U1 O2 U3\nX 4 1 5 2\nX 2 5 3 6\nX 6 3 1 4\n"


@pytest.fixture
def files(tmp_path):
    def put(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return put


def test_resolve_descending(files, capsys):
    assert run(["resolve", "--strategy", "descending", files("trefoil.shadow", "1 2 3 1 2 3")]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "O1 O2 O3 U1 U2 U3"


def test_resolve_writes_outputs(files, tmp_path, capsys):
    src = files("trefoil.shadow", TREFOIL_SHADOW)
    out, cells = tmp_path / "out.txt", tmp_path / "cells.tsv"
    assert run(["resolve", "--strategy", "loop-erasure", src, "--out", str(out), "--cells", str(cells)]) == 0
    assert validate(parse(out.read_text())) == []
    assert cells.read_text().startswith("ordinal\tcrossing")
    profile = tmp_path / "profile.tsv"
    assert run(["resolve", src, "--profile", str(profile)]) == 0
    assert len(profile.read_text().splitlines()) == 7


def test_verify_kink(files, capsys):
    assert run(["verify", "--method", "reidemeister", files("kink.resolved", "O1 U1\nX 2 2 1 1")]) == 0
    out = capsys.readouterr().out
    assert "status\treduced" in out and "moves\t1" in out


def test_verify_exit_codes(files, capsys):
    knot = files("trefoil.resolved", TRUE_TREFOIL)
    assert run(["verify", knot]) == 3
    assert run(["verify", knot, "--method", "bracket"]) == 3
    assert run(["verify", knot, "--max-states", "3"]) == 4
    err = capsys.readouterr().err
    assert "error: BudgetExceeded" in err
    assert run(["verify", files("gauss.resolved", "O1 U1")]) == 2
    assert "MissingPlanarData" in capsys.readouterr().err


def test_invalid_input_exits_2(files, capsys):
    assert run(["parse", files("bad.shadow", "1 2 1")]) == 2
    assert capsys.readouterr().err.startswith("error: MalformedWord")
    assert run(["parse", "/nonexistent/file"]) == 2


def test_parse_emits_formats(files, capsys):
    src = files("trefoil.resolved", TRUE_TREFOIL)
    assert run(["parse", src, "--emit", "pd"]) == 0
    pd_text = capsys.readouterr().out
    assert pd_text.count("X ") == 3 and parse(pd_text) == parse(TRUE_TREFOIL)
    assert run(["parse", src, "--emit", "gauss"]) == 0
    assert capsys.readouterr().out.strip() == "1 2 3 1 2 3"


def test_format_and_basepoint_flags(files, capsys):
    assert run(["parse", files("w.txt", "1 2 1 2"), "--format", "gauss", "--basepoint", "1"]) == 0
    assert capsys.readouterr().out.strip() == "1 * 2 1 2"
    assert run(["parse", files("p.txt", TREFOIL_SHADOW), "--format", "pd"]) == 0


def test_corpus_foxartin_emit(files, capsys):
    assert run(["corpus", "--family", "foxartin", "--k", "1", "--emit"]) == 0
    shadow = parse(capsys.readouterr().out)
    assert validate(shadow) == [] and shadow.crossing_count == 2
    assert reidemeister_reduce(descending_resolution(shadow)[0])


def test_corpus_listing_and_outdir(tmp_path, capsys):
    assert run(["corpus", "--outdir", str(tmp_path / "c")]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "name\tcrossings\texpected" and len(lines) == 15
    assert len(list((tmp_path / "c").glob("*.shadow"))) == 14


def test_dissect_and_descend(files, tmp_path, capsys):
    one = ChordSystem(4, (((0, 1), (2, 3)),), 0)
    assert run(["dissect", files("one.json", one.to_json()), "--tree-svg", str(tmp_path / "t.svg")]) == 0
    out = capsys.readouterr().out
    assert "1\t0\t" in out and (tmp_path / "t.svg").exists()
    script = {"top_cells": ["E1", "E2"], "levels": [[json.loads(one.to_json()), {"points": 0, "pairs": []}]]}
    assert run(["descend", files("tower.json", json.dumps(script))]) == 0
    out = capsys.readouterr().out.splitlines()
    assert [row.split("\t")[1] for row in out[1:4]] == ["E1F0", "E1F1", "E2"]
    bad = {"top_cells": ["E1"], "levels": [[]]}
    assert run(["descend", files("bad.json", json.dumps(bad))]) == 2
    assert "ArityMismatch" in capsys.readouterr().err


def test_extrema(files, capsys, monkeypatch):
    src = files("trefoil.resolved", TRUE_TREFOIL)
    assert run(["extrema", src]) == 0
    assert capsys.readouterr().out.startswith("min_extrema\t2")
    assert run(["extrema", src, "--bound", "2"]) == 4
    monkeypatch.setenv("UNKNOTTER_EXTREMA_BOUND", "2")
    assert run(["extrema", src]) == 4


def test_render_both_inputs(files, tmp_path, capsys):
    one = ChordSystem(4, (((0, 1), (2, 3)),), 0)
    assert run(["render", files("one.json", one.to_json()), "--svg", str(tmp_path / "a.svg")]) == 0
    assert run(["render", files("t.resolved", TRUE_TREFOIL), "--svg", str(tmp_path / "b.svg")]) == 0
    bad = ChordSystem(4, (((0, 2), (1, 3)),), 0)
    assert run(["render", files("bad.json", bad.to_json()), "--svg", str(tmp_path / "c.svg")]) == 2
    assert not (tmp_path / "c.svg").exists()


def test_commands_are_deterministic(files, capsys):
    src = files("trefoil.shadow", TREFOIL_SHADOW)
    outputs = []
    for _ in range(2):
        run(["resolve", "--strategy", "loop-erasure", src])
        run(["verify", files("k.resolved", TRUE_TREFOIL), "--method", "bracket"])
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]


def test_module_entry_point(files):
    src = files("trefoil.shadow", "1 2 3 1 2 3")
    done = subprocess.run([sys.executable, "-m", "unknotter", "resolve", src], capture_output=True, text=True)
    assert done.returncode == 0 and done.stdout.strip() == "O1 O2 O3 U1 U2 U3"
