import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unknotter.dissect import ChordSystem, dissect
from unknotter.errors import ArityMismatch, IndexOutOfRange, InvalidChordSystem
from unknotter.resolve import cells_tsv, loop_erasure_resolution
from unknotter.diagram import parse_gauss_shadow
from unknotter.tower import TowerScript, descend, provenance, random_script

ONE_PAIR = ChordSystem(4, (((0, 1), (2, 3)),), 0)
EMPTY = ChordSystem(0, (), 0)


def test_no_descent_keeps_the_cells():
    result = descend(TowerScript(("E1", "E2")))
    assert result.sequence == ("E1", "E2")
    assert provenance(result, 0) == ("E1", ())


def test_one_level():
    result = descend(TowerScript(("E1", "E2"), ((ONE_PAIR, EMPTY),)))
    assert result.sequence == ("E1F0", "E1F1", "E2")
    assert provenance(result, 1) == ("E1", ("1",))
    assert result.level_sizes == (2, 3)
    assert set(result.resolution) == {"L1.D1.1", "L1.D1.2"}


def test_arity_mismatch():
    with pytest.raises(ArityMismatch):
        descend(TowerScript(("E1", "E2"), ((ONE_PAIR, EMPTY, EMPTY),)))


def test_provenance_range():
    result = descend(TowerScript(("E1", "E2")))
    with pytest.raises(IndexOutOfRange):
        provenance(result, 99)


def test_script_json_round_trip():
    script = TowerScript(("E1", "E2"), ((ONE_PAIR, EMPTY), (EMPTY, ONE_PAIR, EMPTY)))
    assert TowerScript.from_json(script.to_json()) == script
    with pytest.raises(InvalidChordSystem):
        TowerScript.from_json("{}")


def test_script_can_name_a_cells_table(tmp_path):
    result = loop_erasure_resolution(parse_gauss_shadow("1 2 1 2"))
    (tmp_path / "cells.tsv").write_text(cells_tsv(result))
    raw = {"cells_file": "cells.tsv", "levels": [[json.loads(ONE_PAIR.to_json()), json.loads(EMPTY.to_json())]]}
    script = TowerScript.from_json(json.dumps(raw), tmp_path)
    assert script.top_cells == ("E1", "E2")
    assert descend(script).sequence == ("E1F0", "E1F1", "E2")


def test_result_table():
    lines = descend(TowerScript(("E1", "E2"), ((ONE_PAIR, EMPTY),))).lines()
    assert lines[0] == "index\tleaf\ttop_cell\tpath"
    assert lines[1] == "0\tE1F0\tE1\t0"
    assert lines[3] == "2\tE2\tE2\t-"


def test_two_levels_concatenate_in_place():
    script = TowerScript(("E1", "E2"), ((ONE_PAIR, ONE_PAIR), (EMPTY, ONE_PAIR, EMPTY, EMPTY)))
    result = descend(script)
    assert result.sequence == ("E1F0", "E1F1F0", "E1F1F1", "E2F0", "E2F1")
    assert result.level_sizes == (2, 4, 5)


scripts = st.integers(0, 2**32 - 1).map(lambda seed: random_script(random.Random(seed)))


@settings(max_examples=150, deadline=None)
@given(scripts)
def test_length_law(script):
    result = descend(script)
    live = len(script.top_cells)
    for level in script.levels:
        assert len(level) == live
        live = sum(len(dissect(s)[1]) for s in level)
    assert len(result.leaves) == live
    assert all(size <= 5 for size in result.level_sizes)


@settings(max_examples=150, deadline=None)
@given(scripts)
def test_provenance_is_unique(script):
    result = descend(script)
    paths = [provenance(result, i) for i in range(len(result.leaves))]
    assert len(set(paths)) == len(paths)
