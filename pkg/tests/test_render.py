import pytest

from unknotter.diagram import parse, parse_gauss_shadow
from unknotter.dissect import ChordSystem, dissect
from unknotter.errors import InvalidChordSystem
from unknotter.render import render_chords, render_gauss, render_profile, render_tree
from unknotter.resolve import descending_resolution

ONE_PAIR = ChordSystem(4, (((0, 1), (2, 3)),), 0)


def _twice(tmp_path, draw):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    draw(a)
    draw(b)
    return a.read_bytes(), b.read_bytes()


@pytest.mark.parametrize("system", [ChordSystem(0, (), 0), ONE_PAIR])
def test_chord_figures_are_byte_stable(tmp_path, system):
    first, second = _twice(tmp_path, lambda p: render_chords(system, p))
    assert first == second and first.startswith(b"<?xml")


def test_one_pair_draws_two_chords_in_one_colour(tmp_path):
    svg = render_chords(ONE_PAIR, tmp_path / "c.svg").read_text()
    # tab20 starts with #1f77b4 then #aec7e8
    assert svg.count("stroke: #1f77b4") == 2 and "#aec7e8" not in svg


def test_invalid_system_writes_nothing(tmp_path):
    target = tmp_path / "bad.svg"
    with pytest.raises(InvalidChordSystem):
        render_chords(ChordSystem(4, (((0, 2), (1, 3)),), 0), target)
    assert not target.exists()


def test_other_figures_are_byte_stable(tmp_path):
    rd, profile = descending_resolution(parse_gauss_shadow("1 2 3 1 2 3"))
    tree, _ = dissect(ChordSystem(8, (((0, 1), (2, 7)), ((3, 4), (5, 6))), 0))
    for draw in (
        lambda p: render_gauss(rd, p),
        lambda p: render_gauss(parse("1 1"), p),
        lambda p: render_profile(rd, profile, p),
        lambda p: render_tree(tree, p),
    ):
        first, second = _twice(tmp_path, draw)
        assert first == second


def test_png_by_suffix(tmp_path):
    path = render_chords(ONE_PAIR, tmp_path / "c.png")
    assert path.read_bytes()[:4] == b"\x89PNG"
