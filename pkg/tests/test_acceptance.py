"""Acceptance criteria, one test per criterion.

Run directly (``python3 tests/test_acceptance.py``) or through pytest; either
way the terminal summary ends with one PASS/FAIL line per criterion.
"""

import random
from collections import Counter

import pytest

from unknotter.corpus import full_corpus, random_shadow, standard_knots
from unknotter.diagram import Resolution, ResolvedDiagram, parse, validate_profile
from unknotter.dissect import dissect, dyadic_value, random_chord_system
from unknotter.pdcode import is_planar
from unknotter.resolve import cell_violations, descending_resolution, loop_erasure_resolution, min_extrema
from unknotter.tower import TowerScript, descend, provenance, random_script
from unknotter.verify import NotReduced, kauffman_bracket, reidemeister_reduce, replay
from unknotter.verify import moves
from unknotter.verify.bracket import normalized_bracket
from unknotter.verify.search import oriented_pd

TRUE_TREFOIL = "O1 U2 O3 U1 O2 U3\nX 4 1 5 2\nX 2 5 3 6\nX 6 3 1 4"

CORPUS = full_corpus(kmax=4)


def _resolutions(shadow):
    yield "descending", descending_resolution(shadow)[0]
    yield "loop-erasure", loop_erasure_resolution(shadow).diagram


def test_criterion_1_unknotting_completeness():
    """1 unknotting completeness: both strategies reduce every corpus shadow and have bracket 1"""
    names = [e.name for e in CORPUS]
    assert {f"foxartin_{k}" for k in range(1, 5)} <= set(names) and len(names) == 18
    failures = []
    for entry in CORPUS:
        for strategy, rd in _resolutions(entry.shadow):
            trace = reidemeister_reduce(rd)
            if not trace or trace.steps and trace.steps[-1].crossings != 0:
                failures.append((entry.name, strategy, "not reduced"))
            if not kauffman_bracket(rd).is_one():
                failures.append((entry.name, strategy, "bracket"))
    assert failures == []


def test_criterion_2_descending_profile():
    """2 descending profile: one maximum, one minimum, min_extrema 1 on every corpus shadow"""
    for entry in CORPUS:
        rd, profile = descending_resolution(entry.shadow)
        assert validate_profile(rd, profile) == [], entry.name
        assert profile.extrema() == (1, 1), entry.name
        assert entry.shadow.crossing_count <= 8
        assert min_extrema(rd) == 1, entry.name


def test_criterion_3_negative_control():
    """3 negative control: the true trefoil is NotReduced, bracket != 1, min_extrema 2"""
    knot = parse(TRUE_TREFOIL)
    result = reidemeister_reduce(knot)
    assert isinstance(result, NotReduced) and not result.budget_exceeded
    assert not kauffman_bracket(knot).is_one()
    assert min_extrema(knot) == 2


def test_criterion_4_dissection_invariants():
    """4 dissection invariants over 1000 random chord systems with m <= 12"""
    rng = random.Random(2024)
    sizes = Counter()
    for _ in range(1000):
        m = rng.randint(0, 12)
        system = random_chord_system(rng, m)
        sizes[m] += 1
        tree, seq = dissect(system)
        for node in tree.nodes():
            for child in node.children:
                assert len(child.pairs) < len(node.pairs)
        assert all(not leaf.pairs for leaf in seq.leaves)
        values = [dyadic_value(s) for s in seq.subscripts]
        assert values == sorted(values) and len(set(values)) == len(values)
        resolved = Counter(label for node in tree.nodes() if node.step for label, _ in node.step.resolved)
        assert set(resolved) == set(system.crossing_labels().values()) and set(resolved.values()) <= {1}
        assert dict(seq.resolution).keys() == resolved.keys()
        assert len(seq) <= 2**m
        # the basepoint stays with child 1 at every step
        assert set(seq.subscripts[-1]) <= {"1"}
    assert len(sizes) == 13


def test_criterion_5_loop_erasure_structure():
    """5 loop-erasure structure: at most n cells, simple alphas, basepoint outside, hemisphere last"""
    for entry in CORPUS:
        sh = entry.shadow
        result = loop_erasure_resolution(sh)
        assert cell_violations(sh, result) == [], entry.name
        assert 1 <= len(result.cells) <= sh.crossing_count
        assert result.hemisphere.crossing is None and result.hemisphere.ordinal == len(result.cells) + 1


def _leaf_counts(script):
    """Per level, the number of leaves each live disk turns into."""
    return [[len(dissect(s)[1]) for s in level] for level in script.levels]


def _without_top_cell(script, drop):
    """The script with top cell ``drop`` and all its descendants' systems removed."""
    owner = list(range(len(script.top_cells)))
    levels = []
    for level, counts in zip(script.levels, _leaf_counts(script)):
        levels.append(tuple(s for s, o in zip(level, owner) if o != drop))
        owner = [o for o, k in zip(owner, counts) for _ in range(k)]
    cells = tuple(c for i, c in enumerate(script.top_cells) if i != drop)
    return TowerScript(cells, tuple(levels))


def _replay_provenance(script, top, path):
    """Follow a provenance path down the script; returns the final leaf index."""
    index = top
    for level, subscript in zip(script.levels, path):
        offset = sum(len(dissect(s)[1]) for s in level[:index])
        _, seq = dissect(level[index])
        index = offset + seq.subscripts.index(subscript)
    return index


def test_criterion_6_concatenation_law():
    """6 concatenation law: length law, order preservation and replayable provenance on random towers"""
    rng = random.Random(6)
    for _ in range(300):
        script = random_script(rng, max_levels=3, max_disks=5, max_m=6)
        result = descend(script)
        live = len(script.top_cells)
        for counts in _leaf_counts(script):
            assert len(counts) == live
            live = sum(counts)
        assert len(result.leaves) == live
        seen = set()
        for i in range(len(result.leaves)):
            top, path = provenance(result, i)
            assert (top, path) not in seen
            seen.add((top, path))
            assert _replay_provenance(script, script.top_cells.index(top), path) == i
        for drop in range(len(script.top_cells)):
            kept = [leaf.name(script.top_cells) for leaf in result.leaves if leaf.top != drop]
            assert list(descend(_without_top_cell(script, drop)).sequence) == kept


def _random_pd(rng):
    sh = random_shadow(rng, 6, vertices=6)
    return oriented_pd(ResolvedDiagram(sh, Resolution({lab: rng.choice(sh.positions(lab)) for lab in sh.labels})))


def test_criterion_7_verification_self_consistency():
    """7 verification self-consistency: bracket invariance, trace replay, reduce <=> bracket 1"""
    rng = random.Random(7)
    kinds = Counter()
    while sum(kinds.values()) < 500:
        pd = _random_pd(rng)
        if not pd:
            continue
        move, _, new = rng.choice(list(moves.successors(pd, allow_increase=True)))
        kinds[move.kind] += 1
        assert normalized_bracket(new) == normalized_bracket(pd), move.describe()
        assert not new or is_planar(new)
    assert set(kinds) == {"R1-", "R2-", "R3", "R1+", "R2+"}

    diagrams = [(e.name + "/" + s, rd) for e in CORPUS for s, rd in _resolutions(e.shadow)]
    diagrams += [(name, knot) for name, knot in standard_knots()]
    diagrams.append(("true trefoil", parse(TRUE_TREFOIL)))
    outcomes = Counter()
    for name, rd in diagrams:
        result = reidemeister_reduce(rd)
        one = kauffman_bracket(rd).is_one()
        if result:
            assert replay(result), name
            assert one, name
        if not one:
            assert isinstance(result, NotReduced), name
        outcomes[bool(result), one] += 1
    assert outcomes[True, True] == 36 and outcomes[False, False] == 15


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
