"""Crossing resolutions that unknot a shadow, and height profiles for them."""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass
from graphlib import CycleError, TopologicalSorter

from .diagram import HeightProfile, Resolution, ResolvedDiagram, ShadowDiagram
from .errors import MalformedWord, TooLarge

DEFAULT_EXTREMA_BOUND = 8


def descending_resolution(shadow: ShadowDiagram) -> tuple[ResolvedDiagram, HeightProfile]:
    """First visit from the basepoint goes over; heights fall along the walk."""
    L = len(shadow.word)
    over: dict[str, int] = {}
    heights = [0.0] * L
    for i, p in enumerate(shadow.walk()):
        over.setdefault(shadow.word[p], p)
        heights[p] = (L - i) / (L + 1)
    return ResolvedDiagram(shadow, Resolution(over)), HeightProfile(tuple(heights), shadow.basepoint)


@dataclass(frozen=True)
class CellRecord:
    """One erased loop.

    ``alpha`` lists the word positions of the loop from one occurrence of
    ``crossing`` to the other (endpoints included) and ``beta`` the positions
    still present on the complementary arc through the basepoint.  The
    hemisphere record has ``crossing`` None and empty ``alpha``.
    """

    ordinal: int
    crossing: str | None
    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    decisions: tuple[tuple[str, int], ...]

    @property
    def interior(self) -> tuple[int, ...]:
        return self.alpha[1:-1]


@dataclass(frozen=True)
class LoopErasureResult:
    diagram: ResolvedDiagram
    cells: tuple[CellRecord, ...]
    hemisphere: CellRecord

    @property
    def resolution(self) -> Resolution:
        return self.diagram.resolution


def loop_erasure_resolution(shadow: ShadowDiagram) -> LoopErasureResult:
    """Erase innermost basepoint-free loops one at a time.

    The loop closed by the crossing whose basepoint-free arc is shortest goes
    over everything it meets and is removed together with the crossings on it;
    the closing crossing takes its earlier occurrence over.
    """
    word = shadow.word
    seq = shadow.walk()
    over: dict[str, int] = {}
    cells = []
    while seq:
        where: dict[str, list[int]] = {}
        for k, p in enumerate(seq):
            where.setdefault(word[p], []).append(k)
        i, j = min((v for v in where.values()), key=lambda v: (v[1] - v[0], v[0]))
        alpha = tuple(seq[i : j + 1])
        c = word[alpha[0]]
        decisions = []
        for p in alpha[1:-1]:
            over[word[p]] = p
            decisions.append((word[p], p))
        over[c] = alpha[0]
        decisions.append((c, alpha[0]))
        gone = {word[p] for p in alpha}
        seq = [p for p in seq if word[p] not in gone]
        cells.append(CellRecord(len(cells) + 1, c, alpha, tuple(seq), tuple(decisions)))
    hemisphere = CellRecord(len(cells) + 1, None, (), (), ())
    return LoopErasureResult(ResolvedDiagram(shadow, Resolution(over)), tuple(cells), hemisphere)


def cell_violations(shadow: ShadowDiagram, result: LoopErasureResult) -> list[str]:
    """Structural checks on a loop-erasure run (empty when all hold)."""
    out = []
    n = shadow.crossing_count
    if len(result.cells) > n:
        out.append(f"{len(result.cells)} cells for {n} crossings")
    L = len(shadow.word)
    seen: dict[str, int] = {}
    for cell in result.cells:
        labels = [shadow.word[p] for p in cell.interior]
        if len(set(labels)) != len(labels):
            out.append(f"cell {cell.ordinal}: repeated interior label")
        ends = {shadow.word[cell.alpha[0]], shadow.word[cell.alpha[-1]]}
        if ends != {cell.crossing} or cell.alpha[0] == cell.alpha[-1]:
            out.append(f"cell {cell.ordinal}: endpoints are not the two occurrences of {cell.crossing}")
        # the basepoint gap g sits just before position g; it is inside alpha
        # when alpha wraps past it in walk order
        walk_index = {p: k for k, p in enumerate(shadow.walk())}
        ks = [walk_index[p] for p in cell.alpha]
        if ks != sorted(ks):
            out.append(f"cell {cell.ordinal}: alpha contains the basepoint")
        for lab, _ in cell.decisions:
            seen[lab] = seen.get(lab, 0) + 1
    for lab in set(shadow.word):
        if seen.get(lab, 0) != 1:
            out.append(f"crossing {lab} resolved {seen.get(lab, 0)} times")
    if result.hemisphere.crossing is not None or result.hemisphere.ordinal != len(result.cells) + 1:
        out.append("final cell is not the basepoint hemisphere")
    if L and set(result.resolution) != set(shadow.word):
        out.append("resolution does not cover every crossing")
    return out


def cells_tsv(result: LoopErasureResult) -> str:
    """One tab-separated line per cell: ordinal, crossing, alpha positions, decisions."""
    buf = io.StringIO()
    w = csv.writer(buf, delimiter="\t", lineterminator="\n")
    w.writerow(["ordinal", "crossing", "alpha", "decisions"])
    for cell in result.cells + (result.hemisphere,):
        w.writerow(
            [
                f"E{cell.ordinal}",
                cell.crossing if cell.crossing is not None else "*",
                " ".join(map(str, cell.alpha)),
                " ".join(f"{lab}@{p}" for lab, p in cell.decisions),
            ]
        )
    return buf.getvalue()


def read_cells_tsv(text: str) -> list[str]:
    """Cell names (``E1``, ``E2``, ...) from a cells table, hemisphere included."""
    rows = list(csv.reader(io.StringIO(text), delimiter="\t"))
    if not rows or rows[0][:1] != ["ordinal"]:
        raise MalformedWord("cells table needs an 'ordinal' header")
    return [r[0] for r in rows[1:] if r]


# ------------------------------------------------------------------- extrema


def _walk_constraints(resolved: ResolvedDiagram) -> tuple[list[int], list[tuple[int, int]]]:
    sh = resolved.shadow
    walk = sh.walk()
    idx = {p: k for k, p in enumerate(walk)}
    edges = []
    for lab, p in resolved.resolution.items():
        a, b = sh.positions(lab)
        q = b if p == a else a
        edges.append((idx[p], idx[q]))  # over above under
    return walk, edges


def _order(L: int, edges, ups) -> list[int] | None:
    """A bottom-to-top order of walk indices, or None if the constraints cycle."""
    ts = TopologicalSorter({k: () for k in range(L)})
    for hi, lo in edges:
        ts.add(hi, lo)
    for k, up in enumerate(ups):
        if up:
            ts.add(k + 1, k)
        else:
            ts.add(k, k + 1)
    try:
        return list(ts.static_order())
    except CycleError:
        return None


def _peaks(ups) -> int:
    # the walk starts rising from the basepoint minimum and ends falling into it
    dirs = (True, *ups, False)
    return sum(1 for a, b in zip(dirs, dirs[1:]) if a and not b)


def _search(resolved: ResolvedDiagram, bound: int | None):
    n = resolved.crossing_count
    bound = DEFAULT_EXTREMA_BOUND if bound is None else bound
    if n > bound:
        raise TooLarge(f"{n} crossings exceeds the extrema search bound {bound}")
    L = len(resolved.word)
    if L == 0:
        return 1, None
    _, edges = _walk_constraints(resolved)
    patterns = sorted(itertools.product((True, False), repeat=L - 1), key=_peaks)
    for ups in patterns:
        order = _order(L, edges, ups)
        if order is not None:
            return _peaks(ups), order
    raise AssertionError("the descending pattern is always feasible")  # pragma: no cover


def min_extrema(resolved: ResolvedDiagram, bound: int | None = None) -> int:
    """Fewest local maxima of a circle height function compatible with the resolution.

    Heights are assigned to word positions with the basepoint at the bottom;
    the count is of cyclic turning points from rising to falling.
    """
    return _search(resolved, bound)[0]


def optimal_profile(resolved: ResolvedDiagram, bound: int | None = None) -> HeightProfile:
    """A height profile attaining :func:`min_extrema`."""
    _, order = _search(resolved, bound)
    sh = resolved.shadow
    L = len(sh.word)
    if order is None:
        return HeightProfile((), sh.basepoint)
    walk = sh.walk()
    heights = [0.0] * L
    for rank, k in enumerate(order):
        heights[walk[k]] = (rank + 1) / (L + 1)
    return HeightProfile(tuple(heights), sh.basepoint)
