"""Test and demonstration corpora of shadows."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from importlib import resources
from typing import Sequence

from .diagram import ResolvedDiagram, ShadowDiagram, parse, validate
from .errors import MalformedWord

Point = tuple[float, float]


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    shadow: ShadowDiagram
    expected: tuple[str, ...] = ()


UNKNOTTABLE = ("descending resolution reduces to the unknot", "loop-erasure resolution reduces to the unknot")


def _standard_blocks() -> list[tuple[str, str]]:
    text = resources.files("unknotter").joinpath("data/standard.txt").read_text()
    blocks: list[tuple[str, list[str]]] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("X "):
            blocks[-1][1].append(line)
        else:
            blocks.append((line, []))
    return [(name, "\n".join(lines)) for name, lines in blocks]


def standard_knots() -> list[tuple[str, ResolvedDiagram]]:
    """The tabulated prime knot diagrams with their crossing data."""
    return [(name, parse(text)) for name, text in _standard_blocks()]


def standard() -> list[CorpusEntry]:
    """Shadows of the prime knot diagrams with at most seven crossings."""
    return [CorpusEntry(name, knot.shadow, UNKNOTTABLE) for name, knot in standard_knots()]


# ------------------------------------------------------------ polyline loops


def _cross(o: Point, a: Point, b: Point) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _intersect(p1: Point, p2: Point, q1: Point, q2: Point):
    d = (p2[0] - p1[0]) * (q2[1] - q1[1]) - (p2[1] - p1[1]) * (q2[0] - q1[0])
    if d == 0:
        return None
    t = ((q1[0] - p1[0]) * (q2[1] - q1[1]) - (q1[1] - p1[1]) * (q2[0] - q1[0])) / d
    u = ((q1[0] - p1[0]) * (p2[1] - p1[1]) - (q1[1] - p1[1]) * (p2[0] - p1[0])) / d
    if 0 < t < 1 and 0 < u < 1:
        return t, u
    return None


def shadow_from_polyline(points: Sequence[Point]) -> ShadowDiagram:
    """Shadow of the closed polyline through ``points`` (assumed in general position).

    The basepoint sits just after the first vertex; crossings are labelled by
    first visit from there.
    """
    pts = [tuple(map(float, p)) for p in points]
    m = len(pts)
    if m < 3:
        raise MalformedWord("a closed polyline needs at least three vertices")
    segs = [(pts[i], pts[(i + 1) % m]) for i in range(m)]
    passages = []  # (segment, t, crossing id)
    count = 0
    for i in range(m):
        for j in range(i + 1, m):
            if j == i + 1 or (i == 0 and j == m - 1):
                continue
            hit = _intersect(*segs[i], *segs[j])
            if hit is not None:
                passages.append((i, hit[0], count))
                passages.append((j, hit[1], count))
                count += 1
    passages.sort()
    L = len(passages)
    if L == 0:
        return ShadowDiagram((), None, 0)
    names: dict[int, str] = {}
    for _, _, c in passages:
        names.setdefault(c, str(len(names) + 1))
    word = tuple(names[c] for _, _, c in passages)
    rays: dict[int, list] = {}
    for pos, (seg, _, c) in enumerate(passages):
        (x0, y0), (x1, y1) = segs[seg]
        ang = math.atan2(y1 - y0, x1 - x0)
        incoming, outgoing = pos + 1, (pos + 1) % L + 1
        rays.setdefault(c, []).append(((ang + math.pi) % (2 * math.pi), incoming, ("in", pos)))
        rays[c].append((ang % (2 * math.pi), outgoing, ("out", pos)))
    planar = []
    for c in sorted(names, key=lambda c: int(names[c])):
        ccw = sorted(rays[c])
        first = min(tag[1] for _, _, tag in ccw)
        k = next(i for i, (_, _, tag) in enumerate(ccw) if tag == ("in", first))
        planar.append(tuple(ccw[(k + s) % 4][1] for s in range(4)))
    shadow = ShadowDiagram(word, tuple(planar), 0)
    problems = validate(shadow)
    if problems:  # pragma: no cover - general position guarantees a valid shadow
        raise MalformedWord("; ".join(problems))
    return shadow


def foxartin_polyline(k: int) -> list[Point]:
    """A chain of ``k`` clasps: hooked fingers standing on a common base line.

    Finger ``j`` rises at ``x = 3j`` to height ``2 + j``, bends right past the
    next finger and hooks back down at ``x = 3j + 1``; the final finger is a
    plain bump that the previous hook wraps around.  Each hook crosses the next
    finger's rising side twice, giving ``2k`` crossings.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    pts: list[Point] = []
    for j in range(k):
        h = 2 + j
        pts += [(3 * j, 0), (3 * j, h), (3 * j + 3.5, h), (3 * j + 3.5, h - 0.5), (3 * j + 1, h - 0.5), (3 * j + 1, 0)]
    x = 3 * k
    pts += [(x, 0), (x, 2 + k), (x + 1, 2 + k), (x + 1, 0), (x + 1, -1), (0, -1)]
    return pts


def foxartin(k: int) -> ShadowDiagram:
    return shadow_from_polyline(foxartin_polyline(k))


def foxartin_entries(kmax: int = 4) -> list[CorpusEntry]:
    return [CorpusEntry(f"foxartin_{k}", foxartin(k), UNKNOTTABLE) for k in range(1, kmax + 1)]


def random_polyline(rng: random.Random, vertices: int) -> list[Point]:
    return [(rng.random(), rng.random()) for _ in range(vertices)]


def random_shadow(rng: random.Random, max_crossings: int = 8, vertices: int = 6) -> ShadowDiagram:
    """A random polyline shadow with at most ``max_crossings`` crossings."""
    while True:
        sh = shadow_from_polyline(random_polyline(rng, vertices))
        if sh.crossing_count <= max_crossings:
            return sh


def full_corpus(kmax: int = 4) -> list[CorpusEntry]:
    return standard() + foxartin_entries(kmax)
