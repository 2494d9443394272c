"""Schematic figures: chord systems, Gauss diagrams, height profiles, dissection trees.

Output is written through matplotlib with a fixed hash salt and no date
metadata, so identical inputs produce identical SVG bytes.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib
from matplotlib.figure import Figure

from .diagram import HeightProfile, ResolvedDiagram, ShadowDiagram
from .dissect import ChordSystem, DissectionTree, validate_chords
from .errors import InvalidChordSystem

_PALETTE = matplotlib.colormaps["tab20"]


def _save(fig: Figure, path: str | Path) -> Path:
    path = Path(path)
    fmt = path.suffix.lstrip(".").lower() or "svg"
    metadata = {"Date": None} if fmt == "svg" else None
    with matplotlib.rc_context({"svg.hashsalt": "unknotter", "svg.fonttype": "none"}):
        fig.savefig(path, format=fmt, metadata=metadata)
    return path


def _circle_axes(title: str):
    fig = Figure(figsize=(4, 4))
    ax = fig.add_subplot()
    ax.set_aspect("equal")
    ax.axis("off")
    ax.set_xlim(-1.35, 1.35)
    ax.set_ylim(-1.35, 1.35)
    t = [2 * math.pi * i / 200 for i in range(201)]
    ax.plot([math.cos(a) for a in t], [math.sin(a) for a in t], color="black", lw=1)
    ax.set_title(title, fontsize=9)
    return fig, ax


def _angle(slot: float, total: int) -> float:
    # slot 0 sits just clockwise of the top; points run counterclockwise
    return math.pi / 2 + 2 * math.pi * (slot + 0.5) / max(total, 1)


def _chord(ax, a: float, b: float, **kw):
    pa = (math.cos(a), math.sin(a))
    pb = (math.cos(b), math.sin(b))
    # quadratic Bezier through a control point pulled toward the centre
    mid = ((pa[0] + pb[0]) / 2, (pa[1] + pb[1]) / 2)
    gap = abs((b - a + math.pi) % (2 * math.pi) - math.pi)
    pull = 1 - gap / math.pi
    ctrl = (mid[0] * pull, mid[1] * pull)
    xs, ys = [], []
    for i in range(41):
        t = i / 40
        xs.append((1 - t) ** 2 * pa[0] + 2 * (1 - t) * t * ctrl[0] + t**2 * pb[0])
        ys.append((1 - t) ** 2 * pa[1] + 2 * (1 - t) * t * ctrl[1] + t**2 * pb[1])
    ax.plot(xs, ys, **kw)


def _basepoint(ax, gap: int, total: int):
    a = _angle(gap - 0.5, total)
    ax.plot([math.cos(a)], [math.sin(a)], marker="*", color="black", ms=12)
    ax.annotate("*", (1.18 * math.cos(a), 1.18 * math.sin(a)), ha="center", va="center", fontsize=9)


def render_chords(system: ChordSystem, path: str | Path) -> Path:
    """Circle with chords; partnered chords share a colour and ``*`` marks the basepoint."""
    problems = validate_chords(system)
    if problems:
        raise InvalidChordSystem("; ".join(problems))
    P = system.points
    fig, ax = _circle_axes(f"chord system, m = {system.m}")
    for i, (a, b) in enumerate(system.pairs):
        colour = _PALETTE(i % 20)
        for style, chord in (("-", a), ("--", b)):
            _chord(ax, _angle(chord[0], P), _angle(chord[1], P), color=colour, lw=2, ls=style)
    for p in range(P):
        a = _angle(p, P)
        ax.plot([math.cos(a)], [math.sin(a)], "o", color="black", ms=3)
        ax.annotate(str(p), (1.1 * math.cos(a), 1.1 * math.sin(a)), ha="center", va="center", fontsize=7)
    _basepoint(ax, system.basepoint if P else 0, max(P, 1))
    return _save(fig, path)


def render_gauss(diagram: ShadowDiagram | ResolvedDiagram, path: str | Path) -> Path:
    """Gauss diagram: word positions on a circle, one chord per crossing.

    For resolved diagrams the over-position end of each chord is drawn filled
    and the under end hollow.
    """
    resolved = isinstance(diagram, ResolvedDiagram)
    shadow = diagram.shadow if resolved else diagram
    L = len(shadow.word)
    fig, ax = _circle_axes(f"Gauss diagram, {shadow.crossing_count} crossings")
    for i, lab in enumerate(shadow.labels):
        p, q = shadow.positions(lab)
        _chord(ax, _angle(p, L), _angle(q, L), color=_PALETTE(i % 20), lw=1.5)
    for p, lab in enumerate(shadow.word):
        a = _angle(p, L)
        face = "black" if resolved and diagram.is_over(p) else "white"
        ax.plot([math.cos(a)], [math.sin(a)], "o", mfc=face, mec="black", ms=5)
        tag = ("O" if diagram.is_over(p) else "U") + lab if resolved else lab
        ax.annotate(tag, (1.12 * math.cos(a), 1.12 * math.sin(a)), ha="center", va="center", fontsize=7)
    _basepoint(ax, shadow.basepoint, max(L, 1))
    return _save(fig, path)


def render_profile(diagram: ResolvedDiagram, profile: HeightProfile, path: str | Path) -> Path:
    """Heights along the walk from the basepoint, with crossing passages labelled."""
    fig = Figure(figsize=(6, 3))
    ax = fig.add_subplot()
    vals = profile.walk_values() + [0.0]
    ax.plot(range(len(vals)), vals, color="black", marker="o", ms=3, lw=1)
    walk = diagram.shadow.walk()
    for k, p in enumerate(walk, start=1):
        tag = ("O" if diagram.is_over(p) else "U") + diagram.word[p]
        ax.annotate(tag, (k, vals[k]), textcoords="offset points", xytext=(0, 5), ha="center", fontsize=7)
    ax.set_xlabel("walk from *")
    ax.set_ylabel("height")
    ax.set_ylim(-0.05, 1.1)
    maxima, minima = profile.extrema()
    ax.set_title(f"height profile: {maxima} max, {minima} min", fontsize=9)
    return _save(fig, path)


def render_tree(tree: DissectionTree, path: str | Path) -> Path:
    """Dissection tree with leaves in dyadic order along the bottom."""
    nodes = tree.nodes()
    depth = max(len(n.subscript) for n in nodes)
    leaves = tree.leaves()
    xpos: dict[str, float] = {leaf.subscript: float(i) for i, leaf in enumerate(leaves)}
    for n in sorted(nodes, key=lambda n: -len(n.subscript)):
        if n.children:
            xpos[n.subscript] = sum(xpos[c.subscript] for c in n.children) / len(n.children)
    fig = Figure(figsize=(max(3, 0.9 * len(leaves) + 1), 1 + 0.9 * (depth + 1)))
    ax = fig.add_subplot()
    ax.axis("off")
    for n in nodes:
        for c in n.children:
            ax.plot([xpos[n.subscript], xpos[c.subscript]], [-len(n.subscript), -len(c.subscript)], color="grey")
    for n in nodes:
        colour = "tab:green" if not n.children else "tab:blue"
        x, y = xpos[n.subscript], -len(n.subscript)
        ax.plot([x], [y], "o", color=colour, ms=14)
        ax.annotate(n.name, (x, y), textcoords="offset points", xytext=(0, -16), ha="center", fontsize=7)
    ax.set_ylim(-depth - 0.8, 0.6)
    ax.set_xlim(-0.8, len(leaves) - 0.2)
    ax.set_title(f"dissection: {len(leaves)} leaves", fontsize=9)
    return _save(fig, path)
