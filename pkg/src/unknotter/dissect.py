"""Dissection of a disk with double arcs into a dyadic tree of simpler disks.

A :class:`ChordSystem` is the domain picture of a disk map whose only
singularities are double arcs: ``4m`` marked boundary points ``0..4m-1``
joined by ``2m`` pairwise non-crossing chords, the chords partnered in ``m``
pairs.  A pair ``((a1, a2), (b1, b2))`` says chord ``(a1, a2)`` and chord
``(b1, b2)`` map to the same double arc with ``a1`` matched to ``b1`` and
``a2`` to ``b2``; each matched couple of points is one crossing of the
boundary loop.  The boundary is read from the basepoint gap ``g`` (the gap just
before point ``g``), so the loop's word is indexed by point id.

Each dissection step picks the outermost chord with the lowest position after
the basepoint, cuts along its partner, and produces two children: ``0``, the
side of the partner away from the basepoint, and ``1``, the rest.  Leaves have
no chords.  Leaves in dyadic order of their subscripts form the great
sequence.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .diagram import Resolution, ResolvedDiagram, ShadowDiagram
from .errors import IncompleteTree, InvalidChordSystem, NotAStep

Chord = tuple[int, int]
Pair = tuple[Chord, Chord]


@dataclass(frozen=True)
class ChordSystem:
    points: int
    pairs: tuple[Pair, ...]
    basepoint: int = 0

    def __post_init__(self):
        object.__setattr__(
            self, "pairs", tuple((tuple(a), tuple(b)) for a, b in (tuple(p) for p in self.pairs))
        )

    @property
    def m(self) -> int:
        return len(self.pairs)

    @property
    def chords(self) -> tuple[Chord, ...]:
        return tuple(c for pair in self.pairs for c in pair)

    def walk(self) -> list[int]:
        return [(self.basepoint + i) % self.points for i in range(self.points)] if self.points else []

    def crossings(self) -> list[tuple[int, int]]:
        """Matched point couples, one per crossing of the boundary loop."""
        return [(a[k], b[k]) for a, b in self.pairs for k in (0, 1)]

    def crossing_labels(self) -> dict[int, str]:
        """Point id -> crossing label, labels ``1..2m`` in first-visit order from the basepoint."""
        other = {}
        for p, q in self.crossings():
            other[p], other[q] = q, p
        labels: dict[int, str] = {}
        count = 0
        for p in self.walk():
            if p not in labels:
                count += 1
                labels[p] = labels[other[p]] = str(count)
        return labels

    def gamma(self) -> ShadowDiagram:
        """The boundary loop as a shadow; word position ``p`` is point ``p``."""
        labels = self.crossing_labels()
        return ShadowDiagram(tuple(labels[p] for p in range(self.points)), None, self.basepoint)

    def to_json(self) -> str:
        return json.dumps(
            {"points": self.points, "basepoint": self.basepoint, "pairs": [[list(a), list(b)] for a, b in self.pairs]}
        )

    @classmethod
    def from_json(cls, text: str) -> "ChordSystem":
        try:
            raw = json.loads(text)
            return cls(int(raw["points"]), tuple(raw["pairs"]), int(raw.get("basepoint", 0)))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidChordSystem(f"bad chord-system record: {exc}") from None


def _interleave(c: Chord, d: Chord) -> bool:
    a, b = sorted(c)
    x, y = sorted(d)
    return (a < x < b) != (a < y < b)


def validate_chords(system: ChordSystem) -> list[str]:
    out = []
    P = system.points
    if P != 4 * system.m:
        out.append(f"{P} marked points for {system.m} pairs; expected {4 * system.m}")
    if not (0 <= system.basepoint < max(P, 1)):
        out.append(f"basepoint gap {system.basepoint} outside [0, {max(P, 1)})")
    seen: dict[int, int] = {}
    for a, b in system.pairs:
        if len(a) != 2 or len(b) != 2:
            out.append("every chord needs two endpoints")
            return out
        if sorted(a) == sorted(b):
            out.append(f"chord {a} is partnered with itself")
        for p in (*a, *b):
            seen[p] = seen.get(p, 0) + 1
    for p, k in sorted(seen.items()):
        if not 0 <= p < P:
            out.append(f"point {p} outside 0..{P - 1}")
        elif k != 1:
            out.append(f"point {p} lies on {k} chord ends")
    for p in range(P):
        if p not in seen:
            out.append(f"point {p} lies on no chord")
    chords = system.chords
    for i, c in enumerate(chords):
        if c[0] == c[1]:
            out.append(f"chord {c} is degenerate")
        for d in chords[i + 1 :]:
            if _interleave(c, d):
                out.append(f"chords {c} and {d} cross")
    return out


# ------------------------------------------------------------------- the tree


@dataclass(frozen=True)
class Step:
    """Data of one dissection step; points are original ids."""

    beta: Chord
    beta_partner: Chord
    d1: tuple[int, ...]
    d1_prime: tuple[int, ...]
    case: int
    resolved: tuple[tuple[str, int], ...]
    split_pairs: tuple[Pair, ...]


@dataclass(frozen=True)
class DissectionNode:
    subscript: str
    points: tuple[int, ...]  # original point ids, in order from this node's basepoint
    pairs: tuple[Pair, ...]
    step: Step | None = None
    children: tuple["DissectionNode", ...] = ()

    @property
    def is_leaf(self) -> bool:
        return not self.pairs

    @property
    def name(self) -> str:
        return f"F{self.subscript}" if self.subscript else "F"

    def local_system(self) -> ChordSystem:
        """This node's chords renumbered as a standalone system (basepoint at gap 0)."""
        idx = {p: i for i, p in enumerate(self.points)}
        pairs = tuple((tuple(idx[p] for p in a), tuple(idx[p] for p in b)) for a, b in self.pairs)
        return ChordSystem(len(self.points), pairs, 0)

    def nodes(self):
        yield self
        for child in self.children:
            yield from child.nodes()

    def leaves(self):
        if not self.children:
            yield self
        for child in self.children:
            yield from child.leaves()


@dataclass(frozen=True)
class IsotopyStep:
    index: int
    leaf: str

    def describe(self) -> str:
        return f"collapse F{self.leaf} to its basepoint"


@dataclass(frozen=True)
class GreatSequence:
    leaves: tuple[DissectionNode, ...]
    resolution: Resolution
    trace: tuple[IsotopyStep, ...]

    @property
    def subscripts(self) -> tuple[str, ...]:
        return tuple(leaf.subscript for leaf in self.leaves)

    def __len__(self) -> int:
        return len(self.leaves)


@dataclass(frozen=True)
class DissectionTree:
    system: ChordSystem
    root: DissectionNode

    def nodes(self) -> list[DissectionNode]:
        return list(self.root.nodes())

    def leaves(self) -> list[DissectionNode]:
        return sorted(self.root.leaves(), key=lambda n: dyadic_value(n.subscript))


def dyadic_value(subscript: str) -> Fraction:
    """Value of ``0.<subscript>`` read in base 2."""
    return sum((Fraction(1, 2 ** (i + 1)) for i, ch in enumerate(subscript) if ch == "1"), Fraction(0))


def _positions(points: Sequence[int]) -> dict[int, int]:
    return {p: i for i, p in enumerate(points)}


def _chord_span(chord: Chord, pos: dict[int, int]) -> tuple[int, int]:
    i, j = pos[chord[0]], pos[chord[1]]
    return (i, j) if i < j else (j, i)


def _split(node_points, node_pairs, subscript, labels, sink) -> DissectionNode:
    if not node_pairs:
        return DissectionNode(subscript, tuple(node_points), ())
    pos = _positions(node_points)
    # outermost chords are those joining neighbouring points; the side cut off
    # never holds the basepoint because the list starts right after it
    best = None
    for pi, (a, b) in enumerate(node_pairs):
        for which, chord in enumerate((a, b)):
            i, j = _chord_span(chord, pos)
            if j == i + 1 and (best is None or i < best[0]):
                best = (i, pi, which)
    assert best is not None, "a non-crossing chord system always has an outermost chord"
    _, pi, which = best
    pair = node_pairs[pi]
    beta, beta_p = pair[which], pair[1 - which]
    k, l = _chord_span(beta_p, pos)
    inside = set(node_points[k + 1 : l])
    bi, bj = _chord_span(beta, pos)
    case = 2 if k < bi and bj < l else 1

    resolved = []
    for t in (0, 1):
        over = beta[t]
        resolved.append((labels[over], over))
    zero_pairs, one_pairs, split_pairs = [], [], []
    for qi, (a, b) in enumerate(node_pairs):
        if qi == pi:
            continue
        a_in, b_in = a[0] in inside, b[0] in inside
        if a_in and b_in:
            zero_pairs.append((a, b))
        elif not a_in and not b_in:
            one_pairs.append((a, b))
        else:
            split_pairs.append((a, b))
            inner = a if a_in else b
            for t in (0, 1):
                resolved.append((labels[inner[t]], inner[t]))
    kept0 = {p for q in zero_pairs for c in q for p in c}
    kept1 = {p for q in one_pairs for c in q for p in c}
    points0 = [p for p in node_points[k + 1 : l] if p in kept0]
    points1 = [p for p in node_points[:k] + node_points[l + 1 :] if p in kept1]
    step = Step(
        beta=beta,
        beta_partner=beta_p,
        d1=(),
        d1_prime=tuple(node_points[k + 1 : l]),
        case=case,
        resolved=tuple(resolved),
        split_pairs=tuple(split_pairs),
    )
    sink.append(step)
    child0 = _split(points0, tuple(zero_pairs), subscript + "0", labels, sink)
    child1 = _split(points1, tuple(one_pairs), subscript + "1", labels, sink)
    if not (len(child0.pairs) < len(node_pairs) and len(child1.pairs) < len(node_pairs)):
        raise AssertionError("dissection did not reduce the number of double arcs")  # pragma: no cover
    return DissectionNode(subscript, tuple(node_points), tuple(node_pairs), step, (child0, child1))


def dissect(system: ChordSystem) -> tuple[DissectionTree, GreatSequence]:
    problems = validate_chords(system)
    if problems:
        raise InvalidChordSystem("; ".join(problems))
    labels = system.crossing_labels()
    root = _split(system.walk(), system.pairs, "", labels, [])
    tree = DissectionTree(system, root)
    return tree, great_sequence(tree)


def great_sequence(tree: DissectionTree) -> GreatSequence:
    leaves = tuple(tree.leaves())
    trace = tuple(IsotopyStep(i + 1, leaf.subscript) for i, leaf in enumerate(leaves))
    return GreatSequence(leaves, induced_resolution(tree), trace)


def case_classify(node: DissectionNode) -> int:
    """1 when the cut-off disk lies outside the partner's far side, 2 when inside."""
    if node.step is None:
        raise NotAStep(f"{node.name} has no chords, so no dissection step")
    return node.step.case


def induced_resolution(tree: DissectionTree) -> Resolution:
    """Over-point for every crossing of the boundary loop, read off the steps."""
    over: dict[str, int] = {}
    for node in tree.nodes():
        if node.pairs and (node.step is None or len(node.children) != 2):
            raise IncompleteTree(f"{node.name} has double arcs but was not split")
        if not node.pairs and node.children:
            raise IncompleteTree(f"{node.name} is chord-free but has children")
        if node.step is None:
            continue
        for label, p in node.step.resolved:
            if label in over:
                raise IncompleteTree(f"crossing {label} resolved twice")
            over[label] = p
    expected = set(tree.system.crossing_labels().values())
    missing = expected - set(over)
    if missing:
        raise IncompleteTree(f"crossings left unresolved: {sorted(missing, key=int)}")
    return Resolution(over)


def induced_diagram(tree: DissectionTree) -> ResolvedDiagram:
    return ResolvedDiagram(tree.system.gamma(), induced_resolution(tree))


# --------------------------------------------------------------- generators


def _random_matching(rng: random.Random, npoints: int) -> list[Chord]:
    # cyclic lemma: rotating any bracket word with one extra opener to its
    # unique valid rotation gives a uniform Dyck word
    half = npoints // 2
    word = [1] * (half + 1) + [-1] * half
    rng.shuffle(word)
    depth, low, cut = 0, 0, 0
    for i, x in enumerate(word):
        depth += x
        if depth <= low:
            low, cut = depth, i + 1
    word = word[cut:] + word[:cut]
    word = word[1:]
    stack, chords = [], []
    for p, x in enumerate(word):
        if x == 1:
            stack.append(p)
        else:
            chords.append((stack.pop(), p))
    return chords


def random_chord_system(rng: random.Random, m: int) -> ChordSystem:
    """Random valid system with ``m`` pairs and a random basepoint."""
    npoints = 4 * m
    chords = _random_matching(rng, npoints)
    rng.shuffle(chords)
    pairs = []
    for i in range(m):
        a, b = chords[2 * i], chords[2 * i + 1]
        if rng.random() < 0.5:
            a = a[::-1]
        if rng.random() < 0.5:
            b = b[::-1]
        pairs.append((a, b))
    bp = rng.randrange(npoints) if npoints else 0
    return ChordSystem(npoints, tuple(pairs), bp)


def sequence_table(seq: GreatSequence) -> Iterable[str]:
    """Tab-separated leaf, resolution and trace tables."""
    yield "leaf\tsubscript\tpoints"
    for i, leaf in enumerate(seq.leaves):
        yield f"{i + 1}\t{leaf.subscript or '-'}\t{' '.join(map(str, leaf.points))}"
    yield ""
    yield "crossing\tover_point"
    for label in sorted(seq.resolution, key=int):
        yield f"{label}\t{seq.resolution[label]}"
    yield ""
    yield "step\tleaf\taction"
    for st in seq.trace:
        yield f"I{st.index}\t{st.leaf or '-'}\t{st.describe()}"
