"""Immersed loop diagrams: shadows, resolutions and height profiles.

Word positions are 0-based.  The basepoint is a *gap*: gap ``g`` sits between
positions ``g - 1`` and ``g`` (gap 0 sits between the last and the first
position), so it is never at a crossing.

Planar data follows the edge convention of the text format: edge ``k``
(1-based) is the piece of the loop that enters word position ``k - 1``.
Planar tuples are stored in counterclockwise order with slot 0 holding the
incoming edge of the earlier of the crossing's two positions, one tuple per
crossing in order of first occurrence in the word.

Text formats::

    1 2 * 1 2            unsigned Gauss word, '*' marks the basepoint gap
    O1 O2 O3 U1 U2 U3    resolved word
    P 1 4 2 5            shadow planar tuple (first slot: incoming edge of earlier visit)
    X 1 5 2 4            resolved planar tuple (first slot: incoming under-strand edge)

A file holds at most one word line and any number of tuple lines; blank
lines and ``#`` comments are ignored.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from . import pdcode
from .errors import InconsistentEdges, MalformedWord, NonPlanarCode

Tuple4 = tuple[int, int, int, int]


@dataclass(frozen=True)
class ShadowDiagram:
    word: tuple[str, ...]
    planar: tuple[Tuple4, ...] | None = None
    basepoint: int = 0

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))
        if self.planar is not None:
            object.__setattr__(self, "planar", tuple(tuple(t) for t in self.planar))
        if not self.word:
            object.__setattr__(self, "planar", None)

    def __len__(self) -> int:
        return len(self.word)

    @property
    def crossing_count(self) -> int:
        return len(self.word) // 2

    @property
    def labels(self) -> tuple[str, ...]:
        """Labels in order of first occurrence in the word."""
        return tuple(dict.fromkeys(self.word))

    def positions(self, label: str) -> tuple[int, int]:
        return self._positions()[label]

    def _positions(self) -> dict[str, tuple[int, ...]]:
        pos: dict[str, tuple[int, ...]] = {}
        for i, lab in enumerate(self.word):
            pos[lab] = pos.get(lab, ()) + (i,)
        return pos

    def walk(self) -> list[int]:
        """Word positions in the order met when walking from the basepoint."""
        L = len(self.word)
        return [(self.basepoint + i) % L for i in range(L)]

    def planar_of(self, label: str) -> Tuple4:
        if self.planar is None:
            raise KeyError(label)
        return self.planar[self.labels.index(label)]

    def rotated(self, k: int) -> "ShadowDiagram":
        """The same pointed diagram with the word rotated left by ``k`` positions."""
        L = len(self.word)
        if L == 0:
            return self
        k %= L
        word = self.word[k:] + self.word[:k]
        planar = None
        if self.planar is not None:
            renum = {e: (e - 1 - k) % L + 1 for e in range(1, L + 1)}
            by_label = {}
            for lab, t in zip(self.labels, self.planar):
                i, j = self.positions(lab)
                # slot 0 must hold the in-edge of whichever pass now comes first
                s = 0 if (i - k) % L < (j - k) % L else _later_in_slot(t, j)
                by_label[lab] = tuple(renum[t[(s + m) % 4]] for m in range(4))
            planar = tuple(by_label[lab] for lab in dict.fromkeys(word))
        return ShadowDiagram(word, planar, (self.basepoint - k) % L)

    def based_at_start(self) -> "ShadowDiagram":
        """Rotate so that the basepoint is gap 0."""
        return self.rotated(self.basepoint)

    def renumbered(self) -> "ShadowDiagram":
        """Relabel crossings ``1..n`` in first-visit order from the basepoint."""
        names: dict[str, str] = {}
        for p in self.walk():
            names.setdefault(self.word[p], str(len(names) + 1))
        return ShadowDiagram(tuple(names[x] for x in self.word), self.planar, self.basepoint)


class Resolution(Mapping):
    """Over-strand choice per crossing: label -> word position of the over-strand."""

    def __init__(self, over: Mapping[str, int] | Sequence[tuple[str, int]] = ()):
        self._over = dict(over)

    def __getitem__(self, label: str) -> int:
        return self._over[label]

    def __iter__(self) -> Iterator[str]:
        return iter(self._over)

    def __len__(self) -> int:
        return len(self._over)

    def __repr__(self) -> str:
        return f"Resolution({self._over!r})"

    def __hash__(self):
        return hash(frozenset(self._over.items()))


@dataclass(frozen=True)
class ResolvedDiagram:
    shadow: ShadowDiagram
    resolution: Resolution = field(default_factory=Resolution)

    @property
    def word(self) -> tuple[str, ...]:
        return self.shadow.word

    @property
    def crossing_count(self) -> int:
        return self.shadow.crossing_count

    def is_over(self, position: int) -> bool:
        return self.resolution[self.shadow.word[position]] == position

    def signed_word(self) -> tuple[str, ...]:
        return tuple(("O" if self.is_over(i) else "U") + lab for i, lab in enumerate(self.shadow.word))

    def rotated(self, k: int) -> "ResolvedDiagram":
        L = len(self.shadow.word)
        if L == 0:
            return self
        k %= L
        over = {lab: (p - k) % L for lab, p in self.resolution.items()}
        return ResolvedDiagram(self.shadow.rotated(k), Resolution(over))

    def planar_code(self) -> tuple[Tuple4, ...]:
        """Oriented ``X`` tuples (slot 0 = incoming under-strand), in label order."""
        sh = self.shadow
        if sh.planar is None:
            raise ValueError("no planar data")
        out = []
        for lab, t in zip(sh.labels, sh.planar):
            i, j = sh.positions(lab)
            if self.resolution[lab] == j:
                out.append(t)
            else:
                s = _later_in_slot(t, j)
                out.append(tuple(t[(s + m) % 4] for m in range(4)))
        return tuple(out)


@dataclass(frozen=True)
class HeightProfile:
    """Heights in (0, 1) per word position; the basepoint sits at height 0.

    The collar width is normalised to 1, so only the relative order of the
    values means anything.
    """

    heights: tuple[float, ...]
    basepoint: int = 0

    def walk_values(self) -> list[float]:
        L = len(self.heights)
        return [0.0] + [self.heights[(self.basepoint + i) % L] for i in range(L)]

    def extrema(self) -> tuple[int, int]:
        """(local maxima, local minima) of the cyclic walk sequence."""
        return count_extrema(self.walk_values())


def count_extrema(values: Sequence[float]) -> tuple[int, int]:
    """Count strict turning points of a cyclic sequence of distinct values.

    A constant (single-value) sequence is a circle function with one maximum
    and one minimum.
    """
    L = len(values)
    if L < 2:
        return 1, 1
    maxima = minima = 0
    for i in range(L):
        a, b, c = values[i - 1], values[i], values[(i + 1) % L]
        if b > a and b > c:
            maxima += 1
        elif b < a and b < c:
            minima += 1
    return maxima, minima


# ---------------------------------------------------------------- validation


def validate(diagram) -> list[str]:
    """Violated invariants of a shadow, resolved diagram or (diagram, profile) pair."""
    if isinstance(diagram, ResolvedDiagram):
        return _validate_resolved(diagram)
    if isinstance(diagram, ShadowDiagram):
        return _validate_shadow(diagram)
    raise TypeError(f"cannot validate {type(diagram).__name__}")


def _validate_shadow(sh: ShadowDiagram) -> list[str]:
    out = []
    counts: dict[str, int] = {}
    for lab in sh.word:
        counts[lab] = counts.get(lab, 0) + 1
    for lab, k in counts.items():
        if k != 2:
            out.append(f"label {lab!r} occurs {k} times")
    L = len(sh.word)
    if not (0 <= sh.basepoint < max(L, 1)):
        out.append(f"basepoint gap {sh.basepoint} outside [0, {max(L, 1)})")
    if sh.planar is not None and not out:
        out.extend(_planar_violations(sh))
    return out


def _planar_violations(sh: ShadowDiagram) -> list[str]:
    n, L = sh.crossing_count, len(sh.word)
    if len(sh.planar) != n:
        return [f"planar data has {len(sh.planar)} crossings, word has {n}"]
    try:
        occ = pdcode.edge_occurrences(sh.planar)
    except InconsistentEdges as exc:
        return [str(exc)]
    if sorted(occ) != list(range(1, L + 1)):
        return [f"planar edge ids are not 1..{L}"]
    labels = sh.labels
    try:
        visits = pdcode.follow(sh.planar, occ, (0, 0))
    except (InconsistentEdges, ValueError) as exc:
        return [f"planar traversal fails: {exc}"]
    traced = tuple(labels[c] for c, _ in visits)
    entered = [sh.planar[c][s] for c, s in visits]
    if traced != sh.word or entered != list(range(1, L + 1)):
        return ["planar traversal does not reproduce the word"]
    if not pdcode.is_planar(sh.planar):
        return ["planar data does not embed in the sphere"]
    return []


def _validate_resolved(rd: ResolvedDiagram) -> list[str]:
    out = _validate_shadow(rd.shadow)
    labels = set(rd.shadow.word)
    pos = rd.shadow._positions()
    for lab in sorted(labels - set(rd.resolution)):
        out.append(f"crossing {lab!r} has no resolution")
    for lab in sorted(set(rd.resolution) - labels):
        out.append(f"resolution names unknown crossing {lab!r}")
    for lab in sorted(labels & set(rd.resolution)):
        if rd.resolution[lab] not in pos[lab]:
            out.append(f"crossing {lab!r} resolved at position {rd.resolution[lab]}, not one of {pos[lab]}")
    return out


def validate_profile(rd: ResolvedDiagram, profile: HeightProfile) -> list[str]:
    out = []
    L = len(rd.word)
    if len(profile.heights) != L:
        return [f"profile has {len(profile.heights)} heights for {L} positions"]
    if profile.basepoint != rd.shadow.basepoint:
        out.append("profile basepoint differs from diagram basepoint")
    for i, h in enumerate(profile.heights):
        if not 0.0 < h < 1.0:
            out.append(f"height {h} at position {i} outside (0, 1)")
    if len(set(profile.heights)) != L:
        out.append("heights are not distinct")
    for lab, p in rd.resolution.items():
        i, j = rd.shadow.positions(lab)
        q = j if p == i else i
        if not profile.heights[p] > profile.heights[q]:
            out.append(f"crossing {lab!r}: over height not above under height")
    return out


# ------------------------------------------------------------------- parsing


def _strip(text: str) -> list[str]:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    return lines


def _word_tokens(line: str) -> tuple[list[str], int | None]:
    toks = line.split()
    stars = [i for i, t in enumerate(toks) if t == "*"]
    if len(stars) > 1:
        raise MalformedWord("more than one basepoint marker")
    gap = None
    if stars:
        gap = stars[0]
        del toks[gap]
    if toks and gap == len(toks):
        gap = 0
    return toks, gap


def _check_counts(word: Sequence[str]) -> None:
    counts: dict[str, int] = {}
    for lab in word:
        counts[lab] = counts.get(lab, 0) + 1
    bad = {lab: k for lab, k in counts.items() if k != 2}
    if bad:
        raise MalformedWord("labels not occurring exactly twice: " + ", ".join(f"{lab}x{k}" for lab, k in bad.items()))


def _check_basepoint(word, basepoint) -> int:
    L = len(word)
    if basepoint is None:
        return 0
    if L == 0:
        if basepoint != 0:
            raise MalformedWord("the 0-crossing diagram only has basepoint gap 0")
        return 0
    if not 0 <= basepoint < L:
        raise MalformedWord(f"basepoint gap {basepoint} outside [0, {L})")
    return basepoint


def parse_gauss_shadow(text: str, basepoint: int | None = None) -> ShadowDiagram:
    """Parse an unsigned Gauss word.  Whitespace-only text is the 0-crossing loop."""
    lines = _strip(text)
    toks, gap = _word_tokens(" ".join(lines))
    _check_counts(toks)
    bp = _check_basepoint(toks, basepoint if basepoint is not None else gap)
    return ShadowDiagram(tuple(toks), None, bp)


def _split_signed(toks: Sequence[str]) -> tuple[list[str], list[bool]] | None:
    if not toks or not all(len(t) > 1 and t[0] in "OU" for t in toks):
        return None
    labels = [t[1:] for t in toks]
    over = [t[0] == "O" for t in toks]
    pos: dict[str, list[bool]] = {}
    for lab, o in zip(labels, over):
        pos.setdefault(lab, []).append(o)
    if any(sorted(v) != [False, True] for v in pos.values()):
        return None
    return labels, over


def parse_resolved_word(text: str, basepoint: int | None = None) -> ResolvedDiagram:
    toks, gap = _word_tokens(" ".join(_strip(text)))
    if not toks:
        return ResolvedDiagram(ShadowDiagram((), None, 0), Resolution())
    split = _split_signed(toks)
    if split is None:
        _check_counts([t[1:] if t[:1] in ("O", "U") else t for t in toks])
        raise MalformedWord("each crossing needs one O and one U occurrence")
    labels, over = split
    _check_counts(labels)
    bp = _check_basepoint(labels, basepoint if basepoint is not None else gap)
    res = Resolution({lab: i for i, (lab, o) in enumerate(zip(labels, over)) if o})
    return ResolvedDiagram(ShadowDiagram(tuple(labels), None, bp), res)


def _parse_tuple_lines(lines: Sequence[str], tag: str) -> list[Tuple4]:
    out = []
    for line in lines:
        toks = line.split()
        if toks[0] != tag:
            raise InconsistentEdges(f"mixed planar line kinds: {line!r}")
        try:
            vals = tuple(int(t) for t in toks[1:])
        except ValueError:
            raise InconsistentEdges(f"non-integer edge id in {line!r}") from None
        if len(vals) != 4:
            raise InconsistentEdges(f"expected four edge ids in {line!r}")
        out.append(vals)
    return out


def _head_of_edge_one(tuples, occ, L) -> tuple[int, int]:
    if 1 not in occ:
        raise InconsistentEdges(f"planar edge ids are not 1..{L}")
    nxt = 2 if L > 2 else None
    for c, s in sorted(occ[1]):
        if nxt is None or tuples[c][(s + 2) % 4] == nxt:
            return c, s
    raise InconsistentEdges("edge 1 is not followed by edge 2 at any crossing")


def _trace_tuples(tuples: list[Tuple4], oriented: bool):
    """Traverse raw tuples; return (word of crossing indices, in-slot per position)."""
    n, L = len(tuples), 2 * len(tuples)
    occ = pdcode.edge_occurrences(tuples)
    if sorted(occ) != list(range(1, L + 1)):
        raise InconsistentEdges(f"planar edge ids are not 1..{L}")
    if oriented:
        visits = pdcode.follow(tuples, occ, (0, 0))
        k = [tuples[c][s] for c, s in visits].index(1)
        visits = visits[k:] + visits[:k]
    else:
        visits = pdcode.follow(tuples, occ, _head_of_edge_one(tuples, occ, L))
    entered = [tuples[c][s] for c, s in visits]
    if entered != list(range(1, L + 1)):
        raise InconsistentEdges("edges are not numbered 1..2n along the loop")
    if oriented:
        for c, s in visits:
            if s == 2:
                raise InconsistentEdges(f"crossing {c + 1}: under-strand runs against the edge numbering")
    return visits


def _tuples_to_diagram(tuples: list[Tuple4], oriented: bool, names: Sequence[str] | None = None):
    visits = _trace_tuples(tuples, oriented)
    order: dict[int, int] = {}
    for c, _ in visits:
        order.setdefault(c, len(order))
    if names is None:
        label_of = {c: str(k + 1) for c, k in order.items()}
    else:
        label_of = {}
        for (c, _), name in zip(visits, names):
            if label_of.setdefault(c, name) != name:
                raise InconsistentEdges("planar code does not match the word line")
        if len(set(label_of.values())) != len(label_of):
            raise InconsistentEdges("planar code does not match the word line")
    word = tuple(label_of[c] for c, _ in visits)
    first_slot: dict[int, int] = {}
    over_pos: dict[str, int] = {}
    for pos, (c, s) in enumerate(visits):
        first_slot.setdefault(c, s)
        if oriented and s != 0:
            over_pos[label_of[c]] = pos
    planar = [None] * len(tuples)
    for c, k in order.items():
        s = first_slot[c]
        planar[k] = tuple(tuples[c][(s + m) % 4] for m in range(4))
    if not pdcode.is_planar(planar):
        raise NonPlanarCode("rotation system does not embed in the sphere")
    shadow = ShadowDiagram(word, tuple(planar), 0)
    return shadow, Resolution(over_pos)


def parse_pd_shadow(text: str) -> ShadowDiagram:
    """Parse ``P a b c d`` lines (counterclockwise, edges numbered along the loop).

    Tuples may start at any slot; they are rotated into the stored convention.
    Crossings are labelled ``1..n`` by first visit along edge 1.
    """
    lines = _strip(text)
    tuples = _parse_tuple_lines([ln if ln.split()[0] == "P" else "P " + ln for ln in lines], "P")
    shadow, _ = _tuples_to_diagram(tuples, oriented=False)
    return shadow


def parse(text: str, basepoint: int | None = None) -> ShadowDiagram | ResolvedDiagram:
    """Parse any of the supported formats, detecting shadow vs resolved input."""
    lines = _strip(text)
    tuple_lines = [ln for ln in lines if ln.split()[0] in ("P", "X")]
    word_lines = [ln for ln in lines if ln.split()[0] not in ("P", "X")]
    if len(word_lines) > 1:
        raise MalformedWord("more than one word line")
    word_line = word_lines[0] if word_lines else ""
    if not tuple_lines:
        toks, _ = _word_tokens(word_line)
        if _split_signed(toks) is not None:
            return parse_resolved_word(word_line, basepoint)
        return parse_gauss_shadow(word_line, basepoint)
    tag = tuple_lines[0].split()[0]
    tuples = _parse_tuple_lines(tuple_lines, tag)
    if not word_line:
        shadow, res = _tuples_to_diagram(tuples, oriented=(tag == "X"))
        if basepoint is not None:
            shadow = ShadowDiagram(shadow.word, shadow.planar, _check_basepoint(shadow.word, basepoint))
        return ResolvedDiagram(shadow, res) if tag == "X" else shadow
    if tag == "P":
        base = parse_gauss_shadow(word_line, basepoint)
        shadow, _ = _tuples_to_diagram(tuples, oriented=False, names=base.word)
        return ShadowDiagram(shadow.word, shadow.planar, base.basepoint)
    base = parse_resolved_word(word_line, basepoint)
    shadow, res = _tuples_to_diagram(tuples, oriented=True, names=base.word)
    if dict(res) != dict(base.resolution):
        raise InconsistentEdges("X tuples disagree with the O/U word")
    return ResolvedDiagram(ShadowDiagram(shadow.word, shadow.planar, base.shadow.basepoint), res)


# ------------------------------------------------------------- serialization


def _word_line(tokens: Sequence[str], basepoint: int) -> str:
    toks = list(tokens)
    if toks and basepoint:
        toks.insert(basepoint, "*")
    return " ".join(toks)


def serialize(diagram: ShadowDiagram | ResolvedDiagram) -> str:
    """Text form that :func:`parse` reads back to an equal object."""
    if isinstance(diagram, ResolvedDiagram):
        sh = diagram.shadow
        lines = [_word_line(diagram.signed_word(), sh.basepoint)]
        if sh.planar is not None:
            lines += ["X " + " ".join(map(str, t)) for t in diagram.planar_code()]
    else:
        sh = diagram
        lines = [_word_line(sh.word, sh.basepoint)]
        if sh.planar is not None:
            lines += ["P " + " ".join(map(str, t)) for t in sh.planar]
    return "\n".join(lines)


def to_pd_text(diagram: ShadowDiagram | ResolvedDiagram) -> str:
    """Tuple lines only (crossing names are dropped)."""
    if isinstance(diagram, ResolvedDiagram):
        if diagram.shadow.planar is None:
            raise ValueError("no planar data")
        return "\n".join("X " + " ".join(map(str, t)) for t in diagram.planar_code())
    if diagram.planar is None:
        raise ValueError("no planar data")
    return "\n".join("P " + " ".join(map(str, t)) for t in diagram.planar)


# ------------------------------------------------------------------- helpers


def _later_in_slot(t: Tuple4, j: int) -> int:
    """Slot (1 or 3) holding the edge entering the later position ``j``."""
    e = j + 1
    for s in (1, 3):
        if t[s] == e:
            return s
    raise InconsistentEdges(f"tuple {t} does not carry edge {e} on its second strand")


def resolved_from_over_positions(shadow: ShadowDiagram, over_positions) -> ResolvedDiagram:
    return ResolvedDiagram(shadow, Resolution({shadow.word[p]: p for p in over_positions}))
