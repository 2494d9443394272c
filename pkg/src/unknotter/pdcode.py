"""Planar-code primitives shared by the parser and the verifier.

A planar code is a sequence of crossings, each a 4-tuple of edge ids in
counterclockwise order.  Every edge id occurs exactly twice.  The verifier
works with *oriented* codes where slot 0 of every tuple is the incoming
under-strand edge (the usual ``X a b c d`` convention); move construction
produces raw tuples together with an ``under parity`` per crossing (slots
``p`` and ``p + 2`` carry the under-strand) and :func:`canonical` restores
orientation.

Half-edges are ``(crossing, slot)`` pairs.  A *visit* is the half-edge through
which the loop enters a crossing.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import DisconnectedTraversal, InconsistentEdges

Tuple4 = tuple[int, int, int, int]
PD = tuple[Tuple4, ...]
HalfEdge = tuple[int, int]


def edge_occurrences(tuples: Sequence[Sequence[int]]) -> dict[int, list[HalfEdge]]:
    occ: dict[int, list[HalfEdge]] = {}
    for c, tup in enumerate(tuples):
        if len(tup) != 4:
            raise InconsistentEdges(f"crossing {c + 1} has {len(tup)} edges, expected 4")
        for s, e in enumerate(tup):
            occ.setdefault(e, []).append((c, s))
    bad = sorted(e for e, where in occ.items() if len(where) != 2)
    if bad:
        raise InconsistentEdges(f"edge ids not occurring exactly twice: {bad}")
    return occ


def partner(tuples: Sequence[Sequence[int]], occ: dict[int, list[HalfEdge]], h: HalfEdge) -> HalfEdge:
    a, b = occ[tuples[h[0]][h[1]]]
    return b if a == h else a


def follow(tuples: Sequence[Sequence[int]], occ: dict[int, list[HalfEdge]], start: HalfEdge) -> list[HalfEdge]:
    """Walk the loop from the visit ``start`` and return every visit in order.

    Raises DisconnectedTraversal when the walk closes before visiting every
    crossing twice.
    """
    visits = []
    cur = start
    limit = 2 * len(tuples)
    while True:
        visits.append(cur)
        c, s = cur
        cur = partner(tuples, occ, (c, (s + 2) % 4))
        if cur == start:
            break
        if len(visits) > limit:  # pragma: no cover - follow() is a permutation cycle
            raise DisconnectedTraversal("walk does not close")
    if len(visits) != limit:
        raise DisconnectedTraversal(
            f"loop through edge {tuples[start[0]][start[1]]} visits {len(visits)} of {limit} crossing passages"
        )
    seen: dict[int, list[int]] = {}
    for c, s in visits:
        seen.setdefault(c, []).append(s)
    for c, slots in seen.items():
        if len(slots) != 2 or slots[0] % 2 == slots[1] % 2:
            raise InconsistentEdges(f"crossing {c + 1} is not passed once along each strand")
    return visits


def faces(pd: Sequence[Sequence[int]]) -> list[tuple[HalfEdge, ...]]:
    """Faces of the 4-valent map, each a cycle of darts with the face on the left.

    A dart is named by the half-edge it leaves from.  Faces start at their
    smallest dart and are listed in order of that dart.
    """
    occ = edge_occurrences(pd)
    seen: set[HalfEdge] = set()
    out = []
    for c in range(len(pd)):
        for s in range(4):
            h = (c, s)
            if h in seen:
                continue
            face = []
            while h not in seen:
                seen.add(h)
                face.append(h)
                d, t = partner(pd, occ, h)
                h = (d, (t - 1) % 4)
            out.append(tuple(face))
    return out


def is_planar(pd: Sequence[Sequence[int]]) -> bool:
    # Euler characteristic of the sphere: V - E + F = n - 2n + F = 2
    if not pd:
        return True
    return len(faces(pd)) == len(pd) + 2


def _visit_info(tuples, parity, visits):
    ins: dict[int, list[int]] = {}
    for c, s in visits:
        ins.setdefault(c, []).append(s)
    info = []
    for c, s in visits:
        a, b = ins[c]
        other = b if s == a else a
        info.append((c, s, s % 2 != parity[c], (other - s) % 4))
    return info


def _encode(seq, with_over: bool = True) -> tuple[int, ...]:
    labels: dict[int, int] = {}
    out = []
    for c, _s, over, off in seq:
        lab = labels.setdefault(c, len(labels))
        out.append(lab * 4 + (over and with_over) * 2 + (off == 1))
    return tuple(out)


def canonical(
    tuples: Sequence[Sequence[int]],
    parity: Sequence[int] | None = None,
    with_over: bool = True,
) -> tuple[tuple[int, ...], PD]:
    """Canonical code and canonical oriented planar code of a knot diagram.

    The code is minimal over the starting passage and the loop orientation,
    and is independent of edge and crossing names.  Each passage is encoded
    as ``label * 4 + over * 2 + side`` where ``side`` records from which side
    the other strand crosses (``over`` is dropped when ``with_over`` is false,
    for shadows); the canonical planar code numbers edges
    ``1..2n`` from the chosen start and lists crossings by first visit.
    """
    n = len(tuples)
    if n == 0:
        return (), ()
    parity = list(parity) if parity is not None else [0] * n
    occ = edge_occurrences(tuples)
    visits = follow(tuples, occ, (0, parity[0]))
    forward = _visit_info(tuples, parity, visits)
    backward = [(c, (s + 2) % 4, over, off) for c, s, over, off in reversed(forward)]
    best = None
    best_seq = None
    L = len(forward)
    for seq in (forward, backward):
        for k in range(L):
            rot = seq[k:] + seq[:k]
            code = _encode(rot, with_over)
            if best is None or code < best:
                best, best_seq = code, rot
    newid = {}
    order: dict[int, int] = {}
    under_in: dict[int, int] = {}
    for k, (c, s, over, _off) in enumerate(best_seq):
        newid[tuples[c][s]] = k + 1
        order.setdefault(c, len(order))
        if not over:
            under_in[c] = s
    pd = [None] * n
    for c, idx in order.items():
        u = under_in[c]
        t = tuples[c]
        pd[idx] = tuple(newid[t[(u + i) % 4]] for i in range(4))
    return best, tuple(pd)


def signs(pd: PD) -> list[int]:
    """Crossing signs of an oriented code: +1 when the over-strand enters at slot 3."""
    if not pd:
        return []
    occ = edge_occurrences(pd)
    out = [0] * len(pd)
    for c, s in follow(pd, occ, (0, 0)):
        if s == 3:
            out[c] = 1
        elif s == 1:
            out[c] = -1
    return out


def code_tokens(code: Iterable[int]) -> str:
    """Human-readable form of a canonical code: label, O/U, and crossing side."""
    toks = []
    for x in code:
        lab, over, side = x // 4 + 1, (x >> 1) & 1, x & 1
        toks.append(f"{'O' if over else 'U'}{lab}{'+' if side else '-'}")
    return " ".join(toks)
