"""Reidemeister moves on oriented planar codes.

A state is a canonical oriented code (see :func:`unknotter.pdcode.canonical`).
Moves are built on raw tuples plus a per-crossing under parity and then
re-canonicalised, so edge ids inside a move are free to be anything.

Faces are dart cycles with the face on the left; a dart is named by the
half-edge it leaves.  Every move is identified by a key ``(rank, params)``
whose natural order fixes the order in which the search tries moves.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .. import pdcode
from ..errors import IllegalMove

R1_DOWN, R2_DOWN, R3, R1_UP, R2_UP = range(5)
KIND_NAMES = {R1_DOWN: "R1-", R2_DOWN: "R2-", R3: "R3", R1_UP: "R1+", R2_UP: "R2+"}


@dataclass(frozen=True, order=True)
class Move:
    rank: int
    params: tuple

    @property
    def kind(self) -> str:
        return KIND_NAMES[self.rank]

    def describe(self) -> str:
        p = self.params
        if self.rank == R1_DOWN:
            return f"R1- remove kink at crossing {p[0] + 1}"
        if self.rank == R2_DOWN:
            return f"R2- remove bigon at crossings {p[0] + 1},{p[2] + 1}"
        if self.rank == R3:
            return f"R3 across triangle {p[0] + 1},{p[2] + 1},{p[4] + 1}"
        if self.rank == R1_UP:
            side = "under-first" if p[2] == 0 else "over-first"
            return f"R1+ kink on edge leaving crossing {p[0] + 1} slot {p[1]} ({side})"
        who = "first" if p[4] == 0 else "second"
        return f"R2+ push edges at {p[0] + 1}/{p[1]} and {p[2] + 1}/{p[3]}, {who} over"


def _over(pd, parity, c: int, s: int) -> bool:
    return s % 2 != parity[c]


class _UnionFind(dict):
    def find(self, x):
        root = x
        while self.get(root, root) != root:
            root = self[root]
        while x != root:
            self[x], x = root, self.get(x, x)
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self[max(ra, rb)] = min(ra, rb)


def _drop(pd, parity, gone: set[int], uf: _UnionFind):
    keep = [c for c in range(len(pd)) if c not in gone]
    return [tuple(uf.find(e) for e in pd[c]) for c in keep], [parity[c] for c in keep]


def _r1_down(pd, parity, c, s):
    if len(pd) == 1:
        return [], []
    uf = _UnionFind()
    uf.union(pd[c][(s + 2) % 4], pd[c][(s + 3) % 4])
    return _drop(pd, parity, {c}, uf)


def _r2_down(pd, parity, c1, s1, c2, t1):
    uf = _UnionFind()
    uf.union(pd[c1][(s1 + 2) % 4], pd[c2][(t1 + 2) % 4])
    uf.union(pd[c2][(t1 + 1) % 4], pd[c1][(s1 + 3) % 4])
    return _drop(pd, parity, {c1, c2}, uf)


def _r3(pd, parity, c1, s1, c2, t1, c3, t2):
    P = pd
    top = max(e for t in pd for e in t)
    n12, n23, n31 = top + 1, top + 2, top + 3
    new = [list(t) for t in pd]
    new[c1][s1] = P[c2][(t1 + 2) % 4]
    new[c1][(s1 + 2) % 4] = n12
    new[c1][(s1 + 1) % 4] = P[c3][(t2 + 1) % 4]
    new[c1][(s1 + 3) % 4] = n31
    new[c2][t1] = P[c1][(s1 + 2) % 4]
    new[c2][(t1 + 2) % 4] = n12
    new[c2][(t1 - 1) % 4] = P[c3][(t2 + 2) % 4]
    new[c2][(t1 + 1) % 4] = n23
    new[c3][t2] = P[c2][(t1 + 1) % 4]
    new[c3][(t2 + 2) % 4] = n23
    new[c3][(t2 - 1) % 4] = P[c1][(s1 + 3) % 4]
    new[c3][(t2 + 1) % 4] = n31
    return [tuple(t) for t in new], list(parity)


def _r1_up(pd, parity, occ, c, s, par):
    d, t = pdcode.partner(pd, occ, (c, s))
    top = max((e for tup in pd for e in tup), default=0)
    e_a, e_b, loop = pd[c][s], top + 1, top + 2
    new = [list(tup) for tup in pd]
    new[d][t] = e_b
    new.append([loop, loop, e_a, e_b])
    return [tuple(tup) for tup in new], list(parity) + [par]


def _r2_up(pd, parity, occ, u, w, par):
    v = pdcode.partner(pd, occ, u)
    x = pdcode.partner(pd, occ, w)
    e, f = pd[u[0]][u[1]], pd[w[0]][w[1]]
    top = max(e for tup in pd for e in tup)
    e_b, f_b, e_mid, f_mid = top + 1, top + 2, top + 3, top + 4
    new = [list(tup) for tup in pd]
    new[v[0]][v[1]] = e_b
    new[x[0]][x[1]] = f_b
    new.append([f_mid, e_mid, f_b, e])
    new.append([f, e_mid, f_mid, e_b])
    return [tuple(tup) for tup in new], list(parity) + [par, par]


def candidate_moves(pd, allow_increase: bool = True, cap: int | None = None) -> Iterator[tuple[Move, list, list]]:
    """Every legal move on ``pd`` with its raw result, in key order.

    Increasing moves are skipped when ``allow_increase`` is false or when
    they would exceed ``cap`` crossings.
    """
    n = len(pd)
    if n == 0:
        return
    kink_ok = allow_increase and (cap is None or n + 1 <= cap)
    finger_ok = allow_increase and (cap is None or n + 2 <= cap)
    parity = [0] * n
    occ = pdcode.edge_occurrences(pd)
    fs = pdcode.faces(pd)
    ups = []
    r1, r2, r3 = [], [], []
    for face in fs:
        if len(face) == 1:
            c, s = face[0]
            r1.append((Move(R1_DOWN, (c, s)), lambda c=c, s=s: _r1_down(pd, parity, c, s)))
        elif len(face) == 2:
            (c1, s1), (c2, u2) = face
            t1 = (u2 + 1) % 4
            if c1 != c2 and _over(pd, parity, c1, s1) == _over(pd, parity, c2, t1):
                r2.append(
                    (
                        Move(R2_DOWN, (c1, s1, c2, t1)),
                        lambda a=(c1, s1, c2, t1): _r2_down(pd, parity, *a),
                    )
                )
        elif len(face) == 3:
            (c1, s1), (c2, u2), (c3, u3) = face
            t1, t2 = (u2 + 1) % 4, (u3 + 1) % 4
            if len({c1, c2, c3}) == 3:
                strands = (
                    (_over(pd, parity, c1, s1), _over(pd, parity, c2, t1)),
                    (_over(pd, parity, c2, u2), _over(pd, parity, c3, t2)),
                    (_over(pd, parity, c3, u3), _over(pd, parity, c1, (s1 + 1) % 4)),
                )
                if any(a == b for a, b in strands):
                    args = (c1, s1, c2, t1, c3, t2)
                    r3.append((Move(R3, args), lambda a=args: _r3(pd, parity, *a)))
        if finger_ok:
            for i in range(len(face)):
                for j in range(i + 1, len(face)):
                    u, w = face[i], face[j]
                    if pd[u[0]][u[1]] == pd[w[0]][w[1]]:
                        continue
                    for par in (0, 1):
                        ups.append(
                            (
                                Move(R2_UP, (*u, *w, par)),
                                lambda u=u, w=w, par=par: _r2_up(pd, parity, occ, u, w, par),
                            )
                        )
    kinks = []
    if kink_ok:
        for c in range(n):
            for s in range(4):
                for par in (0, 1):
                    kinks.append((Move(R1_UP, (c, s, par)), lambda c=c, s=s, par=par: _r1_up(pd, parity, occ, c, s, par)))
    for move, build in sorted(r1 + r2 + r3 + kinks + ups, key=lambda mb: mb[0]):
        tuples, par = build()
        yield move, tuples, par


def apply(pd, move: Move):
    """Apply ``move`` to a canonical code; returns ``(code, canonical pd)``."""
    for m, tuples, par in candidate_moves(pd, allow_increase=move.rank >= R1_UP):
        if m == move:
            return pdcode.canonical(tuples, par)
    raise IllegalMove(f"{move.describe()} is not available")


def successors(pd, allow_increase: bool = True, cap: int | None = None):
    """Yield ``(move, code, canonical pd)`` for each legal move within the crossing cap."""
    for move, tuples, par in candidate_moves(pd, allow_increase, cap):
        code, cpd = pdcode.canonical(tuples, par)
        yield move, code, cpd
