"""Breadth-first Reidemeister reduction with a state budget."""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass

from .. import pdcode
from ..diagram import ResolvedDiagram
from ..errors import IllegalMove, MissingPlanarData, TooLarge
from . import moves
from .moves import Move

DEFAULT_MAX_CROSSINGS = 10
DEFAULT_MAX_STATES = 100_000


@dataclass(frozen=True)
class Step:
    move: Move
    code: tuple[int, ...]
    crossings: int

    def describe(self) -> str:
        return self.move.describe()


@dataclass(frozen=True)
class MoveTrace:
    start: tuple[int, ...]
    start_pd: tuple
    steps: tuple[Step, ...]
    states_explored: int = 0

    @property
    def final_code(self) -> tuple[int, ...]:
        return self.steps[-1].code if self.steps else self.start

    def __len__(self) -> int:
        return len(self.steps)

    def __bool__(self) -> bool:
        # a trace is a success even when no move was needed
        return True

    def lines(self) -> list[str]:
        return [f"{i + 1}\t{s.move.kind}\t{s.crossings}\t{s.describe()}" for i, s in enumerate(self.steps)]


@dataclass(frozen=True)
class NotReduced:
    states_explored: int
    budget_exceeded: bool
    crossings: int

    def __bool__(self) -> bool:
        return False


def oriented_pd(diagram: ResolvedDiagram) -> tuple:
    """Canonical oriented code of a resolved diagram."""
    if diagram.crossing_count == 0:
        return ()
    if diagram.shadow.planar is None:
        raise MissingPlanarData("Reidemeister moves need planar data; Gauss words are not realised")
    return pdcode.canonical(diagram.planar_code())[1]


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    return int(raw) if raw else default


def _plateau(start_pd, start_code, allow_increase, cap, budget):
    """BFS from ``start`` to the first state with fewer crossings.

    Successors are tested for the goal as they are generated, in move order,
    so the returned path is the first shortest one in that order.
    Returns ``(path or None, states used, exhausted)``.
    """
    n0 = len(start_pd)
    parent = {start_code: None}
    queue = deque([(start_code, start_pd)])
    used = 0
    while queue:
        code, pd = queue.popleft()
        used += 1
        if used > budget:
            return None, used, False
        for move, ccode, cpd in moves.successors(pd, allow_increase, cap):
            if len(cpd) < n0:
                path = [Step(move, ccode, len(cpd))]
                while parent[code] is not None:
                    prev, step = parent[code]
                    path.append(step)
                    code = prev
                return path[::-1], used, False
            if ccode not in parent:
                parent[ccode] = (code, Step(move, ccode, len(cpd)))
                queue.append((ccode, cpd))
    return None, used, True


def reidemeister_reduce(
    diagram: ResolvedDiagram,
    max_states: int | None = None,
    max_crossings: int | None = None,
    bound: int | None = None,
) -> MoveTrace | NotReduced:
    """Search for a Reidemeister sequence taking the diagram to the trivial one.

    The search runs in plateaus: from the current diagram it looks for the
    nearest diagram with fewer crossings, first using only R3 and reducing
    moves and then also moves that add crossings, never exceeding
    ``max_crossings`` (default: input crossings + 2).  ``max_states`` bounds
    the number of expanded states over the whole run.
    """
    bound = _env_int("UNKNOTTER_MAX_CROSSINGS", DEFAULT_MAX_CROSSINGS) if bound is None else bound
    max_states = _env_int("UNKNOTTER_MAX_STATES", DEFAULT_MAX_STATES) if max_states is None else max_states
    n = diagram.crossing_count
    if n > bound:
        raise TooLarge(f"{n} crossings exceeds the search bound {bound}")
    pd = oriented_pd(diagram)
    return reduce_pd(pd, max_states, n + 2 if max_crossings is None else max_crossings)


def reduce_pd(pd, max_states: int = DEFAULT_MAX_STATES, cap: int | None = None) -> MoveTrace | NotReduced:
    code, pd = pdcode.canonical(pd)
    start, start_pd = code, pd
    cap = len(pd) + 2 if cap is None else cap
    steps: list[Step] = []
    used = 0
    while pd:
        path = None
        for allow_increase in (False, True):
            path, u, exhausted = _plateau(pd, code, allow_increase, cap, max_states - used)
            used += u
            if path is not None:
                break
            if not exhausted:
                return NotReduced(used, True, len(pd))
        if path is None:
            return NotReduced(used, False, len(pd))
        steps.extend(path)
        code, pd = _replay_path(pd, path)
    return MoveTrace(start, start_pd, tuple(steps), used)


def _replay_path(pd, path):
    code = None
    for step in path:
        code, pd = moves.apply(pd, step.move)
    return code, pd


def replay(trace: MoveTrace) -> bool:
    """Re-apply every move of a trace; True when all are legal and land where recorded."""
    pd = trace.start_pd
    if pdcode.canonical(pd)[0] != trace.start:
        return False
    for step in trace.steps:
        try:
            code, pd = moves.apply(pd, step.move)
        except IllegalMove:
            return False
        if code != step.code or len(pd) != step.crossings:
            return False
    return len(pd) == 0
