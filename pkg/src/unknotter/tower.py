"""Bookkeeping for the descent through a tower of covers.

Covers are not computed.  A :class:`TowerScript` supplies, for every descent
level, one chord system per disk that is live at that point; :func:`descend`
dissects each one and splices its great sequence in place of the disk.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path

from .dissect import ChordSystem, dissect, random_chord_system
from .errors import ArityMismatch, IndexOutOfRange, InvalidChordSystem
from .resolve import read_cells_tsv


@dataclass(frozen=True)
class TowerScript:
    top_cells: tuple[str, ...]
    levels: tuple[tuple[ChordSystem, ...], ...] = ()

    @property
    def n(self) -> int:
        return len(self.levels)

    def to_json(self) -> str:
        return json.dumps(
            {
                "top_cells": list(self.top_cells),
                "levels": [[json.loads(s.to_json()) for s in level] for level in self.levels],
            },
            indent=1,
        )

    @classmethod
    def from_json(cls, text: str, base: Path | None = None) -> "TowerScript":
        """Read a script; ``cells_file`` may name a cells table instead of ``top_cells``."""
        try:
            raw = json.loads(text)
            if "cells_file" in raw:
                path = Path(raw["cells_file"])
                if base is not None and not path.is_absolute():
                    path = base / path
                cells = tuple(read_cells_tsv(path.read_text()))
            else:
                cells = tuple(str(c) for c in raw["top_cells"])
            levels = tuple(
                tuple(ChordSystem.from_json(json.dumps(s)) for s in level) for level in raw.get("levels", [])
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidChordSystem(f"bad tower script: {exc}") from None
        return cls(cells, levels)


@dataclass(frozen=True)
class FinalLeaf:
    top: int  # index into the top cells
    path: tuple[str, ...]  # dissection subscript chosen at each level

    def name(self, cells: tuple[str, ...]) -> str:
        return cells[self.top] + "".join(f"F{s}" for s in self.path if s)


@dataclass(frozen=True)
class PipelineResult:
    script: TowerScript
    leaves: tuple[FinalLeaf, ...]
    resolution: dict[str, int]
    level_sizes: tuple[int, ...]  # live disks before each level, then the final count

    @property
    def sequence(self) -> tuple[str, ...]:
        return tuple(leaf.name(self.script.top_cells) for leaf in self.leaves)

    def lines(self) -> list[str]:
        out = ["index\tleaf\ttop_cell\tpath"]
        for i, leaf in enumerate(self.leaves):
            path = "/".join(s or "-" for s in leaf.path)
            out.append(f"{i}\t{leaf.name(self.script.top_cells)}\t{self.script.top_cells[leaf.top]}\t{path}")
        out += ["", "crossing\tover_point"]
        out += [f"{k}\t{v}" for k, v in self.resolution.items()]
        return out


def descend(script: TowerScript) -> PipelineResult:
    live = [FinalLeaf(i, ()) for i in range(len(script.top_cells))]
    resolution: dict[str, int] = {}
    sizes = [len(live)]
    for lvl, systems in enumerate(script.levels, start=1):
        if len(systems) != len(live):
            raise ArityMismatch(f"level {lvl} supplies {len(systems)} chord systems for {len(live)} live disks")
        nxt = []
        for d, (disk, system) in enumerate(zip(live, systems), start=1):
            _, seq = dissect(system)
            nxt.extend(FinalLeaf(disk.top, disk.path + (leaf.subscript,)) for leaf in seq.leaves)
            for label, p in seq.resolution.items():
                resolution[f"L{lvl}.D{d}.{label}"] = p
        live = nxt
        sizes.append(len(live))
    return PipelineResult(script, tuple(live), resolution, tuple(sizes))


def provenance(result: PipelineResult, index: int) -> tuple[str, tuple[str, ...]]:
    """Top cell and per-level dissection subscripts of final leaf ``index``."""
    if not 0 <= index < len(result.leaves):
        raise IndexOutOfRange(f"leaf {index} outside 0..{len(result.leaves) - 1}")
    leaf = result.leaves[index]
    return result.script.top_cells[leaf.top], leaf.path


def random_script(
    rng: random.Random, max_levels: int = 3, max_disks: int = 5, max_m: int = 6
) -> TowerScript:
    """Random script whose live disk count never exceeds ``max_disks``."""
    cells = tuple(f"E{i + 1}" for i in range(rng.randint(1, max_disks)))
    live = len(cells)
    levels = []
    for _ in range(rng.randint(0, max_levels)):
        systems = []
        total = 0
        for d in range(live):
            room = max_disks - total - (live - d - 1)
            for _attempt in range(20):
                s = random_chord_system(rng, rng.randint(0, max_m))
                k = len(dissect(s)[1])
                if k <= room:
                    break
            else:
                s, k = ChordSystem(0, ()), 1
            systems.append(s)
            total += k
        levels.append(tuple(systems))
        live = total
    return TowerScript(cells, tuple(levels))
