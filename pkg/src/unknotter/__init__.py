"""Crossing resolutions that unknot immersed loop diagrams, dissection of disks
with double arcs, tower-descent bookkeeping, and an independent unknot verifier."""

from .diagram import (
    HeightProfile,
    Resolution,
    ResolvedDiagram,
    ShadowDiagram,
    parse,
    parse_gauss_shadow,
    parse_pd_shadow,
    parse_resolved_word,
    serialize,
    validate,
)
from .dissect import ChordSystem, DissectionTree, GreatSequence, case_classify, dissect, induced_resolution, validate_chords
from .resolve import (
    CellRecord,
    LoopErasureResult,
    descending_resolution,
    loop_erasure_resolution,
    min_extrema,
    optimal_profile,
)
from .tower import PipelineResult, TowerScript, descend, provenance

__version__ = "0.1.0"

__all__ = [
    "CellRecord",
    "ChordSystem",
    "DissectionTree",
    "GreatSequence",
    "HeightProfile",
    "LoopErasureResult",
    "PipelineResult",
    "Resolution",
    "ResolvedDiagram",
    "ShadowDiagram",
    "TowerScript",
    "case_classify",
    "descend",
    "descending_resolution",
    "dissect",
    "induced_resolution",
    "loop_erasure_resolution",
    "min_extrema",
    "optimal_profile",
    "parse",
    "parse_gauss_shadow",
    "parse_pd_shadow",
    "parse_resolved_word",
    "provenance",
    "serialize",
    "validate",
    "validate_chords",
]
