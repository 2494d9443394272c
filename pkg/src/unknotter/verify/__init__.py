"""Independent certification that a resolved diagram is unknotted."""

from __future__ import annotations

from .. import pdcode
from ..diagram import ResolvedDiagram, ShadowDiagram
from ..errors import MissingPlanarData
from .bracket import BracketPolynomial, bracket, normalized_bracket
from .moves import Move
from .search import MoveTrace, NotReduced, oriented_pd, reduce_pd, reidemeister_reduce, replay


def kauffman_bracket(diagram: ResolvedDiagram, normalize: bool = True) -> BracketPolynomial:
    if diagram.crossing_count and diagram.shadow.planar is None:
        raise MissingPlanarData("the bracket needs planar data")
    pd = oriented_pd(diagram)
    return normalized_bracket(pd) if normalize else bracket(pd)


def _word_code(labels, over) -> tuple:
    L = len(labels)
    best = None
    for seq in (list(range(L)), list(range(L - 1, -1, -1))):
        for k in range(L):
            order = seq[k:] + seq[:k]
            names: dict[str, int] = {}
            code = tuple((names.setdefault(labels[i], len(names)), over[i]) for i in order)
            if best is None or code < best:
                best = code
    return best or ()


def canonical_code(diagram: ShadowDiagram | ResolvedDiagram) -> str:
    """Token string equal for diagrams that differ only by rotation, reversal or renaming.

    With planar data the tokens also record from which side the other strand
    crosses, so mirror-image embeddings get different codes.
    """
    resolved = isinstance(diagram, ResolvedDiagram)
    shadow = diagram.shadow if resolved else diagram
    if not shadow.word:
        return ""
    if shadow.planar is not None:
        if resolved:
            code, _ = pdcode.canonical(diagram.planar_code())
            return pdcode.code_tokens(code)
        code, _ = pdcode.canonical(shadow.planar, None, with_over=False)
        return " ".join(tok[1:] for tok in pdcode.code_tokens(code).split())
    over = [diagram.is_over(i) for i in range(len(shadow.word))] if resolved else [None] * len(shadow.word)
    code = _word_code(shadow.word, over)
    prefix = {True: "O", False: "U", None: ""}
    return " ".join(f"{prefix[o]}{lab + 1}" for lab, o in code)


__all__ = [
    "BracketPolynomial",
    "Move",
    "MoveTrace",
    "NotReduced",
    "canonical_code",
    "kauffman_bracket",
    "reduce_pd",
    "reidemeister_reduce",
    "replay",
]
