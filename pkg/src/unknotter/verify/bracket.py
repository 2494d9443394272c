"""Kauffman bracket by state sum over oriented planar codes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping

from .. import pdcode
from ..errors import TooLarge

MAX_BRACKET_CROSSINGS = 20


@dataclass(frozen=True)
class BracketPolynomial:
    """Laurent polynomial in A with integer coefficients, stored sparsely."""

    coefficients: Mapping[int, int] = field(default_factory=dict)
    normalized: bool = False

    def __post_init__(self):
        clean = {int(k): int(v) for k, v in sorted(self.coefficients.items()) if v}
        object.__setattr__(self, "coefficients", clean)

    def __eq__(self, other):
        if isinstance(other, BracketPolynomial):
            return self.coefficients == other.coefficients and self.normalized == other.normalized
        return NotImplemented

    def __hash__(self):
        return hash((tuple(self.coefficients.items()), self.normalized))

    def is_one(self) -> bool:
        return self.coefficients == {0: 1}

    def mirror(self) -> "BracketPolynomial":
        return BracketPolynomial({-k: v for k, v in self.coefficients.items()}, self.normalized)

    def sparse(self) -> str:
        """``exponent:coefficient`` terms, highest exponent first."""
        if not self.coefficients:
            return "0"
        return " ".join(f"{k}:{v}" for k, v in sorted(self.coefficients.items(), reverse=True))

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        out = ""
        for k, v in sorted(self.coefficients.items(), reverse=True):
            mono = "" if k == 0 else ("A" if k == 1 else f"A^{k}")
            mag = "" if mono and abs(v) == 1 else str(abs(v))
            if out:
                out += " - " if v < 0 else " + "
            elif v < 0:
                out = "-"
            out += mag + mono
        return out


def _mul(p: dict[int, int], q: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for a, x in p.items():
        for b, y in q.items():
            out[a + b] = out.get(a + b, 0) + x * y
    return out


def _loops(pd, state: tuple[int, ...]) -> int:
    parent: dict[int, int] = {}

    def find(x):
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for (a, b, c, d), s in zip(pd, state):
        if s == 0:
            union(a, b)
            union(c, d)
        else:
            union(a, d)
            union(b, c)
    return len({find(e) for t in pd for e in t})


def bracket(pd) -> BracketPolynomial:
    """Unnormalised bracket of an oriented code; the empty diagram gives 1."""
    n = len(pd)
    if n > MAX_BRACKET_CROSSINGS:
        raise TooLarge(f"{n} crossings exceeds the bracket bound {MAX_BRACKET_CROSSINGS}")
    if n == 0:
        return BracketPolynomial({0: 1})
    delta = {2: -1, -2: -1}
    powers = [{0: 1}]
    for _ in range(2 * n):
        powers.append(_mul(powers[-1], delta))
    total: dict[int, int] = {}
    for state in itertools.product((0, 1), repeat=n):
        b = sum(state)
        a = n - b
        for k, v in powers[_loops(pd, state) - 1].items():
            total[k + a - b] = total.get(k + a - b, 0) + v
    return BracketPolynomial(total)


def writhe(pd) -> int:
    return sum(pdcode.signs(pd))


def normalized_bracket(pd) -> BracketPolynomial:
    """Writhe-normalised bracket ``(-A^3)^(-w) <D>``, an isotopy invariant."""
    raw = bracket(pd)
    w = writhe(pd)
    sign = -1 if w % 2 else 1
    return BracketPolynomial({k - 3 * w: sign * v for k, v in raw.coefficients.items()}, normalized=True)
