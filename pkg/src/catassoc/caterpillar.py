"""Caterpillar graphs C(m_1, ..., m_n) and the entropy of their leg distribution.

Vertices are numbered internally as integers: spine vertex ``s_i`` gets index
``i - 1``; legs follow in lexicographic ``(i, j)`` order.
"""
from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .errors import InputError

_VERTEX_RE = re.compile(r"^(?:s(\d+)|l(\d+)\.(\d+))$")


class Vertex(NamedTuple):
    """Spine vertex ``s_i`` (``j == 0``) or leg vertex ``l_{i,j}`` (``j >= 1``)."""

    i: int
    j: int = 0

    @property
    def is_spine(self) -> bool:
        return self.j == 0

    @property
    def is_leg(self) -> bool:
        return self.j != 0

    def __str__(self) -> str:
        return f"s{self.i}" if self.j == 0 else f"l{self.i}.{self.j}"

    def __repr__(self) -> str:
        return str(self)

    @classmethod
    def parse(cls, text: str) -> "Vertex":
        match = _VERTEX_RE.match(text.strip())
        if match is None:
            raise InputError(f"not a vertex name: {text!r}")
        if match.group(1) is not None:
            return cls(int(match.group(1)))
        return cls(int(match.group(2)), int(match.group(3)))


def spine(i: int) -> Vertex:
    return Vertex(i, 0)


def leg(i: int, j: int) -> Vertex:
    if j < 1:
        raise InputError("leg index j starts at 1")
    return Vertex(i, j)


@dataclass(frozen=True)
class Caterpillar:
    legs: tuple[int, ...]

    def __post_init__(self):
        legs = tuple(int(x) for x in self.legs)
        if not legs:
            raise InputError("a caterpillar needs at least one spine vertex")
        if any(x < 0 for x in legs):
            raise InputError(f"leg counts must be nonnegative: {legs}")
        object.__setattr__(self, "legs", legs)

    def __repr__(self) -> str:
        return "C(" + ",".join(map(str, self.legs)) + ")"

    @property
    def n(self) -> int:
        return len(self.legs)

    @property
    def m(self) -> int:
        return sum(self.legs)

    @property
    def size(self) -> int:
        return self.n + self.m

    @cached_property
    def vertices(self) -> tuple[Vertex, ...]:
        out = [Vertex(i) for i in range(1, self.n + 1)]
        for i, mi in enumerate(self.legs, start=1):
            out.extend(Vertex(i, j) for j in range(1, mi + 1))
        return tuple(out)

    @cached_property
    def _index(self) -> dict[Vertex, int]:
        return {v: k for k, v in enumerate(self.vertices)}

    @cached_property
    def leg_owner(self) -> tuple[int, ...]:
        """For every vertex index, the index of its spine vertex (itself for spines)."""
        return tuple(v.i - 1 for v in self.vertices)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.size)]
        for k in range(self.n - 1):
            adj[k].append(k + 1)
            adj[k + 1].append(k)
        for k, v in enumerate(self.vertices):
            if v.is_leg:
                adj[k].append(v.i - 1)
                adj[v.i - 1].append(k)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((a, b) for a, nb in enumerate(self.adjacency) for b in nb if a < b)

    @property
    def spine_indices(self) -> range:
        return range(self.n)

    @property
    def leg_indices(self) -> range:
        return range(self.n, self.size)

    def __contains__(self, v) -> bool:
        return v in self._index

    def index(self, v: Vertex | str) -> int:
        if isinstance(v, str):
            v = Vertex.parse(v)
        try:
            return self._index[v]
        except KeyError:
            raise InputError(f"{v} is not a vertex of {self!r}") from None

    def vertex(self, k: int) -> Vertex:
        return self.vertices[k]

    def neighbors(self, v: Vertex | str) -> frozenset[Vertex]:
        return frozenset(self.vertices[k] for k in self.adjacency[self.index(v)])

    def legs_of(self, i: int) -> tuple[int, ...]:
        """Indices of the legs attached to spine vertex s_i."""
        return tuple(k for k in self.leg_indices if self.vertices[k].i == i)

    def to_json(self) -> dict:
        return {"legs": list(self.legs)}

    @classmethod
    def from_json(cls, data) -> "Caterpillar":
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise InputError(f"malformed caterpillar JSON: {exc}") from None
        if not isinstance(data, dict) or "legs" not in data:
            raise InputError('caterpillar JSON must look like {"legs": [m1, ..., mn]}')
        legs = data["legs"]
        if not isinstance(legs, list) or not all(
            isinstance(x, int) and not isinstance(x, bool) for x in legs
        ):
            raise InputError("legs must be a list of integers")
        return cls(tuple(legs))


def path(n: int) -> Caterpillar:
    return Caterpillar((0,) * n)


def distribution_entropy(weights: Iterable[int]) -> float:
    """Shannon entropy in bits of the distribution proportional to ``weights``."""
    weights = [w for w in weights if w > 0]
    total = sum(weights)
    if total == 0:
        return 0.0
    return sum(w / total * math.log2(total / w) for w in weights)


def entropy(c: Caterpillar | Sequence[int]) -> float:
    legs = c.legs if isinstance(c, Caterpillar) else c
    return distribution_entropy(legs)


def h_prime(c: Caterpillar | Sequence[int]) -> float:
    return entropy(c) + 1.0
