"""Exhaustive ground truth: all search trees on a caterpillar, exact rotation
distances and associahedron diameters by breadth-first search."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cache, lru_cache

from . import kernels
from .caterpillar import Caterpillar
from .errors import BudgetExceeded, InputError
from .stg import ROOT, Stg, _components

DEFAULT_BUDGET = 10**6


@cache
def _count(graph: Caterpillar, verts: frozenset[int]) -> int:
    total = 0
    for r in verts:
        ways = 1
        for comp in _components(graph, verts - {r}):
            ways *= _count(graph, frozenset(comp))
        total += ways
    return total


def count_stgs(graph: Caterpillar) -> int:
    """Number of search trees on ``graph`` (no enumeration)."""
    return _count(graph, frozenset(range(graph.size)))


def _assignments(graph: Caterpillar, verts: frozenset[int], memo) -> list[tuple]:
    """Every search tree on ``verts`` as a tuple of (vertex, parent) pairs."""
    if verts in memo:
        return memo[verts]
    out = []
    for r in sorted(verts):
        comps = _components(graph, verts - {r})
        options = [_assignments(graph, frozenset(c), memo) for c in comps]
        for combo in itertools.product(*options):
            pairs = [(r, ROOT)]
            for sub in combo:
                pairs.extend((v, r if p == ROOT else p) for v, p in sub)
            out.append(tuple(pairs))
    memo[verts] = out
    return out


def _check_budget(graph: Caterpillar, budget: int) -> int:
    count = count_stgs(graph)
    if count > budget:
        raise BudgetExceeded(count, budget)
    return count


def enumerate_stgs(graph: Caterpillar, budget: int = DEFAULT_BUDGET) -> list[Stg]:
    _check_budget(graph, budget)
    trees = []
    for pairs in _assignments(graph, frozenset(range(graph.size)), {}):
        table = [0] * graph.size
        for v, p in pairs:
            table[v] = p
        trees.append(Stg(graph, tuple(table)))
    return trees


def _csr(graph: Caterpillar) -> tuple[list[int], list[int]]:
    off, adj = [0], []
    for nb in graph.adjacency:
        adj.extend(nb)
        off.append(len(adj))
    return off, adj


@dataclass(frozen=True)
class RotationGraph:
    graph: Caterpillar
    codes: list[bytes]
    offsets: list[int]
    targets: list[int]

    @property
    def nodes(self) -> int:
        return len(self.codes)

    @property
    def edges(self) -> int:
        return len(self.targets) // 2

    def index(self, t: Stg) -> int:
        if t.graph != self.graph:
            raise InputError("tree lives on a different caterpillar")
        return self._lookup[t.code()]

    @property
    def _lookup(self) -> dict[bytes, int]:
        cached = self.__dict__.get("_lookup_cache")
        if cached is None:
            cached = {c: k for k, c in enumerate(self.codes)}
            object.__setattr__(self, "_lookup_cache", cached)
        return cached

    def tree(self, k: int) -> Stg:
        return Stg.from_code(self.graph, self.codes[k])

    def neighbors(self, k: int) -> list[int]:
        return self.targets[self.offsets[k]:self.offsets[k + 1]]

    def distances_from(self, t: Stg) -> list[int]:
        return kernels.bfs(self.offsets, self.targets, self.index(t))


@lru_cache(maxsize=16)
def rotation_graph(graph: Caterpillar, budget: int = DEFAULT_BUDGET) -> RotationGraph:
    codes = [t.code() for t in enumerate_stgs(graph, budget)]
    off, adj = _csr(graph)
    offsets, targets = kernels.rotation_graph(codes, off, adj)
    return RotationGraph(graph, codes, offsets, targets)


def exact_distance(t1: Stg, t2: Stg, budget: int = DEFAULT_BUDGET) -> int:
    if t1.graph != t2.graph:
        raise InputError("trees live on different caterpillars")
    rg = rotation_graph(t1.graph, budget)
    return rg.distances_from(t1)[rg.index(t2)]


def exact_diameter(graph: Caterpillar, budget: int = DEFAULT_BUDGET) -> tuple[int, tuple[Stg, Stg]]:
    """Diameter of the rotation graph and one pair of trees at that distance."""
    rg = rotation_graph(graph, budget)
    ecc, far = kernels.eccentricities(rg.offsets, rg.targets)
    src = max(range(len(ecc)), key=ecc.__getitem__)
    return ecc[src], (rg.tree(src), rg.tree(far[src]))


def envelope(graph: Caterpillar) -> tuple[int, int]:
    """General-graph diameter bounds max(2N - 18, E) and N choose 2, N = vertex count."""
    total = graph.size
    edge_count = total - 1
    return max(2 * total - 18, edge_count), total * (total - 1) // 2
