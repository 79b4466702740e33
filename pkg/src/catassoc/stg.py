"""Search trees on caterpillar graphs (STGs).

An :class:`Stg` stores a parent table over the caterpillar's integer vertex
numbering: ``ROOT`` for the root, ``ABSENT`` for vertices removed by
projection, otherwise the parent's index.  The table is canonical, so tree
equality is table equality.
"""
from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Collection, Iterable, Mapping, Sequence

from . import bst as bstmod
from .bst import Bst
from .caterpillar import Caterpillar, Vertex
from .errors import InputError

ROOT = -1
ABSENT = -2



@dataclass(frozen=True)
class Stg:
    graph: Caterpillar
    parent: tuple[int, ...]

    def __repr__(self) -> str:
        return f"Stg({self.graph!r}, {self.nested()})"

    # -- structure -------------------------------------------------------
    @cached_property
    def present(self) -> tuple[int, ...]:
        return tuple(k for k, p in enumerate(self.parent) if p != ABSENT)

    @cached_property
    def root_index(self) -> int:
        return self.parent.index(ROOT)

    @property
    def root(self) -> Vertex:
        return self.graph.vertex(self.root_index)

    @cached_property
    def child_lists(self) -> tuple[tuple[int, ...], ...]:
        kids: list[list[int]] = [[] for _ in self.parent]
        for k, p in enumerate(self.parent):
            if p >= 0:
                kids[p].append(k)
        return tuple(tuple(x) for x in kids)

    @cached_property
    def depth_table(self) -> tuple[int, ...]:
        d = [0] * len(self.parent)
        stack = [(self.root_index, 1)]
        while stack:
            k, dk = stack.pop()
            d[k] = dk
            stack.extend((c, dk + 1) for c in self.child_lists[k])
        return tuple(d)

    def idx(self, v) -> int:
        if isinstance(v, int) and not isinstance(v, Vertex):
            if not 0 <= v < len(self.parent):
                raise InputError(f"vertex index {v} out of range")
            return v
        return self.graph.index(v)

    def parent_of(self, v) -> Vertex | None:
        p = self.parent[self.idx(v)]
        return self.graph.vertex(p) if p >= 0 else None

    def children_of(self, v) -> tuple[Vertex, ...]:
        return tuple(self.graph.vertex(c) for c in self.child_lists[self.idx(v)])

    def vertices(self) -> tuple[Vertex, ...]:
        return tuple(self.graph.vertex(k) for k in self.present)

    def parent_map(self) -> dict[Vertex, Vertex | None]:
        return {self.graph.vertex(k): self.parent_of(k) for k in self.present}

    def depth(self, v) -> int:
        return self.depth_table[self.idx(v)]

    def subtree(self, k: int) -> list[int]:
        out, stack = [], [k]
        while stack:
            x = stack.pop()
            out.append(x)
            stack.extend(self.child_lists[x])
        return out

    def ancestors(self, k: int) -> list[int]:
        out = []
        k = self.parent[k]
        while k >= 0:
            out.append(k)
            k = self.parent[k]
        return out

    def tree_edges(self) -> list[tuple[int, int]]:
        return [(p, k) for k, p in enumerate(self.parent) if p >= 0]

    def nested(self):
        g = self.graph

        def rec(k):
            kids = self.child_lists[k]
            if not kids:
                return str(g.vertex(k))
            return (str(g.vertex(k)), *(rec(c) for c in kids))

        return rec(self.root_index)

    def code(self) -> bytes:
        """Byte encoding used by the compiled kernels (see ``_pykernels``)."""
        return bytes(0 if p == ABSENT else 1 if p == ROOT else p + 2 for p in self.parent)

    @classmethod
    def from_code(cls, graph: Caterpillar, code: bytes) -> "Stg":
        return cls(graph, tuple(ABSENT if b == 0 else ROOT if b == 1 else b - 2 for b in code))

    # -- JSON ------------------------------------------------------------
    def to_json(self) -> dict:
        g = self.graph
        return {
            "caterpillar": g.to_json(),
            "root": str(self.root),
            "parent": {str(g.vertex(k)): str(g.vertex(p)) for k, p in enumerate(self.parent) if p >= 0},
        }

    @classmethod
    def from_json(cls, data) -> "Stg":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            graph = Caterpillar.from_json(data["caterpillar"])
            root = data["root"]
            parents = data["parent"]
        except (KeyError, TypeError):
            raise InputError('STG JSON needs "caterpillar", "root" and "parent"') from None
        return from_parent_map(graph, root, parents)


def from_parent_map(graph: Caterpillar, root, parents: Mapping) -> Stg:
    """Build from a root plus a child -> parent mapping (vertices or their names)."""
    table = [ABSENT] * graph.size
    table[graph.index(root)] = ROOT
    for child, par in parents.items():
        c, p = graph.index(child), graph.index(par)
        if table[c] != ABSENT:
            raise InputError(f"vertex {graph.vertex(c)} listed twice")
        table[c] = p
    t = Stg(graph, tuple(table))
    if not is_valid(t):
        raise InputError("the given parent map is not a search tree on its vertex set")
    return t


# -- graph helpers -------------------------------------------------------

def _components(graph: Caterpillar, verts: Collection[int]) -> list[list[int]]:
    verts = set(verts)
    seen: set[int] = set()
    comps = []
    for s in sorted(verts):
        if s in seen:
            continue
        comp, queue = [], deque([s])
        seen.add(s)
        while queue:
            u = queue.popleft()
            comp.append(u)
            for v in graph.adjacency[u]:
                if v in verts and v not in seen:
                    seen.add(v)
                    queue.append(v)
        comps.append(sorted(comp))
    return comps


def is_connected(graph: Caterpillar, verts: Collection[int]) -> bool:
    return len(verts) > 0 and len(_components(graph, verts)) == 1


def _present_degree(t: Stg, k: int) -> int:
    return sum(1 for v in t.graph.adjacency[k] if t.parent[v] != ABSENT)


# -- validity --------------------------------------------------------------

def is_valid(t: Stg) -> bool:
    """Recursive STG condition, checked via: one root, acyclic, every graph
    edge joins an ancestor/descendant pair, every subtree induces a connected
    subgraph."""
    g = t.graph
    if len(t.parent) != g.size:
        return False
    present = [k for k, p in enumerate(t.parent) if p != ABSENT]
    if not present or sum(1 for p in t.parent if p == ROOT) != 1:
        return False
    for k in present:
        p = t.parent[k]
        if p >= 0 and (p >= g.size or t.parent[p] == ABSENT or p == k):
            return False
        if p < ROOT:
            return False
    # acyclic: every present vertex reaches the root
    depth = {}
    for k in present:
        path, u = [], k
        while u not in depth and u >= 0 and len(path) <= g.size:
            path.append(u)
            u = t.parent[u]
        if len(path) > g.size:
            return False
        base = depth.get(u, 0) if u >= 0 else 0
        for x in reversed(path):
            base += 1
            depth[x] = base
    if not is_connected(g, present):
        return False
    # comparability of graph edges; count each edge at its upper endpoint
    inner_edges = dict.fromkeys(present, 0)
    for a, b in g.edges:
        if t.parent[a] == ABSENT or t.parent[b] == ABSENT:
            continue
        lo, hi = (a, b) if depth[a] > depth[b] else (b, a)
        u = lo
        while u >= 0 and depth[u] > depth[hi]:
            u = t.parent[u]
        if u != hi:
            return False
        inner_edges[hi] += 1
    # subtree sizes and edge counts; connected forest part iff edges == size - 1
    size = dict.fromkeys(present, 1)
    for k in sorted(present, key=lambda x: -depth[x]):
        p = t.parent[k]
        if p >= 0:
            size[p] += size[k]
            inner_edges[p] += inner_edges[k]
    return all(inner_edges[k] == size[k] - 1 for k in present)


# -- rotation --------------------------------------------------------------

def rotate(t: Stg, edge) -> Stg:
    """Rotate tree edge ``(p, c)``; ``c``'s child subtrees that touch a
    neighbour of ``p`` move to ``p``."""
    p, c = (t.idx(x) for x in edge)
    par = t.parent
    if par[c] != p or p < 0:
        g = t.graph
        raise InputError(f"({g.vertex(p)}, {g.vertex(c)}) is not an edge of the tree")
    out = list(par)
    out[c] = par[p]
    out[p] = c
    for u in t.graph.adjacency[p]:
        if par[u] == ABSENT:
            continue
        while u != c and u != p:
            up = par[u]
            if up < 0:
                break
            if up == c:
                out[u] = p
                break
            u = up
    return Stg(t.graph, tuple(out))


# -- pruning and projection -------------------------------------------------

def prune(t: Stg, v) -> Stg:
    k = t.idx(v)
    if t.parent[k] == ABSENT:
        raise InputError(f"{t.graph.vertex(k)} is not in the tree")
    if len(t.present) == 1:
        raise InputError("cannot prune the last vertex")
    if _present_degree(t, k) > 1:
        raise InputError(f"{t.graph.vertex(k)} is not a leaf of the graph")
    kids = t.child_lists[k]
    out = list(t.parent)
    if kids:
        out[kids[0]] = t.parent[k]
    out[k] = ABSENT
    return Stg(t.graph, tuple(out))


def _as_indices(t: Stg, verts: Iterable) -> set[int]:
    return {t.idx(v) for v in verts}


def project(t: Stg, verts: Iterable) -> Stg:
    """Projection onto a connected vertex set: each kept vertex hangs from its
    nearest kept proper ancestor."""
    keep = _as_indices(t, verts)
    if any(t.parent[k] == ABSENT for k in keep):
        raise InputError("projection set contains vertices outside the tree")
    if not is_connected(t.graph, keep):
        raise InputError("projection set must induce a connected subgraph")
    out = [ABSENT] * len(t.parent)
    for k in keep:
        u = t.parent[k]
        while u >= 0 and u not in keep:
            u = t.parent[u]
        out[k] = u if u >= 0 else ROOT
    return Stg(t.graph, tuple(out))


def project_by_pruning(t: Stg, verts: Iterable, rng: random.Random | None = None) -> Stg:
    """Same result as :func:`project`, computed by pruning one graph leaf at a time
    (in random order when ``rng`` is given)."""
    keep = _as_indices(t, verts)
    if not is_connected(t.graph, keep):
        raise InputError("projection set must induce a connected subgraph")
    while len(t.present) > len(keep):
        leaves = [k for k in t.present if k not in keep and _present_degree(t, k) <= 1]
        k = rng.choice(leaves) if rng else leaves[0]
        t = prune(t, k)
    return t


# -- spine structure --------------------------------------------------------

def spine_bst(t: Stg) -> Bst:
    n = t.graph.n
    if any(t.parent[k] == ABSENT for k in range(n)):
        raise InputError("tree does not contain the whole spine")
    proj = project(t, range(n))
    return bstmod.from_parent([p + 1 if p >= 0 else 0 for p in proj.parent[:n]])


def classify_legs(t: Stg) -> dict[Vertex, str]:
    g = t.graph
    return {
        g.vertex(k): ("free" if t.child_lists[k] else "bound")
        for k in g.leg_indices
        if t.parent[k] != ABSENT
    }


def light_edges(t: Stg) -> set[tuple[Vertex, Vertex]]:
    """Spine-BST edges that are also edges of ``t``."""
    s = spine_bst(t)
    return {
        (Vertex(p), Vertex(c)) for p, c in s.edges() if t.parent[c - 1] == p - 1
    }


def spine_ancestor_count(t: Stg, k: int) -> int:
    n = t.graph.n
    return sum(1 for a in t.ancestors(k) if a < n)


def is_a_form(t: Stg) -> bool:
    """True iff no leg has a spine ancestor (all legs on a path above the spine)."""
    return all(spine_ancestor_count(t, k) == 0 for k in t.graph.leg_indices)


def leg_order(t: Stg) -> list[Vertex]:
    """Bottom-to-top leg order of an A-form tree."""
    if not is_a_form(t):
        raise InputError("tree is not of the form A(S, pi)")
    g = t.graph
    order = []
    k = t.root_index
    while k >= g.n:
        order.append(g.vertex(k))
        kids = t.child_lists[k]
        k = kids[0] if kids else -1
    return order[::-1]


# -- canonical trees ---------------------------------------------------------

def _check_spine(graph: Caterpillar, s: Bst) -> None:
    if s.n != graph.n:
        raise InputError(f"BST on {s.n} keys does not match spine length {graph.n}")


def build_B(graph: Caterpillar, s: Bst) -> Stg:
    _check_spine(graph, s)
    table = [s.parent[k] - 1 if s.parent[k] else ROOT for k in range(1, graph.n + 1)]
    table.extend(graph.leg_owner[k] for k in graph.leg_indices)
    return Stg(graph, tuple(table))


def build_A(graph: Caterpillar, s: Bst, pi: Sequence) -> Stg:
    _check_spine(graph, s)
    order = [graph.index(v) for v in pi]
    if sorted(order) != list(graph.leg_indices):
        raise InputError("pi must list every leg exactly once")
    table = [s.parent[k] - 1 if s.parent[k] else ROOT for k in range(1, graph.n + 1)]
    table.extend([ABSENT] * graph.m)
    below = s.root - 1
    for k in order:
        table[below] = k
        below = k
    table[below] = ROOT
    return Stg(graph, tuple(table))


def sigma_of_pi(pi: Sequence) -> list[int]:
    out = []
    for v in pi:
        if isinstance(v, str):
            v = Vertex.parse(v)
        if not v.is_leg:
            raise InputError(f"{v} is not a leg")
        out.append(v.i)
    return out


def pi_of_sigma(graph: Caterpillar, sigma: Sequence[int]) -> list[Vertex]:
    """A leg ordering whose access sequence is ``sigma`` (legs of s_i used in order)."""
    used = [0] * (graph.n + 1)
    out = []
    for i in sigma:
        used[i] += 1
        if used[i] > graph.legs[i - 1]:
            raise InputError(f"sigma uses s{i} more often than it has legs")
        out.append(Vertex(i, used[i]))
    if sum(used) != graph.m:
        raise InputError("sigma must use every leg exactly once")
    return out


# -- random trees --------------------------------------------------------------

def random_stg(graph: Caterpillar, rng: random.Random, verts: Collection[int] | None = None) -> Stg:
    """Random search tree: uniform root per component, recursively."""
    table = [ABSENT] * graph.size
    comps = [(sorted(verts if verts is not None else range(graph.size)), ROOT)]
    while comps:
        comp, par = comps.pop()
        r = rng.choice(comp)
        table[r] = par
        rest = [k for k in comp if k != r]
        comps.extend((c, r) for c in _components(graph, rest))
    return Stg(graph, tuple(table))


def random_connected_subset(graph: Caterpillar, rng: random.Random) -> set[int]:
    """Grow a random connected vertex set from a random seed vertex."""
    target = rng.randint(1, graph.size)
    start = rng.randrange(graph.size)
    chosen = {start}
    frontier = set(graph.adjacency[start])
    while len(chosen) < target and frontier:
        v = rng.choice(sorted(frontier))
        chosen.add(v)
        frontier.discard(v)
        frontier.update(u for u in graph.adjacency[v] if u not in chosen)
    return chosen


# -- lower-bound partition ------------------------------------------------------

@dataclass(frozen=True)
class RootPartition:
    D: frozenset[Vertex]
    E: frozenset[Vertex]
    F: frozenset[Vertex]

    def part_of(self, v: Vertex) -> int:
        if v in self.D:
            return 0
        if v in self.E:
            return 1
        if v in self.F:
            return 2
        raise InputError(f"{v} is not covered by the partition")


def root_partition(t: Stg | Caterpillar, s: Bst) -> RootPartition:
    """D = BST root's spine vertex and its legs; E, F = the two BST subtrees with legs."""
    graph = t.graph if isinstance(t, Stg) else t
    _check_spine(graph, s)

    def with_legs(keys):
        out = set()
        for i in keys:
            out.add(Vertex(i))
            out.update(Vertex(i, j) for j in range(1, graph.legs[i - 1] + 1))
        return frozenset(out)

    kids = s.children(s.root)
    sides = [with_legs(s.subtree(k)) for k in kids] + [frozenset(), frozenset()]
    return RootPartition(with_legs([s.root]), sides[0], sides[1])


def alternation_number(t: Stg, part: RootPartition) -> int:
    """Max over root paths of the number of edges crossing between parts."""
    label = [-1] * len(t.parent)
    for k in t.present:
        label[k] = part.part_of(t.graph.vertex(k))
    best = 0
    stack = [(t.root_index, 0)]
    while stack:
        k, alt = stack.pop()
        best = max(best, alt)
        for c in t.child_lists[k]:
            stack.append((c, alt + (label[c] != label[k])))
    return best
