"""Constructive rotation sequences between search trees on a caterpillar.

Any tree is first lifted to the all-legs-on-top form A(S, pi) (cleanup plus a
spine schedule), then the legs are settled one by one through a fixed spine
BST S*, which ends at B(S*).  Doing this from both ends and reversing the
second half connects any two trees.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import bst as bstmod
from .bst import Bst
from .caterpillar import h_prime
from .errors import InputError
from .stg import (
    Stg,
    build_B,
    is_a_form,
    is_valid,
    rotate,
    spine_ancestor_count,
    spine_bst,
)

Rotation = tuple[int, int]
PHASES = ("reduce1", "settle1", "core", "settle2_inv", "reduce2_inv")


class IllegalRotation(InputError):
    def __init__(self, index, message):
        super().__init__(f"rotation {index}: {message}")
        self.index = index


def apply(t: Stg, seq: Sequence, check: bool = False) -> Stg:
    """Apply rotations in order; with ``check`` every intermediate tree is validated."""
    for k, edge in enumerate(seq):
        try:
            t = rotate(t, edge)
        except InputError as exc:
            raise IllegalRotation(k, str(exc)) from None
        if check and not is_valid(t):
            raise IllegalRotation(k, "result is not a valid search tree")
    return t


def invert(seq: Sequence[Rotation]) -> list[Rotation]:
    return [(c, p) for p, c in reversed(seq)]


def _spine_edge_ok(t: Stg, p: int, c: int) -> bool:
    """Spine rotation (p, c) is a light edge of the spine BST."""
    return t.parent[c] == p


class _Recorder:
    """Applies rotations to a working tree and records them."""

    def __init__(self, t: Stg):
        self.tree = t
        self.seq: list[Rotation] = []

    def rotate(self, p: int, c: int) -> None:
        n = self.tree.graph.n
        if p < n and c < n and not _spine_edge_ok(self.tree, p, c):
            raise AssertionError("attempted rotation of a heavy spine edge")
        self.tree = rotate(self.tree, (p, c))
        self.seq.append((p, c))

    def spine_rotation(self, edge: Rotation) -> None:
        self.rotate(edge[0] - 1, edge[1] - 1)


def _cleanup(rec: _Recorder) -> None:
    t = rec.tree
    n = t.graph.n
    while True:
        t = rec.tree
        for k in t.graph.leg_indices:
            p = t.parent[k]
            if 0 <= p < n and spine_ancestor_count(t, k) <= 2:
                rec.rotate(p, k)
                break
        else:
            return


def cleanup(t: Stg) -> tuple[list[Rotation], Stg]:
    """Lift legs that sit under a spine parent with at most two spine ancestors
    (smallest vertex first) until none is left."""
    rec = _Recorder(t)
    _cleanup(rec)
    return rec.seq, rec.tree


def _reduce(rec: _Recorder) -> None:
    _cleanup(rec)
    for edge in bstmod.root_visit_schedule(spine_bst(rec.tree)):
        rec.spine_rotation(edge)
        _cleanup(rec)


def reduce_to_A(t: Stg) -> tuple[list[Rotation], Stg]:
    """Rotate any tree into the form A(S, pi): cleanup, then every spine node is
    brought to the spine root with cleanup after each spine rotation."""
    rec = _Recorder(t)
    _reduce(rec)
    if not is_a_form(rec.tree):
        raise AssertionError("reduction did not reach A-form")
    return rec.seq, rec.tree


def _settle(rec: _Recorder, target: Bst) -> int:
    for edge in bstmod.bst_transform_linear(spine_bst(rec.tree), target):
        rec.spine_rotation(edge)
    start = len(rec.seq)
    n = rec.tree.graph.n
    while True:
        t = rec.tree
        low = next(
            (k for k in t.graph.leg_indices if t.child_lists[k] and t.child_lists[k][0] < n),
            None,
        )
        if low is None:
            return len(rec.seq) - start
        while rec.tree.child_lists[low]:
            rec.rotate(low, rec.tree.child_lists[low][0])


def settle_legs(t: Stg, target: Bst) -> tuple[list[Rotation], Stg]:
    """From A(S, pi): reshape the spine to ``target``, then push the lowest leg
    down until it is bound, repeatedly.  Ends at B(target)."""
    if not is_a_form(t):
        raise InputError("settle_legs needs a tree of the form A(S, pi)")
    if target.n != t.graph.n:
        raise InputError("target BST does not match the spine")
    rec = _Recorder(t)
    _settle(rec, target)
    return rec.seq, rec.tree


def settle_leg_phase_cost(t: Stg, target: Bst) -> int:
    """Number of leg rotations in :func:`settle_legs`."""
    rec = _Recorder(t)
    return _settle(rec, target)


def all_bound_transform(t1: Stg, t2: Stg) -> list[Rotation]:
    """Spine-only rotations between two trees without free legs."""
    if t1.graph != t2.graph:
        raise InputError("trees live on different caterpillars")
    for t in (t1, t2):
        if any(t.child_lists[k] for k in t.graph.leg_indices):
            raise InputError("all_bound_transform needs trees without free legs")
    rec = _Recorder(t1)
    for edge in bstmod.bst_transform_linear(spine_bst(t1), spine_bst(t2)):
        rec.spine_rotation(edge)
    return rec.seq


def reference_budget(graph) -> float:
    return graph.n + graph.m * h_prime(graph)


@dataclass
class TransformTrace:
    source: Stg
    target: Stg
    rotations: list[Rotation]
    phase_lengths: dict[str, int]
    bound_budget: float
    settle_bst: Bst

    def __len__(self) -> int:
        return len(self.rotations)

    @property
    def ratio(self) -> float:
        return len(self.rotations) / self.bound_budget

    def replay(self, check: bool = False) -> Stg:
        return apply(self.source, self.rotations, check=check)

    def to_json(self) -> dict:
        g = self.source.graph
        return {
            "caterpillar": g.to_json(),
            "length": len(self.rotations),
            "rotations": [[str(g.vertex(p)), str(g.vertex(c))] for p, c in self.rotations],
            "phase_lengths": dict(self.phase_lengths),
            "bound_budget": self.bound_budget,
            "ratio": self.ratio,
            "settle_bst": self.settle_bst.to_json(),
        }


def transform(t1: Stg, t2: Stg) -> TransformTrace:
    """Rotation sequence from ``t1`` to ``t2`` routed through B(S*), S* an
    optimal static BST for the leg counts."""
    if t1.graph != t2.graph:
        raise InputError(f"caterpillars differ: {t1.graph!r} vs {t2.graph!r}")
    for t in (t1, t2):
        if len(t.present) != t.graph.size:
            raise InputError("transform needs trees on the whole caterpillar")
    graph = t1.graph
    star, _ = bstmod.optimal_static_bst(graph.legs)
    halves = []
    for t in (t1, t2):
        rec = _Recorder(t)
        _reduce(rec)
        reduce_len = len(rec.seq)
        _settle(rec, star)
        if rec.tree != build_B(graph, star):
            raise AssertionError("settling did not reach B(S*)")
        halves.append((rec.seq[:reduce_len], rec.seq[reduce_len:]))
    (r1, s1), (r2, s2) = halves
    back2 = invert(s2)
    back1 = invert(r2)
    phases = {
        "reduce1": len(r1),
        "settle1": len(s1),
        "core": 0,
        "settle2_inv": len(back2),
        "reduce2_inv": len(back1),
    }
    return TransformTrace(t1, t2, r1 + s1 + back2 + back1, phases, reference_budget(graph), star)


def certified_upper_bound(graph) -> int:
    """Length that no trace from :func:`transform` can exceed on ``graph``.

    Per side: each leg is lifted at most twice, the spine schedule has at most
    2n - 2 rotations, the spine reshaping at most 2n - 2, and settling costs
    exactly OPT-ST of the leg counts.
    """
    _, opt = bstmod.optimal_static_bst(graph.legs)
    n, m = graph.n, graph.m
    return 2 * (2 * m + 2 * (2 * n - 2) + opt)
