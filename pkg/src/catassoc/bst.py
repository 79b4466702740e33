"""Binary search trees on keys 1..n.

A :class:`Bst` is stored as left/right child tables (index 0 unused, 0 means
no child), which makes structural equality the same as tree equality.
Rotation sequences are lists of ``(parent_key, child_key)`` pairs.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from . import kernels
from .errors import InputError

Rotation = tuple[int, int]


@dataclass(frozen=True)
class Bst:
    root: int
    left: tuple[int, ...]
    right: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.left) - 1

    @cached_property
    def parent(self) -> tuple[int, ...]:
        par = [0] * (self.n + 1)
        for k in range(1, self.n + 1):
            if self.left[k]:
                par[self.left[k]] = k
            if self.right[k]:
                par[self.right[k]] = k
        return tuple(par)

    def __repr__(self) -> str:
        return f"Bst({self.nested()})"

    def nested(self):
        """Compact ``(key, left, right)`` form, ``None`` for empty subtrees."""

        def rec(k):
            if not k:
                return None
            if not self.left[k] and not self.right[k]:
                return k
            return (k, rec(self.left[k]), rec(self.right[k]))

        return rec(self.root)

    def children(self, key: int) -> tuple[int, ...]:
        return tuple(x for x in (self.left[key], self.right[key]) if x)

    def edges(self) -> list[Rotation]:
        return [(self.parent[k], k) for k in range(1, self.n + 1) if self.parent[k]]

    def subtree(self, key: int) -> list[int]:
        out, stack = [], [key]
        while stack:
            k = stack.pop()
            out.append(k)
            stack.extend(self.children(k))
        return out

    def inorder(self) -> list[int]:
        out, stack, k = [], [], self.root
        while stack or k:
            while k:
                stack.append(k)
                k = self.left[k]
            k = stack.pop()
            out.append(k)
            k = self.right[k]
        return out

    def is_valid(self) -> bool:
        return self.n >= 1 and self.inorder() == list(range(1, self.n + 1))

    def to_json(self) -> dict:
        return {"n": self.n, "parent": list(self.parent[1:])}

    @classmethod
    def from_json(cls, data) -> "Bst":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            n, parent = int(data["n"]), list(data["parent"])
        except (KeyError, TypeError, ValueError):
            raise InputError('BST JSON must look like {"n": 3, "parent": [2, 0, 2]}') from None
        if len(parent) != n:
            raise InputError(f"parent list has {len(parent)} entries for n={n}")
        return from_parent(parent)


def from_parent(parent: Sequence[int]) -> Bst:
    """Build from a 1-based parent list (0 marks the root)."""
    n = len(parent)
    left = [0] * (n + 1)
    right = [0] * (n + 1)
    roots = []
    for k, p in enumerate(parent, start=1):
        if p == 0:
            roots.append(k)
        elif not 1 <= p <= n or p == k:
            raise InputError(f"bad parent {p} for key {k}")
        elif k < p:
            if left[p]:
                raise InputError(f"key {p} has two left children")
            left[p] = k
        else:
            if right[p]:
                raise InputError(f"key {p} has two right children")
            right[p] = k
    if len(roots) != 1:
        raise InputError(f"expected exactly one root, found {len(roots)}")
    t = Bst(roots[0], tuple(left), tuple(right))
    if not t.is_valid():
        raise InputError("parent list does not describe a binary search tree on 1..n")
    return t


def from_nested(spec, n: int | None = None) -> Bst:
    """Build from the :meth:`Bst.nested` form, e.g. ``(2, 1, 3)``."""
    pairs = []

    def rec(node, parent):
        if node is None:
            return
        if isinstance(node, int):
            pairs.append((node, parent))
            return
        key, lo, hi = node
        pairs.append((key, parent))
        rec(lo, key)
        rec(hi, key)

    rec(spec, 0)
    n = n or len(pairs)
    parent = [0] * n
    for k, p in pairs:
        parent[k - 1] = p
    return from_parent(parent)


def _from_roots(lo: int, hi: int, choose, n: int) -> Bst:
    """Build on [lo, hi] where ``choose(p, q)`` names the root of interval [p, q]."""
    left = [0] * (n + 1)
    right = [0] * (n + 1)
    stack = [(lo, hi, 0, 0)]
    root = 0
    while stack:
        p, q, par, side = stack.pop()
        if p > q:
            continue
        r = choose(p, q)
        if par == 0:
            root = r
        elif side < 0:
            left[par] = r
        else:
            right[par] = r
        stack.append((p, r - 1, r, -1))
        stack.append((r + 1, q, r, 1))
    return Bst(root, tuple(left), tuple(right))


def right_path(n: int) -> Bst:
    return _from_roots(1, n, lambda p, q: p, n)


def left_path(n: int) -> Bst:
    return _from_roots(1, n, lambda p, q: q, n)


def balanced(n: int) -> Bst:
    return _from_roots(1, n, lambda p, q: (p + q) // 2, n)


def random_bst(n: int, rng: random.Random) -> Bst:
    """Uniform over all Catalan(n) shapes (via a uniformly random bracket sequence)."""
    if n < 1:
        raise InputError("n must be positive")
    # random binary tree by uniform root choice weighted with Catalan counts
    cat = catalan_table(n)

    def choose(p, q):
        k = q - p + 1
        x = rng.randrange(cat[k])
        for r in range(p, q + 1):
            x -= cat[r - p] * cat[q - r]
            if x < 0:
                return r
        return q

    return _from_roots(1, n, choose, n)


def catalan_table(n: int) -> list[int]:
    cat = [1] * (n + 1)
    for k in range(1, n + 1):
        cat[k] = sum(cat[i] * cat[k - 1 - i] for i in range(k))
    return cat


def all_bsts(n: int) -> Iterator[Bst]:
    """Every BST on 1..n, Catalan(n) of them."""

    def shapes(p, q):
        if p > q:
            yield []
            return
        for r in range(p, q + 1):
            for lo in shapes(p, r - 1):
                for hi in shapes(r + 1, q):
                    yield [(r, lo[0][0] if lo else 0, hi[0][0] if hi else 0)] + lo + hi

    for nodes in shapes(1, n):
        left = [0] * (n + 1)
        right = [0] * (n + 1)
        for key, lo, hi in nodes:
            left[key], right[key] = lo, hi
        yield Bst(nodes[0][0], tuple(left), tuple(right))


def _check_key(t: Bst, key: int) -> None:
    if not isinstance(key, int) or not 1 <= key <= t.n:
        raise InputError(f"key {key!r} outside 1..{t.n}")


def depth(t: Bst, key: int) -> int:
    _check_key(t, key)
    d = 0
    while key:
        d += 1
        key = t.parent[key]
    return d


def depths(t: Bst) -> list[int]:
    """Depth of every key (index 0 unused)."""
    out = [0] * (t.n + 1)
    stack = [(t.root, 1)]
    while stack:
        k, d = stack.pop()
        out[k] = d
        stack.extend((c, d + 1) for c in t.children(k))
    return out


def rotate(t: Bst, edge: Rotation) -> Bst:
    p, c = edge
    if not (1 <= p <= t.n and 1 <= c <= t.n) or t.parent[c] != p:
        raise InputError(f"({p}, {c}) is not an edge of {t!r}")
    left, right = list(t.left), list(t.right)
    g = t.parent[p]
    if left[p] == c:
        left[p] = right[c]
        right[c] = p
    else:
        right[p] = left[c]
        left[c] = p
    root = t.root
    if g == 0:
        root = c
    elif left[g] == p:
        left[g] = c
    else:
        right[g] = c
    return Bst(root, tuple(left), tuple(right))


def apply_rotations(t: Bst, seq: Sequence[Rotation]) -> Bst:
    for k, edge in enumerate(seq):
        try:
            t = rotate(t, edge)
        except InputError as exc:
            raise InputError(f"rotation {k}: {exc}") from None
    return t


def invert(seq: Sequence[Rotation]) -> list[Rotation]:
    """The sequence that undoes ``seq``."""
    return [(c, p) for p, c in reversed(seq)]


def _check_weights(t: Bst | None, w: Sequence[int]) -> None:
    if t is not None and len(w) != t.n:
        raise InputError(f"{len(w)} weights for a tree on {t.n} keys")
    if any(x < 0 for x in w):
        raise InputError("weights must be nonnegative")


def static_cost(t: Bst, w: Sequence[int]) -> int:
    _check_weights(t, w)
    d = depths(t)
    return sum(wk * d[k] for k, wk in enumerate(w, start=1))


def optimal_static_bst(w: Sequence[int]) -> tuple[Bst, int]:
    """Optimal static BST for access frequencies ``w`` (Knuth's DP)."""
    w = list(w)
    if not w:
        raise InputError("empty weight vector")
    _check_weights(None, w)
    cost, root = kernels.optimal_bst_tables(w)
    return _from_roots(1, len(w), lambda p, q: root[p][q], len(w)), cost


def mehlhorn_bst(w: Sequence[int]) -> Bst:
    """Weight-splitting BST: each interval's root maximises ``w_i + min(a_i, b_i)``.

    ``a_i``/``b_i`` are the interval weights left/right of ``i``; ties go to the
    smallest index.  Zero-weight intervals are built balanced.
    """
    w = list(w)
    if not w:
        raise InputError("empty weight vector")
    _check_weights(None, w)
    pre = [0]
    for x in w:
        pre.append(pre[-1] + x)

    def choose(p, q):
        if pre[q] == pre[p - 1]:
            return (p + q) // 2
        best, best_i = -1, p
        for i in range(p, q + 1):
            score = w[i - 1] + min(pre[i - 1] - pre[p - 1], pre[q] - pre[i])
            if score > best:
                best, best_i = score, i
        return best_i

    return _from_roots(1, len(w), choose, len(w))


def interval_roots(t: Bst) -> list[tuple[int, int, int]]:
    """``(p, q, root)`` for the key interval spanned by every subtree."""
    out = []

    def rec(k, p, q):
        if not k:
            return
        out.append((p, q, k))
        rec(t.left[k], p, k - 1)
        rec(t.right[k], k + 1, q)

    rec(t.root, 1, t.n)
    return out


def right_path_transform(t: Bst) -> list[Rotation]:
    """Rotations turning ``t`` into the right path, each with its parent at the
    root or at the root's right child.

    Nodes above the deepest remaining left subtree are parked on a left path
    under the root and released once nothing is left to straighten.  Length is
    at most ``(n - s) + 2 * parked <= 3n``, where ``s`` is the initial right
    spine length.
    """
    seq: list[Rotation] = []
    parked = 0

    def push(edge):
        nonlocal t
        seq.append(edge)
        t = rotate(t, edge)

    while t.left[t.root]:
        push((t.root, t.left[t.root]))
    while True:
        x = t.right[t.root]
        if x and t.left[x]:
            push((x, t.left[x]))
            continue
        if not x or not _has_left_below(t, x):
            break
        push((t.root, x))
        parked += 1
    for _ in range(parked):
        push((t.root, t.left[t.root]))
    return seq


def _has_left_below(t: Bst, k: int) -> bool:
    while k:
        if t.left[k]:
            return True
        k = t.right[k]
    return False


def root_visit_schedule(t: Bst) -> list[Rotation]:
    """Rotations touching only nodes of depth <= 3 after which every key has been the root.

    Straightens the root's left arm, then walks down the right spine, parking
    each root on a left path.  Ends at the left path; length at most ``2n - 2``.
    """
    seq: list[Rotation] = []
    while t.left[t.root]:
        edge = (t.root, t.left[t.root])
        seq.append(edge)
        t = rotate(t, edge)
    while t.right[t.root]:
        x = t.right[t.root]
        edge = (x, t.left[x]) if t.left[x] else (t.root, x)
        seq.append(edge)
        t = rotate(t, edge)
    return seq


def to_right_path(t: Bst) -> list[Rotation]:
    """Unrestricted straightening: one rotation per key off the right spine."""
    seq: list[Rotation] = []
    k = t.root
    while k:
        while t.left[k]:
            c = t.left[k]
            seq.append((k, c))
            t = rotate(t, (k, c))
            k = c
        k = t.right[k]
    return seq


def bst_transform_linear(s1: Bst, s2: Bst) -> list[Rotation]:
    """Rotations taking ``s1`` to ``s2`` through the right path; at most ``2n - 2``."""
    if s1.n != s2.n:
        raise InputError(f"key ranges differ: {s1.n} vs {s2.n}")
    if s1 == s2:
        return []
    return to_right_path(s1) + invert(to_right_path(s2))
