"""Wilber's first lower bound and its worst-case (tree, sequence) construction."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import kernels
from .bst import Bst, depths, interval_roots, mehlhorn_bst
from .errors import InputError


@dataclass(frozen=True)
class WilberReport:
    per_node: dict[int, int]
    Lambda: int
    LambdaPrime: int

    def to_json(self) -> dict:
        return {
            "lambda": {str(k): v for k, v in sorted(self.per_node.items())},
            "Lambda": self.Lambda,
            "LambdaPrime": self.LambdaPrime,
        }


def _check_sigma(s: Bst, sigma: Sequence[int]) -> list[int]:
    sigma = list(sigma)
    for x in sigma:
        if not isinstance(x, int) or not 1 <= x <= s.n:
            raise InputError(f"access {x!r} outside 1..{s.n}")
    return sigma


def _lambdas(s: Bst, sigma: list[int]) -> list[int]:
    return kernels.wilber_lambdas(list(s.left), list(s.right), list(s.parent), sigma)


def lam(s: Bst, u: int, sigma: Sequence[int]) -> int:
    """Switches of ``sigma`` restricted to ``u``'s subtree between u, its left and its right subtree."""
    if not isinstance(u, int) or not 1 <= u <= s.n:
        raise InputError(f"key {u!r} outside 1..{s.n}")
    return _lambdas(s, _check_sigma(s, sigma))[u]


def lam_prime(s: Bst, u: int, sigma: Sequence[int]) -> int:
    return lam(s, u, sigma) + sum(1 for x in sigma if x == u)


def wilber_report(s: Bst, sigma: Sequence[int]) -> WilberReport:
    sigma = _check_sigma(s, sigma)
    per = _lambdas(s, sigma)
    total = sum(per)
    return WilberReport({k: per[k] for k in range(1, s.n + 1)}, total, total + len(sigma))


def lambda_prime_total(s: Bst, sigma: Sequence[int]) -> int:
    return wilber_report(s, sigma).LambdaPrime


def interleave(left: Sequence[int], right: Sequence[int], prefix: Sequence[int] = ()) -> list[int]:
    """``prefix``, then left/right alternately (left first) while both last, then the rest."""
    out = list(prefix)
    k = min(len(left), len(right))
    for a, b in zip(left[:k], right[:k]):
        out.append(a)
        out.append(b)
    out.extend(left[k:])
    out.extend(right[k:])
    return out


def _interval_sequences(s: Bst, w: Sequence[int]) -> dict[int, list[int]]:
    """Access sequence of every subtree, keyed by the subtree's root."""
    seqs: dict[int, list[int]] = {0: []}
    for _, _, r in reversed(interval_roots(s)):  # children before parents
        seqs[r] = interleave(seqs[s.left[r]], seqs[s.right[r]], [r] * w[r - 1])
    return seqs


def worst_case_instance(w: Sequence[int]) -> tuple[Bst, list[int]]:
    """Weight-splitting tree and an access order with every key ``i`` used ``w_i`` times,
    built so that Lambda' is at least half the tree's static cost."""
    w = list(w)
    if not w or sum(w) <= 0:
        raise InputError("worst-case instance needs a positive total weight")
    s = mehlhorn_bst(w)
    return s, _interval_sequences(s, w)[s.root]


@dataclass(frozen=True)
class IntervalCertificate:
    p: int
    q: int
    root: int
    cost: int  # static cost of the subtree under the interval weights
    lambda_prime: int  # Lambda' of the subtree on its own sequence
    weight: int
    root_score: int  # w_root + min(a_root, b_root)

    @property
    def holds(self) -> bool:
        return self.cost <= 2 * self.lambda_prime

    @property
    def weight_rule(self) -> bool:
        return 2 * self.root_score >= self.weight

    @property
    def count_rule(self) -> bool:
        return 2 * self.root_score >= self.q - self.p + 1


def interval_certificates(w: Sequence[int]) -> list[IntervalCertificate]:
    """For every recursion interval of :func:`worst_case_instance`, both sides of
    ``c(p, q) <= 2 Lambda'(S_pq, sigma_pq)`` computed independently."""
    w = list(w)
    s, _ = worst_case_instance(w)
    seqs = _interval_sequences(s, w)
    d = depths(s)
    pre = [0]
    for x in w:
        pre.append(pre[-1] + x)
    out = []
    for p, q, r in interval_roots(s):
        sigma = seqs[r]
        per = _lambdas(s, sigma)
        lp = sum(per[k] for k in range(p, q + 1)) + len(sigma)
        base = d[r] - 1
        cost = sum(w[k - 1] * (d[k] - base) for k in range(p, q + 1))
        score = w[r - 1] + min(pre[r - 1] - pre[p - 1], pre[q] - pre[r])
        out.append(IntervalCertificate(p, q, r, cost, lp, pre[q] - pre[p - 1], score))
    return out


def bit_reversal(n: int) -> list[int]:
    """Bit-reversal permutation of 1..n (n a power of two)."""
    if n < 1 or n & (n - 1):
        raise InputError("bit reversal needs n to be a power of two")
    bits = n.bit_length() - 1
    return [int(format(k, f"0{bits}b")[::-1] or "0", 2) + 1 for k in range(n)]
