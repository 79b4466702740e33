import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from catassoc import bst as B
from catassoc import oracle
from catassoc import stg as S
from catassoc import transform as T
from catassoc.caterpillar import Caterpillar, h_prime, leg, spine
from catassoc.errors import InputError


@st.composite
def trees(draw, max_n=5, max_legs=3):
    legs = draw(st.lists(st.integers(0, max_legs), min_size=1, max_size=max_n))
    graph = Caterpillar(tuple(legs))
    return S.random_stg(graph, random.Random(draw(st.integers(0, 2**32))))


def replay_checked(t, seq):
    """Apply step by step; every intermediate is valid and spine rotations use tree edges."""
    n = t.graph.n
    for p, c in seq:
        assert t.parent[c] == p
        if p < n and c < n:
            assert (spine(p + 1), spine(c + 1)) in S.light_edges(t)
        t = S.rotate(t, (p, c))
        assert S.is_valid(t)
    return t


# -- apply -------------------------------------------------------------------

def test_apply_basics(sample_tree):
    assert T.apply(sample_tree, []) == sample_tree
    seq = []
    t = sample_tree
    rng = random.Random(3)
    for _ in range(10):
        e = rng.choice(t.tree_edges())
        seq.append(e)
        t = S.rotate(t, e)
    assert T.apply(sample_tree, seq) == t
    assert T.apply(sample_tree, seq + T.invert(seq)) == sample_tree


def test_apply_error_names_index(sample_tree):
    e = sample_tree.tree_edges()[0]
    with pytest.raises(T.IllegalRotation) as info:
        T.apply(sample_tree, [e, e])
    assert info.value.index == 1 and "rotation 1" in str(info.value)
    assert isinstance(info.value, InputError)


# -- cleanup -----------------------------------------------------------------

def test_cleanup_on_a_form_is_empty(sample_graph, sample_bst, sample_pi):
    a = S.build_A(sample_graph, sample_bst, sample_pi)
    assert T.cleanup(a) == ([], a)


def test_cleanup_star_single_leg():
    g = Caterpillar((1,))
    b = S.build_B(g, B.balanced(1))
    seq, t = T.cleanup(b)
    assert seq == [(0, 1)] and t.root == leg(1, 1)


def test_cleanup_two_legs_right_path():
    g = Caterpillar((1, 1))
    b = S.build_B(g, B.right_path(2))
    seq, t = T.cleanup(b)
    assert S.is_valid(t)
    assert all(S.spine_ancestor_count(t, k) == 0 for k in g.leg_indices)
    assert all(sum(1 for _, c in seq if c == k) + sum(1 for p, _ in seq if p == k) <= 2
               for k in g.leg_indices)


@settings(max_examples=300)
@given(trees(max_n=6))
def test_cleanup_postcondition(t):
    seq, r = T.cleanup(t)
    assert replay_checked(t, seq) == r
    sb = S.spine_bst(r)
    d = B.depths(sb)
    n = t.graph.n
    for k in t.graph.leg_indices:
        p = r.parent[k]
        if 0 <= p < n:
            assert d[p + 1] > 2 or S.spine_ancestor_count(r, k) > 2
    # every lifted leg is rotated at most twice
    for k in t.graph.leg_indices:
        assert sum(1 for _, c in seq if c == k) <= 2


# -- reduce_to_A -----------------------------------------------------------------

@settings(max_examples=300)
@given(trees(max_n=6, max_legs=4))
def test_reduce_to_a(t):
    seq, r = T.reduce_to_A(t)
    assert S.is_a_form(r)
    assert replay_checked(t, seq) == r
    g = t.graph
    assert len(seq) <= 2 * g.m + 3 * g.n
    n = g.n
    assert sum(1 for p, c in seq if p < n and c < n) <= 2 * n - 2
    for k in g.leg_indices:
        assert sum(1 for _, c in seq if c == k) <= 2


def test_reduce_a_form_only_spine(sample_graph, sample_bst, sample_pi):
    a = S.build_A(sample_graph, sample_bst, sample_pi)
    seq, r = T.reduce_to_A(a)
    n = sample_graph.n
    assert all(p < n and c < n for p, c in seq) and len(seq) <= 3 * n
    assert S.leg_order(r) == sample_pi


def test_reduce_b_on_single_leg():
    g = Caterpillar((1,))
    seq, r = T.reduce_to_A(S.build_B(g, B.balanced(1)))
    assert seq == [(0, 1)] and S.is_a_form(r)


# -- settle_legs -------------------------------------------------------------------

def test_settle_single_leg():
    g = Caterpillar((1,))
    s = B.balanced(1)
    a = S.build_A(g, s, [leg(1, 1)])
    seq, r = T.settle_legs(a, s)
    assert seq == [(1, 0)] and r == S.build_B(g, s)


def test_settle_sample(sample_graph, sample_bst, sample_pi):
    a = S.build_A(sample_graph, sample_bst, sample_pi)
    assert T.settle_leg_phase_cost(a, sample_bst) == 15
    seq, r = T.settle_legs(a, sample_bst)
    assert len(seq) == 15 and r == S.build_B(sample_graph, sample_bst)
    star, opt = B.optimal_static_bst(sample_graph.legs)
    assert T.settle_leg_phase_cost(a, star) == opt <= 2 * h_prime(sample_graph) * sample_graph.m


def test_settle_rejects_non_a(sample_tree, sample_bst):
    with pytest.raises(InputError):
        T.settle_legs(sample_tree, sample_bst)
    a = S.build_A(Caterpillar((1, 1)), B.balanced(2), [leg(1, 1), leg(2, 1)])
    with pytest.raises(InputError):
        T.settle_legs(a, B.balanced(3))


@settings(max_examples=200)
@given(trees(max_n=6, max_legs=4), st.integers(0, 2**32))
def test_settle_random(t, seed):
    rng = random.Random(seed)
    _, a = T.reduce_to_A(t)
    target = B.random_bst(t.graph.n, rng)
    seq, r = T.settle_legs(a, target)
    assert r == S.build_B(t.graph, target)
    assert replay_checked(a, seq) == r
    d = B.depths(target)
    want = sum(mi * d[i + 1] for i, mi in enumerate(t.graph.legs))
    assert T.settle_leg_phase_cost(a, target) == want


# -- all_bound_transform ----------------------------------------------------------

@pytest.mark.parametrize("legs", [(0,), (1, 0), (0, 2, 1), (1, 1, 0, 1), (0, 0, 1, 0, 2)])
def test_all_bound_exhaustive(legs):
    g = Caterpillar(legs)
    for s1, s2 in itertools.product(B.all_bsts(g.n), repeat=2):
        t1, t2 = S.build_B(g, s1), S.build_B(g, s2)
        seq = T.all_bound_transform(t1, t2)
        assert len(seq) <= 4 * g.n
        assert all(p < g.n and c < g.n for p, c in seq)
        assert T.apply(t1, seq) == t2
        if s1 == s2:
            assert seq == []


def test_all_bound_matches_bst_transform():
    g = Caterpillar((2, 0, 1))
    s1, s2 = B.left_path(3), B.right_path(3)
    seq = T.all_bound_transform(S.build_B(g, s1), S.build_B(g, s2))
    assert seq == [(p - 1, c - 1) for p, c in B.bst_transform_linear(s1, s2)]


def test_all_bound_rejects_free_legs(sample_tree, sample_graph, sample_bst):
    with pytest.raises(InputError):
        T.all_bound_transform(sample_tree, S.build_B(sample_graph, sample_bst))
    with pytest.raises(InputError):
        T.all_bound_transform(S.build_B(Caterpillar((1,)), B.balanced(1)),
                              S.build_B(Caterpillar((2,)), B.balanced(1)))


# -- transform -----------------------------------------------------------------------

def test_transform_identity(sample_tree):
    tr = T.transform(sample_tree, sample_tree)
    assert tr.replay() == sample_tree
    assert sum(tr.phase_lengths.values()) == len(tr)
    assert tr.phase_lengths["core"] == 0


def test_transform_sample(sample_graph, sample_bst, sample_pi):
    a = S.build_A(sample_graph, sample_bst, sample_pi)
    b = S.build_B(sample_graph, sample_bst)
    tr = T.transform(a, b)
    assert tr.replay(check=True) == b
    assert len(tr) <= T.certified_upper_bound(sample_graph)
    assert len(tr) >= oracle.exact_distance(a, b) == 15
    data = tr.to_json()
    assert data["length"] == len(tr) and set(data["phase_lengths"]) == set(T.PHASES)


def test_transform_budget_value(sample_graph, sample_tree):
    tr = T.transform(sample_tree, sample_tree)
    assert math.isclose(tr.bound_budget, 5 + 6 * h_prime(sample_graph))
    assert math.isclose(tr.ratio, len(tr) / tr.bound_budget)


def test_transform_mismatch():
    a = S.build_B(Caterpillar((1,)), B.balanced(1))
    b = S.build_B(Caterpillar((0, 0)), B.balanced(2))
    with pytest.raises(InputError):
        T.transform(a, b)


@pytest.mark.parametrize("legs", [(1, 1), (2, 1), (1, 1, 1), (0, 2, 0)])
def test_transform_against_oracle(legs):
    g = Caterpillar(legs)
    rg = oracle.rotation_graph(g)
    rng = random.Random(sum(legs) * 31 + len(legs))
    for _ in range(25):
        t1, t2 = rg.tree(rng.randrange(rg.nodes)), rg.tree(rng.randrange(rg.nodes))
        tr = T.transform(t1, t2)
        assert tr.replay(check=True) == t2
        d = rg.distances_from(t1)[rg.index(t2)]
        assert d <= len(tr) <= T.certified_upper_bound(g)


@settings(max_examples=150, deadline=None)
@given(trees(max_n=6, max_legs=4), st.integers(0, 2**32))
def test_transform_random(t1, seed):
    t2 = S.random_stg(t1.graph, random.Random(seed))
    tr = T.transform(t1, t2)
    assert replay_checked(t1, tr.rotations) == t2
    assert len(tr) <= T.certified_upper_bound(t1.graph)
    assert len(tr) <= 32 * tr.bound_budget
