import os
import random
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from catassoc import kernels, oracle, stg
from catassoc.bst import random_bst
from catassoc.caterpillar import Caterpillar

BACKENDS = kernels.available_backends()


def test_backend_selected():
    assert kernels.BACKEND in BACKENDS


@pytest.mark.parametrize("legs", [(0, 0, 0, 0), (2, 1), (1, 0, 2), (3,)])
def test_rotation_graph_backends_agree(legs):
    graph = Caterpillar(legs)
    codes = [t.code() for t in oracle.enumerate_stgs(graph)]
    off, adj = oracle._csr(graph)
    results = {name: mod.rotation_graph(codes, off, adj) for name, mod in BACKENDS.items()}
    first = next(iter(results.values()))
    assert all(r == first for r in results.values())
    ecc = {name: mod.eccentricities(*first) for name, mod in BACKENDS.items()}
    assert len({repr(v) for v in ecc.values()}) == 1


@settings(max_examples=60)
@given(st.lists(st.integers(0, 3), min_size=1, max_size=5), st.integers(0, 2**32))
def test_rotate_code_matches_stg_rotate(legs, seed):
    graph = Caterpillar(tuple(legs))
    t = stg.random_stg(graph, random.Random(seed))
    off, adj = oracle._csr(graph)
    for p, c in t.tree_edges():
        want = stg.rotate(t, (p, c)).code()
        for mod in BACKENDS.values():
            assert mod.rotate_code(t.code(), off, adj, p, c) == want


@given(st.lists(st.integers(0, 30), min_size=1, max_size=25))
def test_dp_backends_agree(w):
    out = {name: mod.optimal_bst_tables(w) for name, mod in BACKENDS.items()}
    assert len({repr(v) for v in out.values()}) == 1


@given(st.integers(1, 40), st.lists(st.integers(1, 40), max_size=60), st.integers(0, 2**32))
def test_wilber_backends_agree(n, raw, seed):
    s = random_bst(n, random.Random(seed))
    sigma = [1 + (x - 1) % n for x in raw]
    out = {
        name: mod.wilber_lambdas(list(s.left), list(s.right), list(s.parent), sigma)
        for name, mod in BACKENDS.items()
    }
    assert len({tuple(v) for v in out.values()}) == 1


def test_pure_python_override():
    code = (
        "from catassoc import kernels, oracle\n"
        "from catassoc.caterpillar import Caterpillar\n"
        "print(kernels.BACKEND, oracle.exact_diameter(Caterpillar((1, 1)))[0])\n"
    )
    env = dict(os.environ, CATASSOC_PURE_PYTHON="1")
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert res.stdout.split() == ["python", "4"]
