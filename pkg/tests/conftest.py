import itertools

import pytest
from hypothesis import strategies as st

from kfvd import Digraph


def all_pairs(n):
    return [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v]


@st.composite
def digraphs(draw, max_n=12):
    n = draw(st.integers(min_value=0, max_value=max_n))
    pairs = all_pairs(n)
    if pairs:
        arcs = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    else:
        arcs = []
    return Digraph(range(1, n + 1), arcs)


def exhaustive_digraphs(n):
    """Every digraph on vertex set 1..n (all subsets of ordered pairs)."""
    pairs = all_pairs(n)
    for mask in range(1 << len(pairs)):
        arcs = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        yield Digraph(range(1, n + 1), arcs)


@pytest.fixture
def triangle():
    return Digraph([1, 2, 3], [(1, 2), (2, 3), (3, 1)])


@pytest.fixture
def two_cycle():
    return Digraph([1, 2], [(1, 2), (2, 1)])
