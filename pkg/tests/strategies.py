"""Hypothesis strategies for small multigraphs and parameter pairs."""

from __future__ import annotations

import itertools

from hypothesis import strategies as st

from klsparse.graph import MultiGraph
from klsparse.sparsity import SparsityParams


@st.composite
def multigraphs(draw, min_n=2, max_n=6, max_mult=2):
    n = draw(st.integers(min_n, max_n))
    names = [f"v{i}" for i in range(n)]
    pairs = list(itertools.combinations(names, 2))
    mults = draw(st.lists(st.integers(0, max_mult), min_size=len(pairs), max_size=len(pairs)))
    edges = [pair for pair, mult in zip(pairs, mults) for _ in range(mult)]
    return MultiGraph.build(names, edges)


@st.composite
def params(draw, max_k=3):
    k = draw(st.integers(1, max_k))
    l = draw(st.integers(0, 2 * k - 1))
    return SparsityParams(k, l)
