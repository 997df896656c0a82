"""Shared corpus builders and generators for the test suite."""

from __future__ import annotations

import itertools
import random

import numpy as np
import pytest

from klsparse.graph import MultiGraph
from klsparse.sparsity import SparsityParams, run_pebble_game

VALID_PARAMS = tuple(SparsityParams(k, l)
                     for k in (1, 2, 3) for l in range(0, 2 * k))


def labels(n: int) -> list[str]:
    return [f"v{i}" for i in range(n)]


def graph_from_pairs(n: int, pairs_with_mult) -> MultiGraph:
    names = labels(n)
    edges = []
    for (i, j), mult in pairs_with_mult:
        edges.extend([(names[i], names[j])] * mult)
    return MultiGraph.build(names, edges)


def simple_graph_classes(max_n: int):
    """One representative per isomorphism class of simple graphs, 2 <= n <= max_n."""
    from networkx.generators.atlas import graph_atlas_g
    out = []
    for g in graph_atlas_g():
        n = g.number_of_nodes()
        if 2 <= n <= max_n:
            names = labels(n)
            out.append(MultiGraph.build(names, [(names[u], names[v]) for u, v in g.edges()]))
    return out


def multigraph_classes(n: int, max_mult: int = 2):
    """One representative per isomorphism class of multigraphs on n labeled
    vertices with edge multiplicities up to max_mult."""
    pairs = list(itertools.combinations(range(n), 2))
    base = max_mult + 1
    num = base ** len(pairs)
    codes = np.arange(num, dtype=np.int64)
    digits = np.empty((num, len(pairs)), dtype=np.int64)
    for j in range(len(pairs)):
        digits[:, j] = (codes // base ** j) % base
    weights = np.array([base ** j for j in range(len(pairs))], dtype=np.int64)
    pair_index = {p: i for i, p in enumerate(pairs)}
    best = codes.copy()
    for perm in itertools.permutations(range(n)):
        cols = [pair_index[tuple(sorted((perm[a], perm[b])))] for a, b in pairs]
        np.minimum(best, digits[:, cols] @ weights, out=best)
    reps = digits[best == codes]
    return [graph_from_pairs(n, [(pairs[j], int(row[j])) for j in range(len(pairs)) if row[j]])
            for row in reps]


def random_multigraph(rng: random.Random, max_n: int = 12, max_mult: int = 2,
                      extra_edges: int = 3) -> tuple[MultiGraph, SparsityParams]:
    """A random graph with a random parameter pair, edge count near the tight
    target so sparse and non-sparse outcomes both show up."""
    n = rng.randint(2, max_n)
    k = rng.randint(1, 3)
    l = rng.randint(0, 2 * k - 1)
    p = SparsityParams(k, l)
    names = labels(n)
    pairs = list(itertools.combinations(names, 2))
    m = rng.randint(0, max(0, min(p.target(n) + extra_edges, max_mult * len(pairs))))
    counts: dict = {}
    edges = []
    while len(edges) < m:
        pair = rng.choice(pairs)
        if counts.get(pair, 0) < max_mult:
            counts[pair] = counts.get(pair, 0) + 1
            edges.append(pair)
    return MultiGraph.build(names, edges), p


def random_sparse_graph(rng: random.Random, p: SparsityParams, n: int,
                        proposals: int | None = None) -> MultiGraph:
    """A random (k,l)-sparse graph: keep whatever the pebble game accepts."""
    names = labels(n)
    pairs = list(itertools.combinations(names, 2))
    cap = max(1, min(2 * p.k - p.l, 2))
    pool = [pair for pair in pairs for _ in range(cap)]
    rng.shuffle(pool)
    if proposals is not None:
        pool = pool[:proposals]
    candidate = MultiGraph.build(names, pool)
    accepted, _ = run_pebble_game(candidate, p)
    return MultiGraph.build(names, accepted)


def random_tight_graph(rng: random.Random, p: SparsityParams, n_choices=(2, 3, 4, 5, 6),
                       attempts: int = 20) -> MultiGraph:
    """A random (k,l)-tight graph, built by accepting shuffled complete-graph
    edges until the rank target is met; resamples n when the target is out of
    reach (some small n admit no tight graph at all)."""
    for _ in range(attempts):
        n = rng.choice(n_choices)
        names = labels(n)
        pool = [pair for pair in itertools.combinations(names, 2)
                for _ in range(2 * p.k - p.l)]
        rng.shuffle(pool)
        accepted, _ = run_pebble_game(MultiGraph.build(names, pool), p)
        if len(accepted) == p.target(n):
            return MultiGraph.build(names, accepted)
    raise RuntimeError(f"no tight graph found for {p} on n in {n_choices}")


@pytest.fixture(scope="session")
def small_simple_corpus():
    return simple_graph_classes(5)


@pytest.fixture(scope="session")
def small_multi_corpus():
    return [g for n in (2, 3, 4) for g in multigraph_classes(n)]
