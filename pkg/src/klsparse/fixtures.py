"""The refutation host graphs, one family per l in {0,1,2,3}.

Each family has a "broken" host (edge count kn - l, yet one vertex set
violates sparsity) and two tight repairs obtained by rewiring a single edge:
(a,e) becomes (d,e), or (b,f) becomes (c,f). For l = 0 and 1 there is an
additional tight "corner" host whose role is to pin down subsets containing
one endpoint of each crossing edge; it enters in all eight role relabelings
compatible with the crossing.

Every fixture's documented status is re-derived with the brute-force oracle
the first time a family is built; a mismatch is a bug, not an input error.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import InputError
from .graph import Edge, MultiGraph, VertexId
from .sparsity import SparsityParams, check_sparse_bruteforce

ROLE_NAMES = ("a", "b", "c", "d")

# all role permutations that keep {a,b} and {c,d} as the crossing pairs
CROSSING_RELABELINGS = (
    ("a", "b", "c", "d"),
    ("b", "a", "c", "d"),
    ("a", "b", "d", "c"),
    ("b", "a", "d", "c"),
    ("c", "d", "a", "b"),
    ("d", "c", "a", "b"),
    ("c", "d", "b", "a"),
    ("d", "c", "b", "a"),
)


@dataclass(frozen=True)
class Fixture:
    """A host graph with its crossing roles and documented status."""

    name: str
    graph: MultiGraph
    roles: tuple[VertexId, VertexId, VertexId, VertexId]  # vertices playing a, b, c, d
    params: SparsityParams
    expected_sparse: bool
    expected_tight: bool

    @property
    def crossing_ab(self) -> Edge:
        return (self.roles[0], self.roles[1])

    @property
    def crossing_cd(self) -> Edge:
        return (self.roles[2], self.roles[3])


_BASE9 = (("a", "b"), ("c", "d"), ("d", "f"), ("e", "f"), ("a", "f"),
          ("a", "e"), ("b", "f"), ("b", "e"), ("c", "e"))


def _family_graph(l: int) -> MultiGraph:
    if l == 3:
        return MultiGraph.build("abcdef", _BASE9)
    if l == 2:
        extra = (("a", "x"), ("b", "x"), ("e", "x"), ("f", "x"))
        return MultiGraph.build("abcdefx", extra + tuple(e for e in _BASE9 if e != ("e", "f")))
    if l == 1:
        extra = (("a", "x"), ("b", "x"), ("e", "x"), ("f", "x"))
        return MultiGraph.build("abcdefx", extra + _BASE9)
    if l == 0:
        extra = (("a", "x"), ("a", "y"), ("e", "y"), ("b", "y"), ("b", "x"),
                 ("f", "x"), ("x", "y"))
        return MultiGraph.build("abcdefxy", extra + _BASE9)
    raise InputError(f"no fixture family for l = {l}; families exist for l in 0..3")


def _rewire(g: MultiGraph, old: Edge, new: Edge) -> MultiGraph:
    edges = list(g.remove_edge(*old).edges)
    edges.append(new)
    return MultiGraph(g.vertices, tuple(edges))


_CORNER_EDGES = (("1", "2"), ("1", "3"), ("1", "a"), ("1", "d"), ("2", "a"),
                 ("2", "d"), ("2", "3"), ("3", "a"), ("3", "d"), ("a", "d"),
                 ("b", "a"), ("b", "d"), ("c", "a"), ("c", "d"))


def _corner_graph(l: int) -> MultiGraph:
    # the tight 7-vertex host; dropping the (a,d) edge turns the l=0 version
    # into the l=1 one
    edges = _CORNER_EDGES if l == 0 else tuple(e for e in _CORNER_EDGES if e != ("a", "d"))
    return MultiGraph.build(["a", "c", "d", "b", "1", "2", "3"], edges)


def _verify(fx: Fixture) -> Fixture:
    verdict = check_sparse_bruteforce(fx.graph, fx.params)
    if verdict.sparse != fx.expected_sparse or verdict.tight != fx.expected_tight:
        raise RuntimeError(
            f"fixture {fx.name} failed its load-time check: "
            f"expected sparse={fx.expected_sparse} tight={fx.expected_tight}, "
            f"oracle says sparse={verdict.sparse} tight={verdict.tight}")
    for role_vertex in fx.roles:
        if role_vertex not in fx.graph.vertex_set:
            raise RuntimeError(f"fixture {fx.name}: role vertex {role_vertex!r} missing")
    if not (fx.graph.has_edge(*fx.crossing_ab) and fx.graph.has_edge(*fx.crossing_cd)):
        raise RuntimeError(f"fixture {fx.name}: crossing edges missing")
    return fx


@lru_cache(maxsize=None)
def fixture_set(l: int) -> tuple[Fixture, ...]:
    """All verified fixtures for (2, l), broken host first."""
    p = SparsityParams(2, l)
    broken = _family_graph(l)
    roles = ("a", "b", "c", "d")
    out = [
        Fixture(f"l{l}:broken", broken, roles, p, expected_sparse=False, expected_tight=False),
        Fixture(f"l{l}:fixed-a", _rewire(broken, ("a", "e"), ("d", "e")), roles, p,
                expected_sparse=True, expected_tight=True),
        Fixture(f"l{l}:fixed-b", _rewire(broken, ("b", "f"), ("c", "f")), roles, p,
                expected_sparse=True, expected_tight=True),
    ]
    if l in (0, 1):
        corner = _corner_graph(l)
        for relabel in CROSSING_RELABELINGS:
            out.append(Fixture(f"l{l}:corner:{''.join(relabel)}", corner, relabel, p,
                               expected_sparse=True, expected_tight=True))
    return tuple(_verify(fx) for fx in out)


def all_fixtures() -> tuple[Fixture, ...]:
    return tuple(fx for l in range(4) for fx in fixture_set(l))
