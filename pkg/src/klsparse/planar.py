"""Desk-scale planarity and the four-terminal common-face test.

Planarity itself is delegated to networkx's left-right test; this module owns
the contracts around it: a hard size cap (candidates are small by design), a
rotation-system certificate that is re-verified against Euler's formula, and
the terminal-face test a gadget candidate must pass, namely an embedding with
a face visiting a, c, b, d in that cyclic order.

Parallel edges never affect planarity and are dropped up front.
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from .errors import CapacityError, InputError
from .graph import MultiGraph, VertexId

PLANARITY_LIMIT = 14


@dataclass(frozen=True)
class RotationSystem:
    """Per-vertex cyclic order of incident edge-ends of a planar embedding."""

    order: tuple[tuple[VertexId, tuple[VertexId, ...]], ...]

    def as_dict(self) -> dict[VertexId, tuple[VertexId, ...]]:
        return dict(self.order)

    def face_count(self) -> int:
        """Number of face walks traced by the embedding (0 with no edges)."""
        rotation = self.as_dict()
        succ: dict[tuple[VertexId, VertexId], tuple[VertexId, VertexId]] = {}
        for v, ring in rotation.items():
            for w in ring:
                # next half-edge of the face walk: rotate at w past v
                ring_w = rotation[w]
                j = ring_w.index(v)
                succ[(v, w)] = (w, ring_w[(j + 1) % len(ring_w)])
        faces = 0
        visited = set()
        for start in succ:
            if start in visited:
                continue
            faces += 1
            cur = start
            while cur not in visited:
                visited.add(cur)
                cur = succ[cur]
        return faces

    def verify_euler(self, g: MultiGraph) -> bool:
        """Euler's formula per component on the simplified graph.

        Each component with edges traces all its faces, contributing
        V - E + F = 2; an isolated vertex traces none and contributes 1.
        """
        simple_m = len(g.simple_edges())
        isolated = sum(1 for v in g.vertices if not g.adjacency[v])
        edged_components = g.component_count() - isolated
        return g.n - simple_m + self.face_count() == 2 * edged_components + isolated

    def to_dot(self) -> str:
        """DOT rendering with the rotation spelled out in port order."""
        lines = ["graph embedding {"]
        emitted = set()
        for v, ring in self.order:
            lines.append(f'  "{v}" [comment="cw: {",".join(ring)}"];')
            for w in ring:
                if (w, v) not in emitted:
                    emitted.add((v, w))
                    lines.append(f'  "{v}" -- "{w}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _check_size(g: MultiGraph):
    if g.n > PLANARITY_LIMIT:
        raise CapacityError(f"planarity tests limited to n <= {PLANARITY_LIMIT} (got n = {g.n})")


def _to_nx(g: MultiGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.simple_edges())
    return h


def rotation_system(g: MultiGraph) -> RotationSystem | None:
    """A planar embedding of the simplified graph, or None if non-planar."""
    _check_size(g)
    ok, embedding = nx.check_planarity(_to_nx(g))
    if not ok:
        return None
    data = embedding.get_data()
    return RotationSystem(tuple((v, tuple(data.get(v, ()))) for v in g.vertices))


def is_planar(g: MultiGraph) -> bool:
    return rotation_system(g) is not None


def has_terminal_face(g: MultiGraph, a: VertexId, b: VertexId, c: VertexId, d: VertexId) -> bool:
    """True iff some planar embedding has a face visiting a, c, b, d in that
    cyclic order (either orientation).

    Tested by augmentation: add the cycle a-c-b-d plus a fresh apex adjacent
    to all four terminals. The wheel this creates is 3-connected, so the
    augmented graph is planar exactly when the required face exists.
    """
    _check_size(g)
    terminals = (a, b, c, d)
    if len(set(terminals)) != 4:
        raise InputError(f"terminals must be distinct, got {terminals}")
    for t in terminals:
        if t not in g.vertex_set:
            raise InputError(f"terminal {t!r} is not a vertex of the graph")
    h = _to_nx(g)
    apex = "__apex__"
    while apex in g.vertex_set:
        apex += "_"
    h.add_edges_from([(a, c), (c, b), (b, d), (d, a)])
    h.add_edges_from([(apex, t) for t in terminals])
    return nx.check_planarity(h)[0]


def has_disjoint_terminal_paths(g: MultiGraph, a: VertexId, b: VertexId,
                                c: VertexId, d: VertexId) -> bool:
    """Exhaustively look for an a-b path and a c-d path sharing no vertex."""
    for t in (a, b, c, d):
        if t not in g.vertex_set:
            raise InputError(f"terminal {t!r} is not a vertex of the graph")
    adjacency = {v: sorted(set(g.adjacency[v])) for v in g.vertices}

    def ab_paths():
        # DFS over simple a-b paths avoiding c and d entirely
        stack = [(a, {a})]
        while stack:
            x, used = stack.pop()
            if x == b:
                yield used
                continue
            for y in adjacency[x]:
                if y in used or y in (c, d):
                    continue
                stack.append((y, used | {y}))

    def connects(avoid: set[VertexId]) -> bool:
        if c in avoid or d in avoid:
            return False
        seen = {c}
        stack = [c]
        while stack:
            x = stack.pop()
            if x == d:
                return True
            for y in adjacency[x]:
                if y not in seen and y not in avoid:
                    seen.add(y)
                    stack.append(y)
        return False

    return any(connects(path) for path in ab_paths())
