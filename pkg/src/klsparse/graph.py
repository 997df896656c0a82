"""Undirected multigraphs with stable vertex labels.

Everything else in the package is built on :class:`MultiGraph`: an immutable
vertex list plus an edge multiset. Vertices are opaque string tokens; edges
are unordered pairs, repeats allowed, loops rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .errors import InputError

VertexId = str
Edge = tuple[VertexId, VertexId]


def _check_label(label) -> VertexId:
    if not isinstance(label, str) or not label or any(ch.isspace() for ch in label):
        raise InputError(f"vertex label must be a nonempty token without whitespace, got {label!r}")
    return label


@dataclass(frozen=True)
class MultiGraph:
    """Immutable undirected multigraph.

    ``vertices`` keeps input order and must be duplicate-free. ``edges`` is an
    ordered multiset of unordered pairs; both endpoints must be known vertices
    and distinct (no loops). All operations return new graphs.
    """

    vertices: tuple[VertexId, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        seen = set()
        for v in self.vertices:
            _check_label(v)
            if v in seen:
                raise InputError(f"duplicate vertex label {v!r}")
            seen.add(v)
        for u, v in self.edges:
            if u == v:
                raise InputError(f"loop edge ({u!r}, {v!r}) not allowed")
            if u not in seen or v not in seen:
                raise InputError(f"edge ({u!r}, {v!r}) has an endpoint outside the vertex set")

    @staticmethod
    def build(vertices: Iterable[VertexId], edges: Iterable[Edge]) -> "MultiGraph":
        return MultiGraph(tuple(vertices), tuple((u, v) for u, v in edges))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def vertex_set(self) -> frozenset[VertexId]:
        return frozenset(self.vertices)

    @cached_property
    def adjacency(self) -> dict[VertexId, tuple[VertexId, ...]]:
        """Neighbor lists with multiplicity, in sorted label order."""
        nbrs: dict[VertexId, list[VertexId]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return {v: tuple(sorted(ns)) for v, ns in nbrs.items()}

    def degree(self, v: VertexId) -> int:
        return len(self.adjacency[v])

    def multiplicity(self, u: VertexId, v: VertexId) -> int:
        key = frozenset((u, v))
        return sum(1 for e in self.edges if frozenset(e) == key)

    def has_edge(self, u: VertexId, v: VertexId) -> bool:
        return self.multiplicity(u, v) > 0

    def simple_edges(self) -> tuple[Edge, ...]:
        """Distinct endpoint pairs, multiplicities dropped, one per pair."""
        seen: dict[frozenset, Edge] = {}
        for e in self.edges:
            seen.setdefault(frozenset(e), e)
        return tuple(seen.values())

    # -- derived graphs ------------------------------------------------

    def induced_subgraph(self, s: Iterable[VertexId]) -> "MultiGraph":
        """Subgraph on the vertex set ``s``; edge multiplicities preserved."""
        keep = set()
        order = []
        for v in s:
            if v not in self.vertex_set:
                raise InputError(f"unknown vertex {v!r} in induced-subgraph request")
            if v not in keep:
                keep.add(v)
                order.append(v)
        order.sort(key=self.vertices.index)
        return MultiGraph(tuple(order), tuple(e for e in self.edges if e[0] in keep and e[1] in keep))

    def edge_count_within(self, s: Iterable[VertexId]) -> int:
        keep = set(s)
        return sum(1 for u, v in self.edges if u in keep and v in keep)

    def remove_edge(self, u: VertexId, v: VertexId) -> "MultiGraph":
        """Drop one copy of edge (u, v)."""
        key = frozenset((u, v))
        for i, e in enumerate(self.edges):
            if frozenset(e) == key:
                return MultiGraph(self.vertices, self.edges[:i] + self.edges[i + 1:])
        raise InputError(f"edge ({u!r}, {v!r}) not present")

    def is_connected(self) -> bool:
        """True iff the graph has at most one connected component."""
        return self.component_count() <= 1

    def component_count(self) -> int:
        seen: set[VertexId] = set()
        count = 0
        for start in self.vertices:
            if start in seen:
                continue
            count += 1
            stack = [start]
            seen.add(start)
            while stack:
                x = stack.pop()
                for y in self.adjacency[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
        return count

    def connected_component(self, start: VertexId) -> frozenset[VertexId]:
        if start not in self.vertex_set:
            raise InputError(f"unknown vertex {start!r}")
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in self.adjacency[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return frozenset(seen)

    def relabel(self, mapping: Mapping[VertexId, VertexId]) -> "MultiGraph":
        """Rename vertices; labels not in ``mapping`` stay as they are."""
        ren = lambda v: mapping.get(v, v)
        return MultiGraph(
            tuple(ren(v) for v in self.vertices),
            tuple((ren(u), ren(v)) for u, v in self.edges),
        )

    # -- serialization -------------------------------------------------

    def to_json_obj(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}

    def to_json(self, indent=None) -> str:
        return json.dumps(self.to_json_obj(), indent=indent)

    @staticmethod
    def from_json_obj(obj) -> "MultiGraph":
        if not isinstance(obj, dict) or "vertices" not in obj or "edges" not in obj:
            raise InputError('graph JSON must be an object with "vertices" and "edges"')
        vertices = obj["vertices"]
        if not isinstance(vertices, list):
            raise InputError('"vertices" must be an array of strings')
        edges = []
        for i, pair in enumerate(obj["edges"]):
            if not isinstance(pair, list) or len(pair) != 2:
                raise InputError(f'edge #{i}: expected a 2-element array, got {pair!r}')
            u, v = pair
            if u == v:
                raise InputError(f"edge #{i}: loop ({u!r}, {v!r}) rejected")
            edges.append((u, v))
        try:
            return MultiGraph.build(vertices, edges)
        except InputError as exc:
            raise InputError(f"graph JSON: {exc}") from exc

    @staticmethod
    def from_json(text: str) -> "MultiGraph":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"not valid JSON: {exc}") from exc
        return MultiGraph.from_json_obj(obj)

    def to_text(self) -> str:
        """Plain-text form: header ``n m``, then one ``u v`` line per edge.

        Only graphs without isolated vertices round-trip through this format;
        JSON is the canonical one.
        """
        lines = [f"{self.n} {self.m}"]
        lines += [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str) -> "MultiGraph":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise InputError("empty text graph")
        head = lines[0].split()
        if len(head) != 2 or not all(tok.isdigit() for tok in head):
            raise InputError(f"line 1: expected header 'n m', got {lines[0]!r}")
        n, m = int(head[0]), int(head[1])
        if len(lines) - 1 != m:
            raise InputError(f"header announces {m} edges but {len(lines) - 1} edge lines follow")
        vertices: list[VertexId] = []
        seen = set()
        edges = []
        for i, ln in enumerate(lines[1:], start=2):
            toks = ln.split()
            if len(toks) != 2:
                raise InputError(f"line {i}: expected 'u v', got {ln!r}")
            u, v = toks
            if u == v:
                raise InputError(f"line {i}: loop ({u}, {v}) rejected")
            for x in (u, v):
                if x not in seen:
                    seen.add(x)
                    vertices.append(x)
            edges.append((u, v))
        if len(vertices) != n:
            raise InputError(f"header announces {n} vertices but edge lines name {len(vertices)}")
        return MultiGraph.build(vertices, edges)


def union_identify(g1: MultiGraph, g2: MultiGraph,
                   identification: Mapping[VertexId, VertexId]) -> MultiGraph:
    """Union of ``g1`` and ``g2``, gluing g2-vertices onto g1-vertices.

    ``identification`` maps g2-vertices to g1-vertices and must be injective.
    Unidentified g2-vertices keep their labels; on a clash with g1 they are
    renamed ``<label>#<counter>`` deterministically. The result has
    ``|V1| + |V2| - |identification|`` vertices and every edge of both graphs.
    """
    targets = set()
    for src, dst in identification.items():
        if src not in g2.vertex_set:
            raise InputError(f"identification source {src!r} is not a g2 vertex")
        if dst not in g1.vertex_set:
            raise InputError(f"identification target {dst!r} is not a g1 vertex")
        if dst in targets:
            raise InputError(f"identification is not injective at target {dst!r}")
        targets.add(dst)

    rename: dict[VertexId, VertexId] = dict(identification)
    used = set(g1.vertices)
    new_vertices = list(g1.vertices)
    for v in g2.vertices:
        if v in rename:
            continue
        label = v
        counter = 1
        while label in used:
            label = f"{v}#{counter}"
            counter += 1
        rename[v] = label
        used.add(label)
        new_vertices.append(label)

    new_edges = list(g1.edges) + [(rename[u], rename[v]) for u, v in g2.edges]
    return MultiGraph(tuple(new_vertices), tuple(new_edges))
