"""Deciding (k,l)-sparse / tight / spanning, two independent ways.

A graph is (k,l)-sparse when every vertex subset S with |S| >= 2 induces at
most k|S| - l edges; tight when additionally m = kn - l; spanning when some
tight subgraph covers the whole vertex set.

Two recognizers live here. ``check_sparse_bruteforce`` scans all vertex
subsets (vectorized, capped at a configurable size) and doubles as the test
oracle for everything else. ``check_sparse_pebble`` plays the pebble game:
k pebbles per vertex, an edge is accepted once l+1 pebbles can be gathered on
its endpoints by reversing directed paths. Greedy acceptance computes the
rank of the sparsity matroid, which settles the spanning question.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError, InputError
from .graph import Edge, MultiGraph, VertexId

DEFAULT_ORACLE_LIMIT = 15
ORACLE_LIMIT_ENV = "SPARSITY_ORACLE_LIMIT"


def oracle_limit() -> int:
    raw = os.environ.get(ORACLE_LIMIT_ENV)
    if raw is None:
        return DEFAULT_ORACLE_LIMIT
    try:
        return int(raw)
    except ValueError as exc:
        raise InputError(f"{ORACLE_LIMIT_ENV} must be an integer, got {raw!r}") from exc


@dataclass(frozen=True)
class SparsityParams:
    """The pair (k, l), restricted to 1 <= k and 0 <= l <= 2k - 1."""

    k: int
    l: int

    def __post_init__(self):
        if self.k < 1:
            raise InputError(f"k must be >= 1, got {self.k}")
        if not (0 <= self.l <= 2 * self.k - 1):
            raise InputError(f"l must satisfy 0 <= l <= 2k-1 = {2 * self.k - 1}, got {self.l}")

    def target(self, n: int) -> int:
        """Edge count of a tight graph on n vertices: kn - l."""
        return self.k * n - self.l


@dataclass(frozen=True)
class ViolationWitness:
    """A vertex set S with |E[S]| > k|S| - l, certifying non-sparsity."""

    subset: frozenset[VertexId]
    edge_count: int
    kind: str = "minimum"  # "minimum" (oracle), "blocked" (pebble), "cut" (flow)

    def holds_in(self, g: MultiGraph, p: SparsityParams) -> bool:
        """Recount from scratch: |S| >= 2 and |E[S]| > k|S| - l."""
        count = g.edge_count_within(self.subset)
        return (len(self.subset) >= 2
                and count == self.edge_count
                and count > p.k * len(self.subset) - p.l)

    def to_json_obj(self) -> dict:
        return {"subset": sorted(self.subset), "edge_count": self.edge_count, "kind": self.kind}


@dataclass(frozen=True)
class SparsityVerdict:
    """Outcome of a recognizer run.

    ``rank`` is the greedy independent-edge count (the sparsity-matroid rank);
    flow-based verdicts leave ``rank`` and ``spanning`` unset since the flow
    reduction only decides sparsity. ``certificate`` carries the accepted edge
    set of a spanning run.
    """

    sparse: bool
    tight: bool
    spanning: bool | None = None
    witness: ViolationWitness | None = None
    rank: int | None = None
    certificate: tuple[Edge, ...] | None = None

    def to_json_obj(self) -> dict:
        return {
            "sparse": self.sparse,
            "tight": self.tight,
            "spanning": self.spanning,
            "witness": self.witness.to_json_obj() if self.witness else None,
            "rank": self.rank,
        }


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------

def subset_edge_counts(g: MultiGraph) -> np.ndarray:
    """|E[S]| for every vertex subset S, indexed by bitmask over vertex order."""
    n = g.n
    masks = np.arange(1 << n, dtype=np.int64)
    counts = np.zeros(1 << n, dtype=np.int64)
    index = {v: i for i, v in enumerate(g.vertices)}
    for u, v in g.edges:
        bits = (1 << index[u]) | (1 << index[v])
        counts += (masks & bits) == bits
    return counts


def _popcounts(n: int) -> np.ndarray:
    masks = np.arange(1 << n, dtype=np.uint64)
    sizes = np.zeros(1 << n, dtype=np.int64)
    for b in range(n):
        sizes += ((masks >> np.uint64(b)) & np.uint64(1)).astype(np.int64)
    return sizes


def _min_violator(g: MultiGraph, p: SparsityParams,
                  counts: np.ndarray, sizes: np.ndarray) -> ViolationWitness | None:
    bad = (sizes >= 2) & (counts > p.k * sizes - p.l)
    if not bad.any():
        return None
    idx = np.nonzero(bad)[0]
    best = min(
        idx,
        key=lambda mask: (int(sizes[mask]),
                          tuple(sorted(g.vertices[i] for i in range(g.n) if mask >> i & 1))),
    )
    subset = frozenset(g.vertices[i] for i in range(g.n) if best >> i & 1)
    return ViolationWitness(subset, int(counts[best]), kind="minimum")


def _bruteforce_rank(g: MultiGraph, p: SparsityParams, sizes: np.ndarray) -> tuple[int, tuple[Edge, ...]]:
    """Greedy matroid rank via the subset-scan independence test."""
    n = g.n
    index = {v: i for i, v in enumerate(g.vertices)}
    masks = np.arange(1 << n, dtype=np.int64)
    counts = np.zeros(1 << n, dtype=np.int64)
    bound = p.k * sizes - p.l
    eligible = sizes >= 2
    accepted: list[Edge] = []
    for u, v in g.edges:
        bits = (1 << index[u]) | (1 << index[v])
        trial = counts + ((masks & bits) == bits)
        if not (eligible & (trial > bound)).any():
            counts = trial
            accepted.append((u, v))
    return len(accepted), tuple(accepted)


def check_sparse_bruteforce(g: MultiGraph, p: SparsityParams, *,
                            limit: int | None = None) -> SparsityVerdict:
    """Decide sparsity by scanning all 2^n vertex subsets.

    On failure the witness is a minimum-cardinality violating set (ties broken
    by sorted label order). Raises :class:`CapacityError` above the oracle
    size limit; use the pebble game there.
    """
    cap = oracle_limit() if limit is None else limit
    if g.n > cap:
        raise CapacityError(
            f"brute-force oracle limited to n <= {cap} (got n = {g.n}); "
            "use the pebble method for larger graphs")
    counts = subset_edge_counts(g)
    sizes = _popcounts(g.n)
    witness = _min_violator(g, p, counts, sizes)
    sparse = witness is None
    rank, certificate = _bruteforce_rank(g, p, sizes)
    target = p.target(g.n)
    return SparsityVerdict(
        sparse=sparse,
        tight=sparse and g.m == target,
        spanning=rank == target,
        witness=witness,
        rank=rank,
        certificate=certificate if rank == target else None,
    )


# ---------------------------------------------------------------------------
# Pebble game
# ---------------------------------------------------------------------------

@dataclass
class PebbleState:
    """Mutable state of one pebble-game run: free pebbles plus the orientation
    of accepted edges. Never shared between runs."""

    pebbles: dict[VertexId, int]
    out: dict[VertexId, list[VertexId]] = field(default_factory=dict)

    def out_neighbors(self, v: VertexId) -> list[VertexId]:
        return self.out.setdefault(v, [])

    def orient(self, tail: VertexId, head: VertexId):
        self.out_neighbors(tail).append(head)
        self.out_neighbors(tail).sort()

    def reverse_path(self, path: list[VertexId]):
        # path[0] gains a pebble from path[-1]; every arc along it flips
        for a, b in zip(path, path[1:]):
            self.out[a].remove(b)
            self.orient(b, a)
        self.pebbles[path[-1]] -= 1
        self.pebbles[path[0]] += 1

    def reachable_from(self, starts) -> frozenset[VertexId]:
        seen = set(starts)
        stack = list(starts)
        while stack:
            x = stack.pop()
            for y in self.out_neighbors(x):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return frozenset(seen)


class _PebbleGame:
    """One game over a fixed graph and parameters.

    Pebble-gathering search is depth-first with out-neighbors visited in label
    order, so runs are reproducible.
    """

    def __init__(self, g: MultiGraph, p: SparsityParams):
        self.g = g
        self.p = p
        self.state = PebbleState(pebbles={v: p.k for v in g.vertices})

    def _find_pebble_path(self, start: VertexId, banned: set[VertexId]) -> list[VertexId] | None:
        """DFS from ``start`` along the orientation to any free pebble outside
        ``banned``; returns the vertex path, or None."""
        st = self.state
        parent: dict[VertexId, VertexId | None] = {start: None}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in reversed(st.out_neighbors(x)):
                if y in parent:
                    continue
                parent[y] = x
                if y not in banned and st.pebbles[y] > 0:
                    path = [y]
                    while parent[path[-1]] is not None:
                        path.append(parent[path[-1]])
                    path.reverse()
                    return path
                stack.append(y)
        return None

    def _gather(self, u: VertexId, v: VertexId) -> bool:
        """Collect l+1 pebbles on {u, v}; True on success."""
        st = self.state
        need = self.p.l + 1
        banned = {u, v}
        while st.pebbles[u] + st.pebbles[v] < need:
            path = self._find_pebble_path(u, banned) or self._find_pebble_path(v, banned)
            if path is None:
                return False
            st.reverse_path(path)
        return True

    def offer(self, u: VertexId, v: VertexId) -> bool:
        """Try to accept edge (u, v); orient it and pay a pebble on success."""
        st = self.state
        if not self._gather(u, v):
            return False
        if st.pebbles[u] > 0:
            st.pebbles[u] -= 1
            st.orient(u, v)
        else:
            st.pebbles[v] -= 1
            st.orient(v, u)
        return True

    def blocked_set(self, u: VertexId, v: VertexId) -> frozenset[VertexId]:
        """Vertices reachable from {u, v} at rejection time; a violating set."""
        return self.state.reachable_from((u, v))


def run_pebble_game(g: MultiGraph, p: SparsityParams) -> tuple[tuple[Edge, ...], ViolationWitness | None]:
    """Feed every edge in input order; return accepted edges and the blocked
    set of the first rejection (if any)."""
    game = _PebbleGame(g, p)
    accepted: list[Edge] = []
    witness: ViolationWitness | None = None
    for u, v in g.edges:
        if game.offer(u, v):
            accepted.append((u, v))
        elif witness is None:
            blocked = game.blocked_set(u, v)
            witness = ViolationWitness(blocked, g.edge_count_within(blocked), kind="blocked")
    return tuple(accepted), witness


def check_sparse_pebble(g: MultiGraph, p: SparsityParams, mode: str = "sparse") -> SparsityVerdict:
    """Pebble-game recognizer; agrees with the brute-force oracle.

    ``mode`` names the predicate the caller is after ("sparse", "tight" or
    "spanning"); the returned verdict always carries all three.
    """
    if mode not in ("sparse", "tight", "spanning"):
        raise InputError(f"unknown mode {mode!r}")
    accepted, witness = run_pebble_game(g, p)
    rank = len(accepted)
    sparse = witness is None
    target = p.target(g.n)
    spanning = rank == target
    return SparsityVerdict(
        sparse=sparse,
        tight=sparse and g.m == target,
        spanning=spanning,
        witness=witness,
        rank=rank,
        certificate=accepted if spanning else None,
    )


def check_spanning(g: MultiGraph, p: SparsityParams) -> SparsityVerdict:
    """Spanning test; when it holds, ``certificate`` is a spanning tight edge set."""
    return check_sparse_pebble(g, p, mode="spanning")
