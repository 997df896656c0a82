"""Crossing-replacement gadgets: substitution, audit, refutation, search.

A gadget candidate is a graph with four distinguished terminals a, b, c, d
meant to replace a pair of crossing edges ab, cd. A candidate that worked for
every host graph would have to clear a ladder of structural checks (exact
edge count, its own sparsity, a planar embedding with the terminals on one
face, density caps on terminal-containing subsets, and the existence of dense
one-pair side sets). The audit runs the ladder; whenever both side sets are
found, the contradiction between their density and the subset caps is derived
explicitly. ``search_gadgets`` grinds through every candidate up to a given
number of internal vertices and reports the (empty) survivor list together
with a histogram of which rung eliminated each candidate.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .errors import CapacityError, InputError, PreconditionError
from .fixtures import fixture_set
from .graph import Edge, MultiGraph, VertexId, union_identify
from .planar import has_terminal_face, is_planar
from .sparsity import SparsityParams, check_sparse_bruteforce, check_sparse_pebble

CHECK_ORDER = (
    "size",                  # (i)   exact / capped edge count
    "sparsity",              # (ii)  the candidate itself must be (k,l)-sparse
    "terminal_face",         # (iii) planar with a,c,b,d on a common face
    "terminal_subset_bound", # (iv)  S containing all four terminals: <= k|S|-4k+2
    "split_pair_bound",      # (v)   l=0 only; one endpoint of each pair: <= 2|S|-4
    "dense_side_sets",       # (vi)  dense a,b-side and c,d-side sets must exist
    "contradiction",         # (vii) they clash with the caps above
)


@dataclass(frozen=True)
class GadgetCandidate:
    """A graph plus ordered terminals (a, b, c, d); no terminal-terminal edges."""

    graph: MultiGraph
    terminals: tuple[VertexId, VertexId, VertexId, VertexId]

    def __post_init__(self):
        if len(set(self.terminals)) != 4:
            raise InputError(f"terminals must be four distinct vertices, got {self.terminals}")
        for t in self.terminals:
            if t not in self.graph.vertex_set:
                raise InputError(f"terminal {t!r} is not a vertex of the gadget graph")
        tset = set(self.terminals)
        for u, v in self.graph.edges:
            if u in tset and v in tset:
                raise InputError(f"gadget may not contain the terminal-terminal edge ({u!r}, {v!r})")

    @property
    def internals(self) -> tuple[VertexId, ...]:
        tset = set(self.terminals)
        return tuple(v for v in self.graph.vertices if v not in tset)

    def to_json_obj(self) -> dict:
        obj = self.graph.to_json_obj()
        obj["terminals"] = list(self.terminals)
        return obj

    @staticmethod
    def from_json_obj(obj) -> "GadgetCandidate":
        if not isinstance(obj, dict) or "terminals" not in obj:
            raise InputError('gadget JSON must carry a "terminals" array')
        terminals = obj["terminals"]
        if not isinstance(terminals, list) or len(terminals) != 4:
            raise InputError('"terminals" must list exactly four vertex labels')
        return GadgetCandidate(MultiGraph.from_json_obj(obj), tuple(terminals))

    @staticmethod
    def from_json(text: str) -> "GadgetCandidate":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"not valid JSON: {exc}") from exc
        return GadgetCandidate.from_json_obj(obj)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: dict | None = None

    def to_json_obj(self) -> dict:
        return {"check": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class AuditReport:
    params: SparsityParams
    mode: str
    checks: list[CheckResult]
    dense_witnesses: tuple[frozenset, frozenset] | None = None
    quadrants: dict | None = None
    verdict: str = "survives-structural"
    refuted_by: str | None = None

    @property
    def refuted(self) -> bool:
        return self.verdict == "refuted"

    def check(self, name: str) -> CheckResult | None:
        for c in self.checks:
            if c.name == name:
                return c
        return None

    def to_json_obj(self) -> dict:
        return {
            "k": self.params.k,
            "l": self.params.l,
            "mode": self.mode,
            "checks": [c.to_json_obj() for c in self.checks],
            "dense_witnesses": ([sorted(self.dense_witnesses[0]), sorted(self.dense_witnesses[1])]
                                if self.dense_witnesses else None),
            "quadrants": self.quadrants,
            "verdict": self.verdict,
            "refuted_by": self.refuted_by,
        }


# ---------------------------------------------------------------------------
# Substitution operations
# ---------------------------------------------------------------------------

def replace_edge(g: MultiGraph, uv: Edge, omega: MultiGraph, omega_uv: Edge,
                 p: SparsityParams) -> MultiGraph:
    """Swap one edge for a (k, 2k-1)-tight graph glued in at its endpoints.

    Tightness of ``omega`` guarantees the swap preserves (k,l)-tightness of
    the host in both directions. Counts: |V*| = |V| + |V_omega| - 2 and
    |E*| = |E| + |E_omega| - 1.
    """
    if omega.n < 2:
        raise PreconditionError("replacement graph needs at least two vertices")
    ou, ov = omega_uv
    if ou == ov or ou not in omega.vertex_set or ov not in omega.vertex_set:
        raise InputError(f"({ou!r}, {ov!r}) is not a vertex pair of the replacement graph")
    tight_params = SparsityParams(p.k, 2 * p.k - 1)
    verdict = check_sparse_pebble(omega, tight_params)
    if not verdict.tight:
        raise PreconditionError(
            f"replacement graph is not ({p.k},{2 * p.k - 1})-tight",
            witness=verdict.witness)
    u, v = uv
    return union_identify(g.remove_edge(u, v), omega, {ou: u, ov: v})


def apply_gadget(g: MultiGraph, ab: Edge, cd: Edge, gamma: GadgetCandidate) -> MultiGraph:
    """Remove crossing edges ab and cd, then glue the gadget in by its terminals.

    Counts: |V'| = |V| + |V_gamma| - 4 and |E'| = |E| - 2 + |E_gamma|.
    """
    if len({ab[0], ab[1], cd[0], cd[1]}) != 4:
        raise InputError(f"crossing edges {ab} and {cd} must have four distinct endpoints")
    stripped = g.remove_edge(*ab).remove_edge(*cd)
    ta, tb, tc, td = gamma.terminals
    return union_identify(stripped, gamma.graph,
                          {ta: ab[0], tb: ab[1], tc: cd[0], td: cd[1]})


# ---------------------------------------------------------------------------
# Structural audit
# ---------------------------------------------------------------------------

def _subsets_with(gamma: GadgetCandidate, include: tuple, exclude: tuple):
    """All vertex sets containing ``include`` and avoiding ``exclude``, smallest
    first, ties in sorted-label order."""
    pool = sorted(v for v in gamma.graph.vertices
                  if v not in include and v not in exclude)
    base = frozenset(include)
    for size in range(len(pool) + 1):
        for extra in itertools.combinations(pool, size):
            yield base | frozenset(extra)


def _connects(g: MultiGraph, s: frozenset, x: VertexId, y: VertexId) -> bool:
    seen = {x}
    stack = [x]
    while stack:
        v = stack.pop()
        if v == y:
            return True
        for w in g.adjacency[v]:
            if w in s and w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def _find_dense_side_set(gamma: GadgetCandidate, inside: tuple, outside: tuple) -> frozenset | None:
    """Smallest S with ``inside`` in, ``outside`` out, |E[S]| >= 2|S| - 3 and a
    path joining the two inside vertices."""
    g = gamma.graph
    for s in _subsets_with(gamma, inside, outside):
        if g.edge_count_within(s) >= 2 * len(s) - 3 and _connects(g, s, *inside):
            return s
    return None


def _path_within(g: MultiGraph, s: frozenset, x: VertexId, y: VertexId) -> list[VertexId]:
    parent = {x: None}
    stack = [x]
    while stack:
        v = stack.pop()
        if v == y:
            path = [y]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return list(reversed(path))
        for w in sorted(set(g.adjacency[v])):
            if w in s and w not in parent:
                parent[w] = v
                stack.append(w)
    raise InputError(f"no {x}-{y} path inside {sorted(s)}")


def derive_contradiction(gamma: GadgetCandidate, s1: frozenset, s2: frozenset,
                         p: SparsityParams) -> dict:
    """Spell out why dense side sets s1 and s2 cannot coexist with the subset
    caps a working gadget obeys. Classified by the overlap size: disjoint
    sides force crossing paths; overlap 1 pushes the union past its cap;
    larger overlap does too once l >= 1, and for l = 0 the side sets decompose
    into quadrants whose density deficits cannot all stay small.
    """
    g = gamma.graph
    a, b, c, d = gamma.terminals
    s1, s2 = frozenset(s1), frozenset(s2)
    for (s, ins, outs) in ((s1, (a, b), (c, d)), (s2, (c, d), (a, b))):
        if not (set(ins) <= s and not (set(outs) & s) and s <= g.vertex_set):
            raise PreconditionError(f"side set {sorted(s)} has the wrong terminal membership")
        if g.edge_count_within(s) < 2 * len(s) - 3:
            raise PreconditionError(f"side set {sorted(s)} is not dense enough: "
                                    f"{g.edge_count_within(s)} < 2*{len(s)}-3")
        if not _connects(g, s, *ins):
            raise PreconditionError(f"side set {sorted(s)} does not join {ins[0]} and {ins[1]}")

    inter = s1 & s2
    union = s1 | s2
    fragment: dict = {
        "intersection_size": len(inter),
        "contradiction": True,
    }

    if not inter:
        p_ab = _path_within(g, s1, a, b)
        p_cd = _path_within(g, s2, c, d)
        fragment.update({
            "case": "disjoint_sides",
            "path_ab": p_ab,
            "path_cd": p_cd,
            "reason": "vertex-disjoint a-b and c-d paths cannot be drawn without a "
                      "crossing while all four terminals lie on one face",
            "terminal_face": has_terminal_face(g, a, b, c, d),
        })
        return fragment

    cap = p.k * len(union) - 4 * p.k + 2
    if len(inter) == 1:
        lower = (2 * len(s1) - 3) + (2 * len(s2) - 3)  # = 2|union| - 4
        fragment.update({
            "case": "single_overlap",
            "union": sorted(union),
            "union_edges": g.edge_count_within(union),
            "derived_lower_bound": lower,
            "terminal_subset_cap": cap,
            "reason": f"side sets overlapping in one vertex force the union to at least "
                      f"{lower} edges, above its cap of {cap}",
        })
        return fragment

    if p.l >= 1:
        lower = 2 * len(union) - 6 + p.l
        fragment.update({
            "case": "overlap",
            "union": sorted(union),
            "union_edges": g.edge_count_within(union),
            "derived_lower_bound": lower,
            "terminal_subset_cap": cap,
            "reason": f"with the overlap itself (k,l)-sparse the union needs at least "
                      f"{lower} edges, above its cap of {cap}",
        })
        return fragment

    # l = 0, overlap of size >= 2: quadrant decomposition
    fragment["case"] = "overlap_quadrants"
    inter_edges = g.edge_count_within(inter)
    inter_slack = 2 * len(inter) - inter_edges
    cross = sum(1 for u, v in g.edges
                if (u in s1 - s2 and v in s2 - s1) or (u in s2 - s1 and v in s1 - s2))
    if inter_slack > 0 or cross > 0:
        fragment.update({
            "union": sorted(union),
            "union_edges": g.edge_count_within(union),
            "derived_lower_bound": 2 * len(union) - 6 + inter_slack + cross,
            "terminal_subset_cap": cap,
            "reason": "slack in the overlap or side-to-side edges push the union past its cap",
        })
        return fragment

    def side_components(side: frozenset, first: VertexId, second: VertexId):
        rest = side - inter
        sub = g.induced_subgraph(rest)
        comp_first = sub.connected_component(first)
        if second in comp_first:
            return None
        comp_second = sub.connected_component(second)
        # whole leftover components cannot touch the other part; bucket them
        # with the first side deterministically
        return frozenset(rest - comp_second), frozenset(comp_second)

    sides1 = side_components(s1, a, b)
    if sides1 is None:
        fragment.update({
            "reason": "an a-b path avoiding the overlap runs vertex-disjoint from the c-d path",
            "path_ab": _path_within(g, s1 - inter, a, b),
            "path_cd": _path_within(g, s2, c, d),
        })
        return fragment
    sides2 = side_components(s2, c, d)
    if sides2 is None:
        fragment.update({
            "reason": "a c-d path avoiding the overlap runs vertex-disjoint from the a-b path",
            "path_ab": _path_within(g, s1, a, b),
            "path_cd": _path_within(g, s2 - inter, c, d),
        })
        return fragment

    quad = {"a": sides1[0], "b": sides1[1], "c": sides2[0], "d": sides2[1]}
    z = {}
    for name, part in quad.items():
        prime = part | inter
        z[name] = 2 * len(prime) - g.edge_count_within(prime)
    fragment["quadrants"] = {
        **{name: sorted(part) for name, part in quad.items()},
        "intersection": sorted(inter),
        "z": z,
    }

    pair_floor = 4
    for x, y in (("a", "d"), ("a", "c"), ("b", "d"), ("b", "c")):
        if z[x] + z[y] < pair_floor:
            joint = quad[x] | quad[y] | inter
            fragment.update({
                "reason": f"z_{x} + z_{y} = {z[x] + z[y]} < {pair_floor}: the set holding "
                          f"{x} and {y} beats the split-pair cap",
                "witness_set": sorted(joint),
                "witness_edges": g.edge_count_within(joint),
                "split_pair_cap": 2 * len(joint) - 4,
            })
            return fragment

    # all four cross sums >= 4 forces z_a+z_b >= 4 or z_c+z_d >= 4, so one
    # side set drops to 2|S|-4 edges, below the density it was chosen for
    side = "ab" if z["a"] + z["b"] >= pair_floor else "cd"
    zsum = z["a"] + z["b"] if side == "ab" else z["c"] + z["d"]
    sset = s1 if side == "ab" else s2
    fragment.update({
        "reason": f"z_{side[0]} + z_{side[1]} = {zsum} >= {pair_floor} caps the {side} side "
                  f"set at {2 * len(sset) - 4} edges, below its required density",
        "witness_set": sorted(sset),
        "witness_edges": g.edge_count_within(sset),
    })
    return fragment


def audit_gadget(gamma: GadgetCandidate, p: SparsityParams, mode: str = "tight") -> AuditReport:
    """Run the structural checks in order; the verdict cites the first failure.

    Only k = 2 has a nontrivial audit. For k >= 3 every tight graph is already
    too dense to be planar, so candidates are rejected outright.
    """
    if mode not in ("tight", "sparse"):
        raise InputError(f"audit mode must be 'tight' or 'sparse', got {mode!r}")
    if p.k < 2:
        raise InputError("gadget audits cover k >= 2 only")
    if gamma.graph.n > 14:
        raise CapacityError(f"gadget audits limited to 14 vertices (got {gamma.graph.n})")
    if p.k >= 3:
        detail = {"reason": f"({p.k},{p.l})-tight graphs exceed the planar edge bound; "
                            "no planarizing gadget can exist"}
        return AuditReport(p, mode, [CheckResult("regime", False, detail)],
                           verdict="refuted", refuted_by="regime")

    g = gamma.graph
    a, b, c, d = gamma.terminals
    checks: list[CheckResult] = []

    # (i) size
    required = p.k * g.n - 4 * p.k + 2
    size_ok = g.m == required if mode == "tight" else g.m <= required
    checks.append(CheckResult("size", size_ok,
                              {"edges": g.m, "bound": required, "mode": mode}))

    # (ii) own sparsity
    verdict = check_sparse_bruteforce(g, p, limit=g.n)
    checks.append(CheckResult(
        "sparsity", verdict.sparse,
        None if verdict.sparse else {"witness": verdict.witness.to_json_obj()}))

    # (iii) planarity with the terminals on a common face
    face_ok = has_terminal_face(g, a, b, c, d)
    checks.append(CheckResult("terminal_face", face_ok,
                              None if face_ok else {"planar": is_planar(g)}))

    # (iv) subsets containing all four terminals
    quad_fail = None
    for s in _subsets_with(gamma, (a, b, c, d), ()):
        count = g.edge_count_within(s)
        if count > p.k * len(s) - 4 * p.k + 2:
            quad_fail = {"subset": sorted(s), "edges": count,
                         "bound": p.k * len(s) - 4 * p.k + 2}
            break
    checks.append(CheckResult("terminal_subset_bound", quad_fail is None, quad_fail))

    # (v) one endpoint of each crossing pair, l = 0 only
    if p.l == 0:
        split_fail = None
        for t1 in (a, b):
            for t2 in (c, d):
                others = tuple({a, b, c, d} - {t1, t2})
                for s in _subsets_with(gamma, (t1, t2), others):
                    count = g.edge_count_within(s)
                    if count > 2 * len(s) - 4:
                        split_fail = {"subset": sorted(s), "edges": count,
                                      "bound": 2 * len(s) - 4}
                        break
                if split_fail:
                    break
            if split_fail:
                break
        checks.append(CheckResult("split_pair_bound", split_fail is None, split_fail))

    # (vi) dense side sets must exist
    s1 = _find_dense_side_set(gamma, (a, b), (c, d))
    s2 = _find_dense_side_set(gamma, (c, d), (a, b))
    found = s1 is not None and s2 is not None
    checks.append(CheckResult(
        "dense_side_sets", found,
        {"s1": sorted(s1) if s1 else None, "s2": sorted(s2) if s2 else None}))

    dense_witnesses = (s1, s2) if found else None
    quadrants = None

    # (vii) and the pair of them is self-defeating
    if found:
        fragment = derive_contradiction(gamma, s1, s2, p)
        quadrants = fragment.get("quadrants")
        checks.append(CheckResult("contradiction", not fragment["contradiction"], fragment))

    refuted_by = next((c.name for c in checks if not c.passed), None)
    return AuditReport(
        params=p, mode=mode, checks=checks,
        dense_witnesses=dense_witnesses, quadrants=quadrants,
        verdict="refuted" if refuted_by else "survives-structural",
        refuted_by=refuted_by)


# ---------------------------------------------------------------------------
# Behavioral refutation and exhaustive search
# ---------------------------------------------------------------------------

def refute_behaviorally(gamma: GadgetCandidate, p: SparsityParams,
                        mode: str = "tight") -> dict | None:
    """Substitute the candidate into every host fixture and compare statuses.

    Returns the first fixture whose tight (or sparse) status flips, or None.
    """
    if mode not in ("tight", "sparse"):
        raise InputError(f"mode must be 'tight' or 'sparse', got {mode!r}")
    if p.k != 2:
        raise InputError("behavioral fixtures exist for k = 2 only")
    for fx in fixture_set(p.l):
        substituted = apply_gadget(fx.graph, fx.crossing_ab, fx.crossing_cd, gamma)
        verdict = check_sparse_bruteforce(substituted, p, limit=substituted.n)
        before = fx.expected_tight if mode == "tight" else fx.expected_sparse
        after = verdict.tight if mode == "tight" else verdict.sparse
        if before != after:
            return {
                "fixture": fx.name,
                "mode": mode,
                "before": before,
                "after": after,
                "direction": f"{mode}={before} became {mode}={after}",
            }
    return None


@dataclass
class SearchReport:
    params: SparsityParams
    mode: str
    max_internal: int
    enumerated: int = 0
    survivors: list[GadgetCandidate] = field(default_factory=list)
    histogram: dict[str, int] = field(default_factory=dict)
    per_stratum: dict[int, int] = field(default_factory=dict)

    def to_json_obj(self) -> dict:
        return {
            "k": self.params.k,
            "l": self.params.l,
            "mode": self.mode,
            "max_internal": self.max_internal,
            "enumerated": self.enumerated,
            "survivor_count": len(self.survivors),
            "survivors": [s.to_json_obj() for s in self.survivors],
            "histogram": dict(sorted(self.histogram.items())),
            "per_stratum": {str(r): c for r, c in sorted(self.per_stratum.items())},
        }


def enumerate_candidates(r: int):
    """All candidates with exactly ``r`` internal vertices and at most
    2(4+r) - 6 edges, no terminal-terminal edges, deduplicated by
    terminal-fixed isomorphism (internal vertices are interchangeable)."""
    terminals = ("a", "b", "c", "d")
    internals = tuple(f"x{i + 1}" for i in range(r))
    vertices = terminals + internals
    ceiling = 2 * len(vertices) - 6
    slots = sorted(
        [tuple(sorted((t, x))) for t in terminals for x in internals]
        + [tuple(sorted(pair)) for pair in itertools.combinations(internals, 2)])
    perms = [dict(zip(internals, image))
             for image in itertools.permutations(internals)]

    def canonical(multiset: tuple) -> tuple:
        best = None
        for perm in perms:
            mapped = tuple(sorted(tuple(sorted((perm.get(u, u), perm.get(v, v))))
                                  for u, v in multiset))
            if best is None or mapped < best:
                best = mapped
        return best

    for t in range(ceiling + 1):
        for combo in itertools.combinations_with_replacement(slots, t):
            if canonical(combo) != combo:
                continue
            yield GadgetCandidate(MultiGraph.build(vertices, combo), terminals)


MAX_SEARCH_INTERNAL = 6


def search_gadgets(p: SparsityParams, max_internal: int, mode: str = "tight",
                   progress=None) -> SearchReport:
    """Audit every candidate with up to ``max_internal`` internal vertices.

    Candidates surviving the structural audit (none are expected to) are also
    refuted behaviorally before being counted as survivors. The histogram
    records which check eliminated each candidate; in tight mode the size
    check does real work because candidates below the exact edge count are
    enumerated too.
    """
    if p.k != 2:
        raise InputError("the gadget search covers k = 2 (other k are settled trivially)")
    if not (0 <= max_internal <= MAX_SEARCH_INTERNAL):
        raise CapacityError(
            f"max_internal must be between 0 and {MAX_SEARCH_INTERNAL}, got {max_internal}")
    report = SearchReport(params=p, mode=mode, max_internal=max_internal)
    for r in range(max_internal + 1):
        count = 0
        for gamma in enumerate_candidates(r):
            count += 1
            audit = audit_gadget(gamma, p, mode)
            if audit.refuted:
                bucket = audit.refuted_by
            else:
                refutation = refute_behaviorally(gamma, p, mode)
                if refutation is not None:
                    bucket = "behavioral"
                else:
                    bucket = "survivor"
                    report.survivors.append(gamma)
            report.histogram[bucket] = report.histogram.get(bucket, 0) + 1
            if progress is not None:
                progress(r, gamma, bucket)
        report.per_stratum[r] = count
        report.enumerated += count
    return report
