import itertools
import random

import pytest

from klsparse.errors import InputError
from klsparse.flow import (FlowArc, FlowInstance, build_flow_instance, check_sparse_via_flow,
                           max_flow, verify_structure_preservation)
from klsparse.graph import MultiGraph
from klsparse.sparsity import SparsityParams, check_sparse_bruteforce

from .conftest import VALID_PARAMS, random_multigraph

BROKEN_L3 = MultiGraph.build(
    "abcdef", [("a", "b"), ("c", "d"), ("d", "f"), ("e", "f"), ("a", "f"),
               ("a", "e"), ("b", "f"), ("b", "e"), ("c", "e")])

K2 = MultiGraph.build("uv", [("u", "v")])
TRIANGLE = MultiGraph.build("uvw", [("u", "v"), ("v", "w"), ("u", "w")])


def exhaustive_min_cut(inst):
    """Independent oracle: enumerate every (S,T)-cut and take the cheapest.

    Together with the feasibility recheck of the returned flow this pins the
    max flow exactly: a feasible flow of value v plus a cut of capacity v.
    """
    middle = [nid for nid, role in inst.nodes if role in ("edge-node", "vertex-node")]
    sources = set(inst.source_ids)
    best = None
    for size in range(len(middle) + 1):
        for extra in itertools.combinations(middle, size):
            cut = sources | set(extra)
            cap = sum(a.capacity for a in inst.arcs
                      if a.tail in cut and a.head not in cut)
            best = cap if best is None else min(best, cap)
    return best


class TestConstruction:
    def test_k2_instance(self):
        inst = build_flow_instance(K2, SparsityParams(2, 3), 0)
        assert len(inst.nodes) == 6
        assert inst.alpha == 1 + 3 + 1
        caps = {(a.tail, a.head): a.capacity for a in inst.arcs}
        assert caps == {("s0", "e0"): 4, ("e0", "v_u"): 5, ("e0", "v_v"): 5,
                        ("v_u", "t_u"): 2, ("v_v", "t_v"): 2}

    def test_triangle_instance(self):
        inst = build_flow_instance(TRIANGLE, SparsityParams(2, 3), 0)
        assert len(inst.nodes) == 12
        assert inst.alpha == 7
        boosted = [a for a in inst.arcs if a.tail.startswith("s") and a.capacity == 4]
        assert len(boosted) == 1 and boosted[0].tail == "s0"

    def test_broken_l3_arithmetic(self):
        inst = build_flow_instance(BROKEN_L3, SparsityParams(2, 3), 4)
        assert inst.alpha == 9 + 3 + 1
        sink_total = sum(a.capacity for a in inst.arcs if a.head.startswith("t_"))
        assert sink_total == 12

    def test_bad_edge_index(self):
        with pytest.raises(InputError):
            build_flow_instance(K2, SparsityParams(2, 3), 1)

    def test_layer_shape(self):
        inst = build_flow_instance(TRIANGLE, SparsityParams(2, 2), 1)
        roles = [role for _, role in inst.nodes]
        assert roles.count("source") == 3 and roles.count("edge-node") == 3
        assert roles.count("vertex-node") == 3 and roles.count("sink") == 3
        incoming = {a.head for a in inst.arcs}
        outgoing = {a.tail for a in inst.arcs}
        assert not (incoming & set(inst.source_ids))
        assert not (outgoing & set(inst.sink_ids))


class TestMaxFlow:
    def test_k2_value_matches_exhaustive_oracle(self):
        inst = build_flow_instance(K2, SparsityParams(2, 3), 0)
        result = max_flow(inst)
        assert result.value == exhaustive_min_cut(inst) == 4
        assert result.is_feasible(inst)
        assert result.cut_capacity(inst) == result.value

    def test_zero_source_capacity(self):
        inst = build_flow_instance(K2, SparsityParams(2, 3), 0)
        dead = FlowInstance(
            inst.nodes,
            tuple(FlowArc(a.tail, a.head, 0) if a.tail.startswith("s") else a
                  for a in inst.arcs),
            inst.boosted_edge, inst.alpha, inst.graph, inst.params)
        assert max_flow(dead).value == 0

    def test_triangle_all_boosts_reach_target(self):
        p = SparsityParams(2, 3)
        for i in range(3):
            inst = build_flow_instance(TRIANGLE, p, i)
            result = max_flow(inst)
            assert result.value == TRIANGLE.m + p.l == 6
            assert result.is_feasible(inst)

    def test_double_edge_pair_exhaustive_oracle(self):
        g = MultiGraph.build("uvw", [("u", "v"), ("u", "v"), ("u", "w")])
        p = SparsityParams(2, 2)
        for i in range(g.m):
            inst = build_flow_instance(g, p, i)
            result = max_flow(inst)
            assert result.value == exhaustive_min_cut(inst)
            assert result.is_feasible(inst)

    def test_triangle_boosts_match_exhaustive_oracle(self):
        for l in (0, 3):
            p = SparsityParams(2, l)
            for i in range(TRIANGLE.m):
                inst = build_flow_instance(TRIANGLE, p, i)
                assert max_flow(inst).value == exhaustive_min_cut(inst)

    def test_deterministic(self):
        inst = build_flow_instance(BROKEN_L3, SparsityParams(2, 3), 0)
        assert max_flow(inst) == max_flow(inst)


class TestSparseViaFlow:
    def test_k2_sparse(self):
        v = check_sparse_via_flow(K2, SparsityParams(2, 3))
        assert v.sparse and v.tight
        assert v.rank is None and v.spanning is None

    def test_broken_l3_witness(self):
        v = check_sparse_via_flow(BROKEN_L3, SparsityParams(2, 3))
        assert not v.sparse
        assert v.witness.kind == "cut"
        assert v.witness.subset == frozenset("abef")
        assert v.witness.holds_in(BROKEN_L3, SparsityParams(2, 3))

    def test_doubled_edge_at_pair_capacity_stays_sparse(self):
        # at (2,2) a doubled pair sits exactly on the 2|S|-2 cap
        g = MultiGraph.build("uvw", [("u", "v"), ("u", "v"), ("u", "w")])
        p = SparsityParams(2, 2)
        assert check_sparse_bruteforce(g, p).sparse
        assert check_sparse_via_flow(g, p).sparse

    def test_doubled_edge_plus_spur(self):
        # at (2,3) the doubled pair violates: 2 > 2*2-3
        g = MultiGraph.build("uvw", [("u", "v"), ("u", "v"), ("u", "w")])
        p = SparsityParams(2, 3)
        assert not check_sparse_bruteforce(g, p).sparse
        v = check_sparse_via_flow(g, p)
        assert not v.sparse
        assert v.witness.holds_in(g, p)

    def test_equivalence_random(self):
        rng = random.Random(4096)
        for _ in range(80):
            g, p = random_multigraph(rng, max_n=7)
            brute = check_sparse_bruteforce(g, p)
            flow = check_sparse_via_flow(g, p)
            assert brute.sparse == flow.sparse, (g, p)
            assert brute.tight == flow.tight, (g, p)

    def test_equivalence_simple_classes_n7(self):
        # every simple isomorphism class up to 7 vertices, two seeded
        # parameter pairs each
        from .conftest import VALID_PARAMS, simple_graph_classes
        rng = random.Random(777)
        for g in simple_graph_classes(7):
            for p in rng.sample(VALID_PARAMS, 2):
                brute = check_sparse_bruteforce(g, p)
                flow = check_sparse_via_flow(g, p)
                assert (brute.sparse, brute.tight) == (flow.sparse, flow.tight), (g, p)

    def test_value_ceiling_and_cut_layers(self):
        # max flow never beats m + l, hits it exactly on sparse graphs, and a
        # cheap min cut never crosses an edge-to-vertex arc
        rng = random.Random(555)
        for _ in range(40):
            g, p = random_multigraph(rng, max_n=6)
            sparse = check_sparse_bruteforce(g, p).sparse
            target = g.m + p.l
            values = []
            for i in range(g.m):
                inst = build_flow_instance(g, p, i)
                result = max_flow(inst)
                assert result.value <= target
                assert result.is_feasible(inst)
                assert result.cut_capacity(inst) == result.value
                values.append(result.value)
                for a in inst.arcs:
                    if a.tail.startswith("e") and a.head.startswith("v_"):
                        assert not (a.tail in result.min_cut and a.head not in result.min_cut)
            if g.m:
                assert sparse == all(v == target for v in values)


class TestStructurePreservation:
    def test_own_instance(self):
        for g in (K2, TRIANGLE, BROKEN_L3):
            inst = build_flow_instance(g, SparsityParams(2, 3), 0)
            assert verify_structure_preservation(g, inst)

    def test_missing_arc_detected(self):
        inst = build_flow_instance(TRIANGLE, SparsityParams(2, 3), 0)
        ev = next(i for i, a in enumerate(inst.arcs)
                  if a.tail.startswith("e") and a.head.startswith("v_"))
        broken = FlowInstance(inst.nodes, inst.arcs[:ev] + inst.arcs[ev + 1:],
                              inst.boosted_edge, inst.alpha, inst.graph, inst.params)
        assert not verify_structure_preservation(TRIANGLE, broken)

    def test_corner_graph_instance(self):
        corner = MultiGraph.build(
            ["a", "c", "d", "b", "1", "2", "3"],
            [("1", "2"), ("1", "3"), ("1", "a"), ("1", "d"), ("2", "a"), ("2", "d"),
             ("2", "3"), ("3", "a"), ("3", "d"), ("a", "d"), ("b", "a"), ("b", "d"),
             ("c", "a"), ("c", "d")])
        inst = build_flow_instance(corner, SparsityParams(2, 0), 3)
        assert verify_structure_preservation(corner, inst)

    def test_multigraph_instance(self):
        g = MultiGraph.build("uvw", [("u", "v"), ("u", "v"), ("v", "w")])
        inst = build_flow_instance(g, SparsityParams(2, 1), 0)
        assert verify_structure_preservation(g, inst)

    def test_isolated_vertex_instance(self):
        g = MultiGraph.build("uvw", [("u", "v")])
        inst = build_flow_instance(g, SparsityParams(2, 1), 0)
        assert verify_structure_preservation(g, inst)


def test_instance_json_shape():
    inst = build_flow_instance(K2, SparsityParams(2, 3), 0)
    obj = inst.to_json_obj()
    assert set(obj) == {"nodes", "arcs", "alpha", "boosted_edge"}
    assert all(set(a) == {"from", "to", "capacity"} for a in obj["arcs"])


def test_instance_dot_mentions_capacities():
    inst = build_flow_instance(K2, SparsityParams(2, 3), 0)
    dot = inst.to_dot()
    assert 'label="4"' in dot and '"s0" -> "e0"' in dot
