import pytest
from hypothesis import given
from hypothesis import strategies as st

from klsparse.errors import InputError
from klsparse.graph import MultiGraph, union_identify

from .strategies import multigraphs


def triangle(a="u", b="v", c="w"):
    return MultiGraph.build([a, b, c], [(a, b), (b, c), (a, c)])


class TestConstruction:
    def test_loops_rejected(self):
        with pytest.raises(InputError):
            MultiGraph.build(["u", "v"], [("u", "u")])

    def test_unknown_endpoint_rejected(self):
        with pytest.raises(InputError):
            MultiGraph.build(["u"], [("u", "v")])

    def test_duplicate_vertex_rejected(self):
        with pytest.raises(InputError):
            MultiGraph.build(["u", "u"], [])

    def test_whitespace_label_rejected(self):
        with pytest.raises(InputError):
            MultiGraph.build(["a b"], [])

    def test_empty_label_rejected(self):
        with pytest.raises(InputError):
            MultiGraph.build([""], [])

    def test_multi_edges_allowed(self):
        g = MultiGraph.build(["u", "v"], [("u", "v"), ("v", "u")])
        assert g.m == 2
        assert g.multiplicity("u", "v") == 2


class TestInducedSubgraph:
    def test_triangle_pair(self):
        g = triangle()
        sub = g.induced_subgraph(["u", "v"])
        assert sub.vertices == ("u", "v")
        assert sub.edges == (("u", "v"),)

    def test_fixture_quad(self):
        # the dense four-vertex corner of the l=3 broken host
        g = MultiGraph.build("abcdef",
                             [("a", "b"), ("c", "d"), ("d", "f"), ("e", "f"), ("a", "f"),
                              ("a", "e"), ("b", "f"), ("b", "e"), ("c", "e")])
        sub = g.induced_subgraph(["a", "b", "e", "f"])
        assert sub.m == 6
        assert sorted(tuple(sorted(e)) for e in sub.edges) == [
            ("a", "b"), ("a", "e"), ("a", "f"), ("b", "e"), ("b", "f"), ("e", "f")]

    def test_empty_subset(self):
        g = triangle()
        sub = g.induced_subgraph([])
        assert sub.n == 0 and sub.m == 0

    def test_unknown_vertex_errors(self):
        with pytest.raises(InputError):
            triangle().induced_subgraph(["z"])

    @given(multigraphs())
    def test_full_subset_is_identity(self, g):
        sub = g.induced_subgraph(g.vertices)
        assert sorted(sub.vertices) == sorted(g.vertices)
        assert sorted(map(tuple, map(sorted, sub.edges))) == \
            sorted(map(tuple, map(sorted, g.edges)))

    @given(multigraphs(), st.data())
    def test_edge_count_monotone(self, g, data):
        t = data.draw(st.sets(st.sampled_from(g.vertices)))
        s = data.draw(st.sets(st.sampled_from(sorted(t)))) if t else set()
        assert g.edge_count_within(s) <= g.edge_count_within(t)


class TestConnectivity:
    def test_triangle_connected(self):
        assert triangle().is_connected()

    def test_two_disjoint_edges(self):
        g = MultiGraph.build("uvxy", [("u", "v"), ("x", "y")])
        assert not g.is_connected()

    def test_single_vertex(self):
        assert MultiGraph.build(["u"], []).is_connected()

    def test_empty_graph(self):
        assert MultiGraph.build([], []).is_connected()


class TestUnionIdentify:
    def test_shared_edge_doubles(self):
        g1 = MultiGraph.build(["u", "v"], [("u", "v")])
        g2 = triangle("u2", "v2", "x")
        out = union_identify(g1, g2, {"u2": "u", "v2": "v"})
        assert sorted(out.vertices) == ["u", "v", "x"]
        assert out.m == 4
        assert out.multiplicity("u", "v") == 2

    def test_disjoint_union(self):
        g1 = triangle("a", "b", "c")
        g2 = triangle("x", "y", "z")
        out = union_identify(g1, g2, {})
        assert out.n == 6 and out.m == 6

    def test_edge_replacement_composition(self):
        # a triangle with uv swapped for another triangle glued at u, v
        g1 = MultiGraph.build("uvw", [("u", "w"), ("v", "w")])
        g2 = triangle("u2", "v2", "x")
        out = union_identify(g1, g2, {"u2": "u", "v2": "v"})
        assert out.n == 4
        assert sorted(tuple(sorted(e)) for e in out.edges) == [
            ("u", "v"), ("u", "w"), ("u", "x"), ("v", "w"), ("v", "x")]

    def test_label_clash_renamed(self):
        g1 = MultiGraph.build(["u", "v", "x"], [("u", "x")])
        g2 = triangle("u2", "v2", "x")
        out = union_identify(g1, g2, {"u2": "u", "v2": "v"})
        assert "x#1" in out.vertices
        assert out.multiplicity("u", "x#1") == 1

    def test_non_injective_rejected(self):
        g1 = MultiGraph.build(["u", "v"], [("u", "v")])
        g2 = triangle("a", "b", "c")
        with pytest.raises(InputError):
            union_identify(g1, g2, {"a": "u", "b": "u"})

    @given(multigraphs(max_n=4), multigraphs(max_n=4), st.data())
    def test_count_identities(self, g1, g2, data):
        size = data.draw(st.integers(0, min(g1.n, g2.n)))
        sources = data.draw(st.permutations(g2.vertices))[:size]
        targets = data.draw(st.permutations(g1.vertices))[:size]
        ident = dict(zip(sources, targets))
        out = union_identify(g1, g2, ident)
        assert out.n == g1.n + g2.n - len(ident)
        assert out.m == g1.m + g2.m


class TestSerialization:
    @given(multigraphs())
    def test_json_round_trip(self, g):
        again = MultiGraph.from_json(g.to_json())
        assert again.vertices == g.vertices
        assert again.edges == g.edges

    def test_json_rejects_loop_with_position(self):
        with pytest.raises(InputError, match="edge #1"):
            MultiGraph.from_json('{"vertices": ["u", "v"], "edges": [["u","v"], ["v","v"]]}')

    def test_json_rejects_unknown_endpoint(self):
        with pytest.raises(InputError):
            MultiGraph.from_json('{"vertices": ["u"], "edges": [["u","v"]]}')

    def test_text_round_trip(self):
        g = triangle()
        again = MultiGraph.from_text(g.to_text())
        assert sorted(again.vertices) == sorted(g.vertices)
        assert sorted(map(tuple, map(sorted, again.edges))) == \
            sorted(map(tuple, map(sorted, g.edges)))

    def test_text_header_mismatch(self):
        with pytest.raises(InputError, match="header"):
            MultiGraph.from_text("3 1\nu v\n")

    def test_text_loop_diagnostic(self):
        with pytest.raises(InputError, match="line 2"):
            MultiGraph.from_text("2 1\nu u\n")

    def test_input_order_preserved(self):
        g = MultiGraph.build(["b", "a"], [("b", "a"), ("a", "b")])
        assert g.to_json_obj() == {"vertices": ["b", "a"], "edges": [["b", "a"], ["a", "b"]]}
