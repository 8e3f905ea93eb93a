"""
test_union_graph.py

Unit tests for union_graph.py: labeling, node sharing and edge coloring,
checked against a counting oracle and per-application isomorphism.
"""

from collections import Counter

import networkx as nx
import pytest

from sdfnoc.exceptions import MergeConflictError
from sdfnoc.graph.dataflow_graph import Vertex
from sdfnoc.graph.parser import parse_app_graph
from sdfnoc.merge.union_graph import (
    LabeledNode,
    build_union,
    label_nodes,
    split_union_id,
    union_node_id,
)


def v(text):
    return Vertex.parse(text)


def app_view(union, app):
    """Node-level graph of the union restricted to the nodes and edges of one app."""
    graph = nx.DiGraph()
    for node_id in union.active_nodes(app):
        graph.add_node(node_id, type=union.node(node_id).type)
    for idx in union.edges_of(app):
        edge = union.edges[idx]
        for load in edge.loads:
            graph.add_edge(edge.driver.node, load.node)
    return graph


class TestIds:
    def test_round_trip(self):
        assert union_node_id("CANNY", 2) == "CANNY#2"
        assert split_union_id("CANNY#2") == ("CANNY", 2)

    def test_invalid(self):
        with pytest.raises(ValueError, match="invalid union node id"):
            split_union_id("CANNY")


class TestLabelNodes:
    def test_occurrences_in_declaration_order(self):
        g = parse_app_graph(
            "app a\nnode p type=ID in=1 out=1\nnode q type=ADDER in=2 out=1\n"
            "node r type=ID in=1 out=1\n"
        )
        labels = label_nodes([g])[0]
        assert labels["p"] == LabeledNode("ID", 1, 1)
        assert labels["r"] == LabeledNode("ID", 2, 1)
        assert str(labels["q"]) == "ADDER_1^1"

    def test_app_ids_must_be_sequential(self):
        g = parse_app_graph("app a\n", app_id=2)
        with pytest.raises(ValueError, match="application ids must be 1..1"):
            label_nodes([g])


class TestBuildUnion:
    def setup_method(self):
        self.g1 = parse_app_graph(
            "app one\nnode a type=CONST in=0 out=1\nnode b type=ID in=1 out=1\n"
            "edge a.out0 -> b.in0\n"
        )
        self.g2 = parse_app_graph(
            "app two\nnode x type=CONST in=0 out=1\nnode y type=ID in=1 out=1\n"
            "node z type=ID in=1 out=1\nedge x.out0 -> y.in0 z.in0\n",
            app_id=2,
        )

    def test_nodes_and_maps(self):
        union = build_union([self.g1, self.g2])
        assert [n.id for n in union.nodes] == ["CONST#1", "ID#1", "ID#2"]
        assert union.sigma_n[(1, "b")] == "ID#1"
        assert union.sigma_n[(2, "z")] == "ID#2"

    def test_edges_colored(self):
        union = build_union([self.g1, self.g2])
        assert [(str(e), sorted(e.colors)) for e in union.edges] == [
            ("CONST#1.out0 -> ID#1.in0", [1]),
            ("CONST#1.out0 -> ID#1.in0 ID#2.in0", [2]),
        ]

    def test_shared_edge(self):
        union = build_union([self.g1, self.g1.with_app_id(2)])
        assert len(union.edges) == 1
        assert union.edges[0].colors == {1, 2}
        assert set(union.sigma_e.values()) == {0}

    def test_boundary_and_activity(self):
        union = build_union([self.g1, self.g2])
        assert union.active_nodes(1) == {"CONST#1", "ID#1"}
        assert union.boundary_outputs(2) == (v("ID#1.out0"), v("ID#2.out0"))
        assert union.boundary_inputs(1) == ()
        assert union.map_vertex(2, v("z.out0")) == v("ID#2.out0")

    def test_resolve_app(self):
        union = build_union([self.g1, self.g2])
        assert union.resolve_app("two") == 2
        assert union.resolve_app("1") == 1
        assert union.resolve_app(2) == 2
        with pytest.raises(ValueError, match=r"valid applications: 1 \(one\), 2 \(two\)"):
            union.resolve_app("three")

    def test_unknown_app_id(self):
        union = build_union([self.g1])
        with pytest.raises(ValueError, match="valid ids"):
            union.app(4)

    def test_arity_conflict(self):
        other = parse_app_graph("app bad\nnode k type=ID in=2 out=1\n", app_id=2)
        with pytest.raises(MergeConflictError, match="type ID has arity"):
            build_union([self.g1, other])


class TestBuildUnionProperties:
    def test_copy_counts_match_oracle(self, rng, random_graph_set):
        for _ in range(1000):
            graphs = random_graph_set(rng, max_apps=4, max_nodes=15)
            union = build_union(graphs)
            expected = Counter()
            for g in graphs:
                for type_label, count in Counter(n.type for n in g.nodes).items():
                    expected[type_label] = max(expected[type_label], count)
            assert Counter(n.type for n in union.nodes) == expected

    @pytest.mark.slow
    def test_maps_preserve_each_application(self, rng, random_graph_set):
        for _ in range(1000):
            graphs = random_graph_set(rng, max_apps=4, max_nodes=15)
            union = build_union(graphs)
            for g in union.apps:
                app = g.app_id
                images = {union.sigma_n[(app, n.id)] for n in g.nodes}
                assert len(images) == len(g.nodes)
                for edge in g.edges:
                    image = union.edges[union.sigma_e[(app, edge)]]
                    assert app in image.colors
                    assert image.driver == union.map_vertex(app, edge.driver)
                    assert set(image.loads) == {union.map_vertex(app, u) for u in edge.loads}
                assert len(union.edges_of(app)) == len(g.edges)
                assert nx.is_isomorphic(
                    g.to_networkx(),
                    app_view(union, app),
                    node_match=nx.algorithms.isomorphism.categorical_node_match("type", None),
                )
