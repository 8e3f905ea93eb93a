"""
test_packing.py

Unit tests for packing.py: the flood marking, checked against a connected
components oracle, and the division into packs.
"""

import networkx as nx
import pytest

from sdfnoc.graph.parser import parse_app_graph, read_app_graph
from sdfnoc.merge.merger import merge
from sdfnoc.merge.packing import combination_order, divide, pack
from sdfnoc.merge.union_graph import build_union


def oracle_partition(union, order):
    """
    Per combination, components of the graph over the still-unmarked nodes
    joined by edges of exactly that color set; leftovers are singletons.
    """
    marked = set()
    groups = []
    for combo in order:
        graph = nx.Graph()
        for edge in union.edges:
            if edge.colors != combo:
                continue
            fresh = [n for n in edge.nodes if n not in marked]
            graph.add_nodes_from(fresh)
            graph.add_edges_from(zip(fresh, fresh[1:]))
        for component in nx.connected_components(graph):
            groups.append(frozenset(component))
        marked |= set(graph.nodes)
    groups += [frozenset([n.id]) for n in union.nodes if n.id not in marked]
    return set(groups)


def partition(marks):
    groups = {}
    for node_id, mark in marks.items():
        groups.setdefault(mark, set()).add(node_id)
    return {frozenset(g) for g in groups.values()}


class TestCombinationOrder:
    def test_lexicographic_by_default(self, experiment):
        union = build_union(
            [
                read_app_graph(experiment("day.sdf")),
                read_app_graph(experiment("night.sdf"), app_id=2),
            ]
        )
        assert combination_order(union) == [
            frozenset({1}),
            frozenset({1, 2}),
            frozenset({2}),
        ]

    def test_seeded_order_is_a_permutation(self, rng, random_graph_set):
        union = build_union(random_graph_set(rng, max_apps=4, max_nodes=10))
        for seed in range(20):
            order = combination_order(union, seed)
            assert sorted(order, key=sorted) == combination_order(union)
            assert order == combination_order(union, seed)


class TestPack:
    def test_chain_is_one_pack(self):
        g = parse_app_graph(
            "app a\nnode a type=A in=0 out=1\nnode b type=B in=1 out=1\n"
            "edge a.out0 -> b.in0\n"
        )
        assert pack(build_union([g])) == {"A#1": 0, "B#1": 0}

    def test_isolated_nodes_get_fresh_marks(self):
        g = parse_app_graph("app a\nnode x type=ID in=1 out=1\nnode y type=ID in=1 out=1\n")
        assert pack(build_union([g])) == {"ID#1": 0, "ID#2": 1}

    def test_marked_nodes_are_not_reflooded(self):
        # combination {1,2} packs CONST#1 with ID#1; the {3} edge then only
        # reaches the fresh ID#2
        g1 = parse_app_graph(
            "app a\nnode k type=CONST in=0 out=1\nnode p type=ID in=1 out=1\n"
            "edge k.out0 -> p.in0\n"
        )
        g2 = parse_app_graph(
            "app b\nnode k type=CONST in=0 out=1\nnode p type=ID in=1 out=1\n"
            "node q type=ID in=1 out=1\nedge k.out0 -> p.in0 q.in0\n",
            app_id=2,
        )
        marks = pack(build_union([g1, g1.with_app_id(2), g2.with_app_id(3)]))
        assert partition(marks) == {
            frozenset({"CONST#1", "ID#1"}),
            frozenset({"ID#2"}),
        }

    @pytest.mark.slow
    def test_matches_component_oracle(self, rng, random_graph_set):
        # deterministic order plus 20 seeded orders, at most three colors
        for _ in range(300):
            union = build_union(random_graph_set(rng, max_apps=3, max_nodes=12))
            for seed in (None, *range(1, 21)):
                marks = pack(union, seed)
                assert set(marks) == {n.id for n in union.nodes}
                assert sorted(set(marks.values())) == list(range(len(set(marks.values()))))
                assert partition(marks) == oracle_partition(
                    union, combination_order(union, seed)
                )

    def test_experiment_packs(self, experiment):
        graphs = [read_app_graph(experiment(f"{name}.sdf")) for name in ("day", "night")]
        _, packed = merge(graphs)
        assert [(p.name, p.nodes) for p in packed.packs] == [
            ("q0", ("CANNY#1", "GAUSS3#1", "GRAYWORLD#1")),
            ("q1", ("SINK#1",)),
            ("q2", ("SOURCE#1",)),
            ("q3", ("HISTEQ#1",)),
        ]


class TestDivide:
    def setup_method(self):
        self.g = parse_app_graph(
            "app a\nnode k type=CONST in=0 out=1\nnode p type=ID in=1 out=1\n"
            "node q type=ID in=1 out=1\nedge k.out0 -> p.in0\nedge p.out0 -> q.in0\n"
        )
        self.union = build_union([self.g])

    def test_internal_and_external(self):
        packed = divide(self.union, {"CONST#1": 0, "ID#1": 0, "ID#2": 1})
        assert packed.internal_edges == (0,)
        assert packed.external_edges == (1,)
        assert packed.pack_of("ID#2").name == "q1"
        assert len(packed) == 2

    def test_ports_cover_external_and_boundary(self):
        packed = divide(self.union, {"CONST#1": 0, "ID#1": 0, "ID#2": 1})
        ports = [str(v) for v in packed.placeable_vertices()]
        # ID#1.out0 -> ID#2.in0 crosses packs; ID#2.out0 is a system output
        assert ports == ["ID#1.out0", "ID#2.in0", "ID#2.out0"]

    def test_one_pack_per_node(self):
        marks = {n.id: i for i, n in enumerate(self.union.nodes)}
        packed = divide(self.union, marks)
        assert packed.internal_edges == ()
        assert len(packed.external_edges) == len(self.union.edges)

    def test_marks_must_cover_nodes(self):
        with pytest.raises(ValueError, match="missing"):
            divide(self.union, {"CONST#1": 0})

    def test_experiment_split(self, experiment):
        graphs = [read_app_graph(experiment(f"{name}.sdf")) for name in ("day", "night")]
        _, packed = merge(graphs)
        assert packed.external_edges == (0, 2, 4, 5)
        assert len(packed.placeable_vertices()) == 10
