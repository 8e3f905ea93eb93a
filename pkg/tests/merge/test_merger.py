"""
test_merger.py

Unit tests for merger.py.
"""

import pytest

from sdfnoc.graph.parser import parse_app_graph
from sdfnoc.merge.merger import merge


class TestMerge:
    def setup_method(self):
        self.g = parse_app_graph(
            "app a\nnode k type=CONST in=0 out=1\nnode p type=ID in=1 out=1\n"
            "edge k.out0 -> p.in0\n"
        )

    def test_empty(self):
        with pytest.raises(ValueError, match="at least one"):
            merge([])

    def test_retags_application_ids(self):
        union, _ = merge([self.g, self.g, self.g])
        assert union.app_ids == (1, 2, 3)
        assert union.edges[0].colors == {1, 2, 3}

    def test_identical_graphs_share_everything(self):
        union, packed = merge([self.g, self.g])
        assert len(union.nodes) == 2
        assert len(packed.packs) == 1
        assert packed.external_edges == ()

    def test_deterministic(self, rng, random_graph_set):
        for _ in range(50):
            graphs = random_graph_set(rng)
            assert merge(graphs)[1].marks == merge(graphs)[1].marks
            assert merge(graphs, seed=3)[1].marks == merge(graphs, seed=3)[1].marks
