"""
test_area.py

Unit tests for area.py: the area model, the area table format and the
day/night savings.
"""

import pytest

from sdfnoc.exceptions import MissingAreaError, ParseError
from sdfnoc.graph.parser import parse_app_graph, read_app_graph
from sdfnoc.merge.area import AreaTable, area, parse_area_table, read_area_table
from sdfnoc.merge.merger import merge


class TestAreaTable:
    def test_lookup(self):
        table = AreaTable({"ID": 3}, router_area=7)
        assert table["ID"] == 3
        assert table.with_router_area(9).router_area == 9

    def test_missing_type(self):
        with pytest.raises(MissingAreaError, match="Unknown node type in area table: FFT"):
            AreaTable({"ID": 3})["FFT"]

    def test_negative(self):
        with pytest.raises(ValueError, match=">= 0"):
            AreaTable({"ID": -1})
        with pytest.raises(ValueError, match="router area"):
            AreaTable({}, router_area=-2)


class TestParseAreaTable:
    def test_parse(self):
        table = parse_area_table("# areas\nID 3\nADDER 12  # adder\nROUTER 5\n")
        assert table == AreaTable({"ID": 3, "ADDER": 12}, 5)

    def test_router_defaults_to_zero(self):
        assert parse_area_table("ID 1\n").router_area == 0

    @pytest.mark.parametrize(
        "text, reason, line",
        [
            ("ID\n", "expected '<TYPE> <uint>'", 1),
            ("ID 1\nID 2\n", "duplicate entry for ID", 2),
            ("ROUTER 1\nROUTER 2\n", "duplicate ROUTER", 2),
            ("ID -4\n", "non-negative integer", 1),
            ("9x 4\n", "invalid type label", 1),
        ],
    )
    def test_errors(self, text, reason, line):
        with pytest.raises(ParseError, match=reason) as info:
            parse_area_table(text)
        assert info.value.line == line

    def test_bundled_table(self, experiment):
        table = read_area_table(experiment("areas.txt"))
        assert table["HISTEQ"] == 5503
        assert table.router_area == 50

    def test_read_error_carries_path(self, tmp_path):
        path = tmp_path / "areas.txt"
        path.write_text("ID x\n", encoding="utf-8")
        with pytest.raises(ParseError, match="areas.txt:1:4"):
            read_area_table(path)


class TestArea:
    def setup_method(self):
        self.table = AreaTable({"CONST": 2, "ID": 3, "ADDER": 10, "SPLIT": 4})

    def test_intrinsic_plus_routers(self):
        g = parse_app_graph("app a\nnode x type=ID in=1 out=1\nnode y type=ID in=1 out=1\n")
        _, packed = merge([g])
        assert area(packed, self.table) == 6
        assert area(packed, self.table.with_router_area(100)) == 206

    def test_missing_type(self):
        _, packed = merge([parse_app_graph("app a\nnode x type=FFT in=1 out=1\n")])
        with pytest.raises(MissingAreaError):
            area(packed, self.table)

    def test_merged_intrinsic_area_bounds(self, rng, random_graph_set):
        # shared copies never cost more than the separate graphs, nor less
        # than the largest of them
        for _ in range(300):
            graphs = random_graph_set(rng, max_apps=4, max_nodes=10)
            standalone = [area(merge([g])[1], self.table) for g in graphs]
            merged = area(merge(graphs)[1], self.table)
            assert max(standalone) <= merged <= sum(standalone)


class TestExperimentArea:
    def setup_method(self):
        self.table = parse_area_table(
            "GAUSS3 1058\nGRAYWORLD 460\nHISTEQ 5503\nCANNY 3843\nSOURCE 0\nSINK 0\n"
        )

    def graphs(self, experiment):
        return [read_app_graph(experiment(f"{name}.sdf")) for name in ("day", "night")]

    @pytest.mark.parametrize("router_area", [0, 50, 200])
    def test_merged_smaller_than_standalone(self, experiment, router_area):
        table = self.table.with_router_area(router_area)
        day, night = self.graphs(experiment)
        merged = area(merge([day, night])[1], table)
        standalone = area(merge([day])[1], table) + area(merge([night])[1], table)
        assert merged == 10864 + 4 * router_area
        assert standalone == 15765 + 2 * router_area
        assert merged < standalone
