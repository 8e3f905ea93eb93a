"""
test_result.py

Unit tests for result.py: the complete map-and-route step and the PnR file.
"""

import pytest

from sdfnoc.exceptions import ParseError, PlacementCapacityError
from sdfnoc.graph.parser import read_app_graph
from sdfnoc.merge.merger import merge
from sdfnoc.noc.mesh import build_mesh
from sdfnoc.pnr.result import format_pnr, parse_pnr, place_and_route, read_pnr


class TestPlaceAndRoute:
    def test_experiment(self, experiment_pnr):
        r = experiment_pnr
        assert str(r.noc) == "2x5"
        assert sorted(r.configs) == [1, 2]
        assert r.config("night") == r.configs[2]
        assert r.config(1) == r.configs[1]
        assert r.wirelength() >= 4

    def test_capacity(self, experiment):
        graphs = [read_app_graph(experiment(f"{name}.sdf")) for name in ("day", "night")]
        _, packed = merge(graphs)
        with pytest.raises(PlacementCapacityError):
            place_and_route(packed, build_mesh(1, 1))

    def test_to_dataframe(self, experiment_pnr):
        df = experiment_pnr.to_dataframe()
        assert list(df.index) == [1, 2]
        assert list(df.columns) == ["name", "routed_edges", "inter_links", "connections"]
        # day routes SOURCE->GAUSS3 and CANNY->SINK; night also the HISTEQ edges
        assert df.loc[1, "routed_edges"] == 2
        assert df.loc[2, "routed_edges"] == 4
        assert df.loc[2, "name"] == "night"

    def test_to_dot(self, experiment_pnr):
        source = experiment_pnr.to_dot()
        assert "layout=neato" in source
        assert source.count("shape=box") == 10


class TestPnrFormat:
    def test_round_trip(self, experiment_pnr):
        text = format_pnr(experiment_pnr)
        parsed = parse_pnr(text)
        assert parsed.placement == experiment_pnr.placement
        assert parsed.routes == experiment_pnr.routes
        assert parsed.configs == experiment_pnr.configs
        assert format_pnr(parsed) == text

    def test_layout(self, experiment_pnr):
        lines = format_pnr(experiment_pnr).splitlines()
        assert lines[:4] == ["pnr", "mesh 2x5", "seed 0", "union"]
        assert sum(line.startswith("place q") for line in lines) == 10
        assert [line.split(":")[0] for line in lines if line.startswith("route")] == [
            "route e0",
            "route e2",
            "route e4",
            "route e5",
        ]

    def replace(self, experiment_pnr, old, new):
        text = format_pnr(experiment_pnr)
        assert old in text
        return text.replace(old, new, 1)

    @pytest.mark.parametrize(
        "old, new, reason",
        [
            ("pnr\n", "pnx\n", "expected 'pnr' header"),
            ("mesh 2x5", "mesh 2by5", "<rows>x<cols>"),
            ("seed 0", "seed zero", "invalid seed"),
            ("seed 0\n", "", "expected 'seed <value>'"),
            ("route e0:", "route e9:", "unknown edge e9"),
            ("route e2:", "route e0:", "routed twice"),
            ("place q1.", "place q0.", "belongs to pack q1"),
            ("place q1.SINK#1", "place q1.SINK#4", "unknown vertex"),
        ],
    )
    def test_errors(self, experiment_pnr, old, new, reason):
        with pytest.raises(ParseError, match=reason):
            parse_pnr(self.replace(experiment_pnr, old, new))

    def test_failed_verification(self, experiment_pnr):
        text = format_pnr(experiment_pnr)
        kept = [line for line in text.splitlines() if not line.startswith("route e0")]
        with pytest.raises(ParseError, match="failed verification"):
            parse_pnr("\n".join(kept) + "\n")

    def test_read_and_path(self, experiment_pnr, tmp_path):
        path = tmp_path / "day_night.pnr"
        path.write_text(format_pnr(experiment_pnr), encoding="utf-8")
        assert read_pnr(path).routes == experiment_pnr.routes
        path.write_text("pnr\n", encoding="utf-8")
        with pytest.raises(ParseError) as info:
            read_pnr(path)
        assert info.value.path == str(path)
