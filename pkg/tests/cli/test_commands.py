"""
test_commands.py

Unit tests for commands.py and main.py: the design flow from application
graphs to simulated output streams.
"""

import pytest

from sdfnoc.cli.commands import (
    artifact_kind,
    cmd_config,
    cmd_export_dot,
    cmd_merge,
    cmd_pnr,
    cmd_report,
    cmd_simulate,
    cmd_validate,
)
from sdfnoc.cli.main import main
from sdfnoc.exceptions import ParseError, PlacementCapacityError
from sdfnoc.graph.evaluate import evaluate
from sdfnoc.graph.parser import read_app_graph
from sdfnoc.imaging.registry import default_registry
from sdfnoc.merge.union_io import read_union
from sdfnoc.noc.config import read_config
from sdfnoc.pnr.result import read_pnr
from sdfnoc.sim.streams import read_streams


class TestDesignFlow:
    @pytest.fixture(autouse=True)
    def flow(self, tmp_path, experiment):
        self.tmp = tmp_path
        self.day = experiment("day.sdf")
        self.night = experiment("night.sdf")
        self.union = tmp_path / "union.txt"
        self.pnr = tmp_path / "pnr.txt"
        cmd_merge([self.day, self.night], self.union)
        cmd_pnr(self.union, "2x5", out=self.pnr)

    def test_artifacts(self):
        packed = read_union(self.union)
        assert [p.name for p in packed.packs] == ["q0", "q1", "q2", "q3"]
        result = read_pnr(self.pnr)
        assert str(result.noc) == "2x5"
        assert result.check() == []

    def test_merge_returns_written_text(self):
        text = cmd_merge([self.day, self.night])
        assert text == self.union.read_text(encoding="utf-8")

    def test_pnr_is_reproducible(self):
        assert cmd_pnr(self.union, "2x5") == self.pnr.read_text(encoding="utf-8")

    def test_merge_from_project(self, experiment):
        assert cmd_merge(project=experiment("project.txt")) == cmd_merge([self.day, self.night])

    def test_merge_needs_inputs(self):
        with pytest.raises(ValueError, match="needs application graphs"):
            cmd_merge()

    def test_pnr_from_project(self, experiment):
        text = cmd_pnr(self.union, project=experiment("project.txt"))
        assert text == self.pnr.read_text(encoding="utf-8")

    def test_pnr_needs_mesh(self):
        with pytest.raises(ValueError, match="needs a mesh or a project"):
            cmd_pnr(self.union)

    def test_simulate_rejects_other_mesh(self, experiment):
        other = self.tmp / "pnr3x4.txt"
        cmd_pnr(self.union, "3x4", out=other)
        with pytest.raises(ValueError, match="targets a 3x4 mesh but the project uses 2x5"):
            cmd_simulate(
                other, "night", experiment("night_inputs.txt"), project=experiment("project.txt")
            )

    @pytest.mark.parametrize("app", ["night", "2"])
    def test_config(self, app):
        path = self.tmp / "night.cfg"
        text = cmd_config(self.pnr, app, path)
        assert text.startswith("config app=night mesh=2x5\n")
        name, noc, cfg = read_config(path)
        assert name == "night"
        assert cfg == read_pnr(self.pnr).config(2)

    def test_config_unknown_application(self):
        with pytest.raises(ValueError, match="valid applications"):
            cmd_config(self.pnr, "dusk")

    def test_simulate(self, experiment):
        out = self.tmp / "out.txt"
        trace = self.tmp / "trace.txt"
        inputs = experiment("night_inputs.txt")
        text = cmd_simulate(self.pnr, "night", inputs, 6, 3, out, trace)
        assert text == out.read_text(encoding="utf-8")
        expected = evaluate(read_app_graph(self.night, 2), read_streams(inputs), default_registry())
        assert read_streams(out) == expected
        assert trace.read_text(encoding="utf-8").startswith("tick=")

    def test_simulate_images_need_out(self, experiment):
        with pytest.raises(ValueError, match="write_streams"):
            cmd_simulate(self.pnr, "day", experiment("day_inputs.txt"))

    def test_validate(self):
        cfg = self.tmp / "day.cfg"
        cmd_config(self.pnr, "day", cfg)
        diagnostics = cmd_validate([self.day, self.union, self.pnr, cfg])
        assert all(d.ok for d in diagnostics)
        lines = [str(d) for d in diagnostics]
        assert lines[0] == f"{self.day}: ok (graph: 5 nodes, 4 edges)"
        assert lines[1] == f"{self.union}: ok (union: 6 union nodes, 4 packs)"
        assert lines[2] == f"{self.pnr}: ok (pnr: 4 routed nets on 2x5)"
        assert lines[3].startswith(f"{cfg}: ok (config: application day, ")

    def test_validate_rejects_broken_config(self):
        cfg = self.tmp / "bad.cfg"
        cfg.write_text("config app=day mesh=2x5\nrouter (0,2): E->S,W->S\n", encoding="utf-8")
        (diagnostic,) = cmd_validate([cfg])
        assert not diagnostic.ok
        assert "single-driver" in diagnostic.message
        assert str(diagnostic).startswith(f"{cfg}: error: ")

    def test_validate_continues_after_failure(self):
        broken = self.tmp / "broken.sdf"
        broken.write_text(
            "app a\nnode x type=GAUSS3 in=1 out=1\nedge x.out0 -> y.in0\n", encoding="utf-8"
        )
        first, second = cmd_validate([broken, self.day])
        assert not first.ok
        assert first.message.startswith("3:")
        assert "unknown node 'y'" in first.message
        assert second == cmd_validate([self.day])[0]
        assert second.ok

    def test_export_dot(self):
        out = self.tmp / "pnr.dot"
        text = cmd_export_dot(self.pnr, out)
        assert text == out.read_text(encoding="utf-8")
        assert cmd_export_dot(self.union).startswith("digraph")
        assert cmd_export_dot(self.day).startswith("digraph")

    def test_export_dot_rejects_config(self):
        cfg = self.tmp / "day.cfg"
        cmd_config(self.pnr, "day", cfg)
        with pytest.raises(ParseError, match="no DOT export"):
            cmd_export_dot(cfg)

    def test_mesh_too_small(self):
        with pytest.raises(PlacementCapacityError, match="1x1 mesh"):
            cmd_pnr(self.union, "1x1")


class TestArtifactKind:
    @pytest.mark.parametrize(
        "text, kind",
        [
            ("# comment\napp a\n", "graph"),
            ("union\n", "union"),
            ("pnr\n", "pnr"),
            ("config app=a mesh=1x1\n", "config"),
        ],
    )
    def test_kinds(self, tmp_path, text, kind):
        path = tmp_path / "artifact.txt"
        path.write_text(text, encoding="utf-8")
        assert artifact_kind(path) == kind

    @pytest.mark.parametrize("text", ["", "stream a.in0: 1\n"])
    def test_unknown(self, tmp_path, text):
        path = tmp_path / "artifact.txt"
        path.write_text(text, encoding="utf-8")
        with pytest.raises(ParseError, match="Unknown artifact"):
            artifact_kind(path)


class TestCmdReport:
    def test_given(self):
        assert round(100 * cmd_report(mode="given").savings, 2) == 26.44
        assert round(100 * cmd_report(mode="given", reconfigurable=31046).savings, 2) == 26.43

    def test_model(self, experiment):
        report = cmd_report(experiment("project.txt"))
        assert report.reconfigurable == 11064

    def test_model_with_area_override(self, experiment, tmp_path):
        areas = tmp_path / "areas.txt"
        areas.write_text(
            "GAUSS3 1\nGRAYWORLD 1\nHISTEQ 1\nCANNY 1\nSOURCE 0\nSINK 0\n", encoding="utf-8"
        )
        report = cmd_report(experiment("project.txt"), areas=areas)
        assert report.reconfigurable == 4
        assert dict(report.standalone) == {"day": 3, "night": 3}

    def test_model_needs_project(self):
        with pytest.raises(ValueError, match="needs a project"):
            cmd_report()

    def test_unknown_mode(self):
        with pytest.raises(ValueError, match="Unknown report mode"):
            cmd_report(mode="guess")


class TestMain:
    def test_validate(self, experiment, capsys):
        assert main(["validate", str(experiment("day.sdf"))]) == 0
        assert "ok (graph: 5 nodes, 4 edges)" in capsys.readouterr().out

    def test_report(self, capsys):
        assert main(["report", "--mode", "given"]) == 0
        assert capsys.readouterr().out.endswith("savings: 26.44%\n")

    def test_pipeline(self, experiment, tmp_path, capsys):
        union = tmp_path / "union.txt"
        pnr = tmp_path / "pnr.txt"
        day, night = str(experiment("day.sdf")), str(experiment("night.sdf"))
        assert main(["merge", day, night, "--out", str(union)]) == 0
        assert main(["pnr", str(union), "--mesh", "2x5", "--out", str(pnr)]) == 0
        capsys.readouterr()
        assert main(["config", str(pnr), "--app", "day"]) == 0
        assert capsys.readouterr().out.startswith("config app=day mesh=2x5")

    def test_pipeline_from_project(self, experiment, tmp_path):
        union = tmp_path / "union.txt"
        pnr = tmp_path / "pnr.txt"
        project = str(experiment("project.txt"))
        assert main(["merge", "--project", project, "--out", str(union)]) == 0
        assert main(["pnr", str(union), "--project", project, "--out", str(pnr)]) == 0
        assert pnr.read_text(encoding="utf-8") == cmd_pnr(union, "2x5", 0)

    def test_validate_reports_every_file(self, experiment, tmp_path, capsys):
        bad = tmp_path / "bad.cfg"
        bad.write_text("config app=day mesh=2x5\nrouter (0,2): E->S,W->S\n", encoding="utf-8")
        good = experiment("day.sdf")
        assert main(["validate", str(bad), str(good)]) == 1
        captured = capsys.readouterr()
        assert captured.out == f"{good}: ok (graph: 5 nodes, 4 edges)\n"
        assert captured.err.startswith(f"{bad}: error: ")
        assert "single-driver" in captured.err

    def test_error_exit_code(self, experiment, tmp_path, capsys):
        union = tmp_path / "union.txt"
        cmd_merge([experiment("day.sdf"), experiment("night.sdf")], union)
        assert main(["pnr", str(union), "--mesh", "1x1"]) == 1
        assert capsys.readouterr().err.startswith("error: ")

    def test_missing_file(self, tmp_path, capsys):
        assert main(["validate", str(tmp_path / "none.sdf")]) == 1
        assert "error:" in capsys.readouterr().err

    def test_usage_error(self):
        with pytest.raises(SystemExit) as info:
            main(["pnr"])
        assert info.value.code == 2
