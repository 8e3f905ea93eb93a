"""
test_report.py

Unit tests for report.py: area savings of the merged implementation.
"""

import pytest

from sdfnoc.cli.project import read_project
from sdfnoc.cli.report import AreaReport, given_report, model_report
from sdfnoc.exceptions import MissingAreaError
from sdfnoc.merge.area import AreaTable


class TestGivenReport:
    def test_default_totals(self):
        report = given_report()
        assert report.mode == "given"
        assert dict(report.standalone) == {"app1": 14327, "app2": 27872}
        assert report.total_standalone == 42199
        assert round(100 * report.savings, 2) == 26.44

    def test_alternative_reconfigurable_total(self):
        assert round(100 * given_report(reconfigurable=31046).savings, 2) == 26.43

    def test_names(self):
        report = given_report([10, 30], 20, names=["a", "b"])
        assert list(report.standalone) == ["a", "b"]
        assert report.savings == 0.5

    @pytest.mark.parametrize(
        "kwargs, reason",
        [
            ({"standalone": [1, 2], "names": ["a"]}, "1 names for 2"),
            ({"standalone": [1, -2]}, ">= 0"),
            ({"reconfigurable": -1}, ">= 0"),
            ({"standalone": []}, "at least one"),
        ],
    )
    def test_invalid(self, kwargs, reason):
        with pytest.raises(ValueError, match=reason):
            given_report(**kwargs)


class TestAreaReport:
    def test_unknown_mode(self):
        with pytest.raises(ValueError, match="Unknown report mode"):
            AreaReport("guess", {"a": 1}, 1)

    def test_zero_standalone(self):
        assert AreaReport("given", {"a": 0}, 0).savings == 0.0

    def test_to_dataframe(self):
        df = given_report().to_dataframe()
        assert list(df.index) == ["app1", "app2", "standalone total", "reconfigurable"]
        assert df.loc["standalone total", "area"] == 42199
        assert df.loc["reconfigurable", "area"] == 31042

    def test_format_report(self):
        text = given_report().format_report()
        lines = text.splitlines()
        assert lines[0] == "area report (given)"
        assert lines[-1] == "savings: 26.44%"
        assert "31042" in lines[-2]
        assert text.endswith("\n")


class TestModelReport:
    def test_experiment(self, experiment):
        project = read_project(experiment("project.txt"))
        report = model_report(project.load_graphs(), project.area_table())
        assert dict(report.standalone) == {"day": 5411, "night": 10454}
        assert report.reconfigurable == 11064
        assert round(100 * report.savings, 2) == 30.26

    def test_missing_area(self, experiment):
        project = read_project(experiment("project.txt"))
        with pytest.raises(MissingAreaError):
            model_report(project.load_graphs(), AreaTable({"CANNY": 1}))
