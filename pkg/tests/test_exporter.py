import json
from fractions import Fraction

import pandas as pd
import pytest

from core.config import ReportConfig, ToriCountConfig
from core.exporter import TABLE_COLUMNS, Exporter, to_jsonable
from core.types import CountMethod, CountReport, LangWeilReport, LangWeilRow


@pytest.fixture
def exporter():
    return Exporter(ToriCountConfig())


@pytest.fixture
def reports():
    return [
        CountReport("fink", {"p": 2, "T": 3}, exact=2, upper_bound=83.1, checks={"upper": True}),
        CountReport("fink", {"p": 2, "T": 7}, exact=8, main_term=4.0, checks={"upper": True, "lower": False},
                    method="divisor-count"),
    ]


def test_to_jsonable():
    assert to_jsonable(Fraction(3, 2)) == "3/2"
    assert to_jsonable(Fraction(4, 2)) == "2"
    assert to_jsonable({1: (1, Fraction(1, 3))}) == {"1": [1, "1/3"]}


def test_report_post_init(reports):
    assert reports[1].method == CountMethod.DIVISOR_COUNT
    assert reports[1].ratio == 2.0
    assert reports[0].ratio is None
    assert reports[0].passed and not reports[1].passed


def test_json_includes_config(exporter, reports):
    data = json.loads(exporter.to_json(reports[0]))
    assert data["exact"] == 2
    assert data["method"] == "enumeration"
    assert data["config"]["limits"]["max_points"] == 10 ** 9
    wrapped = json.loads(exporter.to_json(reports))
    assert [r["exact"] for r in wrapped["result"]] == [2, 8]
    assert "config" not in json.loads(exporter.to_json({"a": 1}, include_config=False))


def test_json_is_stable_and_sorted(exporter, reports):
    text = exporter.to_json(reports[1])
    assert text == exporter.to_json(reports[1])
    keys = list(json.loads(text))
    assert keys == sorted(keys)
    compact = Exporter(ToriCountConfig(report=ReportConfig(indent=0)))
    assert compact.to_json({"b": 1}, include_config=False) == '{\n"b": 1\n}'


def test_count_table(exporter, reports):
    table = exporter.to_table(reports)
    assert list(table.columns) == TABLE_COLUMNS
    assert list(table["T"]) == [3, 7]
    assert list(table["method"]) == ["enumeration", "divisor-count"]
    assert list(table["passed"]) == [True, False]
    assert pd.isna(table["main_term"][0])


def test_lang_weil_table(exporter):
    report = LangWeilReport("-1 + 1*x2 + 1*x1", 1, [LangWeilRow(1, 2, 0, 1.4), LangWeilRow(2, 4, 2, 1.0)])
    table = exporter.lang_weil_table(report)
    assert list(table.columns) == ["l", "q", "count", "deviation"]
    assert list(table["count"]) == [0, 2]
    assert report.to_dict()["rows"][1]["q"] == 4


def test_save_table(exporter, reports, tmp_path):
    path = exporter.save_table(exporter.to_table(reports), tmp_path / "deep" / "dir" / "fink.csv")
    assert path.exists()
    frame = pd.read_csv(path)
    assert list(frame.columns) == TABLE_COLUMNS
    assert list(frame["exact"]) == [2, 8]


def test_series(exporter, reports):
    assert exporter.series(reports) == [(3, 2), (7, 8)]
