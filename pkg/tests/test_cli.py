import json
import logging

import pandas as pd
import pytest
from click.testing import CliRunner

from main import cli


@pytest.fixture
def runner():
    return CliRunner(mix_stderr=False)


@pytest.fixture(autouse=True)
def restore_root_logging():
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    for handler in root.handlers:
        if handler not in handlers:
            handler.close()
    root.handlers[:] = handlers
    root.setLevel(level)


def run(runner, *args, code=0):
    result = runner.invoke(cli, list(args), obj={})
    assert result.exit_code == code, result.output + result.stderr
    return json.loads(result.stdout)


def test_fink_single_cutoff(runner):
    data = run(runner, "fink", "--p", "2", "--T", "3")
    assert data["exact"] == 2
    assert data["histogram"] == {"3": 2}
    assert data["method"] == "enumeration"
    assert data["config"]["limits"]["max_field_bits"] == 24


def test_fink_series_writes_table(runner, tmp_path):
    table = tmp_path / "out" / "fink.csv"
    data = run(runner, "fink", "--p", "2", "--T", "1", "--T", "3", "--T", "7", "--table", str(table))
    assert [r["exact"] for r in data["reports"]] == [0, 2, 8]
    assert data["passed"]
    frame = pd.read_csv(table)
    assert list(frame["T"]) == [1, 3, 7]
    assert list(frame["exact"]) == [0, 2, 8]


def test_fink_series_feeds_empirical_exponent(runner):
    data = run(runner, "fink", "--p", "2", "--T", "3", "--T", "7", "--T", "15", "--T", "31", "--method", "divisor-count", "--series")
    assert data["series"] == ",".join(f"{r['params']['T']}:{r['exact']}" for r in data["reports"])
    assert data["series"].startswith("3:2,7:8,")
    fitted = run(runner, "empirical-exponent", "--series", data["series"])
    assert fitted["points"] == 4 and fitted["slope"] > 0
    single = run(runner, "fink", "--p", "2", "--T", "3", "--series")
    assert single["series"] == "3:2"


def test_output_is_byte_stable(runner):
    first = runner.invoke(cli, ["cylinder", "--p", "2", "--T", "7"], obj={})
    second = runner.invoke(cli, ["cylinder", "--p", "2", "--T", "7"], obj={})
    assert first.stdout == second.stdout
    assert json.loads(first.stdout)["exact"] == 48


def test_field_cap_option(runner):
    data = run(runner, "--max-field-bits", "3", "fink", "--p", "2", "--T", "5", "--method", "enumeration", code=1)
    assert data["error"]["kind"] == "resource"
    assert "order 5" in data["error"]["message"]


def test_config_file_option(runner, tmp_path):
    path = tmp_path / "c.yaml"
    path.write_text("limits:\n  max_field_bits: 3\n", encoding="utf-8")
    data = run(runner, "--config", str(path), "fink", "--p", "2", "--T", "5", "--method", "enumeration", code=1)
    assert data["error"]["kind"] == "resource"


def test_invalid_config_file(runner, tmp_path):
    path = tmp_path / "c.yaml"
    path.write_text("limits: [1, 2\n", encoding="utf-8")
    data = run(runner, "--config", str(path), "zeta", "--s", "2", code=1)
    assert data["error"]["kind"] == "input"


def test_exponent(runner):
    assert run(runner, "exponent", "--d", "1", "--delta", "0")["value"] == "3/2"
    assert run(runner, "exponent", "--n", "3")["value"] == "8/3"
    assert run(runner, "exponent", "--d", "2")["kind"] == "general"
    assert run(runner, "exponent", "--d", "1", "--delta", "2", code=1)["error"]["kind"] == "domain"
    assert run(runner, "exponent", code=1)["error"]["kind"] == "input"


def test_snf_and_minors(runner):
    data = run(runner, "snf", "[[2,4],[6,8]]")
    assert data["factors"] == [2, 4]
    assert data["rank"] == 2
    assert run(runner, "snf", "[[1,0],[0,1]]")["V_inv"] == [[1, 0], [0, 1]]
    assert run(runner, "minors", "[[2,4],[6,8]]")["minors"] == {"1": 2, "2": 8}
    assert run(runner, "snf", "[[1,2]", code=1)["error"]["kind"] == "input"


def test_saturate_and_minima(runner):
    data = run(runner, "saturate", "[[2,0],[0,3]]", "--p", "2")
    assert data["components"] == 3
    data = run(runner, "minima", "--point", "1/5,2/5")
    assert data["minima"] == [2, 2]
    assert data["order"] == 5
    assert data["product"] <= 5


def test_coset_commands(runner):
    data = run(runner, "coset-count", "--rep", "0", "--T", "6")
    assert data["exact"] == 12
    assert data["order"] == 1
    data = run(runner, "coset-bound", "--rep", "1/3,0", "--relations", "[[1,0]]", "--T", "9")
    assert data["bound"] == "27" and data["float"] == 27.0
    data = run(runner, "solve-monomial", "[[2,0],[0,2]]", "--target", "0,0")
    assert data["count"] == 4


def test_polynomial_commands(runner):
    assert run(runner, "admissible", "x1 + x2 - 1")["admissible"]
    data = run(runner, "admissible", "x1*x2 + 1")
    assert not data["admissible"] and data["witness"]["u"] == [1, 1]
    assert run(runner, "evaluate", "x1 + x2 - 1", "--point", "1/6,5/6")["zero"]
    assert run(runner, "in-variety", "x1*x2 - 1", "--rep", "0,0", "--relations", "[[1,1]]")["contained"]
    data = run(runner, "divide", "x1^2 - 1", "--u", "1")
    assert data["divides"] and data["quotient"] == "1 + 1*x1"
    assert run(runner, "fiber-bound", "x1 + x2 - 1", "--relations", "[[2,3]]")["bound"] == 6


def test_polynomial_from_file(runner, tmp_path):
    path = tmp_path / "p.txt"
    path.write_text("x1 + x2 - 1\n", encoding="utf-8")
    data = run(runner, "count-charp", "--file", str(path), "--p", "2", "--T", "7")
    assert data["exact"] == 8
    assert data["params"]["polynomial"] == "1 + 1*x2 + 1*x1"


def test_count_charp_needs_characteristic(runner):
    data = run(runner, "count-charp", "x1 - 1", "--T", "5", code=1)
    assert data["error"]["kind"] == "input"
    assert "--p" in data["error"]["message"]


def test_langweil_table(runner, tmp_path):
    table = tmp_path / "lw.csv"
    data = run(runner, "langweil", "x1 + x2 - 1", "--p", "2", "--l", "1", "--l", "2", "--l", "3", "--r", "1", "--table", str(table))
    assert [row["count"] for row in data["rows"]] == [0, 2, 6]
    assert data["bounded"]
    assert list(pd.read_csv(table).columns) == ["l", "q", "count", "deviation"]


def test_arithmetic_commands(runner):
    assert run(runner, "jordan", "--d", "1", "--N", "6")["values"] == [1, 1, 2, 2, 4, 2]
    data = run(runner, "jordan", "--d", "1", "--m", "6", "--a", "1", "--x", "1")
    assert data["exact"] == 1
    data = run(runner, "zeta", "--s", "2")
    assert data["lower"] <= data["value"] <= data["upper"]
    assert run(runner, "conv-check", "--d", "2", "--n", "30")["holds"]
    assert run(runner, "abel", "--values", "1,1,1")["value"] == "11/6"
    assert run(runner, "coset-main", "--p", "4", "--d", "1", "--T", "10", code=1)["error"]["kind"] == "domain"


def test_fink_bounds(runner):
    data = run(runner, "fink-bounds", "--T", "4")
    assert data["minkowski"] == 80
    assert data["fink"] == 128.0
    assert data["cylinder"] == 48 * 32.0


def test_char0_main_from_options_and_file(runner, tmp_path):
    data = run(runner, "char0-main", "--coset", "0,0@[[1,0]]", "--coset", "0,0@[[0,1]]", "--T", "100")
    assert data["a"] == 1
    assert data["b"]["coefficient"] == "1"
    path = tmp_path / "cosets.yaml"
    path.write_text("cosets:\n  - rep: ['1/2', '0']\n    relations: [[1, 0], [0, 1]]\n", encoding="utf-8")
    data = run(runner, "char0-main", "--file", str(path), "--T", "2")
    assert data["finite"] and data["main"] == 1.0
    assert run(runner, "char0-main", "--T", "5", code=1)["error"]["kind"] == "domain"


def test_empirical_exponent_command(runner, tmp_path):
    data = run(runner, "empirical-exponent", "--series", "1:1,2:4,4:16")
    assert data["points"] == 3
    assert data["slope"] == pytest.approx(2.0)
    path = tmp_path / "series.csv"
    pd.DataFrame({"T": [1, 2, 4], "exact": [1, 8, 64]}).to_csv(path, index=False)
    assert run(runner, "empirical-exponent", "--file", str(path))["slope"] == pytest.approx(3.0)
    assert run(runner, "empirical-exponent", "--series", "1:x", code=1)["error"]["kind"] == "input"
