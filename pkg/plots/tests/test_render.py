import csv
import math

import pytest

from treeplots import RenderResult, SchemaError, render
from treeplots.render import (FIG5_HEADER, LEMMA_HEADER, SCALING_HEADER,
                              _fit_inverse_log)


def write(path, header, rows):
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        writer.writerows(rows)
    return str(path)


@pytest.fixture
def fig5_csv(tmp_path):
    rows = []
    for i, n in enumerate(range(500, 4001, 500)):
        ratio = 5.0 / math.log(n)
        rows.append([n, 0, 24 * n, int(24 * n * ratio), ratio,
                     10.0 + i, 10.0 + i, 3.0])
    return write(tmp_path / "fig5.csv", FIG5_HEADER, rows)


def test_fig5_ratio_reports_fitted_alpha(fig5_csv, tmp_path):
    out = tmp_path / "ratio.png"
    result = render(fig5_csv, "fig5-ratio", str(out))
    assert isinstance(result, RenderResult)
    assert out.stat().st_size > 0
    # synthetic data is exactly alpha/ln n with alpha = 5
    assert result.alpha == pytest.approx(5.0, abs=1e-9)


def test_fig5_cost(fig5_csv, tmp_path):
    out = tmp_path / "cost.svg"
    result = render(fig5_csv, "fig5-cost", str(out))
    assert result.points == 8
    assert out.stat().st_size > 0


def test_scaling_plot(tmp_path):
    rows = []
    for family in ("recursive", "bst"):
        for n in (1024, 2048, 4096):
            x = 3 * n / math.log(n)
            rows.append([family, n, 0, 0, x, x / n, 3.0])
    path = write(tmp_path / "scaling.csv", SCALING_HEADER, rows)
    out = tmp_path / "scaling.png"
    result = render(path, "scaling", str(out))
    assert result.points == 6
    assert out.stat().st_size > 0


def test_lemma_plot_skips_error_rows(tmp_path):
    rows = [
        ["polya", 2, "(())", 1, 2, 0.2755, 1.102, True],
        ["polya", 3, "((()))", 1, 6, 0.0475, 0.856, True],
        ["plane", 5, "max-weight", 1, 15, "", "", "error:no sign change"],
    ]
    path = write(tmp_path / "lemma.csv", LEMMA_HEADER, rows)
    out = tmp_path / "lemma.png"
    result = render(path, "lemma", str(out))
    assert result.points == 2
    assert out.stat().st_size > 0


def test_schema_mismatch(tmp_path):
    path = write(tmp_path / "bad.csv", ["a", "b"], [[1, 2]])
    with pytest.raises(SchemaError):
        render(path, "fig5-ratio", str(tmp_path / "x.png"))


def test_empty_input(tmp_path):
    path = write(tmp_path / "empty.csv", FIG5_HEADER, [])
    with pytest.raises(SchemaError):
        render(path, "fig5-ratio", str(tmp_path / "x.png"))


def test_unknown_kind(fig5_csv, tmp_path):
    with pytest.raises(ValueError):
        render(fig5_csv, "pie-chart", str(tmp_path / "x.png"))


def test_deterministic_output(fig5_csv, tmp_path):
    a, b = tmp_path / "a.png", tmp_path / "b.png"
    render(fig5_csv, "fig5-ratio", str(a))
    render(fig5_csv, "fig5-ratio", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_fit_matches_least_squares_formula():
    ns = [100, 200, 400]
    ys = [7 / math.log(n) for n in ns]
    assert _fit_inverse_log(ns, ys) == pytest.approx(7.0)
