"""CSV/figure emission helpers."""

import math

from qsqueeze.quaternion import AXIS_I, AXIS_J
from qsqueeze.report import (
    axis_name,
    expectation_sweep,
    render_sweep_figures,
    squeeze_from_polar,
    write_csv,
)


def test_axis_name_round_trip():
    assert axis_name(AXIS_I) == "i"
    assert axis_name(AXIS_J) == "j"


def test_squeeze_from_polar():
    sp = squeeze_from_polar(0.7, math.pi / 3, AXIS_I)
    assert abs(sp.r - 0.7) <= 1e-14
    assert abs(sp.u.w - math.cos(math.pi / 3)) <= 1e-14
    assert abs(sp.u.x - math.sin(math.pi / 3)) <= 1e-14


def test_sweep_numeric_matches_closed():
    rows = expectation_sweep([0.0, 0.4], [0.0, math.pi / 2], [AXIS_I], dim=40)
    assert len(rows) == 4
    for row in rows:
        assert abs(row["var_x"] - row["closed_var_x"]) <= 1e-10
        assert abs(row["var_y"] - row["closed_var_y"]) <= 1e-10
        if row["mandel_q"] is not None and row["closed_mandel_q"] is not None:
            assert abs(row["mandel_q"] - row["closed_mandel_q"]) <= 1e-10


def test_write_csv_repr_cells(tmp_path):
    rows = [{"a": 0.1 + 0.2, "b": None, "c": "x"}]
    path = tmp_path / "t.csv"
    write_csv(rows, ("a", "b", "c"), str(path))
    text = path.read_text()
    assert text.splitlines()[0] == "a,b,c"
    assert repr(0.1 + 0.2) in text  # full precision, not str() rounding
    assert ",,x" in text.splitlines()[1]


def test_render_figures(tmp_path):
    rows = expectation_sweep([0.0, 0.5], [0.0], [AXIS_I], dim=32)
    paths = render_sweep_figures(rows, str(tmp_path))
    assert len(paths) == 2
    for p in paths:
        assert (tmp_path / p.split("/")[-1]).stat().st_size > 0
