"""Renderer behavior on synthetic grids."""

import xml.etree.ElementTree as ET

import numpy as np
import pytest

from jchplots import PlotSpec, extract_locus, load_sweep_csv, render
from jchplots.cli import main as cli_main


def svg_ids(path):
    tree = ET.parse(path)
    return {
        el.attrib["id"]
        for el in tree.iter()
        if "id" in el.attrib
    }


def test_constant_fields_draw_no_contours(make_csv, tmp_path):
    path = make_csv("const.csv", [0.0, 1.0, 2.0], [0.0, 1.0])
    out = tmp_path / "const.svg"
    result = render(PlotSpec(input_csv=str(path), output_path=str(out)))
    assert out.exists()
    for panel in result.panels:
        assert panel.levels == ()
        assert panel.contour_path_count == 0


def test_step_function_single_contour_at_step(make_csv, tmp_path):
    deltas = [0.0, 0.5, 1.0, 1.5, 2.0]

    def cell(d, t):
        return {"visibility": "1.0" if d >= 1.0 else "0.0"}

    path = make_csv("step.csv", deltas, [0.0, 0.5, 1.0], cell)
    out = tmp_path / "step.svg"
    result = render(PlotSpec(
        input_csv=str(path), output_path=str(out),
        overlays=("visibility",), levels=(0.5,),
    ))
    panel = result.panels[0]
    assert panel.levels == (0.5,)
    assert panel.contour_path_count == 1
    xs = panel.segments[0][0][:, 0]
    # the jump sits between the d=0.5 and d=1.0 grid columns
    assert np.all(xs > 0.5 - 1e-9) and np.all(xs < 1.0 + 1e-9)


def test_locus_polyline_extraction(make_csv):
    def cell(d, t):
        return {"locus_1_2": repr(d - 1.0)}

    grid = load_sweep_csv(make_csv("locus.csv", [0.0, 0.5, 1.5, 2.0], [0.0, 1.0], cell))
    assert extract_locus(grid, "locus_1_2") == [(1.0, 0.0), (1.0, 1.0)]


def test_locus_skips_masked_cells(make_csv):
    def cell(d, t):
        if d == 1.0:
            return {"degenerate": "1", "locus_1_2": ""}
        return {"locus_1_2": repr(d - 1.0)}

    grid = load_sweep_csv(make_csv("m.csv", [0.0, 1.0, 2.0], [0.0], cell))
    assert extract_locus(grid, "locus_1_2") == []


def test_degenerate_cells_masked_in_figure(make_csv, tmp_path):
    def cell(d, t):
        if (d, t) == (1.0, 0.0):
            return {"degenerate": "1", "avg_concurrence": "", "locus_1_2": ""}
        return {}

    path = make_csv("deg.csv", [0.0, 1.0, 2.0], [0.0, 1.0], cell)
    out = tmp_path / "deg.svg"
    result = render(PlotSpec(input_csv=str(path), output_path=str(out)))
    assert result.masked_cells == 1


def test_expected_svg_groups_present(make_csv, tmp_path):
    def cell(d, t):
        return {
            "visibility": repr(float(1.0 / (1.0 + np.exp(d - 1.0)))),
            "avg_excitation_variance": repr(float(0.7 / (1.0 + np.exp(d - 1.0)))),
            "locus_1_2": repr(float(d - 1.0)),
        }

    path = make_csv("full.csv", list(np.linspace(0, 2, 9)), [0.0, 0.5, 1.0], cell)
    out = tmp_path / "full.svg"
    render(PlotSpec(input_csv=str(path), output_path=str(out)))
    ids = svg_ids(out)
    assert "panel0-concurrence-map" in ids
    assert "panel0-contours-visibility" in ids
    assert "panel1-contours-excitation_variance" in ids
    assert "panel0-locus-polyline" in ids and "panel1-locus-polyline" in ids


def test_rendering_is_deterministic(make_csv, tmp_path):
    def cell(d, t):
        return {"visibility": repr(d / 2.0), "avg_concurrence": repr(t / 2.0)}

    path = make_csv("det.csv", [0.0, 1.0, 2.0], [0.0, 1.0], cell)
    out1 = tmp_path / "a.svg"
    out2 = tmp_path / "b.svg"
    render(PlotSpec(input_csv=str(path), output_path=str(out1)))
    render(PlotSpec(input_csv=str(path), output_path=str(out2)))
    assert out1.read_bytes() == out2.read_bytes()


def test_unknown_overlay_rejected(make_csv, tmp_path):
    path = make_csv("x.csv", [0.0], [0.0])
    with pytest.raises(ValueError):
        PlotSpec(input_csv=str(path), output_path="x.svg", overlays=("entropy",))


def test_cli_roundtrip(make_csv, tmp_path, capsys):
    path = make_csv("cli.csv", [0.0, 1.0, 2.0], [0.0, 1.0])
    out = tmp_path / "cli.svg"
    code = cli_main(["--in", str(path), "--out", str(out)])
    assert code == 0
    assert out.exists()
    assert "wrote" in capsys.readouterr().out


def test_cli_schema_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("not a sweep\n", encoding="utf-8")
    code = cli_main(["--in", str(bad), "--out", str(tmp_path / "x.svg")])
    assert code == 1
    assert "error:" in capsys.readouterr().err
