"""End-to-end checks for the CSV -> figure pipeline.

Input CSVs are produced by running the `lytensor` command-line tool in a
subprocess; the renderer itself never imports that package. Every test that
needs generated data is skipped when the CLI is absent, so the figure
scripts remain usable standalone.
"""
import math
import shutil
import subprocess
import sys
from contextlib import contextmanager
from pathlib import Path

import numpy as np
import pytest

import figure_report as report
import render


def _cli():
    exe = shutil.which("lytensor")
    if exe is not None:
        return [exe]
    probe = subprocess.run([sys.executable, "-c", "import lytensor.cli"],
                           capture_output=True)
    if probe.returncode == 0:
        return [sys.executable, "-m", "lytensor.cli"]
    return None


CLI = _cli()
needs_cli = pytest.mark.skipif(CLI is None, reason="lytensor CLI not installed")


@contextmanager
def criterion(name, detail=""):
    try:
        yield
    except BaseException as exc:
        report.record("FAIL", name, f"{type(exc).__name__}: {exc}"[:140])
        raise
    else:
        report.record("PASS", name, detail)


@pytest.fixture(scope="module")
def star_gap_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("figdata") / "star_gaps.csv"
    subprocess.run(
        CLI + ["study", "gap", "--family", "stars", "--n-min", "3",
               "--n-max", "6", "--samples", "6", "--seed", "11",
               "--out", str(path)],
        check=True, capture_output=True)
    return path


@pytest.fixture(scope="module")
def path_roots_csv(tmp_path_factory):
    d = tmp_path_factory.mktemp("figdata")
    roots = d / "path10_roots.csv"
    subprocess.run(
        CLI + ["study", "ly-radius", "--family", "paths", "--n-min", "10",
               "--n-max", "10", "--samples", "2", "--seed", "5",
               "--out", str(d / "path10.csv"), "--roots-out", str(roots)],
        check=True, capture_output=True)
    return roots


@needs_cli
def test_figure_rendering_criterion(star_gap_csv, path_roots_csv, tmp_path):
    with criterion(
        "figure-rendering",
        "star gap points sit on the 1 - s^2 curve within 1e-6; no root "
        "plotted inside its s^(-1/2) circle",
    ):
        # gap scatter: check the data actually placed on the axes
        points = render.load_gap_points(star_gap_csv)
        assert len(points) >= 20
        fig, ax = render.render_gap(points)
        out = tmp_path / "gaps.png"
        fig.savefig(out)
        assert out.stat().st_size > 0
        offsets = np.asarray(ax.collections[0].get_offsets())
        assert offsets.shape == (len(points), 2)
        for s, gap in offsets:
            assert abs(gap - (1.0 - s * s)) <= 1e-6, (s, gap)
        curve = ax.lines[0]
        assert np.allclose(curve.get_ydata(),
                           1.0 - np.asarray(curve.get_xdata()) ** 2)

        # root scatter: plotted roots against the plotted circles
        rows = render.load_root_points(path_roots_csv)
        assert rows
        fig, ax = render.render_roots(rows)
        out = tmp_path / "roots.png"
        fig.savefig(out)
        assert out.stat().st_size > 0
        offsets = np.asarray(ax.collections[0].get_offsets())
        assert offsets.shape == (len(rows), 2)
        for row, (re, im) in zip(rows, offsets):
            assert (re, im) == (row[1], row[2])
            assert math.hypot(re, im) >= row[4] - 1e-6
        radii = sorted(p.radius for p in ax.patches)
        assert radii == sorted({r[4] for r in rows})
        for row in rows:
            assert abs(row[4] - row[0] ** -0.5) <= 1e-12


@needs_cli
def test_cli_deterministic_output(star_gap_csv, tmp_path):
    outs = []
    for name in ("a.png", "b.png"):
        out = tmp_path / name
        res = subprocess.run(
            [sys.executable, "render.py", "--kind", "gap-scatter",
             "--in", str(star_gap_csv), "--out", str(out), "--fit-overlay"],
            capture_output=True, text=True, cwd=Path(render.__file__).parent)
        assert res.returncode == 0, res.stderr
        assert "points ->" in res.stdout
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_empty_csv_reference_curve_only(tmp_path):
    p = tmp_path / "empty.csv"
    p.write_text(render.STUDY_SCHEMA + "\n"
                 "study,graph_id,n,s,metric,reference,margin,sector,pass\n")
    points = render.load_gap_points(p)
    assert points == []
    fig, ax = render.render_gap(points)
    assert len(np.asarray(ax.collections[0].get_offsets())) == 0
    assert len(ax.lines) == 1  # the reference curve is still there


def test_fit_overlay_is_the_fixed_curve(tmp_path):
    fig, ax = render.render_gap([(0.5, 0.75)], fit_overlay=True)
    assert len(ax.lines) == 2
    fit = ax.lines[1]
    x = np.asarray(fit.get_xdata())
    assert np.allclose(fit.get_ydata(), 3.03 * x * (1.0 - x) ** 0.609)


def test_schema_mismatch_and_missing_columns(tmp_path):
    wrong = tmp_path / "wrong.csv"
    wrong.write_text(render.ROOTS_SCHEMA + "\n"
                     "study,graph_id,n,s,re,im,modulus,reference\n")
    with pytest.raises(ValueError, match="schema mismatch"):
        render.load_gap_points(wrong)
    res = subprocess.run(
        [sys.executable, render.__file__, "--kind", "gap-scatter",
         "--in", str(wrong), "--out", str(tmp_path / "x.png")],
        capture_output=True, text=True)
    assert res.returncode == 2
    assert "schema mismatch" in res.stderr
    assert not (tmp_path / "x.png").exists()

    bad = tmp_path / "bad.csv"
    bad.write_text(render.STUDY_SCHEMA + "\nstudy,graph_id,n\n")
    with pytest.raises(ValueError, match="missing columns"):
        render.load_gap_points(bad)

    with pytest.raises(OSError):
        render.load_root_points(tmp_path / "absent.csv")
