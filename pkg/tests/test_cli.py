"""End-to-end tests of the command-line interface via main(argv)."""
import csv
import io
import json
import math

import numpy as np
import pytest

from lytensor import Graph, StateTensor
from lytensor.cli import main


def save_state(tmp_path, name, n, amps):
    p = tmp_path / name
    StateTensor(n, amps).save(p)
    return str(p)


def run_json(capsys, argv):
    rc = main(argv)
    return rc, json.loads(capsys.readouterr().out)


class TestCheckLy:
    def test_not_falsified(self, tmp_path, capsys):
        p = save_state(tmp_path, "prod.json", 1, [1.0, 0.4])
        rc, out = run_json(capsys, [
            "check-ly", "--input", p, "--radius", "2.4", "--budget", "500", "--seed", "5",
        ])
        assert rc == 0
        assert out["kind"] == "NotFalsified"
        assert out["radii"] == [2.4]
        assert out["witness"] is None
        # origin only logs effort when it falsifies
        assert [e["strategy"] for e in out["effort"]] == [
            "sign-rays", "random-rays", "polydisk-samples",
        ]

    def test_falsified_with_witness(self, tmp_path, capsys):
        p = save_state(tmp_path, "prod.json", 1, [1.0, 0.4])
        rc, out = run_json(capsys, [
            "check-ly", "--input", p, "--radius", "2.6", "--budget", "500", "--seed", "5",
        ])
        assert rc == 0
        assert out["kind"] == "Falsified"
        z = complex(*out["witness"]["z"][0])
        assert abs(z) <= 2.6
        assert abs(1.0 + 0.4 * z) == pytest.approx(out["witness"]["abs_f"], abs=1e-12)

    def test_per_index_radii(self, tmp_path, capsys):
        p = save_state(tmp_path, "bell.json", 2, [1.0, 0.0, 0.0, 0.5])
        rc, out = run_json(capsys, [
            "check-ly", "--input", p, "--radius", "1.2,1.1", "--budget", "0", "--seed", "1",
        ])
        assert rc == 0 and out["radii"] == [1.2, 1.1]

    def test_deterministic_mode_needs_no_seed(self, tmp_path, capsys):
        p = save_state(tmp_path, "bell.json", 2, [1.0, 0.0, 0.0, 0.5])
        rc, out = run_json(capsys, ["check-ly", "--input", p, "--radius", "1.0", "--budget", "0"])
        assert rc == 0 and out["kind"] == "NotFalsified"

    def test_seed_required_with_budget(self, tmp_path):
        p = save_state(tmp_path, "bell.json", 2, [1.0, 0.0, 0.0, 0.5])
        with pytest.raises(ValueError, match="seed"):
            main(["check-ly", "--input", p, "--radius", "1.0"])


class TestRoots:
    def test_epr_pair_roots(self, tmp_path, capsys):
        p = save_state(tmp_path, "epr.json", 2, [1.0, 0.0, 0.0, 0.5])
        rc = main(["roots", "--input", p, "--y", "11"])
        assert rc == 0
        rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
        assert rows[0] == ["re", "im", "modulus", "residual"]
        assert len(rows) == 3
        moduli = sorted(float(r[2]) for r in rows[1:])
        assert moduli == pytest.approx([math.sqrt(2)] * 2)
        assert all(float(r[3]) < 1e-10 for r in rows[1:])

    def test_constant_poly_no_rows(self, tmp_path, capsys):
        p = save_state(tmp_path, "zero.json", 2, [1.0, 0.0, 0.0, 0.0])
        rc = main(["roots", "--input", p, "--y", "00"])
        rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
        assert rc == 0 and len(rows) == 1

    def test_zero_poly_no_rows(self, tmp_path, capsys):
        p = save_state(tmp_path, "psi+.json", 2, [0.0, 1.0, 1.0, 0.0])
        rc = main(["roots", "--input", p, "--y", "01"])
        rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
        assert rc == 0 and len(rows) == 1


class TestEstimateAmplitude:
    def test_basis_state(self, tmp_path, capsys):
        amps = np.zeros(8)
        amps[0] = 1.0
        p = save_state(tmp_path, "basis.json", 3, amps)
        rc, out = run_json(capsys, [
            "estimate-amplitude", "--input", p, "--y", "101",
            "--epsilon", "0.7", "--radius", "11.0",
        ])
        assert rc == 0
        assert out["value"][0] == pytest.approx(2.0**-1.5, rel=1e-12)
        assert out["value"][1] == pytest.approx(0.0, abs=1e-15)
        assert out["p"] == 0 and not out["exact_fallback"]
        assert out["bound"] <= 0.35

    def test_fallback_flagged(self, tmp_path, capsys):
        p = save_state(tmp_path, "epr.json", 2, [1.0, 0.0, 0.0, 0.3])
        rc, out = run_json(capsys, [
            "estimate-amplitude", "--input", p, "--y", "00",
            "--epsilon", "1e-9", "--radius", "1.2",
        ])
        assert rc == 0 and out["exact_fallback"] and out["bound"] == 0.0
        assert out["value"][0] == pytest.approx(0.65, rel=1e-12)


class TestGrPrep:
    def test_prepares_and_logs(self, tmp_path, capsys):
        amps = np.zeros(4)
        amps[0] = 1.0
        p = save_state(tmp_path, "basis.json", 2, amps)
        out_path = str(tmp_path / "prepared.json")
        log_path = str(tmp_path / "resources.csv")
        rc, out = run_json(capsys, [
            "gr-prep", "--input", p, "--epsilon", "0.5", "--radius", "4.0",
            "--out", out_path, "--log", log_path,
        ])
        assert rc == 0 and out["distance"] <= 1e-9 and out["out"] == out_path
        prepared = StateTensor.load(out_path)
        np.testing.assert_allclose(prepared.amplitudes, amps, atol=1e-9)
        with open(log_path) as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == [
            "stage", "level", "prefix", "order", "bound", "exact_fallback", "clamped", "value",
        ]
        assert len(rows) == 1 + 6 + 4  # header, marginals at levels 1-2, phases


class TestGap:
    def test_path3(self, tmp_path, capsys):
        gp = tmp_path / "path3.json"
        Graph.path(3).save(gp)
        rc, out = run_json(capsys, ["gap", "--graph", str(gp), "--s", "0.5"])
        assert rc == 0
        assert out["lambda1"] == pytest.approx(-2.25, abs=1e-12)
        assert out["gap"] == pytest.approx(0.75, abs=1e-12)
        assert out["lambda2_sector"] == "odd"
        assert out["parity_symmetric"] is True
        assert out["n_eigenvalues"] == 8
        assert out["residual"] <= out["degeneracy_tolerance"]

    def test_random_phases_need_seed(self, tmp_path):
        gp = tmp_path / "path3.json"
        Graph.path(3).save(gp)
        with pytest.raises(SystemExit):
            main(["gap", "--graph", str(gp), "--s", "0.5", "--phases", "random"])

    def test_random_phases_tree_gap_invariant(self, tmp_path, capsys):
        gp = tmp_path / "path3.json"
        Graph.path(3).save(gp)
        rc, out = run_json(capsys, [
            "gap", "--graph", str(gp), "--s", "0.5", "--phases", "random", "--seed", "3",
        ])
        assert rc == 0 and out["gap"] == pytest.approx(0.75, abs=1e-9)


class TestSixVertex:
    def test_single_edge(self, tmp_path, capsys):
        gp = tmp_path / "edge.json"
        Graph.path(2).save(gp)
        rc, out = run_json(capsys, [
            "sixvertex", "--graph", str(gp), "--d", "0", "--f", "0.5",
            "--beta", "1.0", "--steps", "1",
        ])
        assert rc == 0
        assert out["trotter_trace"] == pytest.approx(4.255251930412761, rel=1e-13)
        assert out["eulerian_sum"] == pytest.approx(out["trotter_trace"], rel=1e-12)
        assert out["params"]["b"] == pytest.approx(math.sinh(0.5), rel=1e-14)
        assert out["regime"] == "tractable"


class TestStudy:
    def test_gap_study_writes_and_passes(self, tmp_path, capsys):
        out_path = tmp_path / "gap.csv"
        rc = main([
            "study", "gap", "--n-min", "2", "--n-max", "3", "--family", "paths",
            "--samples", "4", "--out", str(out_path),
        ])
        assert rc == 0
        msg = capsys.readouterr().out
        assert "0 failing" in msg and str(out_path) in msg
        text = out_path.read_text()
        assert text.startswith("# lytensor-study-csv v1:")
        rows = text.strip().split("\n")
        # 4 single-edge rows + 4 path-3 rows + 4 xval rows (3-path is a star)
        assert len(rows) == 2 + 12

    def test_ly_radius_study_with_roots(self, tmp_path):
        out_path = tmp_path / "ly.csv"
        roots_path = tmp_path / "roots.csv"
        rc = main([
            "study", "ly-radius", "--n-min", "2", "--n-max", "2", "--family", "paths",
            "--samples", "2", "--seed", "7", "--out", str(out_path),
            "--roots-out", str(roots_path),
        ])
        assert rc == 0
        assert roots_path.read_text().startswith("# lytensor-roots-csv v1:")

    def test_phase_alias(self, tmp_path):
        out_path = tmp_path / "phase.csv"
        rc = main([
            "study", "phase", "--n-min", "3", "--n-max", "3", "--family", "cycles",
            "--samples", "2", "--seed", "4", "--out", str(out_path),
        ])
        assert rc == 0
        assert "phase-shifted" in out_path.read_text()

    def test_failing_rows_exit_nonzero(self, tmp_path, capsys):
        out_path = tmp_path / "fail.csv"
        rc = main([
            "study", "ly-radius", "--n-min", "15", "--n-max", "15", "--family", "paths",
            "--samples", "1", "--seed", "3", "--out", str(out_path),
        ])
        assert rc == 1
        assert "1 failing" in capsys.readouterr().out
        assert ",error," in out_path.read_text()


class TestParser:
    def test_requires_subcommand(self):
        with pytest.raises(SystemExit):
            main([])

    def test_unknown_subcommand(self):
        with pytest.raises(SystemExit):
            main(["frobnicate"])

    def test_bad_radius_string(self, tmp_path):
        p = save_state(tmp_path, "s.json", 1, [1.0, 0.0])
        with pytest.raises(ValueError):
            main(["check-ly", "--input", p, "--radius", "abc", "--budget", "0"])
