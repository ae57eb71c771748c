"""Command-line front end: file formats, reports, exit codes, determinism."""

import json
import subprocess
import sys

import numpy as np
import pytest

from eigenpert.cli import dumps_stable, read_matrix

SWAP = [[0.0, 1.0], [1.0, 0.0]]


def write_json_matrix(path, data):
    rows = len(data)
    cols = len(data[0])
    path.write_text(json.dumps({"rows": rows, "cols": cols, "data": data}))
    return str(path)


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "eigenpert", *args], capture_output=True, text=True
    )


@pytest.fixture
def golden(tmp_path):
    a0 = write_json_matrix(tmp_path / "a0.json", [[1.0, 0.0], [0.0, 2.0]])
    a1 = write_json_matrix(tmp_path / "a1.json", SWAP)
    return a0, a1


class TestMatrixInput:
    def test_json_with_complex_entries(self, tmp_path):
        path = write_json_matrix(tmp_path / "m.json", [[1.0, [0.0, 1.0]], [3, 4.5]])
        M = read_matrix(path)
        np.testing.assert_array_equal(M, [[1.0, 1.0j], [3.0, 4.5]])

    def test_csv(self, tmp_path):
        p = tmp_path / "m.csv"
        p.write_text("1.0,2.0\n3.0,4.0\n")
        np.testing.assert_array_equal(read_matrix(p), [[1.0, 2.0], [3.0, 4.0]])

    def test_format_flag_overrides_extension(self, tmp_path):
        p = tmp_path / "m.dat"
        p.write_text("1.0,2.0\n3.0,4.0\n")
        np.testing.assert_array_equal(read_matrix(p, "csv"), [[1.0, 2.0], [3.0, 4.0]])

    def test_bad_entry_rejected(self, tmp_path):
        p = tmp_path / "m.json"
        p.write_text('{"rows": 1, "cols": 1, "data": [["x"]]}')
        with pytest.raises(ValueError):
            read_matrix(p)

    def test_ragged_rows_rejected(self, tmp_path):
        p = tmp_path / "m.json"
        p.write_text('{"rows": 2, "cols": 2, "data": [[1, 2], [3]]}')
        with pytest.raises(ValueError):
            read_matrix(p)


class TestStableSerialization:
    def test_17_significant_digits(self):
        assert dumps_stable({"x": 0.1}) == '{"x": 0.10000000000000001}'
        assert dumps_stable([1, True, None, "s"]) == '[1, true, null, "s"]'

    def test_round_trip_exact(self):
        values = [0.1, 1 / 3, np.pi, 1e-300, -2.5e17]
        text = dumps_stable(values)
        assert json.loads(text) == values

    def test_reserialization_is_identity(self):
        doc = {"a": [0.1, [1 / 3, -7.25]], "b": {"c": 2.0}}
        text = dumps_stable(doc)
        assert dumps_stable(json.loads(text)) == text


class TestExpandCommand:
    def test_golden_report(self, golden, tmp_path):
        a0, a1 = golden
        out = tmp_path / "report.json"
        proc = run_cli("expand", a0, a1, "--order", "2", "--out", str(out))
        assert proc.returncode == 0, proc.stderr
        doc = json.loads(out.read_text())
        assert doc["order"] == 2
        assert doc["normalization"] == "W0*V0=I; Diag(W0*Vk)=0 for k>=1"
        lam2 = doc["eigenvalues"][2]
        np.testing.assert_allclose(lam2, [[-1.0, 0.0], [1.0, 0.0]], atol=1e-12)
        assert doc["clusters"] == [[0], [1]]
        assert doc["rotated"] == [False, False]

    def test_stdout_when_no_out(self, golden):
        a0, a1 = golden
        proc = run_cli("expand", a0, a1, "--order", "1")
        assert proc.returncode == 0
        doc = json.loads(proc.stdout)
        assert doc["order"] == 1

    def test_deterministic_output(self, golden, tmp_path):
        a0, a1 = golden
        outs = []
        for name in ("r1.json", "r2.json"):
            out = tmp_path / name
            proc = run_cli("expand", a0, a1, "--order", "3", "--out", str(out))
            assert proc.returncode == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_report_reserializes_byte_identically(self, golden, tmp_path):
        a0, a1 = golden
        out = tmp_path / "report.json"
        run_cli("expand", a0, a1, "--order", "2", "--out", str(out))
        text = out.read_text()
        assert dumps_stable(json.loads(text)) + "\n" == text

    def test_order_zero_is_usage_error(self, golden):
        a0, a1 = golden
        proc = run_cli("expand", a0, a1, "--order", "0")
        assert proc.returncode == 2
        assert proc.stderr

    def test_shape_mismatch_exit_2(self, golden, tmp_path):
        a0, _ = golden
        bad = write_json_matrix(tmp_path / "bad.json", [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
        assert run_cli("expand", a0, bad, "--order", "1").returncode == 2

    def test_non_square_exit_2(self, golden, tmp_path):
        a0, _ = golden
        bad = write_json_matrix(tmp_path / "bad.json", [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
        assert run_cli("expand", a0, bad, "--order", "1").returncode == 2

    def test_unparseable_json_exit_2(self, golden, tmp_path):
        a0, _ = golden
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert run_cli("expand", a0, str(bad), "--order", "1").returncode == 2

    def test_jordan_block_exit_3(self, tmp_path):
        a0 = write_json_matrix(tmp_path / "a0.json", [[1.0, 1.0], [0.0, 1.0]])
        a1 = write_json_matrix(tmp_path / "a1.json", SWAP)
        proc = run_cli("expand", a0, a1, "--order", "1")
        assert proc.returncode == 3
        assert "semi-simple" in proc.stderr

    def test_nested_degeneracy_exit_4(self, tmp_path):
        a0 = write_json_matrix(tmp_path / "a0.json", [[1.0, 0, 0], [0, 1.0, 0], [0, 0, 2.0]])
        a1 = write_json_matrix(tmp_path / "a1.json", [[1.0, 0, 0], [0, 1.0, 0], [0, 0, 5.0]])
        proc = run_cli("expand", a0, a1, "--order", "1")
        assert proc.returncode == 4
        assert "degeneracy" in proc.stderr


class TestSylvesterCommand:
    def test_solve_golden(self, tmp_path):
        a = write_json_matrix(tmp_path / "a.json", [[1.0, 0.0], [0.0, 2.0]])
        b = write_json_matrix(tmp_path / "b.json", [[3.0, 0.0], [0.0, 4.0]])
        q = write_json_matrix(tmp_path / "q.json", [[1.0, 1.0], [1.0, 1.0]])
        out = tmp_path / "x.json"
        proc = run_cli("sylvester", a, b, q, "--mode", "solve", "--out", str(out))
        assert proc.returncode == 0, proc.stderr
        doc = json.loads(out.read_text())
        X = np.array([[complex(re, im) for re, im in row] for row in doc["X"]])
        np.testing.assert_allclose(X, [[0.25, 0.2], [0.2, 1 / 6]], atol=1e-12)
        assert doc["residual"] <= 1e-12
        assert doc["solvable"] is True

    def test_zero_rhs(self, tmp_path):
        a = write_json_matrix(tmp_path / "a.json", [[1.0, 0.0], [0.0, 2.0]])
        b = write_json_matrix(tmp_path / "b.json", [[3.0, 0.0], [0.0, 4.0]])
        q = write_json_matrix(tmp_path / "q.json", [[0.0, 0.0], [0.0, 0.0]])
        proc = run_cli("sylvester", a, b, q)
        doc = json.loads(proc.stdout)
        assert np.max(np.abs(doc["X"])) == 0.0

    def test_singular_solve_exit_3(self, tmp_path):
        a = write_json_matrix(tmp_path / "a.json", [[1.0, 0.0], [0.0, -1.0]])
        b = write_json_matrix(tmp_path / "b.json", [[1.0, 0.0], [0.0, -1.0]])
        q = write_json_matrix(tmp_path / "q.json", [[1.0, 1.0], [1.0, 1.0]])
        proc = run_cli("sylvester", a, b, q, "--mode", "solve")
        assert proc.returncode == 3
        assert "singular" in proc.stderr

    def test_pseudo_reports_unsolvable_with_exit_0(self, tmp_path):
        a = write_json_matrix(tmp_path / "a.json", [[1.0, 0.0], [0.0, 2.0]])
        b = write_json_matrix(tmp_path / "b.json", [[-1.0, 0.0], [0.0, -2.0]])
        q = write_json_matrix(tmp_path / "q.json", [[1.0, 0.0], [0.0, 1.0]])
        proc = run_cli("sylvester", a, b, q, "--mode", "pseudo")
        assert proc.returncode == 0
        doc = json.loads(proc.stdout)
        assert doc["solvable"] is False
        assert len(doc["violated_positions"]) == 2


class TestValidateCommand:
    def test_golden_passes_with_curves(self, golden, tmp_path):
        a0, a1 = golden
        out = tmp_path / "report.json"
        proc = run_cli("validate", a0, a1, "--order", "1", "--out", str(out))
        assert proc.returncode == 0, proc.stderr
        doc = json.loads(out.read_text())
        assert doc["pass"] is True
        assert 1.9 <= doc["fitted_slope_lambda"] <= 2.3
        csv_path = tmp_path / "report.csv"
        lines = csv_path.read_text().splitlines()
        assert lines[0] == "eps,lambda_error,vector_error"
        assert len(lines) == 9  # header + 8 grid points

    def test_exact_case_flagged(self, tmp_path):
        a0 = write_json_matrix(tmp_path / "a0.json", [[1.0, 0.0], [0.0, 1.0]])
        a1 = write_json_matrix(tmp_path / "a1.json", SWAP)
        proc = run_cli("validate", a0, a1, "--order", "1")
        assert proc.returncode == 0
        doc = json.loads(proc.stdout)
        assert doc["fitted_slope_lambda"] == "exact"

    def test_out_of_regime_grid_fails(self, golden):
        a0, a1 = golden
        proc = run_cli(
            "validate", a0, a1, "--order", "1", "--eps-min", "1e-3",
            "--eps-max", "10", "--points", "8",
        )
        assert proc.returncode in (5, 6)

    def test_bad_eps_range_exit_2(self, golden):
        a0, a1 = golden
        proc = run_cli("validate", a0, a1, "--order", "1", "--eps-min", "1.0",
                       "--eps-max", "0.5")
        assert proc.returncode == 2
