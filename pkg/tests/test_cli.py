import csv
import json

import pytest

from heatpade.cli import main

DISK = '{"kind":"disk","R":1.0}'
ELLIPSE = '{"kind":"ellipse","b":1.0,"eps":0.5}'


def read_csv(path):
    comments, rows = [], []
    with open(path) as fh:
        for line in fh:
            if line.startswith("#"):
                comments.append(line.strip())
            else:
                rows.append(line)
    parsed = list(csv.reader(rows))
    return comments, parsed[0], parsed[1:]


class TestCoeffs:
    def test_disk(self, tmp_path):
        out = tmp_path / "coeffs.csv"
        assert main(["coeffs", "--shape", DISK, "--j-max", "7", "--out", str(out)]) == 0
        comments, header, rows = read_csv(out)
        assert header == ["j", "sigma_curvature", "sigma_exact"]
        assert len(rows) == 7
        assert float(rows[1][1]) == pytest.approx(1.0, abs=1e-12)
        assert rows[6][2] == ""  # no exact coefficient beyond order 6
        assert any("version=" in c for c in comments)


class TestSurvivalAndTau:
    def test_survival_exact_disk(self, tmp_path):
        out = tmp_path / "s.csv"
        assert main(["survival", "--shape", DISK, "--times", "0,0.01,0.1", "--out", str(out)]) == 0
        _, header, rows = read_csv(out)
        assert header == ["t", "S"]
        assert float(rows[0][1]) == 1.0
        assert float(rows[2][1]) == pytest.approx(0.394176, abs=1e-5)

    def test_survival_expansion_ellipse(self, tmp_path):
        out = tmp_path / "s.csv"
        assert main(["survival", "--shape", ELLIPSE, "--times", "0.01", "--out", str(out)]) == 0
        _, _, rows = read_csv(out)
        assert 0.0 < float(rows[0][1]) < 1.0

    def test_exact_method_requires_disk(self):
        code = main(["survival", "--shape", ELLIPSE, "--times", "0.01", "--method", "exact"])
        assert code == 2

    def test_tau_exact_disk(self, tmp_path):
        out = tmp_path / "tau.csv"
        assert main(["tau", "--shape", DISK, "--s", "1,2", "--out", str(out)]) == 0
        _, header, rows = read_csv(out)
        assert header == ["s", "tau"]
        assert float(rows[0][1]) > float(rows[1][1]) > 0.0

    def test_tau_rejects_nonpositive_s(self):
        assert main(["tau", "--shape", DISK, "--s", "0,1"]) == 2


class TestPadeAndLambda1:
    def test_pade_solution_json(self, tmp_path):
        out = tmp_path / "sol.json"
        code = main(["pade", "--shape", DISK, "--n", "1", "--multistarts", "60", "--out", str(out)])
        assert code == 0
        doc = json.loads(out.read_text())
        sol = doc["solution"]
        assert doc["manifest"]["subcommand"] == "pade"
        assert sol["d"]["d0"] == pytest.approx(0.1743, rel=1e-2)
        assert sol["closest_pole"][1] == pytest.approx(1.756, rel=1e-2)
        assert len(sol["poles"]) == 3

    def test_lambda1_ladder(self, tmp_path):
        out = tmp_path / "lam.csv"
        code = main(
            ["lambda1", "--shape", DISK, "--n-max", "2", "--multistarts", "60", "--out", str(out)]
        )
        assert code == 0
        _, header, rows = read_csv(out)
        assert header == ["n", "im_s", "re_s", "lambda1"]
        ims = [float(r[1]) for r in rows]
        assert ims == pytest.approx([1.756, 1.940], rel=1e-2)
        assert all(float(r[3]) == pytest.approx(float(r[1]) ** 2, rel=1e-12) for r in rows)


class TestSweep:
    def test_eps_zero_matches_disk(self, tmp_path):
        sweep_out = tmp_path / "sweep.csv"
        lam_out = tmp_path / "lam.csv"
        assert (
            main(
                ["sweep", "--eps", "0", "--n", "2", "--multistarts", "60", "--out", str(sweep_out)]
            )
            == 0
        )
        assert (
            main(
                [
                    "lambda1",
                    "--shape",
                    DISK,
                    "--n-max",
                    "2",
                    "--multistarts",
                    "60",
                    "--out",
                    str(lam_out),
                ]
            )
            == 0
        )
        _, _, sweep_rows = read_csv(sweep_out)
        _, _, lam_rows = read_csv(lam_out)
        assert float(sweep_rows[0][2]) == pytest.approx(float(lam_rows[-1][3]), rel=1e-9)

    def test_rows_sorted(self, tmp_path, monkeypatch):
        monkeypatch.setenv("HEATPADE_THREADS", "1")
        out = tmp_path / "sweep.csv"
        code = main(
            ["sweep", "--eps", "0.3,0.1", "--n", "2,1", "--multistarts", "60", "--out", str(out)]
        )
        assert code == 0
        _, _, rows = read_csv(out)
        keys = [(float(r[0]), int(r[1])) for r in rows]
        assert keys == sorted(keys)
        assert len(keys) == 4

    def test_savo_order_cap_is_numeric_error(self, capsys):
        code = main(["sweep", "--eps", "0.1", "--n", "5", "--mode", "savo"])
        assert code == 1
        record = json.loads(capsys.readouterr().err)
        assert record["error"] == "UnsupportedOrder"

    def test_bad_eps_is_usage_error(self):
        assert main(["sweep", "--eps", "1.5", "--n", "2"]) == 2


class TestTable1:
    def test_first_row(self, tmp_path):
        out = tmp_path / "t1.csv"
        assert main(["table1", "--n-max", "1", "--multistarts", "60", "--out", str(out)]) == 0
        _, header, rows = read_csv(out)
        assert header == ["pade", "d0", "d2", "d4", "d6", "im_s"]
        assert rows[0][0] == "[1/3]"
        got = [float(v) for v in rows[0][1:]]
        ref = [0.1743, -0.07472, 0.008383, -0.00004709, 1.756]
        for g, r in zip(got, ref):
            assert g == pytest.approx(r, rel=1e-2)
        assert rows[-1][0] == "exact"
        assert float(rows[-1][5]) == pytest.approx(2.404826, abs=1e-5)


class TestMcCommand:
    def test_runs_and_is_deterministic(self, tmp_path):
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        argv = [
            "mc",
            "--shape",
            DISK,
            "--walkers",
            "200",
            "--dt",
            "1e-3",
            "--times",
            "0.05,0.1",
            "--seed",
            "1",
        ]
        assert main(argv + ["--out", str(out1)]) == 0
        assert main(argv + ["--out", str(out2)]) == 0
        assert out1.read_text() == out2.read_text()
        _, header, rows = read_csv(out1)
        assert header == ["t", "S_hat", "stderr"]
        assert float(rows[0][1]) >= float(rows[1][1])


class TestUsage:
    def test_unknown_subcommand_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_bad_shape_is_usage_error(self):
        assert main(["coeffs", "--shape", '{"kind":"pentagon"}']) == 2
