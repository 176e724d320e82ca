"""Config parsing, CLI subcommands, sweeps, determinism of artifacts."""

import math

import numpy as np
import pytest

from piezobeam import (
    DuplicateKey,
    MalformedValue,
    MissingKey,
    NonPositiveParameter,
    derive_constants,
    parse_config,
    run_sweep,
)
from piezobeam.cli import run
from piezobeam.config import RunConfig, load_config
from piezobeam.csvio import read_csv, write_csv

MINIMAL = """\
# unit beam
rho = 1
alpha1 = 1
beta = 1
gamma = 1
mu = 1
length = 1
thickness = 1
"""

HALF = MINIMAL.replace("gamma = 1", f"gamma = {math.sqrt(0.5)!r}")


@pytest.fixture
def half_cfg(tmp_path):
    path = tmp_path / "half.cfg"
    path.write_text(HALF)
    return path


class TestParseConfig:
    def test_minimal_defaults(self):
        cfg = parse_config(MINIMAL)
        assert cfg.params.rho == 1.0 and cfg.params.thickness == 1.0
        assert cfg.J == 64 and cfg.n == 2048
        assert cfg.cfl == 0.9 and cfg.qmax == 10_000
        assert cfg.tol == 1e-9 and cfg.seed == 42
        assert cfg.k == 0.5  # 1/(2*thickness)
        dc = derive_constants(cfg.params)
        assert dc.zeta1 == pytest.approx((1 + math.sqrt(5)) / 2)

    def test_missing_key(self):
        text = "\n".join(l for l in MINIMAL.splitlines() if not l.startswith("mu"))
        with pytest.raises(MissingKey, match="mu"):
            parse_config(text)

    def test_zero_gamma_rejected(self):
        with pytest.raises(NonPositiveParameter, match="gamma"):
            parse_config(MINIMAL.replace("gamma = 1", "gamma = 0"))

    def test_duplicate_key(self):
        with pytest.raises(DuplicateKey, match="rho"):
            parse_config(MINIMAL + "rho = 2\n")

    def test_malformed_value(self):
        with pytest.raises(MalformedValue, match="line 2"):
            parse_config(MINIMAL.replace("rho = 1", "rho = one"))

    def test_unknown_key_rejected(self):
        with pytest.raises(MalformedValue, match="voltage"):
            parse_config(MINIMAL + "voltage = 3\n")

    def test_option_overrides(self):
        cfg = parse_config(MINIMAL + "J = 16\nN = 128\nk = 0.25\ntol = 1e-6\n")
        assert cfg.J == 16 and cfg.n == 128 and cfg.k == 0.25 and cfg.tol == 1e-6

    def test_non_integer_rejected(self):
        with pytest.raises(MalformedValue, match="J"):
            parse_config(MINIMAL + "J = 2.5\n")


class TestCommands:
    def test_classify_summary_line(self, half_cfg, capsys):
        assert run(["classify", "--config", str(half_cfg)]) == 0
        out = capsys.readouterr().out.strip()
        assert out.startswith("EXPONENTIALLY_STABLE p=1 q=2")
        assert "gap=1.1107" in out and "Tmin=5.657" in out

    def test_constants_roundtrip_full_precision(self, half_cfg, tmp_path, capsys):
        out_csv = tmp_path / "constants.csv"
        assert run(["constants", "--config", str(half_cfg), "--out", str(out_csv)]) == 0
        header, rows = read_csv(out_csv)
        assert header == ["alpha", "zeta1", "zeta2", "b1", "b2"]
        dc = derive_constants(load_config(str(half_cfg)).params)
        parsed = [float(v) for v in rows[0]]
        assert parsed == [dc.alpha, dc.zeta1, dc.zeta2, dc.b1, dc.b2]

    def test_spectrum_row_count(self, half_cfg, tmp_path, capsys):
        out_csv = tmp_path / "spectrum.csv"
        assert (
            run(["spectrum", "--config", str(half_cfg), "--jmax", "5", "--out", str(out_csv)])
            == 0
        )
        header, rows = read_csv(out_csv)
        assert header == ["family", "sign", "j", "im_lambda"]
        assert len(rows) == 20  # 4 branches per j

    def test_simulate_oddpair_barely_decays(self, tmp_path, capsys):
        cfg = tmp_path / "third.cfg"
        cfg.write_text(MINIMAL.replace("gamma = 1", f"gamma = {2 / math.sqrt(3)!r}"))
        out_csv = tmp_path / "traj.csv"
        code = run(
            [
                "simulate",
                "--config",
                str(cfg),
                "--mode",
                "closed",
                "--N",
                "256",
                "--T",
                "10",
                "--initial",
                "oddpair:1,3",
                "--out",
                str(out_csv),
            ]
        )
        assert code == 0
        summary = capsys.readouterr().out
        rate = float(summary.split("decay_rate=")[1].split()[0])
        assert abs(rate) < 1e-3
        header, rows = read_csv(out_csv)
        assert header == ["time", "energy", "y"]
        assert len(rows) > 10

    def test_transfer_csv_schema(self, half_cfg, tmp_path, capsys):
        out_csv = tmp_path / "freq.csv"
        code = run(
            ["transfer", "--config", str(half_cfg), "--s1", "1.0", "--im-max", "10",
             "--n-points", "51", "--out", str(out_csv)]
        )
        assert code == 0
        header, rows = read_csv(out_csv)
        assert header == ["re_s", "im_s", "re_G", "im_G", "abs_G"]
        assert len(rows) == 51

    def test_observability_csv(self, tmp_path, capsys):
        cfg = tmp_path / "golden.cfg"
        cfg.write_text(MINIMAL)
        out_csv = tmp_path / "obs.csv"
        code = run(
            ["observability", "--config", str(cfg), "--count", "3", "--T", "10",
             "--out", str(out_csv)]
        )
        assert code == 0
        header, rows = read_csv(out_csv)
        assert header == ["p", "q", "err", "quotient"]
        assert [(int(r[0]), int(r[1])) for r in rows] == [(1, 3), (5, 13), (21, 55)]
        quotients = [float(r[3]) for r in rows]
        assert quotients[0] > quotients[1] > quotients[2]

    def test_snapshot_roundtrip_as_initial_data(self, half_cfg, tmp_path, capsys):
        """Snapshots written by one run can seed another through file: initial data."""
        snap_dir = tmp_path / "snaps"
        args = ["simulate", "--config", str(half_cfg), "--mode", "closed",
                "--N", "128", "--T", "0.5", "--initial", "sine:1",
                "--out", str(tmp_path / "a.csv"), "--snapshots", str(snap_dir)]
        assert run(args) == 0
        header, rows = read_csv(snap_dir / "index.csv")
        assert header == ["index", "time", "file"]
        assert len(rows) >= 1
        state_file = snap_dir / rows[-1][2]
        header, _ = read_csv(state_file)
        assert header == ["x", "v", "p", "vdot", "pdot"]
        code = run(
            ["simulate", "--config", str(half_cfg), "--mode", "closed", "--N", "128",
             "--T", "0.5", "--initial", f"file:{state_file}",
             "--out", str(tmp_path / "b.csv")]
        )
        assert code == 0

    def test_exit_code_validation_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.cfg"
        bad.write_text(MINIMAL.replace("gamma = 1", "gamma = -1"))
        assert run(["classify", "--config", str(bad)]) == 2
        assert "NonPositiveParameter" in capsys.readouterr().err

    def test_exit_code_missing_file(self, tmp_path, capsys):
        assert run(["classify", "--config", str(tmp_path / "absent.cfg")]) == 2

    def test_exit_code_numerical_failure(self, half_cfg, capsys, monkeypatch):
        from piezobeam import cli
        from piezobeam.errors import PoleProximity

        def explode(args, cfg):
            raise PoleProximity("synthetic")

        monkeypatch.setitem(cli._COMMANDS, "constants", explode)
        assert run(["constants", "--config", str(half_cfg)]) == 3
        assert "PoleProximity" in capsys.readouterr().err


class TestSweeps:
    def test_zeta_ratio_sweep_matches_serial(self, tmp_path):
        cfg = parse_config(MINIMAL)
        values = list(np.linspace(0.2, 2.0, 16))
        rows = run_sweep(cfg, "gamma", values, "zeta_ratio")
        assert [r[0] for r in rows] == values
        ratios = [r[1] for r in rows]
        assert all(e == "" for _, _, e in rows)
        for value, ratio in zip(values, ratios):
            from dataclasses import replace

            dc = derive_constants(replace(cfg.params, gamma=value))
            assert ratio == dc.ratio
        assert all(b < a for a, b in zip(ratios, ratios[1:]))  # coupling splits speeds

    def test_single_value_equals_single_run(self):
        cfg = parse_config(MINIMAL)
        row = run_sweep(cfg, "gamma", [1.0], "zeta_ratio")[0]
        assert row[1] == derive_constants(cfg.params).ratio

    def test_error_isolation(self):
        cfg = parse_config(MINIMAL)
        rows = run_sweep(cfg, "gamma", [0.5, 0.0, 1.5], "zeta_ratio")
        assert rows[0][2] == "" and rows[2][2] == ""
        assert math.isnan(rows[1][1]) and "DegenerateCoupling" in rows[1][2]

    def test_byte_identical_artifacts(self, tmp_path):
        cfg = parse_config(MINIMAL)
        values = list(np.linspace(0.3, 1.8, 12))
        paths = []
        for i in range(2):
            rows = run_sweep(cfg, "gamma", values, "zeta_ratio", workers=4)
            path = tmp_path / f"sweep_{i}.csv"
            write_csv(path, ["value", "metric", "error"], rows)
            paths.append(path)
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_cli_sweep_command(self, half_cfg, tmp_path, capsys):
        out_csv = tmp_path / "sweep.csv"
        code = run(
            ["sweep", "--config", str(half_cfg), "--param", "gamma",
             "--values", "0.5,0.7,0.9", "--metric", "zeta_ratio", "--out", str(out_csv)]
        )
        assert code == 0
        header, rows = read_csv(out_csv)
        assert header == ["value", "metric", "error"]
        assert len(rows) == 3
