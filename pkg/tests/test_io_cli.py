"""File emission and the command-line interface, including exit codes."""

import json
import math

import numpy as np
import pytest

import epsqueeze as ep
from epsqueeze import io
from epsqueeze.cli import main, parse_angle, parse_grid


def read_table(text: str):
    """Parse the canonical CSV layout: # meta lines, header, data rows."""
    meta = {}
    rows = []
    header = None
    for line in text.splitlines():
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].partition("=")
            meta[key.strip()] = value.strip()
            continue
        if header is None:
            header = line.split(",")
            continue
        rows.append(line.split(","))
    columns = {}
    for j, name in enumerate(header):
        raw = [row[j] for row in rows]
        if raw and raw[0] in ("true", "false"):
            columns[name] = np.array([cell == "true" for cell in raw])
        else:
            columns[name] = np.array(
                [float(cell) if cell else math.nan for cell in raw]
            )
    return meta, columns


class TestEmission:
    def test_csv_round_trip(self, tmp_path):
        path = tmp_path / "table.csv"
        io.write_csv(
            str(path),
            {"alpha": "1", "note": "two words"},
            [("x", [1.0, 2.5]), ("ok", [True, False]), ("y", [0.1, math.nan])],
        )
        meta, columns = read_table(path.read_text())
        assert meta == {"alpha": "1", "note": "two words"}
        assert columns["x"] == pytest.approx([1.0, 2.5])
        assert list(columns["ok"]) == [True, False]
        assert columns["y"][0] == pytest.approx(0.1)
        assert math.isnan(columns["y"][1])

    def test_ragged_columns_rejected(self, tmp_path):
        with pytest.raises(ep.ConfigError):
            io.write_csv(str(tmp_path / "bad.csv"), {}, [("x", [1.0]), ("y", [1.0, 2.0])])

    def test_json_mirror(self, tmp_path):
        path = tmp_path / "table.json"
        io.write_json(
            str(path),
            {"alpha": "1"},
            [("x", [1.0, math.nan]), ("ok", [True, False])],
        )
        payload = json.loads(path.read_text())
        assert payload["meta"] == {"alpha": "1"}
        assert payload["columns"]["x"] == [1.0, None]
        assert payload["columns"]["ok"] == [True, False]

    def test_fingerprint_tracks_params(self, fig2a_params):
        base = io.params_fingerprint(fig2a_params)
        assert base == io.params_fingerprint(fig2a_params)
        assert len(base) == 12
        changed = ep.set_param(fig2a_params, "couplings.g_ad", 21.0)
        assert io.params_fingerprint(changed) != base

    def test_metadata_has_exact_params(self, fig2a_params):
        meta = io.params_metadata(fig2a_params)
        assert float(meta["params.omega_b_rad_s"]) == fig2a_params.omega_b
        assert meta["params.detuning_mode"] == "effective"
        assert meta["params.drive_mode"] == "target_gdb"

    def test_spectrum_plot_is_deterministic_svg(self, fig2a_system, fig2a_params, tmp_path):
        grid = ep.default_omega_grid(fig2a_params.omega_b, num=101)
        spectrum = ep.quadrature_spectrum(fig2a_system, grid, 0.75 * math.pi)
        a, b = tmp_path / "a.svg", tmp_path / "b.svg"
        io.save_spectrum_plot(str(a), spectrum, fig2a_params.omega_b)
        io.save_spectrum_plot(str(b), spectrum, fig2a_params.omega_b)
        blob = a.read_bytes()
        assert blob.startswith(b"<?xml")
        assert blob == b.read_bytes()


class TestCliSmoke:
    def test_presets_lists_everything(self, capsys):
        assert main(["presets"]) == 0
        out = capsys.readouterr().out
        for name in ("fig2a", "fig3c-gad8", "fig2d", "fig4d-inset"):
            assert name in out

    def test_steady_state_defaults(self, capsys):
        assert main(["steady-state"]) == 0
        out = capsys.readouterr().out
        report = {}
        for line in out.splitlines():
            key, _, value = line.partition(" = ")
            report[key] = float(value)
        assert report["photon_number"] == pytest.approx(3700.0, rel=1e-6)
        assert report["exciton_number"] == pytest.approx(40000.0, rel=1e-6)
        assert report["C"] == pytest.approx(32000.0, rel=1e-6)
        assert report["Omega_over_2pi_THz"] == pytest.approx(4.028, rel=1e-3)
        assert report["power_mW"] == pytest.approx(0.675, rel=1e-2)

    def test_steady_state_zero_power(self, capsys):
        assert main(["steady-state", "--set", "drive.power=0"]) == 0
        out = capsys.readouterr().out
        report = dict(
            (line.partition(" = ")[0], float(line.partition(" = ")[2]))
            for line in out.splitlines()
        )
        assert report["photon_number"] == 0.0
        assert report["exciton_number"] == 0.0
        assert report["C"] == 0.0

    def test_optimize_phase_single_point(self, capsys):
        assert main(["optimize-phase", "--omega", "0.906"]) == 0
        out = capsys.readouterr().out
        assert "phi_star = 0.717295 pi" in out
        assert "S_min = 0.1011680282" in out
        assert "squeezing = 6.93927 dB" in out

    def test_optimize_phase_scan(self, capsys):
        assert main(["optimize-phase", "--grid", "0:2:1001"]) == 0
        out = capsys.readouterr().out
        assert "best: 6.93" in out
        assert "omega/omega_b = 0.906" in out


class TestCliSpectrum:
    def test_csv_file_output(self, tmp_path):
        out = tmp_path / "spec.csv"
        code = main([
            "spectrum", "--phi", "0.75pi", "--grid=-2:2:401", "--out", str(out),
        ])
        assert code == 0
        meta, columns = read_table(out.read_text())
        assert meta["command"] == "spectrum"
        assert meta["params.fingerprint"]
        assert list(columns) == ["omega_over_omega_b", "S", "dB", "phi"]
        assert columns["omega_over_omega_b"].size == 401
        peak = columns["dB"].argmax()
        assert columns["dB"][peak] == pytest.approx(6.794, abs=0.05)
        assert abs(columns["omega_over_omega_b"][peak]) == pytest.approx(0.93, abs=0.02)
        assert np.all(columns["phi"] == 0.75 * math.pi)

    def test_stdout_vacuum_spectrum(self, capsys):
        # the preset drive targets |G_db|, unreachable at g_db = 0, so pin
        # a concrete amplitude; any value gives a passive system here
        code = main([
            "spectrum", "--set", "couplings.g_ab=0", "--set", "couplings.g_db=0",
            "--set", "drive.amplitude=4", "--grid", "0:2:21", "--phi", "0.3",
        ])
        assert code == 0
        _, columns = read_table(capsys.readouterr().out)
        assert columns["S"] == pytest.approx(np.full(21, 0.5), abs=1e-12)

    def test_json_format(self, tmp_path):
        out = tmp_path / "spec.json"
        code = main([
            "spectrum", "--grid", "0:1:11", "--format", "json", "--out", str(out),
        ])
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["meta"]["command"] == "spectrum"
        assert len(payload["columns"]["S"]) == 11
        assert all(isinstance(v, float) for v in payload["columns"]["S"])

    def test_json_stdout(self, capfd):
        code = main(["spectrum", "--grid", "0:1:5", "--format", "json"])
        assert code == 0
        payload = json.loads(capfd.readouterr().out)
        assert len(payload["columns"]["S"]) == 5

    def test_plot_written_next_to_csv(self, tmp_path, capsys):
        out = tmp_path / "spec.csv"
        code = main(["spectrum", "--grid", "0:2:51", "--out", str(out), "--plot"])
        assert code == 0
        svg = tmp_path / "spec.svg"
        assert svg.exists() and svg.read_bytes().startswith(b"<?xml")

    def test_rerun_is_byte_identical(self, tmp_path):
        paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
        for path in paths:
            assert main(["spectrum", "--grid", "0:2:51", "--out", str(path)]) == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()


class TestCliSweepAndFigure:
    def test_sweep_scalar_stdout(self, capsys):
        code = main([
            "sweep", "--axis", "couplings.g_ad=10,15,20", "--quantity", "cooperativity",
        ])
        assert code == 0
        _, columns = read_table(capsys.readouterr().out)
        axis_name = next(name for name in columns if name.startswith("couplings.g_ad"))
        assert columns[axis_name] == pytest.approx([10.0, 15.0, 20.0])
        params = ep.paper_preset("fig2a")
        expected = []
        for g in (10.0, 15.0, 20.0):
            point = ep.set_param(params, "couplings.g_ad", g)
            expected.append(ep.cooperativity(ep.operating_point(point), point))
        assert columns["C"] == pytest.approx(expected, rel=1e-10)

    def test_sweep_peak_db_grid(self, capsys):
        code = main([
            "sweep", "--axis", "couplings.g_ab=0,1", "--quantity", "peak_db",
            "--phi", "0.75pi", "--grid", "0:2:201",
        ])
        assert code == 0
        _, columns = read_table(capsys.readouterr().out)
        assert columns["peak_dB"].size == 2
        assert columns["stable"].all()

    def test_figure_fig3b_file(self, tmp_path, capsys):
        out = tmp_path / "f3b"
        assert main(["figure", "fig3b", "--out", str(out)]) == 0
        path = tmp_path / "f3b.csv"
        assert path.exists()
        meta, columns = read_table(path.read_text())
        assert meta["sweep.name"] == "fig3b"
        axis_name = next(name for name in columns if name.startswith("couplings.g_ad"))
        stable = columns["stable"]
        coop = np.where(stable, columns["C"], -np.inf)
        assert columns[axis_name][coop.argmax()] == pytest.approx(8.0, abs=0.5)

    def test_figure_fig4d_writes_inset_too(self, tmp_path, capsys):
        out = tmp_path / "f4d"
        assert main(["figure", "fig4d", "--out", str(out)]) == 0
        main_meta, _ = read_table((tmp_path / "f4d.csv").read_text())
        inset_meta, _ = read_table((tmp_path / "f4d-inset.csv").read_text())
        assert main_meta["sweep.name"] == "fig4d"
        assert inset_meta["sweep.name"] == "fig4d-inset"
        assert main_meta["params.g_ad_rad_s"] != inset_meta["params.g_ad_rad_s"]


class TestCliErrors:
    def test_unknown_set_key_lists_alternatives(self, capsys):
        assert main(["steady-state", "--set", "couplings.g_xy=1"]) == 2
        err = capsys.readouterr().err
        assert "couplings.g_ad" in err

    def test_phi_is_not_a_set_key(self, capsys):
        assert main(["spectrum", "--set", "phi=0.75"]) == 2
        assert "--phi" in capsys.readouterr().err

    def test_bad_angle(self, capsys):
        assert main(["spectrum", "--phi", "halfpie"]) == 2

    @pytest.mark.parametrize("grid", ["1:2", "0:2:0", "a:b:c"])
    def test_bad_grid(self, grid, capsys):
        assert main(["spectrum", "--grid", grid]) == 2

    def test_unstable_point_is_physics_error(self, capsys):
        assert main(["spectrum", "--set", "detuning.delta_d=0"]) == 3
        assert "physics error" in capsys.readouterr().err

    def test_unknown_preset(self, capsys):
        assert main(["spectrum", "--preset", "fig9"]) == 2
        assert "fig2a" in capsys.readouterr().err

    def test_plot_needs_out(self, capsys):
        assert main(["spectrum", "--grid", "0:1:5", "--plot"]) == 2

    def test_sweep_needs_axis(self, capsys):
        assert main(["sweep"]) == 2

    def test_sweep_axis_limit(self, capsys):
        args = ["sweep"]
        for axis in ("omega=0:1:5", "phi=0:1:5", "couplings.g_ad=10,20"):
            args += ["--axis", axis]
        assert main(args) == 2

    def test_unknown_figure(self, capsys):
        assert main(["figure", "fig9z"]) == 2
        assert "fig2a" in capsys.readouterr().err

    def test_argparse_rejects_unknown_format(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["spectrum", "--format", "yaml"])
        assert info.value.code == 2


class TestParsers:
    def test_parse_angle(self):
        assert parse_angle("optimal") == "optimal"
        assert parse_angle("0.75pi") == pytest.approx(0.75 * math.pi)
        assert parse_angle("pi") == pytest.approx(math.pi)
        assert parse_angle("-0.5 pi") == pytest.approx(-0.5 * math.pi)
        assert parse_angle("1.25") == pytest.approx(1.25)
        with pytest.raises(ep.ConfigError):
            parse_angle("twopi and a bit")

    def test_parse_grid(self):
        grid = parse_grid("-2:2:5", 10.0)
        assert grid == pytest.approx([-20.0, -10.0, 0.0, 10.0, 20.0])
        with pytest.raises(ep.ConfigError):
            parse_grid("0:1", 10.0)
        with pytest.raises(ep.ConfigError):
            parse_grid("0:1:0", 10.0)
