import json
import math
import os
import subprocess
import sys

import pytest

from mchasy.cli import (RunConfig, emit_config, main, parse_config, run_scan,
                        write_output)
from mchasy.errors import ConfigError
from mchasy import region3

MINIMAL = """
[scattering]
kappa_r = 0.0
"""

R1_SCAN = """
[scattering]
kappa_r = 0.0

[scan]
t = 1e6
s = -0.2:0.2:5
grid_region = 1

[output]
path = {path}
format = {fmt}
"""


class TestParse:
    def test_minimal_defaults(self):
        cfg = parse_config(MINIMAL)
        assert cfg.scattering["kappa_r"] == 0.0
        assert cfg.regions["c1"] == 1.0
        assert cfg.shock == {"p": 1.0, "q": 1.0}
        assert cfg.tolerances["abs_tol"] == 1e-12
        assert cfg.output["format"] == "csv"

    def test_validation_names_key(self):
        with pytest.raises(ConfigError, match="shock.p"):
            parse_config(MINIMAL + "\n[shock]\np = -1\n")

    def test_bad_spectrum_literal(self):
        with pytest.raises(ConfigError, match="spectrum"):
            parse_config(MINIMAL + "\nspectrum = [nonsense]\n")

    def test_spectrum_parsing(self):
        cfg = parse_config("[scattering]\nkappa_r = 0\n"
                           "spectrum = [0.5-0.8660254037844386i]\n")
        z = cfg.scattering["spectrum"][0]
        assert z == pytest.approx(0.5 - 0.8660254037844386j)

    def test_round_trip(self):
        text = R1_SCAN.format(path="-", fmt="csv") \
            + "\n[shock]\np = 2.5\nq = 0.5\n"
        cfg = parse_config(text)
        cfg2 = parse_config(emit_config(cfg))
        for sec in ("scattering", "regions", "shock", "scan", "tolerances", "output"):
            assert getattr(cfg, sec) == getattr(cfg2, sec)

    def test_strict_symmetry_failure(self, tmp_path):
        # a tabulated file with a broken inversion symmetry
        import numpy as np
        grid = np.geomspace(0.05, 20, 120)
        vals = 0.3 * np.exp(-np.log(grid) ** 2)
        vals[60] *= -1
        path = tmp_path / "r.csv"
        np.savetxt(path, np.column_stack([grid, vals, 0 * vals]), delimiter=",")
        text = "[scattering]\ntable_path = %s\n" % path
        cfg = parse_config(text)
        assert cfg.warnings
        with pytest.raises(ConfigError):
            parse_config(text, strict=True)


class TestScan:
    def test_flat_family_background(self):
        cfg = parse_config(R1_SCAN.format(path="-", fmt="csv"))
        rows = run_scan(cfg)
        assert len(rows) == 5
        assert all(r["u"] == 1.0 for r in rows)
        assert all(r["region"] == "I" for r in rows)

    def test_outside_rows_null(self):
        cfg = parse_config(MINIMAL + "\n[scan]\nt = 1e6\nxi = 0.5:0.6:2\n")
        rows = run_scan(cfg)
        assert all(r["region"] == "outside" and r["u"] is None for r in rows)

    def test_laziness_no_shock_geometry(self):
        region3.reset_geometry_counter()
        cfg = parse_config(R1_SCAN.format(path="-", fmt="csv"))
        run_scan(cfg)
        assert region3.geometry_build_count() == 0

    def test_deterministic_rows(self):
        cfg = parse_config(R1_SCAN.format(path="-", fmt="csv"))
        assert run_scan(cfg) == run_scan(cfg)

    def test_grid_straddles_zone_boundary(self):
        cfg = parse_config(MINIMAL + "\n[scan]\nt = 1e6\ns = 0:40:9\n")
        rows = run_scan(cfg)
        tags = {r["region"] for r in rows}
        assert "I" in tags and "outside" in tags
        for r in rows:
            if r["region"] == "outside":
                assert r["u"] is None and r["s"] is None

    def test_per_point_errors_recorded(self):
        # non-generic data scanned over the shock window: every point fails
        # admissibility but the scan keeps going
        cfg = parse_config("[scattering]\nkappa_r = 0.5\n"
                           "[scan]\nt = 1e6\nw = 3.0:3.4:2\n")
        rows = run_scan(cfg)
        assert all(r["u"] is None for r in rows)
        assert all("AdmissibilityError" in r["error"] for r in rows)


class TestWrite:
    def test_csv_single_row(self, tmp_path):
        path = tmp_path / "one.csv"
        write_output([{"x": 1.0, "t": 2.0, "region": "I", "s": 0.5,
                       "u": 1.25, "err_order": -0.5, "error": ""}],
                     "csv", str(path))
        lines = path.read_text().splitlines()
        assert len(lines) == 2
        assert lines[0] == "x,t,region,s,u,err_order,error"
        assert lines[1] == "1.0,2.0,I,0.5,1.25,-0.5,"

    def test_null_u_is_empty_not_nan(self, tmp_path):
        path = tmp_path / "null.csv"
        write_output([{"x": 1.0, "t": 2.0, "region": "outside", "s": None,
                       "u": None, "err_order": None, "error": ""}],
                     "csv", str(path))
        row = path.read_text().splitlines()[1]
        assert row == "1.0,2.0,outside,,,,"
        assert "nan" not in row.lower()

    def test_json_round_trip(self, tmp_path):
        path = tmp_path / "t.json"
        rows = [{"x": 1.5, "t": 2.0, "region": "I", "s": 0.25,
                 "u": 1.0000001, "err_order": -0.77, "error": ""}]
        write_output(rows, "json", str(path), {"config_sha256": "ab"})
        parsed = json.loads(path.read_text())
        assert parsed["meta"]["config_sha256"] == "ab"
        assert parsed["rows"][0]["u"] == rows[0]["u"]

    def test_empty_table_rejected(self, tmp_path):
        with pytest.raises(ConfigError):
            write_output([], "csv", str(tmp_path / "x.csv"))


class TestMain:
    def test_region1_end_to_end_deterministic(self, tmp_path):
        cfg_path = tmp_path / "cfg.ini"
        out = tmp_path / "out.csv"
        cfg_path.write_text(R1_SCAN.format(path=out, fmt="csv"))
        assert main(["region1", "--config", str(cfg_path)]) == 0
        first = out.read_bytes()
        assert main(["region1", "--config", str(cfg_path)]) == 0
        assert out.read_bytes() == first

    def test_config_error_exit_code(self, tmp_path):
        cfg_path = tmp_path / "bad.ini"
        cfg_path.write_text("[shock]\np = -3\n")
        assert main(["region1", "--config", str(cfg_path)]) == 1

    def test_strict_per_point_failure_exit_code(self, tmp_path):
        cfg_path = tmp_path / "cfg.ini"
        cfg_path.write_text("[scattering]\nkappa_r = 0.5\n"
                            "[scan]\nt = 1e6\nw = 3.0:3.4:2\n"
                            "[output]\npath = %s\n" % (tmp_path / "o.csv"))
        assert main(["scan", "--config", str(cfg_path), "--strict"]) == 2
        assert main(["scan", "--config", str(cfg_path)]) == 0

    def test_io_error_exit_code(self, tmp_path):
        cfg_path = tmp_path / "cfg.ini"
        cfg_path.write_text(R1_SCAN.format(path="/nonexistent-dir/x.csv", fmt="csv"))
        assert main(["region1", "--config", str(cfg_path)]) == 3

    def test_pii_subcommand(self, capsys):
        assert main(["pii", "--k", "0.0", "--s", "0:1:0.5"]) == 0
        outp = capsys.readouterr().out.splitlines()
        assert outp[0] == "s,v,v_prime,Q"
        assert outp[1].startswith("0.0,0.0,0.0,0.0")

    def test_check_subcommand(self, tmp_path, capsys):
        cfg_path = tmp_path / "cfg.ini"
        cfg_path.write_text(MINIMAL)
        assert main(["check", "--config", str(cfg_path)]) == 0
        assert "PASS" in capsys.readouterr().out

    def test_threads_env_preserves_order(self, tmp_path, monkeypatch):
        monkeypatch.setenv("MCH_ASY_THREADS", "4")
        cfg = parse_config(R1_SCAN.format(path="-", fmt="csv"))
        rows = run_scan(cfg)
        assert [r["s"] for r in rows] == sorted(r["s"] for r in rows)
