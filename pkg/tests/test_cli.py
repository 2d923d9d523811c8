import json
from pathlib import Path

import numpy as np
import pytest

from mpfv.cli import main, read_field_csv, write_field_csv
from mpfv.diagnostics import relative_error
from mpfv.grid import Grid


def run_cli(*argv):
    return main(list(argv))


def test_zero_step_run_writes_initial_field(tmp_path):
    rc = run_cli(
        "run", "--scheme", "fv2", "--limiter", "unlimited", "--case", "diag",
        "--res", "16", "--cn", "0.5", "--end", "0", "--out", str(tmp_path),
    )
    assert rc == 0
    tag = "fv2-unlimited-diag-leveque-16"
    u, g = read_field_csv(tmp_path / f"{tag}_field.csv")
    from mpfv.cases import ICKind, init_cell_means

    assert np.array_equal(u, init_cell_means(ICKind.LEVEQUE, g, "point_sample"))
    manifest = json.loads((tmp_path / f"{tag}_manifest.json").read_text())
    assert manifest["n_steps"] == 0
    assert manifest["deterministic"] is True


def test_run_produces_bounded_report(tmp_path):
    rc = run_cli(
        "run", "--scheme", "fv2", "--limiter", "n2n", "--case", "sbr",
        "--res", "20", "--cn", "0.5", "--end", "0.05", "--out", str(tmp_path),
    )
    assert rc == 0
    tag = "fv2-n2n-sbr-leveque-20"
    report = (tmp_path / f"{tag}_report.csv").read_text().splitlines()
    header = report[0].split(",")
    row = dict(zip(header, report[1].split(",")))
    assert float(row["min_val"]) >= -1e-12
    assert float(row["max_val"]) <= 1.0 + 1e-12
    assert float(row["max_mp_violation"]) <= 1e-12
    assert (tmp_path / f"{tag}_stages.csv").exists()


def test_determinism_bytes(tmp_path):
    args = (
        "run", "--scheme", "fv2", "--limiter", "bj", "--case", "sbr",
        "--res", "16", "--cn", "0.5", "--end", "0.1",
    )
    run_cli(*args, "--out", str(tmp_path / "a"))
    run_cli(*args, "--out", str(tmp_path / "b"))
    tag = "fv2-bj-sbr-leveque-16"
    for name in (f"{tag}_field.csv", f"{tag}_report.csv", f"{tag}_stages.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_field_csv_roundtrip_reproduces_errors(tmp_path):
    g = Grid(16, 16)
    rng = np.random.default_rng(0)
    u = rng.random(g.shape)
    path = tmp_path / "field.csv"
    write_field_csv(path, u, g)
    u2, g2 = read_field_csv(path)
    assert np.array_equal(u, u2)
    exact = rng.random(g.shape) + 0.5
    for p in (1, 2, np.inf):
        assert relative_error(u, exact, g, p) == relative_error(u2, exact, g2, p)


def test_malformed_config_exits_2_and_writes_nothing(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("scheme=fv2\nbogus_key=1\n")
    out = tmp_path / "out"
    rc = run_cli("run", "--config", str(cfg), "--out", str(out))
    assert rc == 2
    assert not out.exists()


def test_config_file_provides_defaults_flags_win(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\nscheme=fv2\nlimiter=bj\ncase=diag\nres=16\nend=0\n")
    out = tmp_path / "out"
    rc = run_cli("run", "--config", str(cfg), "--limiter", "nk", "--out", str(out))
    assert rc == 0
    assert (out / "fv2-nk-diag-leveque-16_field.csv").exists()


def test_bad_flag_value_exits_2(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        run_cli("run", "--scheme", "fv9", "--out", str(tmp_path))
    assert exc.value.code == 2


def test_convergence_smoke(tmp_path):
    rc = run_cli(
        "convergence", "--scheme", "fv2", "--limiters", "nk", "--cases", "diag",
        "--resolutions", "16,32", "--out", str(tmp_path),
    )
    assert rc == 0
    lines = (tmp_path / "convergence_fv2.csv").read_text().splitlines()
    assert lines[0].startswith("scheme,limiter,case,norm")
    assert len(lines) == 2
    order = float(lines[1].split(",")[-1])
    assert np.isfinite(order)


def test_convergence_requires_doubling(tmp_path):
    rc = run_cli(
        "convergence", "--resolutions", "16,24", "--out", str(tmp_path),
    )
    assert rc == 2


def test_suite_list():
    assert run_cli("suite", "--list") == 0


def test_suite_unknown_criterion(tmp_path):
    with pytest.raises(KeyError):
        run_cli("suite", "--only", "bogus", "--out", str(tmp_path))
