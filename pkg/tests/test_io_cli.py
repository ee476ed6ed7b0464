import io
import json
import shutil
import subprocess

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from symrmt import cli
from symrmt import io as tables

CD_12 = 6.0576354889897889871   # K_12^(1.5,2)(0.7, 0.7)


def run_cli(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@settings(max_examples=40, deadline=None)
@given(vals=st.lists(st.floats(allow_nan=False, allow_infinity=False), min_size=1, max_size=20),
       fmt=st.sampled_from(["csv", "jsonl"]))
def test_table_round_trip(vals, fmt):
    rows = [(i, v) for i, v in enumerate(vals)]
    cols, back = tables.read_table(io.StringIO(tables.table_to_string(["i", "v"], rows, fmt)))
    assert cols == ["i", "v"]
    assert [r[0] for r in back] == list(range(len(vals)))
    assert [float(r[1]) for r in back] == vals


def test_csv_needs_schema_line():
    with pytest.raises(ValueError):
        tables.read_table(io.StringIO("a,b\n1,2\n"))
    with pytest.raises(ValueError):
        tables.write_table(io.StringIO(), ["a"], [(1,)], "xml")
    assert tables.fmt(np.float64(0.1)) == "0.10000000000000001"


def test_no_arguments_is_usage_error(capsys):
    code, _, err = run_cli([], capsys)
    assert code == 2 and "missing command" in err


@pytest.mark.parametrize("argv", [
    ["sample", "--family", "AIII", "--rank", "3", "--beta", "2"],
    ["sample", "--family", "AIII"],
    ["sample", "--family", "DIII", "--rank", "2", "--L", "3"],
    ["sample", "--family", "CUE", "--rank", "3", "--method", "mcmc"],
    ["sample", "--method", "mcmc", "--rank", "3", "--beta", "3"],
    ["kernel", "--beta", "2", "--rank", "4"],
    ["kernel", "--beta", "2", "--rank", "4", "--grid", "1:0:0.1"],
    ["correlate", "--beta", "1", "--rank", "4"],
    ["sample", "--family", "CI", "--rank", "2", "--seed", "-1"],
])
def test_configuration_errors_exit_2(argv, capsys):
    code, out, err = run_cli(argv, capsys)
    assert code == 2 and out == "" and err.startswith("symrmt: error:")


def test_unknown_flag_exits_2(capsys):
    with pytest.raises(SystemExit) as e:
        cli.main(["sample", "--bogus"])
    assert e.value.code == 2


def test_missing_input_exits_1(tmp_path, capsys):
    code, _, err = run_cli(["density", "--input", str(tmp_path / "nope.csv")], capsys)
    assert code == 1 and "error" in err


def test_sample_is_deterministic(capsys):
    argv = ["sample", "--family", "BDI", "--rank", "3", "--L", "1", "--count", "600", "--seed", "5"]
    code, first, _ = run_cli(argv + ["--threads", "1"], capsys)
    assert code == 0
    _, second, _ = run_cli(argv + ["--threads", "3"], capsys)
    assert first == second
    cols, rows = tables.read_table(io.StringIO(first))
    assert cols == ["draw", "level", "theta", "x"]
    assert len(rows) == 1800
    assert all(abs(np.cos(r[2]) - r[3]) < 1e-15 for r in rows)


def test_sample_mcmc_jsonl(capsys):
    code, out, _ = run_cli(["sample", "--method", "mcmc", "--beta", "1", "--a", "0.5", "--rank", "2",
                            "--count", "50", "--format", "jsonl"], capsys)
    assert code == 0
    recs = [json.loads(s) for s in out.splitlines()]
    assert len(recs) == 100 and set(recs[0]) == {"draw", "level", "theta", "x"}


def test_config_file_and_flag_precedence(tmp_path, capsys):
    conf = tmp_path / "run.conf"
    conf.write_text("# draws\nfamily = CI\nrank = 2\ncount = 10\nseed = 3\n")
    _, a, _ = run_cli(["sample", "--config", str(conf)], capsys)
    _, b, _ = run_cli(["sample", "--family", "CI", "--rank", "2", "--count", "10", "--seed", "3"], capsys)
    assert a == b
    _, c, _ = run_cli(["sample", "--config", str(conf), "--seed", "4"], capsys)
    assert c != a
    bad = tmp_path / "bad.conf"
    bad.write_text("colour = red\n")
    code, _, _ = run_cli(["sample", "--config", str(bad)], capsys)
    assert code == 2


def test_family_fixes_parameters_in_config(tmp_path, capsys):
    conf = tmp_path / "run.conf"
    conf.write_text("family = AIII\nrank = 3\na = 0.5\n")
    code, _, err = run_cli(["sample", "--config", str(conf)], capsys)
    assert code == 2 and "--a" in err


def test_density_pipeline(tmp_path, capsys):
    draws = tmp_path / "draws.csv"
    assert cli.main(["sample", "--family", "AIII", "--rank", "20", "--count", "200", "--out", str(draws)]) == 0
    out_path = tmp_path / "hist.csv"
    code, _, err = run_cli(["density", "--input", str(draws), "--column", "theta", "--reference",
                            "uniform-theta", "--bins", "10", "--out", str(out_path), "--emit-plot-script"], capsys)
    assert code == 0 and "ks_distance" in err
    cols, rows = tables.load_table(out_path)
    assert cols == ["bin_left", "bin_right", "density", "reference"]
    assert sum((r[1] - r[0]) * r[2] for r in rows) == pytest.approx(1.0)
    assert (tmp_path / "hist.csv.gp").read_text().startswith("set datafile")
    code, _, _ = run_cli(["density", "--input", str(draws), "--column", "xi", "--reference", "edge",
                          "--family", "AIII", "--rank", "20", "--bins", "6"], capsys)
    assert code == 0


def test_kernel_spot_value(capsys):
    code, out, _ = run_cli(["kernel", "--beta", "2", "--a", "1.5", "--b", "2", "--rank", "12",
                            "--grid", "0.7:0.7:1"], capsys)
    assert code == 0
    cols, rows = tables.read_table(io.StringIO(out))
    assert cols == ["xi", "eta", "K"]
    assert rows[0][2] == pytest.approx(CD_12, rel=1e-12)


def test_kernel_negative_grid_and_limits(capsys):
    code, out, _ = run_cli(["kernel", "--limit", "sine", "--beta", "1", "--grid=-1:1:1"], capsys)
    assert code == 0
    cols, rows = tables.read_table(io.StringIO(out))
    assert cols == ["xi", "eta", "S", "Iminus", "D", "ST"] and len(rows) == 9
    code, out, _ = run_cli(["kernel", "--limit", "bessel", "--beta", "2", "--a", "0.5", "--grid", "0.5:0.5:1"], capsys)
    assert tables.read_table(io.StringIO(out))[1][0][2] == pytest.approx(1.0, abs=1e-12)


def test_rescaled_finite_kernel(capsys):
    code, out, _ = run_cli(["kernel", "--beta", "2", "--rank", "400", "--z0", "0", "--grid", "0:0:1"], capsys)
    assert code == 0
    assert tables.read_table(io.StringIO(out))[1][0][2] == pytest.approx(1.0, abs=5e-3)


def test_correlate(capsys):
    code, out, _ = run_cli(["correlate", "--limit", "sine", "--beta", "2", "--points", "0,0.5"], capsys)
    assert code == 0
    cols, rows = tables.read_table(io.StringIO(out))
    assert cols == ["n", "points", "value"]
    assert rows[0][2] == pytest.approx(1 - (2 / np.pi) ** 2, rel=1e-12)


def test_verify_smoke_report(tmp_path, monkeypatch, capsys):
    from symrmt import verify

    fake = [{"test_name": "x", "metric": "m", "value": 0.1, "tolerance": 1.0, "pass": True}]
    monkeypatch.setattr(verify, "run_suite", lambda name, log=None: fake)
    code, out, _ = run_cli(["verify", "--suite", "smoke"], capsys)
    assert code == 0 and json.loads(out) == fake
    monkeypatch.setattr(verify, "run_suite", lambda name, log=None: [dict(fake[0], **{"pass": False})])
    code, _, _ = run_cli(["verify"], capsys)
    assert code == 1


@pytest.mark.skipif(shutil.which("symrmt") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["symrmt", "correlate", "--limit", "sine", "--beta", "2", "--points", "0"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith(tables.SCHEMA_LINE)
    assert subprocess.run(["symrmt"], capture_output=True).returncode == 2


def test_bessel_grid_diagonal_is_edge_density(capsys):
    from symrmt.kernels_limit import edge_density

    code, out, _ = run_cli(["kernel", "--limit", "bessel", "--beta", "2", "--a", "0", "--grid", "0.1:3:0.1"], capsys)
    assert code == 0
    rows = tables.read_table(io.StringIO(out))[1]
    assert len(rows) == 900
    spot = [r for r in rows if abs(r[0] - 0.5) < 1e-12 and abs(r[1] - 0.5) < 1e-12]
    assert spot[0][2] == pytest.approx(float(edge_density(2, 0.0, 0.5)), rel=1e-12)


def test_rank_one_bdi_levels_are_arcsine(capsys):
    code, out, _ = run_cli(["sample", "--family", "BDI", "--rank", "1", "--L", "0", "--count", "100000",
                            "--seed", "1"], capsys)
    assert code == 0
    cfg = cli.parse_config(["density", "--reference", "arcsine"])
    err = io.StringIO()
    assert cli.run(cfg, stdout=io.StringIO(), stdin=io.StringIO(out), stderr=err) == 0
    ks = float(err.getvalue().split("=")[1].split()[0])
    assert ks < 0.01
