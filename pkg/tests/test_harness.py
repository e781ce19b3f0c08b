import json
import math

import pytest

from wre.errors import DomainError, ParameterError
from wre.harness import cli
from wre.harness import experiments as ex
from wre.harness.pool import ordered_map, resolve_threads
from wre.harness.records import SCHEMAS, Table, config_hash, format_value, read_csv
from wre.entropy import is_crossover


def run(args, tmp_path):
    return cli.main([*args, "--out", str(tmp_path)])


def test_parse_grid():
    assert cli.parse_grid("0:2:5").tolist() == [0.0, 0.5, 1.0, 1.5, 2.0]
    for bad in ("0:2", "a:b:c", "0:1:0", "0:1:2:3"):
        with pytest.raises(ParameterError):
            cli.parse_grid(bad)


@pytest.mark.parametrize("args", [
    ["prime", "--n", "7"],
    ["prime", "--n", "16"],
    ["mpd", "--alpha", "20000"],
    ["dominant", "--gamma-grid", "0:3:4", "--trials", "1"],
    ["dominant", "--gamma-grid", "nonsense"],
    ["qft", "--beta", "100000", "--trials", "1"],
    ["adiabatic", "--n", "14"],
    ["grover", "--ciphertext", "1"],
    ["prime", "--n", "4", "--threads", "0"],
])
def test_parameter_errors_exit_2(args, tmp_path, capsys):
    assert run(args, tmp_path) == cli.EXIT_PARAMETER
    assert "parameter error" in capsys.readouterr().err


def test_argparse_errors_exit_2(tmp_path):
    with pytest.raises(SystemExit) as err:
        run(["prime", "--bogus"], tmp_path)
    assert err.value.code == 2


def test_domain_errors_exit_3(tmp_path, monkeypatch):
    def boom(n):
        raise DomainError("log argument <= 0")

    monkeypatch.setattr(ex, "run_prime", boom)
    assert run(["prime"], tmp_path) == cli.EXIT_DOMAIN


def test_threads_env_overrides(monkeypatch):
    monkeypatch.delenv("WRE_THREADS", raising=False)
    assert resolve_threads(None) == 1
    assert resolve_threads(3) == 3
    monkeypatch.setenv("WRE_THREADS", "2")
    assert resolve_threads(5) == 2
    monkeypatch.setenv("WRE_THREADS", "x")
    with pytest.raises(ParameterError):
        resolve_threads(1)


def test_ordered_map_keeps_order():
    assert ordered_map(lambda x: x * x, range(20), threads=4) == [x * x for x in range(20)]


def test_format_value():
    assert format_value(0.1) == "0.1"
    assert format_value(True) == "1"
    assert format_value(None) == ""
    assert format_value(float("nan")) == ""
    assert format_value(math.inf) == "inf"
    assert float(format_value(1 / 3)) == 1 / 3


def test_table_rejects_unknown_columns():
    t = Table("x", "wre.prime.v1")
    with pytest.raises(KeyError):
        t.add(nope=1)


def test_config_hash_is_order_independent():
    assert config_hash({"a": 1, "b": [1, 2]}) == config_hash({"b": [1, 2], "a": 1})
    assert config_hash({"a": 1}) != config_hash({"a": 2})


SMALL_DOMINANT = ["dominant", "--gamma-grid", "0:2:5", "--trials", "6", "--seed", "3"]


def test_identical_config_gives_identical_files(tmp_path, monkeypatch):
    monkeypatch.delenv("WRE_THREADS", raising=False)
    a, b, c = tmp_path / "a", tmp_path / "b", tmp_path / "c"
    assert run(SMALL_DOMINANT, a) == 0
    assert run(SMALL_DOMINANT, b) == 0
    monkeypatch.setenv("WRE_THREADS", "3")
    assert run(SMALL_DOMINANT, c) == 0
    for name in ("dominant.csv", "dominant.svg"):
        assert (a / name).read_bytes() == (b / name).read_bytes() == (c / name).read_bytes()


def test_csv_layout_and_metadata(tmp_path):
    assert run([*SMALL_DOMINANT, "--log2"], tmp_path) == 0
    raw = (tmp_path / "dominant.csv").read_bytes()
    assert raw.count(b"\r\n") == 6 and b"\n" not in raw.replace(b"\r\n", b"")
    header, rows = read_csv(tmp_path / "dominant.csv")
    assert header[: len(SCHEMAS["wre.dominant.v1"])] == list(SCHEMAS["wre.dominant.v1"])
    assert "analytic_log2" in header
    for r in rows:
        assert r["schema"] == "wre.dominant.v1" and r["seed"] == "3" and r["alpha"] == "100"
        assert float(r["analytic_log2"]) == pytest.approx(float(r["analytic"]) / math.log(2))
    meta = json.loads((tmp_path / "dominant.json").read_text())
    for key in ("version", "config", "config_hash", "deviations", "wall_clock_seconds", "thresholds"):
        assert key in meta
    assert meta["config_hash"] == config_hash(meta["config"])


def test_svg_rerender_is_idempotent(tmp_path):
    assert run(["renyi-sweep", "--trials", "8", "--alpha", "16"], tmp_path) == 0
    svg = tmp_path / "renyi_sweep.svg"
    original = svg.read_bytes()
    svg.unlink()
    assert cli.main(["render", str(tmp_path)]) == 0
    assert svg.read_bytes() == original
    assert b"<dc:date>" not in original


def test_mpd_single_bin(tmp_path):
    assert run(["mpd", "--alpha", "200", "--bins", "1"], tmp_path) == 0
    for ratio in ("0.25", "0.5", "1"):
        _, rows = read_csv(tmp_path / f"mpd_ratio_{ratio}.csv")
        assert len(rows) == 1
        r = rows[0]
        width = float(r["right"]) - float(r["left"])
        assert abs(float(r["empirical_density"]) * width - 1.0) < 1e-12
    meta = json.loads((tmp_path / "mpd.json").read_text())
    assert set(meta["summary"]["ks"]) == {"0.25", "0.5", "1"}
    assert any("10000" in d for d in meta["deviations"])


def test_mpd_histogram_integrates_to_one():
    rec = ex.run_mpd(alpha=300, ratios=(0.5,), sampler="dense")
    rows = rec.tables[0].rows
    assert abs(sum(r["empirical_density"] * (r["right"] - r["left"]) for r in rows) - 1) < 1e-12
    # the bins span [min, max] of the sample, slightly inside the support
    analytic = sum(r["analytic_bin_density"] * (r["right"] - r["left"]) for r in rows)
    assert 0.98 < analytic <= 1 + 1e-9


def test_sweep_rows():
    rec = ex.run_lambda0_sweep(alpha=32, betas=(48, 64), points=12, seed=1)
    rows = rec.table("lambda0_sweep").rows
    assert len(rows) == 24
    for r in rows:
        assert 0 < r["lambda0"] < 1
        assert r["crossover"] == is_crossover(32, r["beta"], r["lambda0"])
        assert r["crossover"] == (r["lambda0"] < 1.5 * r["bulk_edge"])
    curve = rec.table("lambda0_curve").rows
    assert {r["beta"] for r in curve} == {48, 64, math.inf}


def test_lambda0_targets():
    gn, target, gs = ex.lambda0_targets(5, 128, 0.8)
    assert gn[0] == 0 and target[-1] == pytest.approx(0.8)
    assert gs[-1] == pytest.approx(2.0)


def test_gap_sweep_rows():
    rec = ex.run_gap_sweep(alpha=32, betas=(32,), points=10)
    assert all(r["gap"] >= 0 for r in rec.tables[0].rows)
    root = rec.summary["roots"]["32"]
    assert abs(root["numerical"] - 4 / 36) < 1e-10


def test_renyi_rows_share_matrices():
    rec = ex.run_renyi_sweep(alpha=16, matrices=6, degrees=(1.001, 2, 5, 100))
    rows = rec.tables[0].rows
    by_degree = {}
    for r in rows:
        by_degree.setdefault(r["degree"], []).append((r["matrix"], r["lambda0"]))
    ids = list(by_degree.values())
    assert all(v == ids[0] for v in ids)
    assert all(r["analytic"] is not None for r in rows)


def test_renyi_prediction_dispatch():
    assert ex.renyi_prediction(128, 0.5, 1.001) == pytest.approx(ex.renyi1_analytic(128, 0.5))
    assert ex.renyi_prediction(128, 0.5, 100.0) == pytest.approx(math.log(2))
    assert ex.renyi_prediction(128, 0.5, 2.5) is None


def test_grover_rows(tmp_path):
    assert run(["grover", "--no-plots"], tmp_path) == 0
    _, rows = read_csv(tmp_path / "grover.csv")
    assert len(rows) == 32
    assert sum(r["success_probability"] != "" for r in rows) == 8


def test_prime_rows():
    rec = ex.run_prime(6)
    assert len(rec.tables[0].rows) == 10
    assert rec.summary["ranks"] == [5]
    assert any("14" in d for d in rec.deviations)


def test_adiabatic_custom_instance(tmp_path):
    path = tmp_path / "inst.json"
    path.write_text(json.dumps(ex.load_default_instance().to_json()))
    assert run(["adiabatic", "--instance", str(path), "--s-points", "3", "--no-plots"], tmp_path) == 0
    _, rows = read_csv(tmp_path / "adiabatic.csv")
    assert [float(r["s"]) for r in rows] == [0.0, 0.5, 1.0]
