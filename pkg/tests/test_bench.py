import math

import numpy as np
import pytest

from ldeim import ExperimentConfig, ResultRow, SyntheticSpec, emit_csv, read_csv, run_experiment, synthesize, write_matrix
from ldeim.bench import CSV_HEADER, main
from ldeim.selection import deim_select, ldeim_select
from ldeim.linalg import truncated_svd


def test_exact_rank_deim():
    cfg = ExperimentConfig(SyntheticSpec(40, 30, 6, 0.0, 0), methods=("deim",), ranks=(6, 6, 1), repeats=1)
    (row,) = run_experiment(cfg)
    assert row.method == "deim" and row.k_hat == 6 and row.svd_rank_used == 6
    assert row.rel_error <= 1e-6
    assert row.selection_seconds >= 0 and row.bound_value is None


def test_half_rule_and_head_property():
    a = synthesize(SyntheticSpec(60, 40, 10, 0.1, 3))
    cfg = ExperimentConfig(SyntheticSpec(60, 40, 10, 0.1, 3), methods=("deim", "ldeim"), ranks=(2, 12, 2), repeats=1)
    rows = run_experiment(cfg)
    ld = [r for r in rows if r.method == "ldeim"]
    assert [r.svd_rank_used for r in ld] == [math.ceil(r.k_hat / 2) for r in ld]
    for r in ld:
        svd = truncated_svd(a, r.svd_rank_used)
        np.testing.assert_array_equal(ldeim_select(svd.u, r.k_hat)[: r.svd_rank_used], deim_select(svd.u))


def test_all_methods_bound_and_coverage():
    spec = SyntheticSpec(80, 50, 8, 0.05, 4)
    cfg = ExperimentConfig(spec, ranks=(2, 10, 4), repeats=2, bound=True)
    rows = run_experiment(cfg)
    assert {(r.method, r.k_hat) for r in rows} == {(m, k) for m in ("deim", "ldeim", "qdeim", "leverage") for k in (2, 6, 10)}
    for r in rows:
        assert r.error is None
        assert r.bound_value is not None
        assert r.rel_error * np.linalg.norm(synthesize(spec), 2) <= r.bound_value * (1 + 1e-8)
    lev = [r for r in rows if r.method == "leverage"]
    assert all(r.svd_rank_used == 2 for r in lev)


def test_determinism():
    cfg = ExperimentConfig(SyntheticSpec(50, 30, 5, 0.1, 1), ranks=(1, 8, 1), repeats=1)
    a = [r.rel_error for r in run_experiment(cfg)]
    b = [r.rel_error for r in run_experiment(cfg)]
    assert a == b


def test_failed_point_gives_diagnostic_row():
    # rank-1 input: higher-rank DEIM points cannot produce independent indices
    a = np.outer(np.arange(1.0, 7.0), np.arange(1.0, 5.0))
    cfg = ExperimentConfig("unused", methods=("deim",), ranks=(1, 3, 1), repeats=1)
    rows = run_experiment(cfg, matrix=a)
    assert [r.k_hat for r in rows] == [1, 2, 3]
    assert rows[0].error is None and rows[0].rel_error < 1e-12
    assert all(r.error and math.isnan(r.rel_error) for r in rows[1:])


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(methods=("ldeim",), svd_rank_rule=5, ranks=(2, 6, 2)),
        dict(ranks=(1, 99, 1)),
        dict(ranks=(3, 2, 1)),
        dict(methods=("svd",)),
        dict(repeats=0),
        dict(leverage_rank=0),
    ],
)
def test_invalid_configs(kwargs):
    with pytest.raises(ValueError):
        run_experiment(ExperimentConfig(SyntheticSpec(20, 10, 3, 0.1, 0), **kwargs))


def test_csv_empty_and_single(tmp_path):
    p = tmp_path / "r.csv"
    emit_csv([], p)
    assert p.read_text() == ",".join(CSV_HEADER) + "\n"
    emit_csv([ResultRow("deim", 4, 4, 0.5, 0.001, 1.2)], p)
    lines = p.read_text().splitlines()
    assert lines == ["method,k_hat,svd_rank_used,rel_error,selection_seconds,bound_value",
                     "deim,4,4,0.5,0.001,1.2"]


def test_csv_round_trip(tmp_path):
    rows = run_experiment(ExperimentConfig(SyntheticSpec(30, 20, 4, 0.1, 2), ranks=(1, 6, 1), repeats=1))
    rows.append(ResultRow("qdeim", 3, 3, 1 / 3, 2e-7, None))
    emit_csv(rows, tmp_path / "r.csv")
    assert read_csv(tmp_path / "r.csv") == rows


def test_cli_synthetic(tmp_path):
    out = tmp_path / "r.csv"
    assert main(["--synthetic", "40x30:6:0.0", "--methods", "deim", "--ranks", "6:6:1", "--out", str(out)]) == 0
    rows = read_csv(out)
    assert len(rows) == 1 and rows[0].rel_error <= 1e-6


def test_cli_input_half_rule(tmp_path):
    mtx = tmp_path / "a.mtx"
    write_matrix(mtx, synthesize(SyntheticSpec(60, 40, 10, 0.1, 0)))
    out = tmp_path / "r.csv"
    code = main(["--input", str(mtx), "--methods", "ldeim", "--ranks", "4:20:4",
                 "--svd-rank-rule", "half", "--preprocess", "col-center", "--repeats", "1",
                 "--bound", "--out", str(out)])
    assert code == 0
    rows = read_csv(out)
    assert [(r.k_hat, r.svd_rank_used) for r in rows] == [(k, math.ceil(k / 2)) for k in range(4, 21, 4)]
    assert all(r.bound_value is not None for r in rows)


def test_cli_csv_input_fixed_rule(tmp_path):
    src = tmp_path / "a.csv"
    write_matrix(src, synthesize(SyntheticSpec(30, 20, 5, 0.1, 0)))
    out = tmp_path / "r.csv"
    assert main(["--input", str(src), "--format", "csv", "--methods", "ldeim,leverage", "--ranks", "3:9:3",
                 "--svd-rank-rule", "fixed=3", "--leverage-rank", "1", "--repeats", "1", "--out", str(out)]) == 0
    rows = read_csv(out)
    assert {r.svd_rank_used for r in rows if r.method == "ldeim"} == {3}
    assert {r.svd_rank_used for r in rows if r.method == "leverage"} == {1}


@pytest.mark.parametrize(
    "argv",
    [
        ["--synthetic", "40x30:6:0.0", "--methods", "deim"],  # no --out
        ["--synthetic", "40x30:6:0.0", "--out", "x.csv", "--bogus"],
        ["--synthetic", "40x30", "--out", "x.csv"],
        ["--synthetic", "40x30:6:0", "--methods", "svd", "--out", "x.csv"],
        ["--synthetic", "40x30:6:0", "--svd-rank-rule", "third", "--out", "x.csv"],
        ["--synthetic", "40x30:6:0", "--methods", "ldeim", "--ranks", "2:6:2", "--svd-rank-rule", "fixed=4", "--out", "x.csv"],
        ["--input", "does-not-exist.mtx", "--out", "x.csv"],
    ],
)
def test_cli_errors(tmp_path, monkeypatch, capsys, argv):
    monkeypatch.chdir(tmp_path)
    assert main(argv) != 0
    assert capsys.readouterr().err


def test_cli_help(capsys):
    assert main(["--help"]) == 0
    text = capsys.readouterr().out
    for flag in ("--input", "--synthetic", "--format", "--preprocess", "--methods", "--ranks",
                 "--svd-rank-rule", "--leverage-rank", "--repeats", "--seed", "--bound", "--out"):
        assert flag in text
