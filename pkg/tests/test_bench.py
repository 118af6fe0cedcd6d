import numpy as np
import pytest

from maskplan.bench import (
    BenchRow,
    emit_csv,
    emit_markdown,
    emit_report,
    run_bench,
    split_indices,
    train_test_boundary,
)
from maskplan.errors import ChecksumMismatch, DatasetMissing
from maskplan.maskpipe import write_mask_file
from maskplan.scenegen import GenConfig, generate_dataset


@pytest.fixture(scope="module")
def small_dataset(tmp_path_factory):
    out = tmp_path_factory.mktemp("ds")
    for scenario in (1, 2, 3, 4, 5):
        generate_dataset(GenConfig(scenario=scenario, count=6, seed=7), out)
    return out


def test_split_boundary_matches_80_20():
    assert train_test_boundary(10000) == 8000
    assert 7999 in split_indices(10000, "train")
    assert 8000 not in split_indices(10000, "train")
    assert list(split_indices(10000, "test"))[0] == 8000
    assert len(split_indices(10, "all")) == 10
    with pytest.raises(ValueError):
        split_indices(10, "validation")


def test_allpass_improvement_is_zero(small_dataset):
    report = run_bench(small_dataset, "allpass")
    for row in report.rows:
        assert row.improvement_pct == 0.0
        assert row.fallback_count == 0
        assert row.difference == 0
        assert row.mean_path_ratio == 1.0


def test_report_structure_and_arithmetic(small_dataset):
    report = run_bench(small_dataset, "oracle:1")
    assert len(report.rows) == 6
    assert [r.scenario for r in report.rows] == ["1", "2", "3", "4", "5", "sum"]
    body, total = report.rows[:-1], report.rows[-1]
    assert total.baseline_iterations == sum(r.baseline_iterations for r in body)
    assert total.pruned_iterations == sum(r.pruned_iterations for r in body)
    assert total.fallback_count == sum(r.fallback_count for r in body)
    assert total.difference == sum(r.difference for r in body)
    for row in report.rows:
        assert row.difference == row.baseline_iterations - row.pruned_iterations
        expect = 100.0 * row.difference / row.baseline_iterations
        assert row.improvement_pct == pytest.approx(expect)


def test_csv_format(small_dataset):
    report = run_bench(small_dataset, "oracle:1")
    text = emit_csv(report)
    lines = text.strip().splitlines()
    assert lines[0] == (
        "scenario,baseline_iters,pruned_iters,difference,improvement_pct,fallbacks,mean_path_ratio"
    )
    assert len(lines) == 7
    assert lines[-1].startswith("sum,")
    # columns of the sum row add up
    rows = [line.split(",") for line in lines[1:]]
    assert int(rows[-1][3]) == sum(int(r[3]) for r in rows[:-1])


def test_markdown_format(small_dataset):
    report = run_bench(small_dataset, "oracle:1")
    text = emit_markdown(report)
    for label in (
        "Baseline A* iterations",
        "Pruned A* iterations",
        "Difference",
        "Difference (%)",
        "Improvement (%)",
        "Fallbacks",
        "Mean path ratio",
    ):
        assert f"| {label} |" in text
    assert "| Sum |" in text.splitlines()[6]


def test_emit_report_dispatch(small_dataset):
    report = run_bench(small_dataset, "allpass")
    assert emit_report(report, "csv") == emit_csv(report)
    assert emit_report(report, "md") == emit_markdown(report)
    with pytest.raises(ValueError):
        emit_report(report, "html")


def test_published_totals_improvement():
    # reference arithmetic: 12,816,518 baseline vs 4,579,589 pruned
    row = BenchRow("sum", 12816518, 4579589, 0, 0.0, 0)
    assert row.difference == 8236929
    assert abs(row.improvement_pct - 64.27) <= 0.01


def test_bench_is_deterministic_across_workers(small_dataset, monkeypatch):
    monkeypatch.delenv("MASKPLAN_THREADS", raising=False)
    serial = emit_csv(run_bench(small_dataset, "oracle:1"))
    monkeypatch.setenv("MASKPLAN_THREADS", "2")
    parallel = emit_csv(run_bench(small_dataset, "oracle:1"))
    assert serial == parallel


def test_file_predictor_all_zero_vectors_match_allpass(small_dataset, tmp_path):
    for index in range(6):
        write_mask_file(np.zeros(3600), tmp_path / f"mask_{index:05d}.txt")
    via_files = run_bench(small_dataset, f"files:{tmp_path}")
    via_allpass = run_bench(small_dataset, "allpass")
    assert emit_csv(via_files).splitlines()[1:] == emit_csv(via_allpass).splitlines()[1:]


def test_missing_manifest_raises(tmp_path):
    with pytest.raises(DatasetMissing):
        run_bench(tmp_path, "allpass")


def test_checksum_mismatch_detected(tmp_path):
    generate_dataset(GenConfig(scenario=1, count=2, seed=1), tmp_path)
    victim = tmp_path / "scenario_1" / "scene_00001.png"
    victim.write_bytes(victim.read_bytes() + b"tamper")
    with pytest.raises(ChecksumMismatch):
        run_bench(tmp_path, "allpass")


def test_missing_scene_file_raises(tmp_path):
    generate_dataset(GenConfig(scenario=1, count=2, seed=1), tmp_path)
    (tmp_path / "scenario_1" / "scene_00001.png").unlink()
    with pytest.raises(DatasetMissing):
        run_bench(tmp_path, "allpass")


def test_test_split_selects_last_fifth(small_dataset):
    report = run_bench(small_dataset, "allpass", split="test")
    # count=6 -> boundary 4 -> indices 4..5 per scenario
    assert report.config["scene_count_per_scenario"] == 2
    assert report.config["split"] == "test"
