import json
from pathlib import Path

import pytest

from detroc import (
    ExperimentConfig,
    InfoEnvironment,
    ThresholdGrid,
    conclusion_environments,
    paper_environments,
    paper_schemes,
    read_roc_points,
    reproduce_paper,
    run_config,
)
from detroc.harness import config_hash

# Cells of the printed tables that exact recomputation from the printed
# environment table provably cannot reach (see the reproduction report).
KNOWN_IRREPRODUCIBLE = {
    ("auc_table", "dictator", "mean"),
    ("j_table", "unbiased", "mean_j"),
    ("j_table", "technology", "mean_j"),
    ("j_table", "frontline", "mean_j"),
    ("j_table", "frontline", "mean_tau_star"),
    ("j_table", "geographical", "mean_j"),
    ("j_table", "geographical", "mean_tau_star"),
    ("j_table", "two-bloc", "mean_j"),
}


class TestBuiltinEnvironments:
    def test_count_and_ids(self):
        envs = paper_environments()
        assert len(envs) == 14
        assert [e.env_id for e in envs] == [f"env{i:02d}" for i in range(1, 15)]

    def test_first_row(self):
        env = paper_environments()[0]
        assert env.p == (0.85, 0.85, 0.85, 0.85)
        assert env.q == (0.05, 0.05, 0.05, 0.05)

    def test_near_random_row(self):
        env = paper_environments()[8]
        assert env.env_id == "env09"
        assert env.p == (0.55, 0.55, 0.55, 0.55)
        assert env.q == (0.45, 0.45, 0.45, 0.45)

    def test_conclusion_battery_drops_outlier(self):
        battery = conclusion_environments()
        assert len(battery) == 13
        assert all(e.env_id != "env09" for e in battery)


class TestExperimentConfig:
    def test_empty_schemes_rejected(self):
        with pytest.raises(ValueError, match="scheme"):
            ExperimentConfig((), tuple(paper_environments()))

    def test_empty_environments_rejected(self):
        with pytest.raises(ValueError, match="environment"):
            ExperimentConfig(tuple(paper_schemes()), ())

    def test_unknown_output_rejected(self):
        with pytest.raises(ValueError, match="unknown output"):
            ExperimentConfig(
                tuple(paper_schemes()),
                tuple(paper_environments()),
                outputs=("pdf-report",),
            )

    def test_mismatched_environment_rejected(self):
        env = InfoEnvironment("tiny", (0.5,), (0.4,))
        with pytest.raises(ValueError, match="expected 4"):
            ExperimentConfig(tuple(paper_schemes()), (env,))

    def test_hash_is_stable_and_sensitive(self):
        cfg = ExperimentConfig(tuple(paper_schemes()), tuple(paper_environments()))
        assert config_hash(cfg) == config_hash(cfg)
        other = ExperimentConfig(
            tuple(paper_schemes()), tuple(paper_environments()), seed=1
        )
        assert config_hash(cfg) != config_hash(other)


@pytest.fixture(scope="module")
def small_config():
    return ExperimentConfig(
        schemes=(paper_schemes()[0],),
        environments=(paper_environments()[0],),
        grid=ThresholdGrid(samples=41),
        outputs=("roc-points", "auc-table", "j-table", "game-report", "svg-plot"),
        seed=3,
    )


class TestRunConfig:
    def test_roc_points_row_count(self, small_config, tmp_path):
        run_config(small_config, tmp_path, jobs=1)
        lines = (tmp_path / "roc_points.csv").read_text().splitlines()
        assert lines[0] == "scheme,env_id,tau,fpr,tpr"
        assert len(lines) == 1 + 41  # header + one row per sweep point

    def test_rows_ordered_by_descending_tau(self, small_config, tmp_path):
        run_config(small_config, tmp_path, jobs=1)
        rows = (tmp_path / "roc_points.csv").read_text().splitlines()[1:]
        taus = [float(r.split(",")[2]) for r in rows]
        assert taus == sorted(taus, reverse=True)

    def test_report_covers_grid(self, tmp_path):
        cfg = ExperimentConfig(
            schemes=tuple(paper_schemes()[:3]),
            environments=tuple(paper_environments()[:5]),
        )
        report = run_config(cfg, tmp_path, jobs=2)
        assert len(report.curves) == 3 * 5
        for scheme in cfg.schemes:
            for env in cfg.environments:
                assert (scheme.name, env.env_id) in report.curves

    def test_round_trip_within_tolerance(self, small_config, tmp_path):
        report = run_config(small_config, tmp_path, jobs=1)
        parsed = read_roc_points(tmp_path / "roc_points.csv")
        for key, points in parsed.items():
            original = report.curves[key].points
            assert len(points) == len(original)
            for got, want in zip(points, original):
                assert abs(got.fpr - want.fpr) <= 1e-9
                assert abs(got.tpr - want.tpr) <= 1e-9
                assert abs(got.tau - want.tau) <= 1e-9

    def test_deterministic_artifacts(self, small_config, tmp_path):
        a = tmp_path / "a"
        b = tmp_path / "b"
        run_config(small_config, a, jobs=2)
        run_config(small_config, b, jobs=1)
        for name in sorted(p.name for p in a.iterdir()):
            assert (a / name).read_bytes() == (b / name).read_bytes(), name

    def test_svg_written_per_environment(self, tmp_path):
        cfg = ExperimentConfig(
            schemes=tuple(paper_schemes()),
            environments=tuple(paper_environments()[:2]),
            outputs=("svg-plot",),
        )
        run_config(cfg, tmp_path, jobs=1)
        for env_id in ("env01", "env02"):
            svg = (tmp_path / f"roc_{env_id}.svg").read_text()
            assert svg.count("<polyline") == 7
            assert 'stroke-dasharray' in svg  # the random-classifier diagonal

    def test_mc_checks_recorded_when_requested(self, tmp_path):
        cfg = ExperimentConfig(
            schemes=(paper_schemes()[1],),
            environments=(paper_environments()[0],),
            trials=20000,
            seed=11,
            outputs=("auc-table",),
        )
        report = run_config(cfg, tmp_path, jobs=1)
        assert report.mc_checks["trials"] == 20000
        assert report.mc_checks["max_abs_z"] <= 5.0
        payload = json.loads((tmp_path / "run_report.json").read_text())
        assert payload["results"]["mc_checks"]["tails_checked"] == report.mc_checks["tails_checked"]

    def test_run_report_structure(self, small_config, tmp_path):
        run_config(small_config, tmp_path, jobs=1)
        payload = json.loads((tmp_path / "run_report.json").read_text())
        assert set(payload) == {"config", "results", "provenance"}
        assert payload["provenance"]["grid"]["samples"] == 41
        assert payload["config"]["seed"] == 3
        assert len(payload["results"]["curves"]) == 1


@pytest.fixture(scope="module")
def outcome(tmp_path_factory):
    out = tmp_path_factory.mktemp("repro")
    report = reproduce_paper(out, jobs=1)
    return out, report


class TestReproducePaper:
    def test_artifact_inventory(self, outcome):
        out, _ = outcome
        names = {p.name for p in Path(out).iterdir()}
        expected = {
            "auc_table.csv",
            "j_table.csv",
            "roc_points.csv",
            "game_report.json",
            "run_report.json",
            "roc_high_high.csv",
            "roc_high_high.svg",
            "roc_low_low.csv",
            "roc_low_low.svg",
            "roc_decreasing_p.csv",
            "roc_decreasing_p.svg",
            "roc_increasing_p.csv",
            "roc_increasing_p.svg",
            "roc_unbiased_environments.csv",
            "roc_unbiased_environments.svg",
            "roc_technology_environments.csv",
            "roc_technology_environments.svg",
        }
        assert expected <= names
        assert len(names) >= 10

    def test_auc_table_matches_run_config_path(self, outcome, tmp_path):
        out, _ = outcome
        cfg = ExperimentConfig(
            schemes=tuple(paper_schemes()),
            environments=tuple(paper_environments()),
            outputs=("auc-table",),
        )
        run_config(cfg, tmp_path, jobs=1)
        assert (tmp_path / "auc_table.csv").read_bytes() == (
            Path(out) / "auc_table.csv"
        ).read_bytes()

    def test_comparison_highlights(self, outcome):
        _, report = outcome
        cells = {
            (c["table"], c["scheme"], c["metric"]): c
            for c in report.comparison["cells"]
        }
        featured = cells[("featured_auc", "dictator", "auc@env01")]
        assert featured["within"] and abs(featured["delta"]) <= 0.002
        unbiased_mean = cells[("auc_table", "unbiased", "mean")]
        assert unbiased_mean["within"]
        tech_tau = cells[("j_table", "technology", "mean_tau_star")]
        assert tech_tau["within"]
        conclusion = cells[("conclusion", "unbiased", "mean_retaliation")]
        assert conclusion["within"]

    def test_comparison_flags_exactly_the_known_gap(self, outcome):
        _, report = outcome
        flagged = {
            (c["table"], c["scheme"], c["metric"])
            for c in report.comparison["cells"]
            if not c["within"]
        }
        assert flagged == KNOWN_IRREPRODUCIBLE

    def test_game_report_breakeven(self, outcome):
        out, _ = outcome
        payload = json.loads((Path(out) / "game_report.json").read_text())
        assert payload["scheme"] == "unbiased"
        assert payload["tau"] == 2.0
        assert len(payload["environment_ids"]) == 13
        assert 0.91 <= payload["mean_retaliation"] <= 0.93
        assert 0.11 <= payload["mean_false_alarm"] <= 0.13

    def test_featured_figure_uses_41_point_curves(self, outcome):
        out, _ = outcome
        rows = (Path(out) / "roc_high_high.csv").read_text().splitlines()
        assert len(rows) == 1 + 7 * 41
