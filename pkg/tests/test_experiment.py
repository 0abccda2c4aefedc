import csv
import io

import pytest
from hydra import compose, initialize_config_dir

from geometry.errors import ConfigError, VerificationError
from zonelab.experiment import (
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERIFICATION_FAILED,
    ROOT_DIR,
    ExperimentRunner,
    override_error,
    run_experiment,
    summary_path,
)
from zonelab.settings import MODES, ExperimentConfig

SMALL = ["experiment.n_min=3", "experiment.n_max=4", "experiment.trials=2", "evaluator.progress=false"]
OCTANT_QUERY = "s_plane='1 1 1 -1/2'"
OCTANT_FILE = f"planes_file='{ROOT_DIR}/data/octant/planes.txt'"
AXES_FILE = f"lines_file='{ROOT_DIR}/data/axes2d/lines.txt'"


def compose_config(overrides):
    with initialize_config_dir(config_dir=f"{ROOT_DIR}/config", version_base=None):
        return compose(config_name="config", overrides=overrides)


def read_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_default_config():
    cfg = compose_config([])
    config = ExperimentConfig.from_cfg(cfg)
    assert config.mode == "zone3d"
    assert (config.n_min, config.n_max, config.trials_per_n) == (3, 5, 5)
    assert config.coefficient_bound == 50
    assert config.out is None


@pytest.mark.parametrize("preset, n_max, trials", [("sweep", 10, 20), ("acceptance", 8, 5)])
def test_experiment_presets(preset, n_max, trials):
    config = ExperimentConfig.from_cfg(compose_config([f"experiment={preset}"]))
    assert config.n_max == n_max
    assert config.trials_per_n == trials


@pytest.mark.parametrize(
    "overrides",
    [
        ["mode=bogus"],
        ["experiment.n_min=5", "experiment.n_max=3"],
        ["experiment.n_min=0"],
        ["experiment.trials=0"],
        ["experiment.coeff_bound=1"],
        ["experiment.n_max=16"],
        ["mode=theorem1", OCTANT_FILE],
        ["mode=zone2d", AXES_FILE],
        ["mode=zone2d", OCTANT_FILE],
    ],
)
def test_invalid_configs(overrides):
    with pytest.raises(ConfigError):
        ExperimentRunner(overrides=overrides)


def test_override_error():
    assert override_error(["experiment.n_min=3", "mode=theorem1"]) is None
    assert override_error(["--multirun", "experiment.seed=3"]) is None
    assert override_error(["experiment.nmin=3"]) is not None
    assert override_error(["experiment=nonexistent"]) is not None


def test_max_n_override():
    runner = ExperimentRunner(
        overrides=["experiment.n_max=16", "experiment.max_n_override=true"]
    )
    assert runner.config.n_max == 16


@pytest.mark.parametrize("mode", MODES)
def test_every_mode_runs(mode):
    runner = ExperimentRunner(mode=mode, overrides=SMALL)
    result = runner.run()
    rows = read_rows(runner.csv_text)
    assert len(rows) == len(result.rows) > 0
    assert [(int(r["n"]), int(r["trial"])) for r in rows] == sorted(
        (int(r["n"]), int(r["trial"])) for r in rows
    )


@pytest.mark.parametrize("mode", ["theorem1", "recurrence"])
def test_single_plane_instances(mode):
    overrides = [
        "experiment.n_min=1",
        "experiment.n_max=2",
        "experiment.trials=10",
        "evaluator.progress=false",
    ]
    rows = ExperimentRunner(mode=mode, overrides=overrides).run().rows
    single = [row for row in rows if row["n"] == 1]
    assert len(single) == 10
    assert all(row["lhs"] == 0 and row["ok"] for row in single)


def test_single_plane_fixture(tmp_path):
    planes_file = tmp_path / "plane.txt"
    planes_file.write_text("0 0 1 0\n")
    runner = ExperimentRunner(
        mode="theorem1",
        overrides=[f"planes_file='{planes_file}'", "s_plane='1 1 0 -100'"],
    )
    rows = runner.run().rows
    assert len(rows) == 1
    assert (rows[0]["lhs"], rows[0]["rhs_zone_a_minus_q"], rows[0]["rhs_zone_lq"]) == (0, 0, 0)
    assert rows[0]["lq_faces"] == 1


def test_zone3d_oracle_checks_on_random_instances():
    overrides = [
        "experiment.n_min=4",
        "experiment.n_max=6",
        "experiment.trials=2",
        "evaluator.oracle_checks=true",
        "evaluator.progress=false",
    ]
    rows = ExperimentRunner(mode="zone3d", overrides=overrides).run().rows
    assert len(rows) == 6


def test_runs_are_reproducible():
    first = ExperimentRunner(mode="zone3d", overrides=SMALL + ["experiment.seed=17"])
    second = ExperimentRunner(mode="zone3d", overrides=SMALL + ["experiment.seed=17"])
    first.run()
    second.run()
    assert first.csv_text == second.csv_text


def test_theorem1_rows():
    runner = ExperimentRunner(mode="theorem1", overrides=SMALL)
    rows = runner.run().rows
    assert len(rows) == 2 * 3 + 2 * 4
    for row in rows:
        assert row["ok"]
        assert row["lhs"] <= row["rhs_zone_a_minus_q"] + row["rhs_zone_lq"]
        assert (
            row["uncut_pairs"]
            + row["one_side_pairs"]
            + 2 * row["both_split_faces"]
            + row["both_unsplit_pairs"]
            == row["lhs"]
        )


def test_octant_fixture():
    runner = ExperimentRunner(
        mode="zone3d",
        overrides=[OCTANT_FILE, OCTANT_QUERY, "evaluator.oracle_checks=true"],
    )
    rows = runner.run().rows
    assert len(rows) == 1
    assert rows[0]["n"] == 3
    assert rows[0]["zone_cells"] == 7
    assert rows[0]["zone_size"] == 21

    recurrence = ExperimentRunner(
        mode="recurrence", overrides=[OCTANT_FILE, OCTANT_QUERY]
    ).run()
    assert recurrence.rows[0]["lhs"] == 42
    assert recurrence.rows[0]["f_value"] == "7"
    assert recurrence.statistics is None


def test_lines_fixture():
    runner = ExperimentRunner(
        mode="zone2d",
        overrides=[AXES_FILE, "s_line='1 1 -5'"],
    )
    rows = runner.run().rows
    assert rows[0]["zone2d_faces"] == 3
    assert rows[0]["zone2d_size"] == 6


def test_sweep_writes_summary(tmp_path):
    out = tmp_path / "sweep.csv"
    runner = ExperimentRunner(mode="sweep", overrides=SMALL + [f"out='{out}'"])
    result = runner.run()
    assert result.statistics is not None
    assert out.exists()
    summary = read_rows((tmp_path / "sweep_summary.csv").read_text())
    assert [int(row["n"]) for row in summary] == [3, 4]
    sweep_rows = read_rows(out.read_text())
    assert all(int(row["zone2d_size"]) <= 10 * int(row["n"]) for row in sweep_rows)


def test_summary_path():
    assert summary_path("/tmp/run/rows.csv") == "/tmp/run/rows_summary.csv"


def test_exit_codes(tmp_path):
    assert run_experiment(compose_config(["mode=euler-checks"] + SMALL)) == EXIT_OK
    assert run_experiment(compose_config(["mode=bogus"])) == EXIT_USAGE
    missing = tmp_path / "missing.txt"
    assert (
        run_experiment(compose_config(["mode=euler-checks", f"planes_file='{missing}'"]))
        == EXIT_USAGE
    )
    # no quadratic family can shrink by a factor of 1000
    failing = compose_config(
        ["mode=sweep", "evaluator.growth_tolerance=0.001", "experiment.n_min=2"] + SMALL[1:]
    )
    assert run_experiment(failing) == EXIT_VERIFICATION_FAILED


def test_verification_failure_carries_instance(monkeypatch, caplog):
    import eval.evaluator as evaluator_module

    def broken(*args, **kwargs):
        raise VerificationError("forced")

    monkeypatch.setattr(evaluator_module, "verify_recurrence", broken)
    runner = ExperimentRunner(mode="recurrence", overrides=SMALL + ["experiment.seed=5"])
    with pytest.raises(VerificationError) as info:
        runner.run()
    error = info.value
    assert (error.seed, error.n, error.trial) == (5, 3, 0)
    assert error.dump.startswith("# seed=5 n=3 trial=0\n")
    assert "seed=5, n=3, trial=0" in str(error)
    assert "Arrangement:\nPLANES 3" in caplog.text
