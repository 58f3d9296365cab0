# Copyright 2024, threshold-rl contributors.
# SPDX-License-Identifier: BSD-3-Clause

import argparse
import json
from pathlib import Path

import pytest
import yaml
from threshold_rl import __version__, parser
from threshold_rl.constants import (
    EXIT_CONFIGURATION_ERROR,
    EXIT_CONVERGED,
    EXIT_ERROR,
    EXIT_NOT_CONVERGED,
)
from threshold_rl.exceptions import ConfigurationError
from threshold_rl.experiment_config import Algorithm, Task, TraceLevel
from threshold_rl.main import main
from threshold_rl.metrics import SweepStatistics, TrialMetrics
from threshold_rl.network import save_weights
from threshold_rl.parser import Subcommand


class TestCLIArguments:
    expected_help_output = "CLI to train threshold-assignment networks"
    expected_version_output = f"threshold-rl {__version__}"

    @pytest.mark.parametrize(
        "args, expected_output",
        [
            (["-h"], expected_help_output),
            (["--help"], expected_help_output),
            (["--version"], expected_version_output),
        ],
    )
    def test_help_version_arguments_output_and_exit(
        self, monkeypatch, args, expected_output, capsys
    ):
        monkeypatch.setattr("sys.argv", ["threshold-rl"] + args)

        with pytest.raises(SystemExit) as excinfo:
            parser.parse_args()

        assert excinfo.value.code == 0
        captured = capsys.readouterr()
        assert expected_output in captured.out

    @pytest.mark.parametrize(
        "arg, expected_attributes",
        [
            (["--seed", "7"], {"seed": 7}),
            (["--max-presentations", "500"], {"max_presentations": 500}),
            (["--probe-interval", "10"], {"probe_interval": 10}),
            (["--hidden-size", "20"], {"hidden_size": 20}),
            (["--layer-sizes", "9", "6", "5"], {"layer_sizes": [9, 6, 5]}),
            (["--lrate", "0.5"], {"lrate": 0.5}),
            (["--gamma", "0.9"], {"gamma": 0.9}),
            (["--reward-threshold", "0.7"], {"reward_threshold": 0.7}),
            (["--punish-range", "wide"], {"punish_range": (0.0, 1.0)}),
            (["--punish-range", "0.4,0.6"], {"punish_range": (0.4, 0.6)}),
            (["--required-cells", "3"], {"required_cells": [3]}),
            (["--extinction-after", "0"], {"extinction_after": 0}),
            (["--out", "results"], {"artifact_dir": Path("results")}),
            (["--name", "first"], {"name": "first"}),
            (["--generate-plots"], {"generate_plots": True}),
            (["--trace", "reward"], {"trace": TraceLevel.REWARD}),
            (["--save-weights", "w.yaml"], {"save_weights": Path("w.yaml")}),
            (["-v"], {"verbose": True}),
        ],
    )
    def test_non_defaulted_args(self, monkeypatch, arg, expected_attributes):
        combined_args = ["threshold-rl", "run", "--task", "maze", "--algo", "tar"]
        monkeypatch.setattr("sys.argv", combined_args + arg)
        args = parser.parse_args()

        for key, value in expected_attributes.items():
            assert getattr(args, key) == value

    def test_defaults(self, monkeypatch):
        monkeypatch.setattr(
            "sys.argv", ["threshold-rl", "run", "--task", "xor", "--algo", "tac"]
        )
        args = parser.parse_args()
        assert args.subcommand == Subcommand.RUN.to_lowercase()
        assert args.task == Task.XOR
        assert args.algo == Algorithm.TAC
        assert args.punish_range is None
        assert args.init_half_width is None
        assert args.artifact_dir == Path("artifacts")
        assert args.trace is None
        assert args.func == parser.run_handler
        cfg = parser.config_from_args(args)
        assert (cfg.params.punish_low, cfg.params.punish_high) == (0.0, 1.0)
        assert cfg.init_half_width == 1.5

    def test_sweep_parses_without_run_only_options(self, monkeypatch):
        monkeypatch.setattr(
            "sys.argv", ["threshold-rl", "sweep", "--task", "maze", "--algo", "tar"]
        )
        args = parser.parse_args()
        assert args.func == parser.sweep_handler
        assert not hasattr(args, "trace")
        assert not hasattr(args, "save_weights")
        cfg = parser.config_from_args(args)
        assert cfg.trace is None
        assert cfg.save_weights is None

    def test_sweep_artifacts_go_to_sweeps_dir(self, monkeypatch):
        monkeypatch.setattr(
            "sys.argv",
            ["threshold-rl", "sweep", "--task", "xor", "--algo", "tap", "--seeds", "3"],
        )
        args = parser.parse_args()
        assert args.artifact_dir == Path("artifacts") / "sweeps"
        assert args.seeds == 3
        assert args.workers == 1

    @pytest.mark.parametrize(
        "args, expected_output",
        [
            (["run", "--algo", "tap"], "The --task option is required"),
            (["run", "--task", "xor"], "The --algo option is required"),
            (
                ["run", "--task", "chess", "--algo", "tap"],
                "argument --task: invalid choice",
            ),
            (
                ["sweep", "--task", "xor", "--algo", "tap", "--seeds", "0"],
                "The --seeds option must be at least 1",
            ),
            (
                ["run", "--task", "xor", "--algo", "tap", "--punish-range", "loud"],
                "argument --punish-range",
            ),
            ([], "the following arguments are required: subcommand"),
        ],
    )
    def test_conditional_errors(self, args, expected_output, monkeypatch, capsys):
        monkeypatch.setattr("sys.argv", ["threshold-rl"] + args)

        with pytest.raises(SystemExit) as excinfo:
            parser.parse_args()

        assert excinfo.value.code != 0
        captured = capsys.readouterr()
        assert expected_output in captured.err


class TestPunishRange:
    @pytest.mark.parametrize(
        "value, expected",
        [("narrow", (0.45, 0.55)), ("WIDE", (0.0, 1.0)), ("0.2,0.8", (0.2, 0.8))],
    )
    def test_valid(self, value, expected):
        assert parser.punish_range(value) == expected

    @pytest.mark.parametrize("value", ["medium", "0.1", "0.1,0.2,0.3", "a,b"])
    def test_invalid(self, value):
        with pytest.raises(argparse.ArgumentTypeError):
            parser.punish_range(value)


class TestConfigFile:
    def write_config(self, tmp_path, values) -> Path:
        path = tmp_path / "experiment.yaml"
        path.write_text(yaml.safe_dump(values))
        return path

    def test_values_become_defaults(self, tmp_path):
        path = self.write_config(
            tmp_path,
            {
                "task": "maze",
                "algo": "tac",
                "max-presentations": 400,
                "punish_range": "wide",
                "seed": 9,
            },
        )
        args = parser.parse_args(["run", "--config", str(path)])
        assert args.task == Task.MAZE
        assert args.algo == Algorithm.TAC
        assert args.max_presentations == 400
        assert args.punish_range == (0.0, 1.0)
        assert args.seed == 9

    def test_command_line_wins(self, tmp_path):
        path = self.write_config(
            tmp_path, {"task": "maze", "algo": "tac", "max_presentations": 400}
        )
        args = parser.parse_args(
            ["run", "--config", str(path), "--max-presentations", "7", "--algo", "tar"]
        )
        assert args.max_presentations == 7
        assert args.algo == Algorithm.TAR

    def test_punish_range_as_list(self, tmp_path):
        path = self.write_config(
            tmp_path, {"task": "xor", "algo": "tap", "punish_range": [0.3, 0.7]}
        )
        args = parser.parse_args(["run", "--config", str(path)])
        assert args.punish_range == (0.3, 0.7)

    def test_unknown_key(self, tmp_path):
        path = self.write_config(tmp_path, {"task": "xor", "temperature": 3})
        with pytest.raises(ConfigurationError, match="temperature"):
            parser.parse_args(["run", "--config", str(path)])

    @pytest.mark.parametrize("subcommand", ["run", "sweep"])
    def test_keys_of_the_other_subcommand_are_ignored(self, tmp_path, subcommand):
        path = self.write_config(
            tmp_path,
            {"task": "xor", "algo": "tap", "seeds": 5, "trace": "reward"},
        )
        args = parser.parse_args([subcommand, "--config", str(path)])
        if subcommand == "run":
            assert args.trace == TraceLevel.REWARD
            assert not hasattr(args, "seeds")
        else:
            assert args.seeds == 5
            assert not hasattr(args, "trace")

    def test_nested_key(self, tmp_path):
        path = self.write_config(tmp_path, {"task": "xor", "network": {"hidden": 3}})
        with pytest.raises(ConfigurationError, match="nested"):
            parser.parse_args(["run", "--config", str(path)])

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigurationError):
            parser.parse_args(["run", "--config", str(tmp_path / "absent.yaml")])

    def test_unknown_task_in_file(self, tmp_path, capsys):
        path = self.write_config(tmp_path, {"task": "chess", "algo": "tap"})
        with pytest.raises(SystemExit):
            parser.parse_args(["run", "--config", str(path)])
        assert "Unknown task 'chess'" in capsys.readouterr().err


class TestMain:
    def test_run_writes_summary(self, tmp_path):
        code = main(
            [
                "run",
                "--task",
                "xor",
                "--algo",
                "supervised",
                "--max-presentations",
                "5",
                "--out",
                str(tmp_path),
            ]
        )
        assert code == EXIT_NOT_CONVERGED
        summary = json.loads((tmp_path / "xor_supervised_summary.json").read_text())
        assert summary["kind"] == "run"
        assert summary["metrics"]["presentations"] == 5
        assert (tmp_path / "xor_supervised_cells.csv").exists()

    def test_converged_run(self, tmp_path, solved_tracking_network):
        weights = tmp_path / "solved.yaml"
        save_weights(solved_tracking_network, weights)
        code = main(
            [
                "run",
                "--task",
                "tracking",
                "--algo",
                "tap",
                "--layer-sizes",
                "9",
                "4",
                "--load-weights",
                str(weights),
                "--out",
                str(tmp_path),
            ]
        )
        assert code == EXIT_CONVERGED

    def test_trace_and_plots(self, tmp_path):
        code = main(
            [
                "run",
                "--task",
                "xor",
                "--algo",
                "tap",
                "--max-presentations",
                "8",
                "--trace",
                "presentation",
                "--generate-plots",
                "--out",
                str(tmp_path),
            ]
        )
        assert code == EXIT_NOT_CONVERGED
        lines = (tmp_path / "xor_tap_trace.jsonl").read_text().splitlines()
        assert json.loads(lines[0]) == {"schema_version": 1, "level": "presentation"}
        assert [json.loads(line)["presentation"] for line in lines[1:]] == list(
            range(1, 9)
        )
        assert (tmp_path / "plots" / "xor_tap_reward_rate.html").exists()
        assert (tmp_path / "plots" / "xor_tap_reward_rate.csv").exists()

    def test_sweep(self, tmp_path):
        code = main(
            [
                "sweep",
                "--task",
                "xor",
                "--algo",
                "tap",
                "--max-presentations",
                "8",
                "--seeds",
                "2",
                "--out",
                str(tmp_path),
            ]
        )
        assert code == EXIT_NOT_CONVERGED
        summary = json.loads((tmp_path / "sweeps" / "xor_tap_summary.json").read_text())
        assert summary["kind"] == "sweep"
        assert [row["seed"] for row in summary["seeds"]] == [0, 1]

    @pytest.mark.parametrize(
        "extra",
        [
            ["--task", "xor", "--algo", "tap", "--env-config", "ENV"],
            ["--task", "maze", "--algo", "tar", "--env-config", "MISSING"],
            ["--task", "maze", "--algo", "tar", "--load-weights", "MISSING"],
            ["--task", "maze", "--algo", "tar", "--lrate", "-1"],
            ["--task", "maze", "--algo", "tap", "--required-cells", "1"],
        ],
    )
    def test_configuration_errors(self, tmp_path, extra):
        env = tmp_path / "env.yaml"
        env.write_text(yaml.safe_dump({"goal_cell": 4}))
        paths = {"ENV": str(env), "MISSING": str(tmp_path / "missing.yaml")}
        extra = [paths.get(a, a) for a in extra]
        code = main(["run", "--out", str(tmp_path)] + extra)
        assert code == EXIT_CONFIGURATION_ERROR

    def test_inspect_weights(self, tmp_path, capsys, solved_tracking_network):
        weights = tmp_path / "solved.yaml"
        save_weights(solved_tracking_network, weights)
        code = main(["inspect-weights", str(weights), "--task", "tracking"])
        assert code == EXIT_CONVERGED
        out = capsys.readouterr().out
        assert "Weights 9-4" in out
        assert "Greedy" in out
        assert out.count("^") == 3

    def test_unexpected_error(self, tmp_path, mocker):
        mocker.patch(
            "threshold_rl.parser.run_experiment", side_effect=RuntimeError("boom")
        )
        code = main(["run", "--task", "xor", "--algo", "tap", "--out", str(tmp_path)])
        assert code == EXIT_ERROR

    def test_sweep_forwards_workers(self, tmp_path, mocker):
        converged = TrialMetrics()
        converged.mark_converged(12)
        multi_seed = mocker.patch(
            "threshold_rl.parser.multi_seed",
            return_value=SweepStatistics([(0, converged)]),
        )
        code = main(
            [
                "sweep",
                "--task",
                "xor",
                "--algo",
                "tac",
                "--seeds",
                "1",
                "--workers",
                "4",
                "--out",
                str(tmp_path),
            ]
        )
        assert code == EXIT_CONVERGED
        cfg, n_seeds, workers = multi_seed.call_args.args
        assert cfg.algorithm == Algorithm.TAC
        assert (n_seeds, workers) == (1, 4)
