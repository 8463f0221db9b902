"""
Tests for the command-line interface.
"""

import orjson
import pytest
from click.testing import CliRunner

from src.cli import cli
from src.core import format_record_line, read_records
from src.datapipe import synthesize_corpus

PHONE_SPOKEN = "please call me back at eight oh five six seven zero zero four two three"
PHONE_WRITTEN = "Please call me back at 805-670-0423."


@pytest.fixture
def runner():
    return CliRunner(mix_stderr=False)


@pytest.fixture
def phone_tags(write_lines, phone_record):
    return write_lines("phone.tsv", [format_record_line(phone_record)])


@pytest.fixture
def records_file(write_lines, synthetic_records):
    return write_lines("train.tsv", [format_record_line(r) for r in synthetic_records[:60]])


class TestGroup:
    def test_version(self, runner):
        result = runner.invoke(cli, ["--version"])
        assert result.exit_code == 0
        assert "spokenfmt" in result.stdout
        assert "grammar archive v1" in result.stdout

    def test_bad_log_level(self, runner):
        result = runner.invoke(cli, ["--log-level", "LOUD", "synth", "1"])
        assert result.exit_code == 2

    def test_help_lists_commands(self, runner):
        result = runner.invoke(cli, ["--help"])
        for command in ("compile-grammars", "prepare", "train", "tag", "apply", "convert", "eval"):
            assert command in result.stdout


class TestConvert:
    def test_convert_with_tags(self, runner, write_lines, phone_tags):
        spoken = write_lines("spoken.txt", [PHONE_SPOKEN])
        result = runner.invoke(cli, ["convert", str(spoken), "--tags", str(phone_tags)])
        assert result.exit_code == 0, result.stderr
        assert result.stdout == PHONE_WRITTEN + "\n"

    def test_convert_from_stdin_keeps_empty_lines(self, runner, phone_tags):
        result = runner.invoke(
            cli, ["convert", "--tags", str(phone_tags)], input=f"\n{PHONE_SPOKEN}\n"
        )
        assert result.exit_code == 0, result.stderr
        assert result.stdout == f"\n{PHONE_WRITTEN}\n"

    def test_convert_needs_a_tag_source(self, runner, write_lines):
        spoken = write_lines("spoken.txt", ["hello"])
        result = runner.invoke(cli, ["convert", str(spoken)])
        assert result.exit_code == 1
        assert "error:" in result.stderr

    def test_convert_tags_run_out(self, runner, write_lines, phone_tags):
        spoken = write_lines("spoken.txt", [PHONE_SPOKEN, "one more line"])
        result = runner.invoke(cli, ["convert", str(spoken), "--tags", str(phone_tags)])
        assert result.exit_code == 1
        assert "ran out of records" in result.stderr


class TestApplyAndGrammars:
    def test_apply(self, runner, phone_tags, tmp_path):
        report = tmp_path / "report.jsonl"
        result = runner.invoke(cli, ["apply", str(phone_tags), "--report", str(report)])
        assert result.exit_code == 0, result.stderr
        assert result.stdout == PHONE_WRITTEN + "\n"
        assert orjson.loads(report.read_bytes().splitlines()[0])["unparsed_spans"] == []

    def test_compile_then_apply_from_archive(self, runner, grammar_dir, phone_tags, tmp_path):
        archive = tmp_path / "g" / "grammars.far"
        result = runner.invoke(cli, ["compile-grammars", str(grammar_dir), str(archive)])
        assert result.exit_code == 0, result.stderr
        assert archive.exists()
        result = runner.invoke(cli, ["apply", str(phone_tags), "--archive", str(archive)])
        assert result.stdout == PHONE_WRITTEN + "\n"

    def test_malformed_tags_exit_one(self, runner, write_lines):
        path = write_lines("bad.tsv", ["a b\tO O\tO O"])
        result = runner.invoke(cli, ["apply", str(path)])
        assert result.exit_code == 1
        assert "line 1" in result.stderr
        assert result.stdout == ""

    def test_missing_input_exit_two(self, runner, tmp_path):
        result = runner.invoke(cli, ["apply", str(tmp_path / "nope.tsv")])
        assert result.exit_code == 2
        assert "invalid configuration" in result.stderr

    def test_bad_rule_directory(self, runner, tmp_path):
        rules = tmp_path / "rules"
        rules.mkdir()
        (rules / "broken.grm").write_text('itn_time = "x" ', encoding="utf-8")
        result = runner.invoke(cli, ["compile-grammars", str(rules), str(tmp_path / "out.far")])
        assert result.exit_code == 1
        assert "broken.grm:1" in result.stderr


class TestDataCommands:
    def test_synth(self, runner, tmp_path):
        result = runner.invoke(cli, ["synth", "3", "--seed", "1"])
        assert result.exit_code == 0
        assert result.stdout.splitlines() == synthesize_corpus(3, seed=1)
        out = tmp_path / "synth.txt"
        runner.invoke(cli, ["synth", "2", "--seed", "1", "--out", str(out)])
        assert out.read_text(encoding="utf-8").splitlines() == synthesize_corpus(2, seed=1)

    def test_prepare(self, runner, write_lines, tmp_path):
        corpus = write_lines("corpus.txt", synthesize_corpus(30, seed=2) + ["too short"])
        prefix = tmp_path / "data" / "set"
        result = runner.invoke(cli, ["prepare", str(corpus), str(prefix), "--seed", "4"])
        assert result.exit_code == 0, result.stderr
        assert "read 31" in result.stderr
        assert "rejected 1" in result.stderr
        for part in ("train", "val"):
            assert (tmp_path / "data" / f"set.{part}.tsv").exists()
        manifest = orjson.loads((tmp_path / "data" / "set.manifest.json").read_bytes())
        assert manifest["seed"] == 4

    def test_prepare_markup(self, runner, write_lines, tmp_path):
        line = orjson.dumps({"words": ["um", "yes", "please."], "spans": [{"kind": "filler", "start": 0, "end": 1}]})
        corpus = write_lines("conv.jsonl", [line.decode()] * 10)
        result = runner.invoke(cli, ["prepare", str(corpus), str(tmp_path / "conv"), "--markup"])
        assert result.exit_code == 0, result.stderr
        assert (tmp_path / "conv.dev.tsv").exists()
        assert (tmp_path / "conv.test.tsv").exists()

    def test_stats(self, runner, records_file):
        result = runner.invoke(cli, ["stats", str(records_file)])
        assert result.exit_code == 0, result.stderr
        assert orjson.loads(result.stdout)["records"] == 60


class TestTrainTagEval:
    def test_train_then_tag(self, runner, records_file, write_lines, tmp_path):
        model = tmp_path / "m" / "joint.model"
        bpe = tmp_path / "m" / "bpe.txt"
        result = runner.invoke(
            cli,
            [
                "train", str(records_file),
                "--model", str(model),
                "--bpe", str(bpe),
                "--epochs", "2",
                "--feature-dim", str(1 << 14),
                "--vocab-size", "200",
                "--seed", "3",
            ],
        )
        assert result.exit_code == 0, result.stderr
        assert model.exists() and bpe.exists()
        log = [orjson.loads(line) for line in (tmp_path / "m" / "joint.model.log.jsonl").read_bytes().splitlines()]
        assert [entry["epoch"] for entry in log] == [1, 2]

        spoken = write_lines("spoken.txt", [PHONE_SPOKEN, "", "hello there"])
        result = runner.invoke(cli, ["tag", str(spoken), "--model", str(model), "--bpe", str(bpe)])
        assert result.exit_code == 0, result.stderr
        records = list(read_records(result.stdout.splitlines()))
        assert [len(r) for r in records] == [15, 2]

    def test_train_single_head(self, runner, records_file, tmp_path):
        model = tmp_path / "punct.model"
        result = runner.invoke(
            cli,
            ["train", str(records_file), "--model", str(model), "--task", "punct", "--epochs", "1",
             "--feature-dim", str(1 << 12), "--vocab-size", "200"],
        )
        assert result.exit_code == 0, result.stderr

    def test_bad_hyperparameter_exit_two(self, runner, records_file, tmp_path):
        result = runner.invoke(
            cli,
            ["train", str(records_file), "--model", str(tmp_path / "x.model"), "--feature-dim", "1000"],
        )
        assert result.exit_code == 2
        assert "feature_dim" in result.stderr

    def test_eval(self, runner, records_file, tmp_path):
        json_path = tmp_path / "report.json"
        result = runner.invoke(
            cli, ["eval", str(records_file), str(records_file), "--name", "gold", "--json", str(json_path)]
        )
        assert result.exit_code == 0, result.stderr
        lines = result.stdout.splitlines()
        assert lines[0].startswith("itn")
        assert any(line.startswith("gold") and line.endswith("100 100 100") for line in lines)
        report = orjson.loads(json_path.read_bytes())
        assert report["rows"][0]["tasks"]["punct"]["OVERALL"]["f1"] == 1.0

    def test_eval_length_mismatch(self, runner, records_file, phone_tags):
        result = runner.invoke(cli, ["eval", str(phone_tags), str(records_file)])
        assert result.exit_code == 1
        assert "error:" in result.stderr
