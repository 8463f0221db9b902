"""
Tests for hashed features, the joint linear model, training and tag sources.
"""

import math

import numpy as np
import pytest

from src.config.settings import TaggerConfig
from src.core import TASK_ORDER, CapTag, DisfTag, ItnTag, PunctTag, TagSet, Task, format_record_line, num_classes
from src.tagger import (
    FileTagSource,
    JointModel,
    LinearTagger,
    encode_records,
    encode_sentence,
    evaluate_loss,
    feature_index,
    joint_loss,
    load_tags,
    loss_components,
    predict,
    softmax_cross_entropy,
    token_shape,
    train,
    train_joint,
    train_single,
)
from src.tagger.model import MAGIC
from src.utils.exceptions import (
    EmptyCorpusError,
    LengthMismatchError,
    ModelFormatError,
    NonFiniteLossError,
    TagFormatError,
)


class TestFeatures:
    def test_feature_index_is_stable(self):
        assert feature_index("id=call", 1 << 16) == feature_index("id=call", 1 << 16)
        assert 0 <= feature_index("id=call", 1 << 10) < 1 << 10

    @pytest.mark.parametrize(
        "token,shape",
        [("call", "alpha"), ("42", "digit"), ("b12", "mixed"), ("<0xC3>", "mixed"), ("-", "other")],
    )
    def test_token_shape(self, token, shape):
        assert token_shape(token) == shape

    def test_one_block_per_token(self, bpe):
        sentence, features = encode_sentence(["call", "me", "back"], bpe, 1 << 16)
        assert features.num_tokens == len(sentence)
        assert features.offsets[0] == 0
        assert list(features.owners()[: features.offsets[1]]) == [0] * int(features.offsets[1])
        ends = list(features.offsets[1:]) + [len(features.indices)]
        for start, end in zip(features.offsets, ends):
            block = features.indices[start:end]
            assert len(set(block.tolist())) == len(block)

    def test_empty_sentence(self, bpe):
        _, features = encode_sentence([], bpe, 1 << 16)
        assert features.num_tokens == 0


class TestLoss:
    def test_joint_loss_is_fsum_mean(self):
        """Joint loss equals math.fsum of the four head losses divided by four."""
        rng = np.random.default_rng(0)
        for _ in range(1000):
            values = [float(v) for v in rng.random(4) * 10.0 ** rng.integers(-6, 4, size=4)]
            result = joint_loss(values)
            assert result.ce_joint == math.fsum(values) / 4
            assert (result.ce_i, result.ce_p, result.ce_c, result.ce_d) == tuple(values)

    @pytest.mark.parametrize("bad", [float("nan"), float("inf"), -0.1])
    def test_invalid_head_loss(self, bad):
        with pytest.raises(NonFiniteLossError) as exc_info:
            joint_loss([0.1, bad, 0.2, 0.3])
        assert exc_info.value.details["head"] == "punct"

    def test_wrong_head_count(self):
        with pytest.raises(NonFiniteLossError):
            joint_loss([0.1, 0.2])

    def test_subset_components(self):
        result = loss_components({Task.PUNCT: 0.4})
        assert result.ce_p == 0.4
        assert result.ce_i is None
        assert result.ce_joint == 0.4
        with pytest.raises(NonFiniteLossError):
            loss_components({})

    def test_softmax_uniform(self):
        loss, grad = softmax_cross_entropy(np.zeros((2, 4)), np.array([0, 3]))
        assert loss == pytest.approx(math.log(4))
        assert grad.sum() == pytest.approx(0.0)

    def test_softmax_gradient_matches_finite_differences(self):
        rng = np.random.default_rng(1)
        scores = rng.normal(size=(3, 5))
        labels = np.array([1, 4, 0])
        _, grad = softmax_cross_entropy(scores, labels)
        eps = 1e-6
        for row in range(3):
            for col in range(5):
                bumped = scores.copy()
                bumped[row, col] += eps
                numeric = (softmax_cross_entropy(bumped, labels)[0] - softmax_cross_entropy(scores, labels)[0]) / eps
                assert grad[row, col] == pytest.approx(numeric, abs=1e-4)

    def test_softmax_empty(self):
        loss, grad = softmax_cross_entropy(np.zeros((0, 3)), np.zeros(0, dtype=np.int64))
        assert loss == 0.0
        assert grad.shape == (0, 3)


class TestModelFormat:
    def model(self):
        model = JointModel.zeros(64, window=1, learning_rate=0.5)
        rng = np.random.default_rng(2)
        for task in model.tasks:
            model.weights[task][:] = rng.normal(size=model.weights[task].shape)
        model.history.append({"epoch": 1, "split": "train", "ce_joint": 0.5})
        return model

    def test_bytes_round_trip(self):
        model = self.model()
        data = model.to_bytes()
        assert data[:4] == MAGIC
        loaded = JointModel.from_bytes(data)
        assert loaded.tasks == TASK_ORDER
        assert loaded.window == 1
        assert loaded.hyperparameters == {"learning_rate": 0.5}
        assert loaded.history == model.history
        for task in TASK_ORDER:
            np.testing.assert_array_equal(loaded.weights[task], model.weights[task])
        assert loaded.to_bytes() == data

    def test_single_head_round_trip(self, tmp_path):
        model = JointModel.zeros(32, tasks=(Task.DISF,))
        path = tmp_path / "disf.model"
        model.save(path)
        loaded = JointModel.load(path)
        assert loaded.tasks == (Task.DISF,)
        assert not loaded.is_joint

    def test_bad_magic(self):
        data = bytearray(self.model().to_bytes())
        data[:4] = b"XXXX"
        with pytest.raises(ModelFormatError):
            JointModel.from_bytes(bytes(data))

    def test_bad_version(self):
        data = bytearray(self.model().to_bytes())
        data[4] = 7
        with pytest.raises(ModelFormatError) as exc_info:
            JointModel.from_bytes(bytes(data))
        assert exc_info.value.details["version"] == 7

    def test_truncated(self):
        data = self.model().to_bytes()
        with pytest.raises(ModelFormatError):
            JointModel.from_bytes(data[:-4])
        with pytest.raises(ModelFormatError):
            JointModel.from_bytes(data[:6])

    def test_trailing_bytes(self):
        with pytest.raises(ModelFormatError):
            JointModel.from_bytes(self.model().to_bytes() + b"\x00\x00\x00\x00")

    def test_wrong_shape(self):
        weights = {Task.PUNCT: np.zeros((8, 3), dtype=np.float32)}
        with pytest.raises(ModelFormatError):
            JointModel(8, (Task.PUNCT,), weights)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ModelFormatError):
            JointModel.load(tmp_path / "absent.model")


class TestTraining:
    def test_memorizes_one_example(self, phone_record, bpe):
        config = TaggerConfig(feature_dim=1 << 16, epochs=40, learning_rate=2.0, seed=1)
        model = train_joint([phone_record] * 10, bpe, config)
        assert predict(phone_record.words, model, bpe) == phone_record.tags
        encoded = encode_records([phone_record], bpe, config.feature_dim, config.window)
        assert evaluate_loss(model, encoded).ce_joint < 0.05

    def test_history_logs_mean_of_heads(self, synthetic_records, bpe, small_tagger_config):
        model = train_joint(synthetic_records[:50], bpe, small_tagger_config, validation=synthetic_records[50:60])
        assert [entry["split"] for entry in model.history] == ["train", "val"] * small_tagger_config.epochs
        for entry in model.history:
            heads = [entry["ce_i"], entry["ce_p"], entry["ce_c"], entry["ce_d"]]
            assert entry["ce_joint"] == math.fsum(heads) / 4

    def test_loss_decreases(self, synthetic_records, bpe, small_tagger_config):
        records = synthetic_records[:80]
        encoded = encode_records(records, bpe, small_tagger_config.feature_dim, small_tagger_config.window)
        before = evaluate_loss(JointModel.zeros(small_tagger_config.feature_dim), encoded)
        model = train_joint(records, bpe, small_tagger_config)
        after = evaluate_loss(model, encoded)
        assert before.ce_joint == pytest.approx(
            sum(math.log(num_classes(task)) for task in TASK_ORDER) / 4
        )
        assert after.ce_joint < before.ce_joint

    def test_joint_head_steps_are_quarter_size(self, phone_record, bpe):
        config = TaggerConfig(feature_dim=1 << 12, epochs=1, learning_rate=0.5, seed=3)
        joint = train_joint([phone_record], bpe, config)
        single = train_single([phone_record], Task.PUNCT, bpe, config)
        np.testing.assert_allclose(joint.weights[Task.PUNCT], 0.25 * single.weights[Task.PUNCT], rtol=1e-6)

    def test_single_head_model(self, synthetic_records, bpe, small_tagger_config):
        model = train_single(synthetic_records[:30], Task.PUNCT, bpe, small_tagger_config)
        assert model.tasks == (Task.PUNCT,)
        assert set(model.history[0]) >= {"ce_p", "ce_joint"}
        assert model.history[0]["ce_i"] is None
        tags = predict(["hello", "there"], model, bpe)
        assert tags.itn == (ItnTag.O, ItnTag.O)
        assert tags.disf == (DisfTag.O, DisfTag.O)

    def test_deterministic(self, synthetic_records, bpe, small_tagger_config):
        records = synthetic_records[:20]
        first = train_joint(records, bpe, small_tagger_config)
        second = train_joint(records, bpe, small_tagger_config)
        assert first.to_bytes() == second.to_bytes()

    def test_dropout_and_l2_stay_finite(self, synthetic_records, bpe):
        config = TaggerConfig(feature_dim=1 << 14, epochs=2, dropout=0.3, l2=0.01, seed=4)
        model = train(synthetic_records[:20], bpe, config=config)
        assert all(np.isfinite(model.weights[task]).all() for task in model.tasks)

    def test_empty_training_set(self, bpe, small_tagger_config):
        with pytest.raises(EmptyCorpusError):
            train_joint([], bpe, small_tagger_config)


class TestPredict:
    def test_empty_words(self, bpe):
        assert predict([], JointModel.zeros(64), bpe) == TagSet.empty(0)

    def test_zero_model_predicts_o(self, bpe):
        tags = predict(["call", "me"], JointModel.zeros(64), bpe)
        assert tags == TagSet.empty(2)

    def test_itn_is_repaired(self, bpe):
        model = JointModel.zeros(64)
        # Favour the continuation class of the first entity type everywhere.
        model.weights[Task.ITN][:, 2] = 1.0
        tags = predict(["four", "thirty"], model, bpe)
        assert tags.itn[0].is_begin
        assert tags.itn[1].continuation


class TestSources:
    def test_linear_tagger(self, tmp_path, bpe):
        model = JointModel.zeros(64)
        model.save(tmp_path / "m.model")
        bpe.save(tmp_path / "bpe.txt")
        tagger = LinearTagger.from_files(tmp_path / "m.model", tmp_path / "bpe.txt")
        assert list(tagger.tag_all([["a"], ["b", "c"]])) == [TagSet.empty(1), TagSet.empty(2)]

    def test_file_source(self, write_lines, phone_record):
        path = write_lines("tags.tsv", [format_record_line(phone_record)])
        source = FileTagSource(path)
        assert source.tag(phone_record.words) == phone_record.tags
        with pytest.raises(TagFormatError):
            source.tag(["more"])

    def test_file_source_length_mismatch(self, write_lines, phone_record):
        source = FileTagSource(write_lines("tags.tsv", [format_record_line(phone_record)]))
        with pytest.raises(LengthMismatchError):
            source.tag(["too", "short"])

    def test_load_tags_reports_line(self, write_lines, phone_record):
        path = write_lines("tags.tsv", [format_record_line(phone_record), "", "bad line"])
        with pytest.raises(TagFormatError) as exc_info:
            list(load_tags(path))
        assert exc_info.value.details["line"] == 3

    def test_load_tags_missing_file(self, tmp_path):
        with pytest.raises(TagFormatError):
            list(load_tags(tmp_path / "missing.tsv"))
