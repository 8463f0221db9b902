"""
Stochastic gradient descent for the joint and single-task linear taggers.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np

from ..config.logging_config import get_logger
from ..config.settings import TaggerConfig, get_settings
from ..core.records import TaggedRecord
from ..core.tags import TASK_ORDER, Task, class_index
from ..tokenizer.bpe import BpeModel
from ..tokenizer.projection import project_tags
from ..utils.exceptions import EmptyCorpusError
from ..utils.metrics import track_execution_time
from .features import SentenceFeatures, encode_sentence
from .model import JointModel, LossComponents, loss_components, softmax_cross_entropy

logger = get_logger(__name__)


@dataclass(frozen=True)
class EncodedSentence:
    features: SentenceFeatures
    labels: Dict[Task, np.ndarray]


def encode_records(
    records: Iterable[TaggedRecord], bpe: BpeModel, feature_dim: int, window: int = 2
) -> List[EncodedSentence]:
    """Token-level features and class labels for every record."""
    encoded = []
    for record in records:
        sentence, features = encode_sentence(record.words, bpe, feature_dim, window)
        token_tags = project_tags(record.tags, sentence.word_boundaries)
        labels = {
            task: np.fromiter(
                (class_index(task, tag) for tag in token_tags.task(task)),
                dtype=np.int64,
                count=len(token_tags),
            )
            for task in TASK_ORDER
        }
        encoded.append(EncodedSentence(features, labels))
    return encoded


def evaluate_loss(model: JointModel, sentences: Sequence[EncodedSentence]) -> LossComponents:
    """Token-weighted mean cross-entropy per head."""
    totals = {task: 0.0 for task in model.tasks}
    tokens = 0
    for sentence in sentences:
        count = sentence.features.num_tokens
        if count == 0:
            continue
        tokens += count
        for task in model.tasks:
            loss, _ = softmax_cross_entropy(
                model.scores(sentence.features, task), sentence.labels[task]
            )
            totals[task] += loss * count
    if tokens == 0:
        return loss_components({task: 0.0 for task in model.tasks})
    return loss_components({task: total / tokens for task, total in totals.items()})


def _dropout(
    features: SentenceFeatures, rate: float, rng: np.random.Generator
) -> np.ndarray:
    """Per-entry feature scale: 0 for dropped features, 1/(1-rate) for kept ones."""
    if rate <= 0.0:
        return np.ones(len(features.indices), dtype=np.float64)
    keep = rng.random(len(features.indices)) >= rate
    return keep / (1.0 - rate)


def _sgd_step(
    model: JointModel,
    sentence: SentenceFeatures,
    labels: Dict[Task, np.ndarray],
    scale: np.ndarray,
    learning_rate: float,
    l2: float,
    head_weight: float,
) -> Dict[Task, float]:
    owners = sentence.owners()
    losses = {}
    for task in model.tasks:
        weights = model.weights[task]
        rows = weights[sentence.indices].astype(np.float64) * scale[:, None]
        scores = np.add.reduceat(rows, sentence.offsets, axis=0)
        loss, grad = softmax_cross_entropy(scores, labels[task])
        losses[task] = loss
        if l2 > 0.0:
            touched = np.unique(sentence.indices)
            weights[touched] *= np.float32(1.0 - learning_rate * l2)
        update = (-learning_rate * head_weight) * grad[owners] * scale[:, None]
        np.add.at(weights, sentence.indices, update.astype(np.float32))
    return losses


@track_execution_time("tagger_train")
def train(
    records: Sequence[TaggedRecord],
    bpe: BpeModel,
    tasks: Sequence[Task] = TASK_ORDER,
    config: Optional[TaggerConfig] = None,
    validation: Optional[Sequence[TaggedRecord]] = None,
) -> JointModel:
    """Train the heads in ``tasks`` on the mean of their cross-entropies.

    Each head's gradient is scaled by ``1 / len(tasks)``, the derivative of
    the evenly weighted mean. Sentences are visited in a fresh seeded order
    every epoch; L2 decay is applied to the feature rows a sentence touches.
    """
    config = config or get_settings().tagger
    records = list(records)
    if not records:
        raise EmptyCorpusError("cannot train on an empty record stream", {})
    tasks = tuple(Task(task) for task in tasks)

    sentences = encode_records(records, bpe, config.feature_dim, config.window)
    held_out = (
        encode_records(validation, bpe, config.feature_dim, config.window) if validation else None
    )
    model = JointModel.zeros(
        config.feature_dim,
        tasks,
        config.window,
        learning_rate=config.learning_rate,
        epochs=config.epochs,
        l2=config.l2,
        dropout=config.dropout,
        seed=config.seed,
    )
    rng = np.random.default_rng(config.seed)
    head_weight = 1.0 / len(tasks)

    initial = evaluate_loss(model, sentences)
    logger.debug("Initial loss", **initial.to_dict())

    for epoch in range(1, config.epochs + 1):
        totals = {task: 0.0 for task in tasks}
        tokens = 0
        for position in rng.permutation(len(sentences)):
            sentence = sentences[position]
            count = sentence.features.num_tokens
            if count == 0:
                continue
            scale = _dropout(sentence.features, config.dropout, rng)
            losses = _sgd_step(
                model,
                sentence.features,
                sentence.labels,
                scale,
                config.learning_rate,
                config.l2,
                head_weight,
            )
            for task, loss in losses.items():
                totals[task] += loss * count
            tokens += count

        components = loss_components(
            {task: (total / tokens if tokens else 0.0) for task, total in totals.items()}
        )
        entry = {"epoch": epoch, "split": "train", **components.to_dict()}
        model.history.append(entry)
        logger.event("epoch_loss", **entry)
        if held_out:
            val = evaluate_loss(model, held_out)
            val_entry = {"epoch": epoch, "split": "val", **val.to_dict()}
            model.history.append(val_entry)
            logger.event("epoch_loss", **val_entry)

    logger.info(
        "Trained tagger",
        heads=[task.value for task in tasks],
        sentences=len(sentences),
        epochs=config.epochs,
    )
    return model


def train_joint(
    records: Sequence[TaggedRecord],
    bpe: BpeModel,
    config: Optional[TaggerConfig] = None,
    validation: Optional[Sequence[TaggedRecord]] = None,
) -> JointModel:
    return train(records, bpe, TASK_ORDER, config, validation)


def train_single(
    records: Sequence[TaggedRecord],
    task: Task,
    bpe: BpeModel,
    config: Optional[TaggerConfig] = None,
    validation: Optional[Sequence[TaggedRecord]] = None,
) -> JointModel:
    """One head, trained on its own cross-entropy only."""
    return train(records, bpe, (Task(task),), config, validation)
