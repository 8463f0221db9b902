"""
Joint linear tagger: four classification heads over one hashed feature space,
trained on the evenly weighted mean of the per-head cross-entropies.
"""

import math
import struct
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import orjson

from ..core.tags import TASK_ORDER, Task, num_classes
from ..utils.exceptions import ModelFormatError, NonFiniteLossError
from .features import SentenceFeatures

MAGIC = b"SWFT"
FORMAT_VERSION = 1
_PREAMBLE = struct.Struct("<4sII")


@dataclass(frozen=True)
class LossComponents:
    """Per-head mean cross-entropies and their average.

    Heads that were not trained are None; ``ce_joint`` averages the rest.
    """

    ce_i: Optional[float]
    ce_p: Optional[float]
    ce_c: Optional[float]
    ce_d: Optional[float]
    ce_joint: float

    def by_task(self) -> Dict[Task, Optional[float]]:
        return dict(zip(TASK_ORDER, (self.ce_i, self.ce_p, self.ce_c, self.ce_d)))

    def to_dict(self) -> dict:
        return {
            "ce_i": self.ce_i,
            "ce_p": self.ce_p,
            "ce_c": self.ce_c,
            "ce_d": self.ce_d,
            "ce_joint": self.ce_joint,
        }


def _check_loss(value: float, name: str) -> float:
    value = float(value)
    if not math.isfinite(value) or value < 0:
        raise NonFiniteLossError(f"{name} loss is {value}", {"head": name, "value": value})
    return value


def joint_loss(per_head_losses: Sequence[float]) -> LossComponents:
    """CE_joint = (CE_i + CE_p + CE_c + CE_d) / 4."""
    if len(per_head_losses) != len(TASK_ORDER):
        raise NonFiniteLossError(
            f"expected {len(TASK_ORDER)} head losses, got {len(per_head_losses)}",
            {"count": len(per_head_losses)},
        )
    values = [_check_loss(v, task.value) for v, task in zip(per_head_losses, TASK_ORDER)]
    return LossComponents(*values, ce_joint=math.fsum(values) / len(values))


def loss_components(losses: Mapping[Task, float]) -> LossComponents:
    """LossComponents for any non-empty subset of heads."""
    if not losses:
        raise NonFiniteLossError("no head losses to combine", {})
    if len(losses) == len(TASK_ORDER):
        return joint_loss([losses[task] for task in TASK_ORDER])
    values = {task: _check_loss(losses[task], task.value) for task in losses}
    return LossComponents(
        *(values.get(task) for task in TASK_ORDER),
        ce_joint=math.fsum(values.values()) / len(values),
    )


def softmax_cross_entropy(scores: np.ndarray, labels: np.ndarray) -> Tuple[float, np.ndarray]:
    """Mean cross-entropy over rows and its gradient with respect to ``scores``."""
    rows = scores.shape[0]
    if rows == 0:
        return 0.0, np.zeros_like(scores)
    shifted = scores - scores.max(axis=1, keepdims=True)
    log_norm = np.log(np.exp(shifted).sum(axis=1, keepdims=True))
    log_probs = shifted - log_norm
    picked = log_probs[np.arange(rows), labels]
    loss = float(-picked.mean())
    grad = np.exp(log_probs)
    grad[np.arange(rows), labels] -= 1.0
    grad /= rows
    return loss, grad


@dataclass
class JointModel:
    feature_dim: int
    tasks: Tuple[Task, ...]
    weights: Dict[Task, np.ndarray]
    window: int = 2
    hyperparameters: Dict[str, float] = field(default_factory=dict)
    history: List[dict] = field(default_factory=list)

    def __post_init__(self):
        self.tasks = tuple(Task(task) for task in self.tasks)
        if not self.tasks:
            raise ModelFormatError("a model needs at least one head", {})
        for task in self.tasks:
            shape = self.weights[task].shape
            if shape != (self.feature_dim, num_classes(task)):
                raise ModelFormatError(
                    f"{task.value} head has shape {shape}, expected "
                    f"({self.feature_dim}, {num_classes(task)})",
                    {"task": task.value},
                )

    @classmethod
    def zeros(
        cls, feature_dim: int, tasks: Sequence[Task] = TASK_ORDER, window: int = 2, **hyperparameters
    ) -> "JointModel":
        """All heads start at zero, so every head predicts a uniform distribution."""
        weights = {
            Task(task): np.zeros((feature_dim, num_classes(Task(task))), dtype=np.float32)
            for task in tasks
        }
        return cls(feature_dim, tuple(weights), weights, window, dict(hyperparameters))

    @property
    def is_joint(self) -> bool:
        return len(self.tasks) == len(TASK_ORDER)

    def scores(self, features: SentenceFeatures, task: Task) -> np.ndarray:
        weights = self.weights[task]
        if features.num_tokens == 0:
            return np.zeros((0, weights.shape[1]), dtype=np.float64)
        rows = weights[features.indices].astype(np.float64)
        return np.add.reduceat(rows, features.offsets, axis=0)

    def predict_indices(self, features: SentenceFeatures) -> Dict[Task, np.ndarray]:
        """Argmax class per token; ties go to the lowest index."""
        return {task: np.argmax(self.scores(features, task), axis=1) for task in self.tasks}

    # ---- persistence --------------------------------------------------

    def header(self) -> dict:
        return {
            "feature_dim": self.feature_dim,
            "window": self.window,
            "tasks": [task.value for task in self.tasks],
            "classes": {task.value: num_classes(task) for task in self.tasks},
            "hyperparameters": self.hyperparameters,
            "history": self.history,
        }

    def to_bytes(self) -> bytes:
        header = orjson.dumps(self.header(), option=orjson.OPT_SORT_KEYS)
        parts = [_PREAMBLE.pack(MAGIC, FORMAT_VERSION, len(header)), header]
        for task in self.tasks:
            parts.append(np.ascontiguousarray(self.weights[task], dtype="<f4").tobytes())
        return b"".join(parts)

    @classmethod
    def from_bytes(cls, data: bytes) -> "JointModel":
        if len(data) < _PREAMBLE.size:
            raise ModelFormatError("model file is truncated", {"size": len(data)})
        magic, version, header_size = _PREAMBLE.unpack_from(data)
        if magic != MAGIC:
            raise ModelFormatError(f"not a tagger model (magic {magic!r})", {"magic": magic.hex()})
        if version != FORMAT_VERSION:
            raise ModelFormatError(
                f"unsupported model version {version}", {"version": version}
            )
        offset = _PREAMBLE.size
        try:
            header = orjson.loads(data[offset : offset + header_size])
            feature_dim = int(header["feature_dim"])
            tasks = [Task(name) for name in header["tasks"]]
            classes = {Task(name): int(count) for name, count in header["classes"].items()}
        except (orjson.JSONDecodeError, KeyError, ValueError, TypeError) as e:
            raise ModelFormatError(f"bad model header: {e}", {}) from e
        offset += header_size

        weights: Dict[Task, np.ndarray] = {}
        for task in tasks:
            if classes.get(task) != num_classes(task):
                raise ModelFormatError(
                    f"{task.value} head has {classes.get(task)} classes, expected {num_classes(task)}",
                    {"task": task.value},
                )
            size = feature_dim * num_classes(task) * 4
            if offset + size > len(data):
                raise ModelFormatError("model file is truncated", {"task": task.value})
            rows = np.frombuffer(data, dtype="<f4", count=size // 4, offset=offset)
            weights[task] = rows.reshape(feature_dim, num_classes(task)).astype(np.float32)
            offset += size
        if offset != len(data):
            raise ModelFormatError(
                f"{len(data) - offset} trailing bytes after weights", {"trailing": len(data) - offset}
            )
        return cls(
            feature_dim,
            tuple(tasks),
            weights,
            int(header.get("window", 2)),
            dict(header.get("hyperparameters", {})),
            list(header.get("history", [])),
        )

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_bytes(self.to_bytes())

    @classmethod
    def load(cls, path: Union[str, Path]) -> "JointModel":
        try:
            data = Path(path).read_bytes()
        except OSError as e:
            raise ModelFormatError(f"cannot read model {path}: {e}", {"path": str(path)}) from e
        return cls.from_bytes(data)
