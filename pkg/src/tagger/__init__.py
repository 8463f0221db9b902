"""
Tagger Module
Stage 1 tag prediction: hashed-feature joint linear tagger and file-based tag sources.
"""

from .features import SentenceFeatures, encode_sentence, extract_features, feature_index, token_shape
from .model import (
    FORMAT_VERSION,
    JointModel,
    LossComponents,
    joint_loss,
    loss_components,
    softmax_cross_entropy,
)
from .predict import predict
from .sources import FileTagSource, LinearTagger, TagSource, load_tags
from .training import encode_records, evaluate_loss, train, train_joint, train_single

__all__ = [
    # Features
    "SentenceFeatures",
    "encode_sentence",
    "extract_features",
    "feature_index",
    "token_shape",
    # Model
    "FORMAT_VERSION",
    "JointModel",
    "LossComponents",
    "joint_loss",
    "loss_components",
    "softmax_cross_entropy",
    # Training
    "encode_records",
    "evaluate_loss",
    "train",
    "train_joint",
    "train_single",
    # Prediction
    "predict",
    "TagSource",
    "LinearTagger",
    "FileTagSource",
    "load_tags",
]
