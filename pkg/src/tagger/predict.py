"""
Word-level tag prediction with a trained linear tagger.
"""

from typing import Sequence

from ..core.spans import repair_itn
from ..core.tags import TASK_ORDER, Task, outside, tag_from_index
from ..core.tagset import TagSet
from ..tokenizer.bpe import BpeModel
from ..tokenizer.projection import collapse_tags
from .features import encode_sentence
from .model import JointModel


def predict(words: Sequence[str], model: JointModel, bpe: BpeModel) -> TagSet:
    """Argmax per token and head, collapsed to words, ITN repaired.

    Heads the model does not have predict O everywhere.
    """
    if not words:
        return TagSet.empty(0)
    sentence, features = encode_sentence(words, bpe, model.feature_dim, model.window)
    indices = model.predict_indices(features)
    token_tags = {}
    for task in TASK_ORDER:
        if task in indices:
            token_tags[task] = [tag_from_index(task, int(i)) for i in indices[task]]
        else:
            token_tags[task] = [outside(task)] * len(sentence)
    collapsed = collapse_tags(TagSet.from_tasks(token_tags), sentence.word_boundaries)
    return collapsed.replace(Task.ITN, repair_itn(collapsed.itn))
