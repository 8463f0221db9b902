"""
Written-form record cleaning.
"""

import re
from typing import List, NamedTuple, Optional

PUNCTUATION = ",.?"
_REJECT = re.compile(r"[\"“”„«»`()\[\]{}]")
_PUNCT_ONLY = re.compile(rf"[{re.escape(PUNCTUATION)}]+")
_TRAILING = re.compile(rf"[{re.escape(PUNCTUATION)}]+$")
_LEADING = re.compile(rf"^[{re.escape(PUNCTUATION)}]+")


class CleanResult(NamedTuple):
    text: Optional[str]
    reason: Optional[str] = None

    @property
    def kept(self) -> bool:
        return self.text is not None


def _keep_char(text: str, position: int) -> bool:
    char = text[position]
    if char.isalnum() or char in PUNCTUATION:
        return True
    before = text[position - 1] if position > 0 else ""
    after = text[position + 1] if position + 1 < len(text) else ""
    if char == "'":
        return before.isalpha() or after.isalpha()
    if char == "-":
        return before.isalnum() and after.isalnum()
    if char == "$":
        return after.isdigit()
    if char == ":":
        return before.isdigit() and after.isdigit()
    return False


def _normalize_tokens(tokens: List[str]) -> List[str]:
    result: List[str] = []
    for token in tokens:
        if _PUNCT_ONLY.fullmatch(token):
            if result:
                result[-1] = _TRAILING.sub("", result[-1]) + token[-1]
            continue
        token = _LEADING.sub("", token)
        trailing = _TRAILING.search(token)
        if trailing:
            token = token[: trailing.start()] + trailing.group()[-1]
        if token:
            result.append(token)
    return result


def count_tokens(text: str) -> int:
    """Words plus sentence punctuation marks."""
    tokens = text.split()
    return len(tokens) + sum(1 for token in tokens if token[-1] in PUNCTUATION)


def clean_with_reason(text: str, min_words: int = 4) -> CleanResult:
    if _REJECT.search(text):
        return CleanResult(None, "quotation marks or brackets")
    kept = "".join(
        char if _keep_char(text, i) else " " for i, char in enumerate(text)
    )
    tokens = _normalize_tokens(kept.split())
    cleaned = " ".join(tokens)
    if not cleaned:
        return CleanResult(None, "empty")
    if count_tokens(cleaned) < min_words:
        return CleanResult(None, f"fewer than {min_words} tokens")
    return CleanResult(cleaned)


def clean_record(text: str, min_words: int = 4) -> Optional[str]:
    """Cleaned text, or None when the record is rejected."""
    return clean_with_reason(text, min_words).text
