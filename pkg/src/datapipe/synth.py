"""
Synthetic written-form corpus.

Sentences are drawn from templates whose slots hold entities of every type,
mixed-case words and the three punctuation marks. Entity slots are never
adjacent, so every entity is separated from the next by a plain word.
"""

from typing import Callable, Dict, Iterator, List

import numpy as np

from ..utils.exceptions import ConfigurationError

NAMES = ("Sarah", "David", "Maria", "James", "Priya", "Tom", "Elena", "Omar", "Grace", "Lee")
PLACES = ("Boston", "Denver", "Paris", "Tokyo", "Chicago", "Seattle", "Austin", "Madrid")
ACRONYMS = ("NASA", "FBI", "IBM", "UN", "BBC", "CEO", "NBA", "USB")
ITEMS = ("ticket", "book", "lamp", "jacket", "coffee", "bike", "lunch", "chair")
EVENTS = ("meeting", "flight", "dinner", "class", "game", "call", "interview", "show")

TEMPLATES = (
    "the {item} costs {money}.",
    "{name} paid {money} for the {item}.",
    "did you really spend {money} on a {item}?",
    "I think the {item} was {money}, but I am not sure.",
    "the {event} starts at {time}.",
    "can we move the {event} to {time}?",
    "{name} said the {event} is at {time}, not later.",
    "please call me back at {phone}.",
    "my number is {phone}, call after {time}.",
    "she finished {ordinal} in the race.",
    "it is the {ordinal} time {name} asked about it.",
    "we celebrated our {ordinal} anniversary in {place}.",
    "there were {number} people at the {event}.",
    "{name} counted {number} {item}s in {place}.",
    "the value of pi is about {decimal}.",
    "the {item} weighs {decimal} pounds, right?",
    "the model number is {code}.",
    "did {name} order part {code} from {acronym}?",
    "the {acronym} report was filed on the {ordinal} day.",
    "{name} works at {acronym} in {place}, I believe.",
    "we met {name} in {place} last year.",
    "what time does the {event} end?",
    "I will bring the {item}, and {name} will bring {number} chairs.",
    "the {event} costs {money} and starts at {time}.",
    "room {number} is on the {ordinal} floor of the {acronym} building.",
)


def _money(rng: np.random.Generator) -> str:
    kind = rng.integers(4)
    if kind == 0:
        return f"${int(rng.integers(1, 100))}"
    if kind == 1:
        return f"${int(rng.integers(1, 100))}.{int(rng.integers(1, 100)):02d}"
    if kind == 2:
        return f"$0.{int(rng.integers(1, 100)):02d}"
    return f"${int(rng.integers(1, 10)) * 1000 + int(rng.integers(0, 10)) * 100:,}"


def _time(rng: np.random.Generator) -> str:
    hour = int(rng.integers(1, 13))
    minute = 0 if rng.random() < 0.3 else int(rng.integers(1, 60))
    meridiem = " AM" if rng.random() < 0.5 else " PM"
    if minute == 0:
        return f"{hour}:00{meridiem}"
    return f"{hour}:{minute:02d}{meridiem if rng.random() < 0.7 else ''}"


def _ordinal(rng: np.random.Generator) -> str:
    value = int(rng.integers(1, 1000)) if rng.random() < 0.3 else int(rng.integers(1, 100))
    if value % 100 in (11, 12, 13):
        suffix = "th"
    else:
        suffix = {1: "st", 2: "nd", 3: "rd"}.get(value % 10, "th")
    return f"{value}{suffix}"


def _number(rng: np.random.Generator) -> str:
    if rng.random() < 0.6:
        return str(int(rng.integers(2, 1000)))
    return f"{int(rng.integers(1000, 1_000_000)):,}"


def _phone(rng: np.random.Generator) -> str:
    digits = "".join(str(d) for d in rng.integers(0, 10, size=10))
    return f"{digits[:3]}-{digits[3:6]}-{digits[6:]}"


def _decimal(rng: np.random.Generator) -> str:
    places = int(rng.integers(1, 4))
    fraction = "".join(str(d) for d in rng.integers(0, 10, size=places))
    return f"{int(rng.integers(0, 100))}.{fraction}"


def _code(rng: np.random.Generator) -> str:
    length = int(rng.integers(2, 6))
    chars = [
        chr(ord("A") + int(rng.integers(26))) if rng.random() < 0.5 else str(int(rng.integers(10)))
        for _ in range(length)
    ]
    # Force at least one letter and one digit.
    chars[0] = chr(ord("A") + int(rng.integers(26)))
    chars[-1] = str(int(rng.integers(10)))
    return "".join(chars)


def _choice(values) -> Callable[[np.random.Generator], str]:
    return lambda rng: values[int(rng.integers(len(values)))]


SLOTS: Dict[str, Callable[[np.random.Generator], str]] = {
    "money": _money,
    "time": _time,
    "ordinal": _ordinal,
    "number": _number,
    "phone": _phone,
    "decimal": _decimal,
    "code": _code,
    "name": _choice(NAMES),
    "place": _choice(PLACES),
    "acronym": _choice(ACRONYMS),
    "item": _choice(ITEMS),
    "event": _choice(EVENTS),
}


def synthesize_sentence(rng: np.random.Generator) -> str:
    template = TEMPLATES[int(rng.integers(len(TEMPLATES)))]
    text = template.format_map(_Slots(rng))
    return text[0].upper() + text[1:]


class _Slots(dict):
    def __init__(self, rng: np.random.Generator):
        super().__init__()
        self.rng = rng

    def __missing__(self, key: str) -> str:
        return SLOTS[key](self.rng)


def synthesize_corpus(n: int, seed: int = 13) -> List[str]:
    """``n`` written sentences, identical for identical seeds."""
    return list(iter_synthetic(n, seed))


def iter_synthetic(n: int, seed: int = 13) -> Iterator[str]:
    if n < 0:
        raise ConfigurationError(f"corpus size must be non-negative, got {n}", {"n": n})
    rng = np.random.default_rng(seed)
    for _ in range(n):
        yield synthesize_sentence(rng)
