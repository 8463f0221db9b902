"""
GrammarSet: the five compiled ITN grammars plus their TN inverses.
"""

import re
import threading
from pathlib import Path
from typing import Dict, Iterable, Optional, Pattern, Sequence, Tuple, Union

from ..config.logging_config import get_logger
from ..core.tags import EntityType
from ..utils.exceptions import ArchiveFormatError, MissingEntryPointError
from ..utils.metrics import track_execution_time
from . import archive, ops
from .compiler import ENTRY_PREFIX, GrammarCompiler
from .fst import Fst, TapeKind
from .search import DEFAULT_MAX_EXPANSIONS, TranslationResult, shortest_path
from .symbols import SymbolTable

GRAMMAR_SUFFIX = ".grm"

# Longest match wins first; equal lengths fall back to this order.
ENTITY_PRIORITY: Tuple[EntityType, ...] = (
    EntityType.MONEY,
    EntityType.TIME,
    EntityType.ORDINAL,
    EntityType.NUMERIC,
    EntityType.ALPHANUMERIC,
)

# Written-form shapes each grammar can possibly produce. Spans that do not
# match are never searched.
_AMOUNT = r"\d{1,3}(?:,\d{3})*"
WRITTEN_TRIGGERS: Dict[EntityType, Pattern[str]] = {
    EntityType.MONEY: re.compile(rf"\${_AMOUNT}(?:\.\d\d)?"),
    EntityType.TIME: re.compile(r"\d{1,2}:\d\d(?: [AP]M)?"),
    EntityType.ORDINAL: re.compile(rf"{_AMOUNT}(?:st|nd|rd|th)"),
    EntityType.NUMERIC: re.compile(rf"{_AMOUNT}(?:\.\d+)?|\d{{2,9}}|\d{{3}}-\d{{3}}-\d{{4}}"),
    EntityType.ALPHANUMERIC: re.compile(r"(?=[A-Z0-9]*\d)(?=[A-Z0-9]*[A-Z])[A-Z0-9]{2,14}"),
}


def entry_name(entity: EntityType) -> str:
    return f"{ENTRY_PREFIX}{entity.value}"


class GrammarSet:
    """Compiled spoken-to-written grammars, one per entity type."""

    def __init__(
        self,
        symbols: SymbolTable,
        itn: Dict[EntityType, Fst],
        max_expansions: int = DEFAULT_MAX_EXPANSIONS,
    ):
        missing = [entity for entity in EntityType if entity not in itn]
        if missing:
            raise MissingEntryPointError(
                f"missing grammar entry point {entry_name(missing[0])!r}",
                {"entity": missing[0].value, "missing": [e.value for e in missing]},
            )
        self.symbols = symbols
        self._itn = {entity: itn[entity] for entity in EntityType}
        self._tn: Dict[EntityType, Fst] = {}
        self._lock = threading.Lock()
        self.max_expansions = max_expansions
        self.logger = get_logger(self.__class__.__name__)

    # ---- construction -------------------------------------------------

    @classmethod
    def from_sources(cls, sources: Iterable[Tuple[str, str]], **kwargs) -> "GrammarSet":
        """Compile ``(origin, rule text)`` pairs sharing one namespace."""
        compiler = GrammarCompiler()
        compiler.add_sources(sources)
        itn: Dict[EntityType, Fst] = {}
        for entity in EntityType:
            name = entry_name(entity)
            if name not in compiler.rules:
                raise MissingEntryPointError(
                    f"missing grammar entry point {name!r}", {"entity": entity.value}
                )
            itn[entity] = compiler.compile(name)
        return cls(compiler.symbols, itn, **kwargs)

    @classmethod
    @track_execution_time("grammar_compile")
    def from_directory(cls, directory: Union[str, Path], **kwargs) -> "GrammarSet":
        directory = Path(directory)
        files = sorted(directory.glob(f"*{GRAMMAR_SUFFIX}"))
        sources = [(str(path.name), path.read_text(encoding="utf-8")) for path in files]
        grammars = cls.from_sources(sources, **kwargs)
        grammars.logger.debug(
            "Compiled grammars",
            directory=str(directory),
            files=len(files),
            states=sum(fst.num_states for fst in grammars._itn.values()),
        )
        return grammars

    def to_bytes(self) -> bytes:
        return archive.dumps(self.symbols, {entry_name(e): fst for e, fst in self._itn.items()})

    @classmethod
    def from_bytes(cls, data: bytes, **kwargs) -> "GrammarSet":
        symbols, entries = archive.loads(data)
        itn: Dict[EntityType, Fst] = {}
        for name, fst in entries.items():
            try:
                entity = EntityType(name[len(ENTRY_PREFIX):])
            except ValueError:
                raise ArchiveFormatError(f"unknown archive entry {name!r}", {"entry": name}) from None
            if fst.input_kind != TapeKind.WORD or fst.output_kind != TapeKind.CHAR:
                raise ArchiveFormatError(
                    f"entry {name!r} is not a spoken-to-written machine", {"entry": name}
                )
            itn[entity] = fst
        return cls(symbols, itn, **kwargs)

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_bytes(self.to_bytes())

    @classmethod
    def load(cls, path: Union[str, Path], **kwargs) -> "GrammarSet":
        return cls.from_bytes(Path(path).read_bytes(), **kwargs)

    # ---- access -------------------------------------------------------

    def itn(self, entity: EntityType) -> Fst:
        return self._itn[entity]

    def tn(self, entity: EntityType) -> Fst:
        """Written-to-spoken machine, built by inversion on first use."""
        fst = self._tn.get(entity)
        if fst is None:
            with self._lock:
                fst = self._tn.get(entity)
                if fst is None:
                    fst = self._tn[entity] = ops.invert(self._itn[entity])
        return fst

    def format(self, entity: EntityType, spoken: Sequence[str]) -> TranslationResult:
        """Spoken words to written words; raises NoParse."""
        return shortest_path(self._itn[entity], spoken, self.max_expansions)

    def verbalize(self, entity: EntityType, written: Sequence[str]) -> TranslationResult:
        """Written words to spoken words; raises NoParse."""
        return shortest_path(self.tn(entity), written, self.max_expansions)

    @staticmethod
    def could_be_written(entity: EntityType, written: Sequence[str]) -> bool:
        return WRITTEN_TRIGGERS[entity].fullmatch(" ".join(written)) is not None

    def stats(self) -> Dict[str, Dict[str, int]]:
        return {
            entity.value: {"states": fst.num_states, "arcs": fst.num_arcs}
            for entity, fst in self._itn.items()
        }

    def __repr__(self) -> str:
        return f"GrammarSet(symbols={len(self.symbols)}, entities={len(self._itn)})"


_default_lock = threading.Lock()
_default_cache: Dict[str, GrammarSet] = {}


def load_grammars(
    directory: Optional[Union[str, Path]] = None, archive_path: Optional[Union[str, Path]] = None
) -> GrammarSet:
    """Load from an archive when given, else compile a rule directory (cached per path)."""
    if archive_path is not None:
        key = f"archive:{Path(archive_path).resolve()}"
    else:
        if directory is None:
            from ..config.settings import get_settings

            directory = get_settings().grammar.dir
        key = f"dir:{Path(directory).resolve()}"
    with _default_lock:
        cached = _default_cache.get(key)
        if cached is None:
            if archive_path is not None:
                cached = GrammarSet.load(archive_path)
            else:
                cached = GrammarSet.from_directory(directory)
            _default_cache[key] = cached
    return cached
