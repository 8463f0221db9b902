"""
Binary archive for compiled grammars.

Layout (little-endian)::

    magic "SWFG" | version u8 | symbol count u32 | (len u16, utf-8)*
    entry count u16 | per entry:
        name (len u16, utf-8) | input kind u8 | output kind u8
        states u32 | start u32 | finals u32 | (state u32, weight f64)*
        per state: arcs u32 | (ilabel u32, olabel u32, weight f64, next u32)*

Writing is deterministic: the same machines always produce the same bytes.
"""

import struct
from typing import BinaryIO, Dict, List, Tuple

from ..utils.exceptions import ArchiveFormatError
from .fst import Arc, Fst, TapeKind
from .symbols import EPSILON, SymbolTable

MAGIC = b"SWFG"
VERSION = 1

_KIND_CODES = {TapeKind.WORD: 0, TapeKind.CHAR: 1}
_KIND_FROM_CODE = {code: kind for kind, code in _KIND_CODES.items()}


def _pack_text(text: str) -> bytes:
    raw = text.encode("utf-8")
    return struct.pack("<H", len(raw)) + raw


def dumps(symbols: SymbolTable, entries: Dict[str, Fst]) -> bytes:
    parts: List[bytes] = [MAGIC, struct.pack("<B", VERSION)]
    table = symbols.symbols()
    parts.append(struct.pack("<I", len(table)))
    parts.extend(_pack_text(symbol) for symbol in table)

    parts.append(struct.pack("<H", len(entries)))
    for name, fst in entries.items():
        if fst.symbols is not symbols and fst.symbols != symbols:
            raise ArchiveFormatError(f"entry {name!r} uses a different symbol table", {"entry": name})
        parts.append(_pack_text(name))
        parts.append(
            struct.pack(
                "<BBIII",
                _KIND_CODES[fst.input_kind],
                _KIND_CODES[fst.output_kind],
                fst.num_states,
                fst.start,
                len(fst.finals),
            )
        )
        for state in sorted(fst.finals):
            parts.append(struct.pack("<Id", state, fst.finals[state]))
        for out in fst.arcs:
            parts.append(struct.pack("<I", len(out)))
            for arc in out:
                parts.append(struct.pack("<IIdI", arc.ilabel, arc.olabel, arc.weight, arc.nextstate))
    return b"".join(parts)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.offset = 0

    def unpack(self, fmt: str) -> Tuple:
        size = struct.calcsize(fmt)
        if self.offset + size > len(self.data):
            raise ArchiveFormatError(
                "archive truncated", {"offset": self.offset, "needed": size}
            )
        values = struct.unpack_from(fmt, self.data, self.offset)
        self.offset += size
        return values

    def text(self) -> str:
        (length,) = self.unpack("<H")
        if self.offset + length > len(self.data):
            raise ArchiveFormatError("archive truncated", {"offset": self.offset})
        raw = self.data[self.offset : self.offset + length]
        self.offset += length
        return raw.decode("utf-8")


def loads(data: bytes) -> Tuple[SymbolTable, Dict[str, Fst]]:
    if data[:4] != MAGIC:
        raise ArchiveFormatError("not a grammar archive (bad magic)", {"magic": data[:4].hex()})
    reader = _Reader(data)
    reader.offset = 4
    (version,) = reader.unpack("<B")
    if version != VERSION:
        raise ArchiveFormatError(
            f"unsupported archive version {version}", {"version": version, "supported": VERSION}
        )

    (count,) = reader.unpack("<I")
    table = [reader.text() for _ in range(count)]
    if not table or table[0] != EPSILON:
        raise ArchiveFormatError("symbol table must start with epsilon", {})
    symbols = SymbolTable(table)

    entries: Dict[str, Fst] = {}
    (entry_count,) = reader.unpack("<H")
    for _ in range(entry_count):
        name = reader.text()
        input_code, output_code, num_states, start, num_finals = reader.unpack("<BBIII")
        try:
            fst = Fst(
                symbols=symbols,
                input_kind=_KIND_FROM_CODE[input_code],
                output_kind=_KIND_FROM_CODE[output_code],
                start=start,
            )
        except KeyError:
            raise ArchiveFormatError(f"entry {name!r} has an unknown tape kind", {"entry": name}) from None
        for _ in range(num_finals):
            state, weight = reader.unpack("<Id")
            fst.finals[state] = weight
        for _ in range(num_states):
            (arc_count,) = reader.unpack("<I")
            fst.arcs.append([Arc(*reader.unpack("<IIdI")) for _ in range(arc_count)])
        try:
            fst.check_valid()
        except ValueError as e:
            raise ArchiveFormatError(f"entry {name!r} is corrupt: {e}", {"entry": name}) from e
        entries[name] = fst

    if reader.offset != len(data):
        raise ArchiveFormatError("trailing bytes after last entry", {"offset": reader.offset})
    return symbols, entries


def write_archive(stream: BinaryIO, symbols: SymbolTable, entries: Dict[str, Fst]) -> None:
    stream.write(dumps(symbols, entries))


def read_archive(stream: BinaryIO) -> Tuple[SymbolTable, Dict[str, Fst]]:
    return loads(stream.read())
