"""
Symbol table shared by every machine in a grammar set.
"""

from typing import Dict, Iterable, List, Optional

EPSILON = "<eps>"
SPACE = "<space>"


class SymbolTable:
    """Bidirectional map between symbols and dense ids; epsilon is id 0."""

    def __init__(self, symbols: Optional[Iterable[str]] = None):
        self._symbols: List[str] = [EPSILON]
        self._ids: Dict[str, int] = {EPSILON: 0}
        for symbol in symbols or ():
            if symbol != EPSILON:
                self.add(symbol)

    def add(self, symbol: str) -> int:
        """Return the id of ``symbol``, assigning the next free id if new."""
        found = self._ids.get(symbol)
        if found is not None:
            return found
        if not symbol:
            raise ValueError("empty symbol")
        self._ids[symbol] = len(self._symbols)
        self._symbols.append(symbol)
        return self._ids[symbol]

    def find(self, symbol: str) -> Optional[int]:
        return self._ids.get(symbol)

    def symbol(self, index: int) -> str:
        return self._symbols[index]

    def symbols(self) -> List[str]:
        """All symbols in id order, epsilon first."""
        return list(self._symbols)

    def __contains__(self, symbol: str) -> bool:
        return symbol in self._ids

    def __len__(self) -> int:
        return len(self._symbols)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymbolTable):
            return NotImplemented
        return self._symbols == other._symbols

    def __repr__(self) -> str:
        return f"SymbolTable(size={len(self)})"
