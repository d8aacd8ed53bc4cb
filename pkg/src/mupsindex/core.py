"""Shared value types: texts, intervals, queries, MUPS sets and deltas.

Positions are 1-based everywhere; conversions to 0-based happen inside
the index structures, never at this API surface.
"""

from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Optional, Sequence, Tuple


@dataclass(frozen=True, order=True)
class Interval:
    """Closed interval [b, e] of 1-based text positions."""

    b: int
    e: int

    def __post_init__(self):
        if not (1 <= self.b <= self.e):
            raise ValueError(f"bad interval [{self.b}, {self.e}]")

    @property
    def length(self) -> int:
        return self.e - self.b + 1

    def covers(self, pos: int) -> bool:
        return self.b <= pos <= self.e

    def as_tuple(self) -> Tuple[int, int]:
        return (self.b, self.e)


class Text:
    """Immutable text over a dense integer alphabet.

    Symbols are coded 0..sigma-1 in order of first occurrence, so two
    texts that differ only by a renaming of symbols get identical codes.
    """

    __slots__ = ("codes", "n", "sigma", "symbols", "_code_of")

    def __init__(self, codes: Tuple[int, ...], symbols: Tuple[Hashable, ...]):
        self.codes = codes
        self.n = len(codes)
        self.symbols = symbols
        self.sigma = len(symbols)
        self._code_of = {sym: c for c, sym in enumerate(symbols)}

    def code_at(self, pos: int) -> int:
        """Code of T[pos], 1-based."""
        return self.codes[pos - 1]

    def symbol_at(self, pos: int) -> Hashable:
        return self.symbols[self.codes[pos - 1]]

    def code_of(self, symbol: Hashable) -> int:
        """Code of a symbol; symbols absent from the text map to sigma."""
        return self._code_of.get(symbol, self.sigma)

    def decode(self) -> list:
        return [self.symbols[c] for c in self.codes]

    def decode_str(self) -> str:
        """Original text as a string (symbols must be single characters)."""
        return "".join(str(self.symbols[c]) for c in self.codes)

    def substring_str(self, b: int, e: int) -> str:
        return "".join(str(self.symbols[c]) for c in self.codes[b - 1 : e])

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Text)
            and self.codes == other.codes
            and self.symbols == other.symbols
        )

    def __hash__(self):
        return hash((self.codes, self.symbols))

    def __repr__(self):
        preview = self.decode_str()
        if len(preview) > 32:
            preview = preview[:29] + "..."
        return f"Text({preview!r}, n={self.n}, sigma={self.sigma})"


def make_text(raw: Sequence[Hashable]) -> Text:
    """Build a Text from any symbol sequence (str, bytes, list, ...)."""
    if len(raw) == 0:
        raise ValueError("text must be nonempty")
    code_of: Dict[Hashable, int] = {}
    symbols: List[Hashable] = []
    codes: List[int] = []
    for sym in raw:
        c = code_of.get(sym)
        if c is None:
            c = len(symbols)
            code_of[sym] = c
            symbols.append(sym)
        codes.append(c)
    return Text(tuple(codes), tuple(symbols))


@dataclass(frozen=True)
class SubstitutionQuery:
    """sub(i, s): substitute T[i] by the character coded s.

    s may equal sigma, meaning a symbol that does not occur in T; the
    optional symbol field then names it (needed to materialize T').
    """

    i: int
    s: int
    symbol: Optional[Hashable] = field(default=None, compare=False)


def make_substitution(t: Text, i: int, symbol: Hashable) -> SubstitutionQuery:
    """Build a validated query from a raw replacement symbol."""
    if not (1 <= i <= t.n):
        raise ValueError(f"position {i} out of range 1..{t.n}")
    s = t.code_of(symbol)
    if s == t.code_at(i):
        raise ValueError(f"substitution at {i} must change the character")
    return SubstitutionQuery(i, s, symbol)


def check_query(t: Text, q: SubstitutionQuery) -> None:
    if not (1 <= q.i <= t.n):
        raise ValueError(f"position {q.i} out of range 1..{t.n}")
    if not (0 <= q.s <= t.sigma):
        raise ValueError(f"character code {q.s} out of range 0..{t.sigma}")
    if q.s == t.code_at(q.i):
        raise ValueError(f"substitution at {q.i} must change the character")


def apply_substitution(t: Text, q: SubstitutionQuery) -> Text:
    """Materialize T' (differs from T exactly at position q.i)."""
    check_query(t, q)
    if q.s < t.sigma:
        symbols = t.symbols
        new_code = q.s
    else:
        symbol = q.symbol
        if symbol is None or symbol in t._code_of:
            raise ValueError("fresh-code substitution needs a symbol absent from T")
        symbols = t.symbols + (symbol,)
        new_code = t.sigma
    codes = list(t.codes)
    codes[q.i - 1] = new_code
    return Text(tuple(codes), symbols)


class MupsSet:
    """Sorted set of MUPS intervals of one text.

    MUPSs never nest, so sorting by start also sorts by end; both are
    strictly increasing.
    """

    __slots__ = ("intervals",)

    def __init__(self, intervals: Sequence[Interval]):
        ivs = tuple(sorted(intervals))
        for a, b in zip(ivs, ivs[1:]):
            if a.b >= b.b or a.e >= b.e:
                raise ValueError(f"MUPS intervals nest or repeat: {a}, {b}")
        self.intervals = ivs

    def __len__(self):
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def __contains__(self, iv: Interval):
        return iv in set(self.intervals)

    def __eq__(self, other):
        return isinstance(other, MupsSet) and self.intervals == other.intervals

    def __repr__(self):
        return f"MupsSet({[iv.as_tuple() for iv in self.intervals]})"

    def as_tuples(self) -> List[Tuple[int, int]]:
        return [iv.as_tuple() for iv in self.intervals]


@dataclass(frozen=True)
class MupsDelta:
    """Changes of the MUPS interval set after one substitution."""

    removed: Tuple[Interval, ...]
    added: Tuple[Interval, ...]

    @property
    def size(self) -> int:
        return len(self.removed) + len(self.added)

    def apply(self, before: MupsSet) -> MupsSet:
        kept = [iv for iv in before if iv not in set(self.removed)]
        return MupsSet(kept + list(self.added))
