"""Brute-force reference implementations for differential testing.

Everything here works on plain Python strings and shares no code with
the index structures; this module is the ground truth the fast path is
checked against.
"""

from dataclasses import dataclass
from typing import FrozenSet, List, Tuple, Union


def count_occurrences(text: str, w: str) -> int:
    """Number of (possibly overlapping) occurrences of w in text."""
    if not w:
        return len(text) + 1
    count = 0
    idx = text.find(w)
    while idx != -1:
        count += 1
        idx = text.find(w, idx + 1)
    return count


def occurrence_starts(text: str, w: str) -> List[int]:
    """1-based start positions of all occurrences of w in text."""
    if not w:
        return list(range(1, len(text) + 2))
    out = []
    idx = text.find(w)
    while idx != -1:
        out.append(idx + 1)
        idx = text.find(w, idx + 1)
    return out


@dataclass(frozen=True)
class OccurrenceSets:
    """beg/inbeg/xbeg occurrence-start sets of a pattern around position i."""

    beg: FrozenSet[int]
    inbeg: FrozenSet[int]
    xbeg: FrozenSet[int]


def naive_occurrences(text: str, w: Union[str, Tuple[int, int]], i: int) -> OccurrenceSets:
    """Occurrence start sets of w, split by whether the occurrence covers i.

    w is a pattern string or a 1-based (b, e) interval of text. For the
    empty pattern all n+1 "positions" count, and none covers i.
    """
    if isinstance(w, tuple):
        b, e = w
        w = text[b - 1 : e]
    if not w:
        beg = frozenset(range(1, len(text) + 2))
        return OccurrenceSets(beg, frozenset(), beg)
    beg = frozenset(occurrence_starts(text, w))
    inbeg = frozenset(b for b in beg if b <= i <= b + len(w) - 1)
    return OccurrenceSets(beg, inbeg, beg - inbeg)


def naive_mups(text: str) -> List[Tuple[int, int]]:
    """All MUPS intervals of text, by per-center search.

    For each palindromic center, occurrence counts only drop while the
    palindrome grows, so the MUPS at that center (if any) is the shortest
    unique palindrome there, and its contraction repeats by construction.
    """
    n = len(text)
    out = []
    for c2 in range(2, 2 * n + 1):
        if c2 % 2 == 0:
            b = e = c2 // 2
        else:
            b, e = (c2 - 1) // 2, (c2 + 1) // 2
            if text[b - 1] != text[e - 1]:
                continue
        while True:
            if count_occurrences(text, text[b - 1 : e]) == 1:
                out.append((b, e))
                break
            if b == 1 or e == n or text[b - 2] != text[e]:
                break
            b -= 1
            e += 1
    return sorted(out)


def naive_mups_enum(text: str) -> List[Tuple[int, int]]:
    """MUPSs by full enumeration of all substrings (cross-check oracle)."""
    n = len(text)
    out = []
    for b in range(1, n + 1):
        for e in range(b, n + 1):
            w = text[b - 1 : e]
            if w != w[::-1]:
                continue
            if count_occurrences(text, w) != 1:
                continue
            inner = text[b : e - 1]
            if inner == "" or count_occurrences(text, inner) >= 2:
                out.append((b, e))
    return sorted(out)


def substitute(text: str, i: int, s: str) -> str:
    if not (1 <= i <= len(text)):
        raise ValueError(f"position {i} out of range")
    if text[i - 1] == s:
        raise ValueError("substitution must change the character")
    return text[: i - 1] + s + text[i:]


def naive_delta(text: str, i: int, s: str) -> Tuple[List[Tuple[int, int]], List[Tuple[int, int]]]:
    """(removed, added) MUPS intervals for sub(i, s), from scratch."""
    before = set(naive_mups(text))
    after = set(naive_mups(substitute(text, i, s)))
    return sorted(before - after), sorted(after - before)
