"""Palindromic analysis of a text.

Maximal palindromes for all 2n-1 centers, maximal palindromes with one
interior mismatch, and the eertree (all distinct palindromic substrings,
with occurrence counts and extreme occurrence positions).

Centers are encoded as center2 = b + e of the spanned interval: even
values are odd-length centers (a text position), odd values sit between
two positions.
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from ._accel import njit
from .core import Interval, Text
from .lce import BIG, LceIndex, build_lce


# ---------------------------------------------------------------------------
# maximal palindromes
# ---------------------------------------------------------------------------


def _radii(lce: LceIndex) -> Tuple[np.ndarray, np.ndarray]:
    """Arm lengths of the maximal palindrome at every center.

    rad_odd[c] (c = 1..n, entry c) and rad_even[c] (c = 1..n-1, center
    between c and c+1); index 0 unused.
    """
    n = lce.n
    c = np.arange(1, n + 1, dtype=np.int64)
    rad_odd = np.zeros(n + 1, dtype=np.int64)
    rad_odd[1:] = lce.lcp_mixed_vec(c + 1, c - 1)
    rad_even = np.zeros(max(n, 1), dtype=np.int64)
    if n > 1:
        ce = np.arange(1, n, dtype=np.int64)
        rad_even[1:n] = lce.lcp_mixed_vec(ce + 1, ce)
    return rad_odd, rad_even


@dataclass(frozen=True)
class MaximalPalindrome:
    """Maximal palindrome at one center; radius is the arm length."""

    center2: int
    radius: int

    @property
    def interval(self) -> Optional[Interval]:
        if self.center2 % 2 == 0:
            c = self.center2 // 2
            return Interval(c - self.radius, c + self.radius)
        if self.radius == 0:
            return None  # empty palindrome at an even center
        c = self.center2 // 2
        return Interval(c - self.radius + 1, c + self.radius)


def maximal_palindromes(t: Text, lce: Optional[LceIndex] = None) -> List[MaximalPalindrome]:
    """One record per center2 in 2..2n, in center order."""
    if lce is None:
        lce = build_lce(t)
    rad_odd, rad_even = _radii(lce)
    out = []
    for c2 in range(2, 2 * t.n + 1):
        if c2 % 2 == 0:
            out.append(MaximalPalindrome(c2, int(rad_odd[c2 // 2])))
        else:
            out.append(MaximalPalindrome(c2, int(rad_even[c2 // 2])))
    return out


# ---------------------------------------------------------------------------
# 1-mismatch maximal palindromes
# ---------------------------------------------------------------------------


@dataclass
class _OneMismatchArrays:
    """Column view of all 1-mismatch maximal palindromes (both parities)."""

    parity: np.ndarray  # 0 odd, 1 even
    center: np.ndarray  # integer center c (even: between c and c+1)
    r0: np.ndarray      # matching arm pairs inside the mismatch
    r1: np.ndarray      # matching pairs beyond the mismatch
    radius: np.ndarray  # r0 + 1 + r1
    p_left: np.ndarray  # mismatched position on the left arm
    p_right: np.ndarray  # mismatched position on the right arm


def _one_mismatch_arrays(lce: LceIndex) -> _OneMismatchArrays:
    n = lce.n
    rad_odd, rad_even = _radii(lce)

    c = np.arange(1, n + 1, dtype=np.int64)
    r0 = rad_odd[1:]
    ok = (c - r0 - 1 >= 1) & (c + r0 + 1 <= n)
    co, r0o = c[ok], r0[ok]
    r1o = lce.lcp_mixed_vec(co + r0o + 2, co - r0o - 2) if co.size else np.zeros(0, dtype=np.int64)

    if n > 1:
        ce = np.arange(1, n, dtype=np.int64)
        re0 = rad_even[1:n]
        oke = (ce - re0 >= 1) & (ce + 1 + re0 <= n)
        cev, r0e = ce[oke], re0[oke]
        r1e = lce.lcp_mixed_vec(cev + r0e + 2, cev - r0e - 1) if cev.size else np.zeros(0, dtype=np.int64)
    else:
        cev = r0e = r1e = np.zeros(0, dtype=np.int64)

    parity = np.concatenate([np.zeros(len(co), dtype=np.int64), np.ones(len(cev), dtype=np.int64)])
    center = np.concatenate([co, cev])
    r0a = np.concatenate([r0o, r0e])
    r1a = np.concatenate([r1o, r1e])
    radius = r0a + 1 + r1a
    p_left = np.where(parity == 0, center - r0a - 1, center - r0a)
    p_right = np.where(parity == 0, center + r0a + 1, center + 1 + r0a)
    return _OneMismatchArrays(parity, center, r0a, r1a, radius, p_left, p_right)


@dataclass(frozen=True)
class OneMismatchMaxPal:
    """Maximal palindrome with exactly one interior arm mismatch.

    The mismatch sits at the first disagreeing arm pair of the center:
    positions p_left and p_right mirror each other. Arms are reported as
    they survive a repair of either side: the right extended arm as an
    interval of T, the reversed left extended arm as an interval of T^R.
    """

    parity: str  # "odd" | "even"
    center2: int
    interval: Interval
    p_left: int
    p_right: int
    rarm_t: Interval
    larm_rev: Interval  # coordinates in T^R

    @property
    def mismatch_positions(self) -> Tuple[int, int]:
        return (self.p_left, self.p_right)


def one_mismatch_maximal_palindromes(t: Text, lce: Optional[LceIndex] = None) -> List[OneMismatchMaxPal]:
    """All centers whose arms can host one interior mismatch.

    Boundary-limited centers (the exact palindrome reaches a text end) are
    omitted: no substitution can extend them through a mismatch.
    """
    if lce is None:
        lce = build_lce(t)
    n = t.n
    arr = _one_mismatch_arrays(lce)
    out = []
    for k in range(len(arr.parity)):
        c = int(arr.center[k])
        R = int(arr.radius[k])
        if arr.parity[k] == 0:
            iv = Interval(c - R, c + R)
            rarm = Interval(c, c + R)
            larm_rev = Interval(n + 1 - c, n + 1 - c + R)
            out.append(
                OneMismatchMaxPal("odd", 2 * c, iv, int(arr.p_left[k]), int(arr.p_right[k]), rarm, larm_rev)
            )
        else:
            iv = Interval(c - R + 1, c + R)
            rarm = Interval(c + 1, c + R)
            larm_rev = Interval(n + 1 - c, n + 1 - c + R - 1)
            out.append(
                OneMismatchMaxPal("even", 2 * c + 1, iv, int(arr.p_left[k]), int(arr.p_right[k]), rarm, larm_rev)
            )
    return out


# ---------------------------------------------------------------------------
# distinct palindromes / eertree
# ---------------------------------------------------------------------------

ODD_ROOT = -1
EVEN_ROOT = -2


@dataclass
class PalTable:
    """All distinct palindromic substrings, one row per palindrome."""

    m: int
    length: np.ndarray
    b: np.ndarray        # first-occurrence start, 1-based
    lo: np.ndarray       # SA range in the T$ subworld
    hi: np.ndarray
    parent: np.ndarray   # pid of the inner contraction, or ODD_ROOT/EVEN_ROOT
    count: np.ndarray
    l1: np.ndarray       # leftmost occurrence start (== b)
    l2: np.ndarray       # second leftmost, 0 when absent
    r1: np.ndarray       # rightmost
    r2: np.ndarray       # second rightmost, 0 when absent
    elabel: np.ndarray   # edge label from the parent (outermost character)
    maxpal_pid: np.ndarray  # indexed by center2, -1 where no palindrome
    rad_odd: np.ndarray
    rad_even: np.ndarray
    # lookup support: pids sorted by (length, lo)
    _sorted_key: np.ndarray
    _sorted_pid: np.ndarray

    def lookup(self, b_arr: np.ndarray, len_arr: np.ndarray, sub_rank: np.ndarray) -> np.ndarray:
        """pid of the palindrome equal to T[b..b+len-1] (must exist)."""
        q = len_arr * np.int64(len(sub_rank) + 1) + sub_rank[b_arr - 1]
        idx = np.searchsorted(self._sorted_key, q, side="right") - 1
        pid = self._sorted_pid[idx]
        if len(b_arr) and not (
            np.all(self.length[pid] == len_arr)
            & np.all(self.lo[pid] <= sub_rank[b_arr - 1])
            & np.all(sub_rank[b_arr - 1] < self.hi[pid])
        ):
            raise AssertionError("palindrome lookup miss: interval is not a palindrome occurrence")
        return pid

    def interval_of(self, pid: int) -> Interval:
        return Interval(int(self.b[pid]), int(self.b[pid] + self.length[pid] - 1))


def _build_pal_table(t: Text, lce: LceIndex) -> PalTable:
    n = t.n
    sub = lce.sub
    rad_odd, rad_even = _radii(lce)

    # ends of the maximal palindrome per center; minimum center2 per end
    c = np.arange(1, n + 1, dtype=np.int64)
    ends_odd = c + rad_odd[1:]
    c2_odd = 2 * c
    if n > 1:
        ce = np.arange(1, n, dtype=np.int64)
        mask = rad_even[1:n] >= 1
        ends_even = (ce + rad_even[1:n])[mask]
        c2_even = (2 * ce + 1)[mask]
    else:
        ends_even = c2_even = np.zeros(0, dtype=np.int64)

    minc2 = np.full(n + 2, np.iinfo(np.int64).max, dtype=np.int64)
    np.minimum.at(minc2, ends_odd, c2_odd)
    if len(ends_even):
        np.minimum.at(minc2, ends_even, c2_even)
    suff = np.minimum.accumulate(minc2[::-1])[::-1]

    # longest palindromic suffix at every prefix end r: its start and length
    r = np.arange(1, n + 1, dtype=np.int64)
    c2min = suff[1 : n + 1]
    plen = 2 * r - c2min + 1
    pstart = r - plen + 1

    # group equal strings: same length and lcp >= length for rank-adjacent items
    order = np.lexsort((sub.rank[pstart - 1], plen))
    sl = plen[order]
    sb = pstart[order]
    if n > 1:
        adj = lce.world.lce0_vec(sb[:-1] - 1, sb[1:] - 1)
        newgrp = np.concatenate([[True], (sl[1:] != sl[:-1]) | (adj < sl[1:])])
    else:
        newgrp = np.array([True])
    gid = np.cumsum(newgrp) - 1
    m = int(gid[-1]) + 1
    starts = np.flatnonzero(newgrp)
    length = sl[starts]
    b = np.minimum.reduceat(sb, starts)

    lo, hi = sub.substr_range_vec(b - 1, length)
    count, l1, l2, r1, r2 = sub.extrema_vec(lo, hi)

    codes_arr = np.fromiter(t.codes, dtype=np.int64, count=n)

    # lookup: same-length SA ranges are disjoint, so (length, lo) is a key
    skey = length * np.int64(sub.N + 1) + lo
    sorder = np.argsort(skey)
    table = PalTable(
        m=m,
        length=length,
        b=b,
        lo=lo,
        hi=hi,
        parent=np.full(m, ODD_ROOT, dtype=np.int64),
        count=count,
        l1=l1,
        l2=l2,
        r1=r1,
        r2=r2,
        elabel=codes_arr[b - 1],
        maxpal_pid=np.full(2 * n + 1, -1, dtype=np.int64),
        rad_odd=rad_odd,
        rad_even=rad_even,
        _sorted_key=skey[sorder],
        _sorted_pid=sorder.astype(np.int64),
    )

    # parent links: contraction of the first occurrence
    parent = table.parent
    small = length == 2
    parent[small] = EVEN_ROOT
    deep = length >= 3
    if deep.any():
        parent[deep] = table.lookup(b[deep] + 1, length[deep] - 2, sub.rank)

    # maximal palindrome pid per center
    mp = table.maxpal_pid
    mp[c2_odd] = table.lookup(c - rad_odd[1:], 2 * rad_odd[1:] + 1, sub.rank)
    if len(c2_even):
        ces = (c2_even - 1) // 2
        rade = rad_even[ces]
        mp[c2_even] = table.lookup(ces - rade + 1, 2 * rade, sub.rank)

    return table


class Eertree:
    """All distinct palindromes of T as a pair of rooted trees.

    Node ids are 0..size-1; parents are the inner contractions, with the
    two roots as sentinels (ODD_ROOT for the length -1 root, EVEN_ROOT for
    the empty string). Each node carries its occurrence count and the four
    extreme occurrence starts.
    """

    def __init__(self, t: Text, pt: PalTable):
        self.t = t
        self._pt = pt

    @property
    def size(self) -> int:
        return self._pt.m

    def length(self, pid: int) -> int:
        return int(self._pt.length[pid])

    def parent(self, pid: int) -> int:
        return int(self._pt.parent[pid])

    def count(self, pid: int) -> int:
        return int(self._pt.count[pid])

    def edge_label(self, pid: int):
        return self.t.symbols[int(self._pt.elabel[pid])]

    def occurrence_extrema(self, pid: int) -> Tuple[int, int, int, int]:
        pt = self._pt
        return (int(pt.l1[pid]), int(pt.l2[pid]), int(pt.r1[pid]), int(pt.r2[pid]))

    def interval(self, pid: int) -> Interval:
        return self._pt.interval_of(pid)

    def node_string(self, pid: int) -> str:
        iv = self.interval(pid)
        return self.t.substring_str(iv.b, iv.e)

    def children(self, pid: int) -> List[int]:
        return [int(x) for x in np.flatnonzero(self._pt.parent == pid)]

    def nodes(self) -> range:
        return range(self._pt.m)


def build_eertree(t: Text, st=None, lce: Optional[LceIndex] = None) -> Eertree:
    """Eertree with occurrence statistics.

    Accepts an existing SuffixTreeView or LceIndex so the suffix structure
    is built once; builds one otherwise.
    """
    if lce is None:
        lce = getattr(st, "lce", None) or build_lce(t)
    return Eertree(t, _build_pal_table(t, lce))
