"""MUPS computation and per-MUPS arm data.

A palindrome is a MUPS when it occurs exactly once and its inner
contraction repeats; the empty string counts as repeating, so unique
single characters are MUPSs.
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .core import Interval, MupsSet, Text
from .lce import SuffixTreeView
from .palindromes import Eertree, PalTable


def _mups_pids(pt: PalTable) -> np.ndarray:
    """pids of all MUPSs, sorted by occurrence start."""
    par = pt.parent
    parent_repeats = np.where(par >= 0, pt.count[np.maximum(par, 0)] >= 2, True)
    is_mups = (pt.count == 1) & parent_repeats
    pids = np.flatnonzero(is_mups)
    return pids[np.argsort(pt.b[pids])]


@dataclass(frozen=True)
class MupsRecord:
    """One MUPS with its arm geometry.

    larm/rarm are the half-length arms (None for single characters);
    Larm/Rarm additionally take the center character of odd palindromes,
    so a single-character MUPS has Larm = Rarm = the character itself.
    """

    interval: Interval
    center2: int
    pid: int
    larm: Optional[Interval]
    rarm: Optional[Interval]
    Larm: Interval
    Rarm: Interval


def _record_for(pt: PalTable, pid: int) -> MupsRecord:
    b = int(pt.b[pid])
    ln = int(pt.length[pid])
    e = b + ln - 1
    half = ln // 2
    ext = (ln + 1) // 2
    larm = Interval(b, b + half - 1) if half else None
    rarm = Interval(e - half + 1, e) if half else None
    return MupsRecord(
        interval=Interval(b, e),
        center2=b + e,
        pid=pid,
        larm=larm,
        rarm=rarm,
        Larm=Interval(b, b + ext - 1),
        Rarm=Interval(e - ext + 1, e),
    )


def compute_mups(t: Text, eertree: Eertree) -> Tuple[MupsSet, List[MupsRecord]]:
    """The MUPS set of T plus one record per element, sorted by start."""
    pt = eertree._pt
    pids = _mups_pids(pt)
    records = [_record_for(pt, int(pid)) for pid in pids]
    return MupsSet([r.interval for r in records]), records


def arm_occurrences(t: Text, st: SuffixTreeView, m: MupsRecord) -> Tuple[List[int], List[int]]:
    """All occurrence starts of Larm_w and of Rarm_w in T (1-based, sorted).

    Rarm occurrences are reported in forward coordinates; the occurrence
    set of (Rarm_w)^R in T^R is the same set mirrored through n+1-pos.
    """
    sub = st.lce.sub
    out = []
    for arm in (m.Larm, m.Rarm):
        lo, hi = sub.substr_range_vec([arm.b - 1], [arm.length])
        starts = sub.sa[int(lo[0]) : int(hi[0])] + 1
        out.append(sorted(int(x) for x in starts))
    return out[0], out[1]
