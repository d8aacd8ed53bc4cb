"""Static interval stabbing: report all intervals containing a point.

Every position of the universe gets its answer list precomputed, so a
query touches exactly the k reported records. Space is the sum of point
coverages, which for every structure this package builds is O(n log n)
by the covering bounds of MUPS-like families.
"""

from typing import Any, List, Sequence, Tuple

import numpy as np

from .core import Interval


def _point_csr(pb: np.ndarray, pe: np.ndarray, payload: np.ndarray, universe: int):
    """CSR of payload lists per position 1..universe."""
    pb = np.asarray(pb, dtype=np.int64)
    pe = np.asarray(pe, dtype=np.int64)
    payload = np.asarray(payload, dtype=np.int64)
    off = np.zeros(universe + 2, dtype=np.int64)
    if len(pb) == 0:
        return off, np.zeros(0, dtype=np.int64)
    lens = pe - pb + 1
    total = int(lens.sum())
    rowidx = np.repeat(np.arange(len(pb), dtype=np.int64), lens)
    base = np.repeat(np.cumsum(lens) - lens, lens)
    pos = pb[rowidx] + (np.arange(total, dtype=np.int64) - base)
    order = np.argsort(pos, kind="stable")
    counts = np.bincount(pos, minlength=universe + 1)
    off[2 : universe + 2] = np.cumsum(counts[1:])
    off[1] = 0
    return off, payload[rowidx[order]]


class StabStructure:
    """Immutable point-stabbing structure over universe [1, U]."""

    def __init__(self, universe: int, intervals: Sequence[Tuple[Interval, Any]]):
        if universe < 1:
            raise ValueError("universe must be at least 1")
        self.universe = universe
        self.payloads: List[Any] = []
        b = np.empty(len(intervals), dtype=np.int64)
        e = np.empty(len(intervals), dtype=np.int64)
        for k, (iv, payload) in enumerate(intervals):
            if iv.e > universe:
                raise ValueError(f"interval {iv} outside universe [1, {universe}]")
            b[k] = iv.b
            e[k] = iv.e
            self.payloads.append(payload)
        self._off, self._vals = _point_csr(b, e, np.arange(len(intervals)), universe)

    def stab(self, q: int) -> List[Any]:
        """Payloads of the stored intervals containing q."""
        if not (1 <= q <= self.universe):
            raise ValueError(f"stab point {q} outside universe [1, {self.universe}]")
        sl = self._vals[self._off[q] : self._off[q + 1]]
        return [self.payloads[int(x)] for x in sl]

    def touched(self, q: int) -> int:
        """Records a stab(q) touches; equals the report size."""
        return int(self._off[q + 1] - self._off[q])


def build_stabbing(intervals: Sequence[Tuple[Interval, Any]], universe: int) -> StabStructure:
    return StabStructure(universe, intervals)


def stab(s: StabStructure, q: int) -> List[Any]:
    return s.stab(q)
