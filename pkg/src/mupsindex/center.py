"""Longest palindrome centered at the edited position that survives in T.

For each odd palindrome of T, the locus of its right arm is colored with
(center character, is-MUPS flag). A substitution query walks from the
locus of the right arm of the maximal palindrome around the edit to its
deepest colored ancestors: color (s, 0) and (s, 1) certify occurrence,
and the flagged one pins both uniqueness and the contained MUPS. Even
palindromes get one shared color so arm-presence queries work for both
parities.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from .core import Interval, SubstitutionQuery, Text, check_query
from .lce import LaminarSet, LceIndex, SuffixTreeView
from .palindromes import Eertree, PalTable
from .static_mups import MupsRecord, _mups_pids

EVEN_ANY = -1  # parity-only color used by arm-presence (NMA) queries


@dataclass(frozen=True)
class CenterAnswer:
    """Answer to the centered-palindrome subproblem for sub(i, s).

    v: longest odd palindrome of T' centered at i that occurs in T (as an
    interval of T', None when even the character s is absent from T);
    ell_prime: extended-arm length of the shortest palindrome centered at
    i that is absent from T (1 when v is None).
    """

    v: Optional[Interval]
    is_unique_in_T: bool
    contained_mups: Optional[Interval]
    ell_prime: int


class CenterIndex:
    def __init__(self, t: Text, lce: LceIndex, pt: PalTable, mups_pids: np.ndarray):
        self.t = t
        self.lce = lce
        self.pt = pt
        self.n = t.n
        self.sigma = t.sigma
        n = t.n
        world = lce.world

        is_mups = np.zeros(pt.m, dtype=bool)
        is_mups[mups_pids] = True
        self.is_mups = is_mups

        # colored rows: one per distinct palindrome, at its right-arm locus
        codes_arr = np.fromiter(t.codes, dtype=np.int64, count=n)
        odd = np.flatnonzero(pt.length % 2 == 1)
        even = np.flatnonzero(pt.length % 2 == 0)
        odd_c = pt.b[odd] + (pt.length[odd] - 1) // 2
        centers_code = codes_arr[odd_c - 1]
        odd_armlen = (pt.length[odd] - 1) // 2
        odd_lo, odd_hi = world.substr_range_vec(odd_c, odd_armlen)
        # color id: 2*code + flag for odd, 2*sigma for the even pool
        odd_color = 2 * centers_code + is_mups[odd]
        even_b = pt.b[even]
        even_len = pt.length[even]
        even_lo, even_hi = world.substr_range_vec(even_b + even_len // 2 - 1, even_len // 2)
        color = np.concatenate([odd_color, np.full(len(even), 2 * t.sigma, dtype=np.int64)])
        lo = np.concatenate([odd_lo, even_lo])
        hi = np.concatenate([odd_hi, even_hi])
        dep = np.concatenate([odd_armlen, even_len // 2])
        payload = np.concatenate([odd, even])
        self.lam = LaminarSet(2 * t.sigma + 1, color, lo, hi, dep, payload, world.N)

        # entry locus per position: right arm of the maximal palindrome
        # there, addressed by the suffix rank of its start
        pos = np.arange(1, n + 1, dtype=np.int64)
        self.entry_rank = world.rank[pos]
        self.entry_dep = pt.rad_odd[1:].copy()

    def color_of(self, code: int, flag: bool) -> int:
        return 2 * code + int(flag) if code != EVEN_ANY else 2 * self.sigma

    def answer(self, i: int, s: int) -> CenterAnswer:
        """Problem answer for sub(i, s); s is a character code."""
        if s >= self.sigma:
            return CenterAnswer(None, False, None, 1)
        lam = self.lam
        qlo = int(self.entry_rank[i - 1])
        qhi = qlo + 1
        qdep = int(self.entry_dep[i - 1])
        i0 = lam.nca(2 * s, qlo, qhi, qdep)
        i1 = lam.nca(2 * s + 1, qlo, qhi, qdep)
        d0 = int(lam.dep[i0]) if i0 >= 0 else -1
        d1 = int(lam.dep[i1]) if i1 >= 0 else -1
        if d0 < 0 and d1 < 0:
            return CenterAnswer(None, False, None, 1)
        d = max(d0, d1)
        mups_iv = None
        if i1 >= 0:
            pid = int(lam.payload[i1])
            mb = int(self.pt.b[pid])
            mups_iv = Interval(mb, mb + int(self.pt.length[pid]) - 1)
        return CenterAnswer(
            v=Interval(i - d, i + d),
            is_unique_in_T=i1 >= 0,
            contained_mups=mups_iv,
            ell_prime=d + 2,
        )

    def arm_presence_depth(self, qlo, qhi, qdep, first_code, parity) -> np.ndarray:
        """Batch: deepest prefix of each query arm that is the extended arm
        of a palindrome of T with the given parity, in extended-arm-length
        units (0 = none). Odd queries pass the center character; the locus
        must be of the arm WITHOUT that leading character."""
        qlo = np.asarray(qlo, dtype=np.int64)
        qhi = np.asarray(qhi, dtype=np.int64)
        qdep = np.asarray(qdep, dtype=np.int64)
        first_code = np.asarray(first_code, dtype=np.int64)
        res = np.zeros(len(qlo), dtype=np.int64)
        odd = np.asarray(parity) == 0
        if odd.any():
            colors0 = 2 * np.asarray(first_code)[odd]
            a = self.lam.nca_batch(colors0, qlo[odd], qhi[odd], qdep[odd])
            b = self.lam.nca_batch(colors0 + 1, qlo[odd], qhi[odd], qdep[odd])
            da = np.where(a >= 0, self.lam.dep[np.maximum(a, 0)], -1)
            db = np.where(b >= 0, self.lam.dep[np.maximum(b, 0)], -1)
            res[odd] = np.maximum(da, db) + 1  # rarm depth -> Rarm length; none -> 0
        evn = ~odd
        if evn.any():
            colors = np.full(int(evn.sum()), 2 * self.sigma, dtype=np.int64)
            a = self.lam.nca_batch(colors, qlo[evn], qhi[evn], qdep[evn])
            res[evn] = np.where(a >= 0, self.lam.dep[np.maximum(a, 0)], 0)
        return res


def build_center_index(
    t: Text,
    st: SuffixTreeView,
    eertree: Eertree,
    mups: Sequence[MupsRecord],
) -> CenterIndex:
    pids = np.asarray([m.pid for m in mups], dtype=np.int64)
    return CenterIndex(t, st.lce, eertree._pt, pids)


def longest_center_palindrome(ci: CenterIndex, q: SubstitutionQuery) -> CenterAnswer:
    check_query(ci.t, q)
    return ci.answer(q.i, q.s)
