"""Suffix-structure toolbox.

One suffix array over S = T $ T^R # answers every longest-common-extension
flavor in O(1): forward extensions in T, extensions of reversed prefixes,
and mixed comparisons between the two sides. The suffix tree the queries
conceptually run on is realized as this suffix-array view plus
range-minimum tables; loci, marks/colors and nearest-ancestor queries
operate on laminar families of (SA-range, depth) triples.
"""

from dataclasses import dataclass
from typing import Dict, Hashable, List, Optional, Sequence, Tuple, Union

import numpy as np

from ._accel import HAVE_NUMBA, njit
from .core import Interval, Text

BIG = np.iinfo(np.int32).max


def _suffix_array_doubling(codes: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Suffix array + rank by prefix doubling (O(N log^2 N), vectorized)."""
    n = len(codes)
    rank = codes.astype(np.int64)
    if n == 1:
        return np.zeros(1, dtype=np.int64), np.zeros(1, dtype=np.int64)
    k = 1
    while True:
        shifted = np.full(n, -1, dtype=np.int64)
        if k < n:
            shifted[:-k] = rank[k:]
        sa = np.lexsort((shifted, rank))
        newrank = np.empty(n, dtype=np.int64)
        bumps = np.logical_or(np.diff(rank[sa]) != 0, np.diff(shifted[sa]) != 0)
        newrank[sa[0]] = 0
        newrank[sa[1:]] = np.cumsum(bumps)
        rank = newrank
        if rank[sa[-1]] == n - 1:
            return sa, rank
        k *= 2


@njit
def _kasai(s, sa, rank):
    n = len(sa)
    lcp = np.zeros(n, dtype=np.int64)
    k = 0
    for i in range(n):
        r = rank[i]
        if r == 0:
            k = 0
            continue
        j = sa[r - 1]
        while i + k < n and j + k < n and s[i + k] == s[j + k]:
            k += 1
        lcp[r] = k
        if k:
            k -= 1
    return lcp


def _log_table(n: int) -> np.ndarray:
    logt = np.zeros(n + 1, dtype=np.int64)
    k = 1
    while (1 << k) <= n:
        logt[1 << k :] = k
        k += 1
    return logt


@njit
def _substr_range_kernel(rank, logt, tab, start0, length, N, lo_out, hi_out):
    """Per-item SA range [lo, hi) of suffixes prefixed by the given
    substrings; binary search over the LCP range-minimum table."""
    for x in range(len(start0)):
        L = length[x]
        if L == 0:
            lo_out[x] = 0
            hi_out[x] = N
            continue
        r = rank[start0[x]]
        a, b = 0, r
        while a < b:
            mid = (a + b) >> 1
            l = mid + 1
            k = logt[r - l + 1]
            v = tab[k, l]
            v2 = tab[k, r - (1 << k) + 1]
            if v2 < v:
                v = v2
            if v >= L:
                b = mid
            else:
                a = mid + 1
        lo_out[x] = a
        a, b = r, N - 1
        while a < b:
            mid = (a + b + 1) >> 1
            l = r + 1
            k = logt[mid - l + 1]
            v = tab[k, l]
            v2 = tab[k, mid - (1 << k) + 1]
            if v2 < v:
                v = v2
            if v >= L:
                a = mid
            else:
                b = mid - 1
        hi_out[x] = a + 1


class _SparseMin:
    """Range-minimum over a static int array; vector and scalar queries."""

    def __init__(self, vals: np.ndarray):
        n = len(vals)
        self.n = n
        self.logt = _log_table(max(n, 1))
        levels = int(self.logt[n]) + 1 if n else 1
        tab = np.full((levels, max(n, 1)), BIG, dtype=np.int32)
        if n:
            tab[0, :n] = vals
        for k in range(1, levels):
            h = 1 << (k - 1)
            m = n - (1 << k) + 1
            if m > 0:
                tab[k, :m] = np.minimum(tab[k - 1, :m], tab[k - 1, h : h + m])
        self.tab = tab

    def query(self, l: int, r: int) -> int:
        """Min of vals[l..r] inclusive; BIG when empty."""
        if l > r:
            return BIG
        k = int(self.logt[r - l + 1])
        return int(min(self.tab[k, l], self.tab[k, r - (1 << k) + 1]))

    def query_vec(self, l: np.ndarray, r: np.ndarray) -> np.ndarray:
        emp = l > r
        li = np.where(emp, 0, l)
        ri = np.where(emp, 0, r)
        k = self.logt[ri - li + 1].astype(np.int64)
        a = self.tab[k, li]
        b = self.tab[k, ri - (1 << k) + 1]
        return np.where(emp, BIG, np.minimum(a, b)).astype(np.int64)


class _SparseArg:
    """Range arg-min/arg-max over a static array of distinct ints."""

    def __init__(self, vals: np.ndarray, want_max: bool):
        n = len(vals)
        self.vals = vals.astype(np.int64)
        self.want_max = want_max
        self.logt = _log_table(max(n, 1))
        levels = int(self.logt[n]) + 1 if n else 1
        tab = np.zeros((levels, max(n, 1)), dtype=np.int32)
        tab[0, :n] = np.arange(n, dtype=np.int32)
        cmp = np.greater if want_max else np.less
        for k in range(1, levels):
            h = 1 << (k - 1)
            m = n - (1 << k) + 1
            if m > 0:
                a = tab[k - 1, :m]
                b = tab[k - 1, h : h + m]
                tab[k, :m] = np.where(cmp(self.vals[a], self.vals[b]), a, b)
        self.tab = tab

    def query_vec(self, l: np.ndarray, r: np.ndarray) -> np.ndarray:
        """Position of the extreme value in [l..r]; -1 when empty."""
        emp = l > r
        li = np.where(emp, 0, l)
        ri = np.where(emp, 0, r)
        k = self.logt[ri - li + 1].astype(np.int64)
        a = self.tab[k, li].astype(np.int64)
        b = self.tab[k, ri - (1 << k) + 1].astype(np.int64)
        cmp = np.greater if self.want_max else np.less
        pos = np.where(cmp(self.vals[a], self.vals[b]), a, b)
        return np.where(emp, -1, pos)


class _World:
    """Suffix array, inverse, LCP array and RMQ of one code sequence."""

    def __init__(self, codes: np.ndarray):
        self.codes = codes.astype(np.int64)
        self.N = len(codes)
        self.sa, self.rank = _suffix_array_doubling(self.codes)
        self.lcp = _kasai(self.codes, self.sa, self.rank)
        self.mintab = _SparseMin(self.lcp)

    def lce0(self, i: int, j: int) -> int:
        """lcp of the suffixes at 0-based positions i, j."""
        if i == j:
            return self.N - i
        ri = int(self.rank[i])
        rj = int(self.rank[j])
        if ri > rj:
            ri, rj = rj, ri
        return self.mintab.query(ri + 1, rj)

    def lce0_vec(self, i: np.ndarray, j: np.ndarray) -> np.ndarray:
        i = np.asarray(i, dtype=np.int64)
        j = np.asarray(j, dtype=np.int64)
        same = i == j
        ri = self.rank[i]
        rj = self.rank[j]
        lo = np.minimum(ri, rj)
        hi = np.maximum(ri, rj)
        vals = self.mintab.query_vec(lo + 1, hi)
        return np.where(same, self.N - i, vals)

    def substr_range_vec(self, start0, length) -> Tuple[np.ndarray, np.ndarray]:
        """SA index range [lo, hi) of suffixes whose prefix matches the
        substring of length `length` starting at `start0` (0-based).
        Length 0 yields the full range."""
        return _substr_range(self.rank, self.mintab, start0, length, self.N)


def _substr_range(rank, mintab, start0, length, N) -> Tuple[np.ndarray, np.ndarray]:
    start0 = np.asarray(start0, dtype=np.int64)
    length = np.asarray(length, dtype=np.int64)
    m = len(start0)
    if m == 0:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    if HAVE_NUMBA:
        lo = np.empty(m, dtype=np.int64)
        hi = np.empty(m, dtype=np.int64)
        _substr_range_kernel(rank, mintab.logt, mintab.tab, start0, length, N, lo, hi)
        return lo, hi
    r = rank[start0]
    # lower bound: minimal q <= r with min(lcp[q+1..r]) >= length
    lo_b = np.zeros_like(r)
    hi_b = r.copy()
    while True:
        act = lo_b < hi_b
        if not act.any():
            break
        mid = (lo_b + hi_b) >> 1
        ok = mintab.query_vec(mid + 1, r) >= length
        hi_b = np.where(act & ok, mid, hi_b)
        lo_b = np.where(act & ~ok, mid + 1, lo_b)
    lo_res = lo_b
    # upper bound: maximal q >= r with min(lcp[r+1..q]) >= length
    lo_b = r.copy()
    hi_b = np.full_like(r, N - 1)
    while True:
        act = lo_b < hi_b
        if not act.any():
            break
        mid = (lo_b + hi_b + 1) >> 1
        ok = mintab.query_vec(r + 1, mid) >= length
        lo_b = np.where(act & ok, mid, lo_b)
        hi_b = np.where(act & ~ok, mid - 1, hi_b)
    hi_res = lo_b + 1
    empty = length == 0
    lo_res = np.where(empty, 0, lo_res)
    hi_res = np.where(empty, N, hi_res)
    return lo_res, hi_res


class _SubWorld:
    """The suffixes of T$ inside the big world: occurrence queries in T."""

    def __init__(self, world: _World, n: int):
        keep = world.sa <= n
        self.sa = world.sa[keep].astype(np.int64)  # 0-based T$ positions, SA order
        self.n = n
        self.N = n + 1
        self.rank = np.empty(self.N, dtype=np.int64)
        self.rank[self.sa] = np.arange(self.N)
        # adjacent lcp inside the subsequence, via the big world's RMQ
        if self.N > 1:
            ra = world.rank[self.sa[:-1]]
            rb = world.rank[self.sa[1:]]
            vals = world.mintab.query_vec(ra + 1, rb)
            self.lcp = np.concatenate([[0], vals]).astype(np.int64)
        else:
            self.lcp = np.zeros(1, dtype=np.int64)
        self.mintab = _SparseMin(self.lcp)
        self.amin = _SparseArg(self.sa, want_max=False)
        self.amax = _SparseArg(self.sa, want_max=True)

    def substr_range_vec(self, start0, length) -> Tuple[np.ndarray, np.ndarray]:
        return _substr_range(self.rank, self.mintab, start0, length, self.N)

    def extrema_vec(self, lo: np.ndarray, hi: np.ndarray):
        """Occurrence statistics for SA ranges: count plus the leftmost,
        second leftmost, rightmost and second rightmost 1-based starts
        (0 where absent)."""
        count = hi - lo
        p1 = self.amin.query_vec(lo, hi - 1)
        p1c = np.maximum(p1, 0)
        l1 = np.where(count >= 1, self.sa[p1c] + 1, 0)
        qa = self.amin.query_vec(lo, p1c - 1)
        qb = self.amin.query_vec(p1c + 1, hi - 1)
        va = np.where(qa >= 0, self.sa[np.maximum(qa, 0)], BIG)
        vb = np.where(qb >= 0, self.sa[np.maximum(qb, 0)], BIG)
        l2v = np.minimum(va, vb)
        l2 = np.where(count >= 2, l2v + 1, 0)
        m1 = self.amax.query_vec(lo, hi - 1)
        m1c = np.maximum(m1, 0)
        r1 = np.where(count >= 1, self.sa[m1c] + 1, 0)
        qa = self.amax.query_vec(lo, m1c - 1)
        qb = self.amax.query_vec(m1c + 1, hi - 1)
        va = np.where(qa >= 0, self.sa[np.maximum(qa, 0)], -1)
        vb = np.where(qb >= 0, self.sa[np.maximum(qb, 0)], -1)
        r2v = np.maximum(va, vb)
        r2 = np.where(count >= 2, r2v + 1, 0)
        return count, l1, l2, r1, r2


class LceIndex:
    """Constant-time LCE queries over T and T^R after one O(n log n) build.

    Coordinates: forward suffix T[i..n] lives at S position i-1; the
    reversed prefix (T[1..g])^R lives at S position 2n+1-g. Two sentinel
    codes (sigma+1 for $, sigma+2 for #) stop every comparison at the
    text boundaries; code sigma stays reserved for query characters that
    do not occur in T.
    """

    def __init__(self, t: Text):
        self.t = t
        n = t.n
        self.n = n
        self.sigma = t.sigma
        codes = np.fromiter(t.codes, dtype=np.int64, count=n)
        s = np.empty(2 * n + 2, dtype=np.int64)
        s[:n] = codes
        s[n] = t.sigma + 1
        s[n + 1 : 2 * n + 1] = codes[::-1]
        s[2 * n + 1] = t.sigma + 2
        self.world = _World(s)
        self.sub = _SubWorld(self.world, n)

    # -- coordinate helpers (0-based positions in S) --

    def s0_fwd(self, i: int) -> int:
        """S position of the forward suffix T[i..n] (i in 1..n+1)."""
        return i - 1

    def s0_revpref(self, g: int) -> int:
        """S position of the reversed prefix (T[1..g])^R (g in 0..n)."""
        return 2 * self.n + 1 - g

    # -- public queries, 1-based --

    def lce(self, i: int, j: int) -> int:
        """lcp of T[i..n] and T[j..n]."""
        if i == j:
            return self.n - i + 1
        return self.world.lce0(i - 1, j - 1)

    def lce_rev(self, i: int, j: int) -> int:
        """lcp of (T[1..i])^R and (T[1..j])^R, i.e. longest common suffix
        of the two prefixes."""
        if i == j:
            return i
        return self.world.lce0(self.s0_revpref(i), self.s0_revpref(j))

    def lcp_mixed(self, i: int, g: int) -> int:
        """lcp of T[i..n] and (T[1..g])^R."""
        return self.world.lce0(i - 1, self.s0_revpref(g))

    def lce_vec(self, i, j) -> np.ndarray:
        i = np.asarray(i, dtype=np.int64)
        j = np.asarray(j, dtype=np.int64)
        return self.world.lce0_vec(i - 1, j - 1)

    def lcp_mixed_vec(self, i, g) -> np.ndarray:
        i = np.asarray(i, dtype=np.int64)
        g = np.asarray(g, dtype=np.int64)
        return self.world.lce0_vec(i - 1, 2 * self.n + 1 - g)


def build_lce(t: Text) -> LceIndex:
    return LceIndex(t)


def sort_substrings(
    t: Text,
    items: Sequence[Union[Interval, Tuple[str, Interval]]],
    lce: Optional[LceIndex] = None,
) -> List[int]:
    """Lexicographic ranks of substrings given as intervals.

    Each item is an Interval of T, or ("R", Interval) for an interval of
    the reversed text. Equal strings receive equal ranks; ranks are dense
    starting at 0.
    """
    if lce is None:
        lce = build_lce(t)
    n = t.n
    start0 = np.empty(len(items), dtype=np.int64)
    length = np.empty(len(items), dtype=np.int64)
    for k, item in enumerate(items):
        if isinstance(item, tuple):
            side, iv = item
            if side != "R":
                raise ValueError(f"unknown side {side!r}")
            if iv.e > n:
                raise ValueError(f"interval {iv} out of bounds")
            start0[k] = n + iv.b  # position b of T^R
        else:
            iv = item
            if iv.e > n:
                raise ValueError(f"interval {iv} out of bounds")
            start0[k] = iv.b - 1
        length[k] = iv.length
    lo, _ = lce.world.substr_range_vec(start0, length)
    key = lo * (np.int64(n) + 2) + length
    _, ranks = np.unique(key, return_inverse=True)
    return [int(x) for x in ranks]


@njit
def _str_less(s0a, la, s0b, lb, scodes, rank, logt, tab):
    """Strict lexicographic order of two substrings of one world."""
    if s0a == s0b:
        return la < lb
    ra = rank[s0a]
    rb = rank[s0b]
    if ra > rb:
        lo, hi = rb + 1, ra
    else:
        lo, hi = ra + 1, rb
    k = logt[hi - lo + 1]
    e = tab[k, lo]
    e2 = tab[k, hi - (1 << k) + 1]
    if e2 < e:
        e = e2
    if e > la:
        e = la
    if e > lb:
        e = lb
    if e < la and e < lb:
        return scodes[s0a + e] < scodes[s0b + e]
    return la < lb


@njit
def _sort_groups_lexicographic(key, s0, ln, scodes, rank, logt, tab, perm):
    """Insertion-sort each equal-key run of `perm` into true string order.

    The incoming order (suffix rank, then length) is already correct except
    for prefix-nested pairs, so nearly no swaps happen."""
    n = len(key)
    i = 0
    while i < n:
        j = i + 1
        while j < n and key[j] == key[i]:
            j += 1
        for a in range(i + 1, j):
            pa = perm[a]
            b = a - 1
            while b >= i and _str_less(
                s0[pa], ln[pa], s0[perm[b]], ln[perm[b]], scodes, rank, logt, tab
            ):
                perm[b + 1] = perm[b]
                b -= 1
            perm[b + 1] = pa
        i = j


# ---------------------------------------------------------------------------
# Laminar families of substring loci: DFS order, ancestor links, NCA walks.
# A query locus may be given as the virtual leaf (X, X+1) of any suffix rank
# X inside it: a colored locus contains the whole query range iff it contains
# X at depth <= the query depth.
# ---------------------------------------------------------------------------


@njit
def _laminar_links(lo, hi, dep, segstart):
    """Nearest strict-ancestor link inside each DFS-sorted segment."""
    m = len(lo)
    link = np.full(m, -1, dtype=np.int64)
    stack = np.empty(m, dtype=np.int64)
    top = -1
    for i in range(m):
        if segstart[i]:
            top = -1
        while top >= 0:
            j = stack[top]
            if lo[j] <= lo[i] and hi[j] >= hi[i] and dep[j] <= dep[i]:
                break
            top -= 1
        if top >= 0:
            link[i] = stack[top]
        top += 1
        stack[top] = i
    return link


@njit
def _nca_batch(keys, lo, hi, dep, link, seg_s, seg_t, q_seg, q_lo, q_hi, q_dep, kmul, ksub):
    """Deepest member (per query) that is an ancestor-or-self of the query
    locus; -1 when none. Queries address per-color segments [seg_s, seg_t)."""
    nq = len(q_seg)
    out = np.full(nq, -1, dtype=np.int64)
    for qi in range(nq):
        s = seg_s[q_seg[qi]]
        t = seg_t[q_seg[qi]]
        if s >= t:
            continue
        qkey = q_lo[qi] * kmul + (ksub - q_hi[qi])
        a, b = s, t
        while a < b:
            mid = (a + b) >> 1
            if keys[mid] <= qkey:
                a = mid + 1
            else:
                b = mid
        idx = a - 1
        while idx >= s and keys[idx] == qkey and dep[idx] > q_dep[qi]:
            idx -= 1
        while idx >= s:
            if lo[idx] <= q_lo[qi] and hi[idx] >= q_hi[qi] and dep[idx] <= q_dep[qi]:
                out[qi] = idx
                break
            idx = link[idx]
            if idx < 0:
                break
    return out


class LaminarSet:
    """Loci of substrings of one world, grouped into color segments.

    Rows are (color, lo, hi, depth, payload) with [lo, hi) the SA range of
    the locus and depth its string length. Within a color the loci form a
    laminar family in DFS (pre)order; nearest-colored-ancestor queries are
    a predecessor search plus a walk over strict-ancestor links.
    """

    def __init__(self, ncolors: int, color, lo, hi, dep, payload, world_n: int):
        color = np.asarray(color, dtype=np.int64)
        lo = np.asarray(lo, dtype=np.int64)
        hi = np.asarray(hi, dtype=np.int64)
        dep = np.asarray(dep, dtype=np.int64)
        payload = np.asarray(payload, dtype=np.int64)
        self.kmul = np.int64(world_n + 1)
        self.ksub = np.int64(world_n)
        order = np.lexsort((dep, -hi, lo, color))
        self.color = color[order]
        self.lo = lo[order]
        self.hi = hi[order]
        self.dep = dep[order]
        self.payload = payload[order]
        self.keys = self.lo * self.kmul + (self.ksub - self.hi)
        self.seg_s = np.searchsorted(self.color, np.arange(ncolors), side="left")
        self.seg_t = np.searchsorted(self.color, np.arange(ncolors), side="right")
        segstart = np.zeros(len(order), dtype=np.bool_)
        if len(order):
            segstart[0] = True
            segstart[1:] = self.color[1:] != self.color[:-1]
        self.link = _laminar_links(self.lo, self.hi, self.dep, segstart)

    def nca(self, color: int, qlo: int, qhi: int, qdep: int) -> int:
        """Index of the deepest color-colored ancestor-or-self; -1 if none."""
        s = self.seg_s[color]
        t = self.seg_t[color]
        if s >= t:
            return -1
        keys = self.keys
        qkey = qlo * int(self.kmul) + (int(self.ksub) - qhi)
        a, b = int(s), int(t)
        while a < b:
            mid = (a + b) >> 1
            if keys[mid] <= qkey:
                a = mid + 1
            else:
                b = mid
        idx = a - 1
        dep = self.dep
        while idx >= s and keys[idx] == qkey and dep[idx] > qdep:
            idx -= 1
        lo = self.lo
        hi = self.hi
        link = self.link
        while idx >= s:
            if lo[idx] <= qlo and hi[idx] >= qhi and dep[idx] <= qdep:
                return int(idx)
            idx = link[idx]
            if idx < 0:
                break
        return -1

    def nca_batch(self, q_color, q_lo, q_hi, q_dep) -> np.ndarray:
        return _nca_batch(
            self.keys,
            self.lo,
            self.hi,
            self.dep,
            self.link,
            self.seg_s,
            self.seg_t,
            np.asarray(q_color, dtype=np.int64),
            np.asarray(q_lo, dtype=np.int64),
            np.asarray(q_hi, dtype=np.int64),
            np.asarray(q_dep, dtype=np.int64),
            self.kmul,
            self.ksub,
        )


# ---------------------------------------------------------------------------
# Suffix tree view with explicit loci, marks and colors.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NodeHandle:
    """A suffix tree node: SA range [lo, hi) and string depth."""

    lo: int
    hi: int
    depth: int


class SuffixTreeView:
    """Suffix tree of T$ exposed through its suffix-array view.

    Nodes become addressable by materializing loci; parent/ancestor
    relations among materialized nodes follow SA-range nesting. Marks and
    colors are assigned before freeze(); queries run after.
    """

    MARK = 0  # reserved color id for plain marks

    def __init__(self, lce: LceIndex):
        self.lce = lce
        self._nodes: Dict[NodeHandle, None] = {}
        self._marked: List[NodeHandle] = []
        self._colored: List[Tuple[NodeHandle, Hashable]] = []
        self._frozen = False
        self.root = NodeHandle(0, lce.sub.N, 0)
        self._nodes[self.root] = None

    # -- construction --

    def locus(self, iv: Interval) -> NodeHandle:
        """Materialize (register) the locus of T[b..e]; returns its handle."""
        if self._frozen:
            raise RuntimeError("view is frozen")
        if iv.e > self.lce.n:
            raise ValueError(f"interval {iv} out of bounds")
        lo, hi = self.lce.sub.substr_range_vec([iv.b - 1], [iv.length])
        h = NodeHandle(int(lo[0]), int(hi[0]), iv.length)
        self._nodes[h] = None
        return h

    def set_mark(self, h: NodeHandle) -> None:
        self._check(h)
        self._marked.append(h)

    def set_color(self, h: NodeHandle, color: Hashable) -> None:
        self._check(h)
        self._colored.append((h, color))

    def freeze(self) -> None:
        """Build the ancestor structures; the view becomes immutable."""
        self._frozen = True
        self._color_ids: Dict[Hashable, int] = {}
        rows = [(1, h.lo, h.hi, h.depth) for h in self._nodes]  # 1 = ALL
        for h in self._marked:
            rows.append((self.MARK + 2, h.lo, h.hi, h.depth))
        for h, c in self._colored:
            cid = self._color_ids.setdefault(c, len(self._color_ids))
            rows.append((cid + 3, h.lo, h.hi, h.depth))
        arr = np.array(rows, dtype=np.int64).reshape(len(rows), 4)
        self._lam = LaminarSet(
            len(self._color_ids) + 3,
            arr[:, 0],
            arr[:, 1],
            arr[:, 2],
            arr[:, 3],
            np.zeros(len(rows), dtype=np.int64),
            self.lce.sub.N,
        )

    # -- queries --

    def _check(self, h: NodeHandle) -> None:
        if h not in self._nodes:
            raise KeyError(f"unknown node handle {h}")

    def _handle_at(self, idx: int) -> Optional[NodeHandle]:
        if idx < 0:
            return None
        lam = self._lam
        return NodeHandle(int(lam.lo[idx]), int(lam.hi[idx]), int(lam.dep[idx]))

    def string_depth(self, h: NodeHandle) -> int:
        return h.depth

    def path_label(self, h: NodeHandle) -> str:
        """The substring this node spells (after the root, nonempty)."""
        self._check(h)
        if h.depth == 0:
            return ""
        start = int(self.lce.sub.sa[h.lo])
        return self.lce.t.substring_str(start + 1, start + h.depth)

    def leaf_positions(self, h: NodeHandle) -> List[int]:
        """Sorted 1-based starts of the suffixes below this node."""
        self._check(h)
        vals = self.lce.sub.sa[h.lo : h.hi] + 1
        return sorted(int(v) for v in vals if v <= self.lce.n)

    def leaf_extrema(self, h: NodeHandle) -> Tuple[int, int, int, int]:
        """(min, 2nd-min, max, 2nd-max) of leaf starts; 0 where absent."""
        self._check(h)
        sub = self.lce.sub
        c, l1, l2, r1, r2 = sub.extrema_vec(
            np.array([h.lo], dtype=np.int64), np.array([h.hi], dtype=np.int64)
        )
        return int(l1[0]), int(l2[0]), int(r1[0]), int(r2[0])

    def parent(self, h: NodeHandle) -> Optional[NodeHandle]:
        """Nearest materialized proper ancestor (root has none)."""
        self._check(h)
        if not self._frozen:
            raise RuntimeError("freeze() first")
        if h == self.root:
            return None
        idx = self._lam.nca(1, h.lo, h.hi, h.depth)
        got = self._handle_at(idx)
        if got == h:  # self found; ask for the strict ancestor
            idx = self._lam.link[idx]
            got = self._handle_at(idx)
        return got if got is not None else self.root

    def nearest_marked(self, h: NodeHandle) -> Optional[NodeHandle]:
        self._check(h)
        idx = self._lam.nca(self.MARK + 2, h.lo, h.hi, h.depth)
        return self._handle_at(idx)

    def nearest_colored(self, h: NodeHandle, color: Hashable) -> Optional[NodeHandle]:
        self._check(h)
        cid = self._color_ids.get(color)
        if cid is None:
            return None
        idx = self._lam.nca(cid + 3, h.lo, h.hi, h.depth)
        return self._handle_at(idx)


def make_explicit_loci(st: SuffixTreeView, items: Sequence[Interval]) -> List[NodeHandle]:
    """Materialize the locus of each substring; one handle per item."""
    return [st.locus(iv) for iv in items]


def nearest_marked_ancestor(st: SuffixTreeView, v: NodeHandle) -> Optional[NodeHandle]:
    """Deepest marked ancestor-or-self of v, or None."""
    return st.nearest_marked(v)


def nearest_colored_ancestor(st: SuffixTreeView, v: NodeHandle, color: Hashable) -> Optional[NodeHandle]:
    """Deepest ancestor-or-self of v colored `color`, or None."""
    return st.nearest_colored(v, color)
