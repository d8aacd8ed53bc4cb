"""Substitution index: which MUPSs disappear and appear under sub(i, s).

Removed MUPSs split into R1 (covering the edit), R2 (repeating in the
edited string) and R3 (unique but no longer minimal); added ones into
A1-1 (covering the edit in an arm), A1-2 (centered at the edit), A2
(repeating in the original) and A3 (unique but not minimal in the
original). Queries never mutate the index: every answer is a what-if
against the original text.
"""

from typing import Dict, List, Optional, Tuple

import numpy as np

from ._accel import njit
from .center import CenterAnswer, CenterIndex
from .core import Interval, MupsDelta, MupsSet, SubstitutionQuery, Text, check_query
from .lce import LceIndex, build_lce
from .palindromes import Eertree, _build_pal_table, _one_mismatch_arrays
from .stabbing import _point_csr
from .static_mups import _mups_pids

_FAR = 1 << 60
_SENT_F = -(1 << 40)
_SENT_G = -(1 << 41)


def _expand_ranges(lo: np.ndarray, hi: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """(row index, flat slot) pairs enumerating every [lo, hi) range."""
    counts = hi - lo
    total = int(counts.sum())
    rows = np.repeat(np.arange(len(lo), dtype=np.int64), counts)
    base = np.repeat(np.cumsum(counts) - counts, counts)
    slots = lo[rows] + (np.arange(total, dtype=np.int64) - base)
    return rows, slots


@njit
def _sub_one(A, B, X, Y, outb, oute, k):
    """Append the pieces of [A, B] minus [X, Y]; returns the new count."""
    if A > B:
        return k
    if X > Y or Y < A or X > B:
        outb[k] = A
        oute[k] = B
        return k + 1
    if A < X:
        outb[k] = A
        oute[k] = X - 1
        k += 1
    if B > Y:
        outb[k] = Y + 1
        oute[k] = B
        k += 1
    return k


@njit
def _rho_pieces(L, l1v, l2v, r1v, r2v, outb, oute):
    """Pieces of rho (kill all but the leftmost occurrence) and rho-tilde
    (all but the rightmost); returns (end of rho part, end of all)."""
    k1 = _sub_one(r1v, l2v + L - 1, l1v, l1v + L - 1, outb, oute, 0)
    k2 = _sub_one(r2v, l1v + L - 1, r1v, r1v + L - 1, outb, oute, k1)
    return k1, k2


@njit
def _a2_pieces_kernel(length, count, l1, l2, r1, r2, parent, fill, ob, oe, opid, oside):
    """Positions where each repeating palindrome becomes a new MUPS.

    Per palindrome: rho/rho-tilde minus the contraction's rho/rho-tilde
    (editing inside the latter makes the contraction unique too). Piece
    payloads carry which extreme occurrence survives.
    """
    m = len(length)
    total = 0
    wb = np.empty(32, dtype=np.int64)
    we = np.empty(32, dtype=np.int64)
    ws = np.empty(32, dtype=np.int64)
    tb = np.empty(32, dtype=np.int64)
    te = np.empty(32, dtype=np.int64)
    ts = np.empty(32, dtype=np.int64)
    pb = np.empty(8, dtype=np.int64)
    pe = np.empty(8, dtype=np.int64)
    for pid in range(m):
        if count[pid] < 2:
            continue
        L = length[pid]
        k1, k2 = _rho_pieces(L, l1[pid], l2[pid], r1[pid], r2[pid], wb, we)
        for x in range(k2):
            ws[x] = 0 if x < k1 else 1
        cur = k2
        par = parent[pid]
        if par >= 0 and cur > 0:
            pk1, pk2 = _rho_pieces(length[par], l1[par], l2[par], r1[par], r2[par], pb, pe)
            for pp in range(pk2):
                nxt = 0
                for x in range(cur):
                    if wb[x] > we[x]:
                        continue
                    kk = _sub_one(wb[x], we[x], pb[pp], pe[pp], tb, te, nxt)
                    for y in range(nxt, kk):
                        ts[y] = ws[x]
                    nxt = kk
                for y in range(nxt):
                    wb[y] = tb[y]
                    we[y] = te[y]
                    ws[y] = ts[y]
                cur = nxt
        for x in range(cur):
            if wb[x] > we[x]:
                continue
            if fill:
                ob[total] = wb[x]
                oe[total] = we[x]
                opid[total] = pid
                oside[total] = ws[x]
            total += 1
    return total


class SubstIndex:
    """All per-type indexes over one text; immutable after construction."""

    def __init__(self, t: Text):
        self.t = t
        n = t.n
        self.n = n
        self.sigma = t.sigma
        self._codes = np.fromiter(t.codes, dtype=np.int64, count=n)
        self.lce = build_lce(t)
        lce = self.lce
        world = lce.world
        sub = lce.sub
        pt = _build_pal_table(t, lce)
        self.pt = pt
        self.eertree = Eertree(t, pt)

        # -- MUPS arrays, sorted by start --
        mpids = _mups_pids(pt)
        self.mpids = mpids
        self.mb = pt.b[mpids]
        self.mlen = pt.length[mpids]
        self.me = self.mb + self.mlen - 1
        self.nm = len(mpids)
        self.mups_set = MupsSet(
            [Interval(int(b), int(e)) for b, e in zip(self.mb, self.me)]
        )

        self.center = CenterIndex(t, lce, pt, mpids)

        # -- R1: stab the MUPS intervals --
        self._r1_off, self._r1_vals = _point_csr(
            self.mb, self.me, np.arange(self.nm, dtype=np.int64), n
        )

        # -- R3: rho of each MUPS's inner contraction --
        widx = np.flatnonzero(self.mlen >= 3)
        if len(widx):
            wb, we, wlen = self.mb[widx], self.me[widx], self.mlen[widx]
            pp = pt.parent[mpids[widx]]
            vlen = wlen - 2
            bl = np.where(pt.l1[pp] == wb + 1, pt.l2[pp], pt.l1[pp])
            br = np.where(pt.r1[pp] == wb + 1, pt.r2[pp], pt.r1[pp])
            A, B = br, bl + vlen - 1
            X, Y = wb + 1, we - 1
            p1b, p1e = A, np.minimum(B, X - 1)
            p2b, p2e = np.maximum(A, Y + 1), B
            pb = np.concatenate([p1b, p2b])
            pe = np.concatenate([p1e, p2e])
            ppay = np.concatenate([widx, widx])
            ok = pb <= pe
            self._r3_off, self._r3_vals = _point_csr(pb[ok], pe[ok], ppay[ok], n)
        else:
            self._r3_off, self._r3_vals = _point_csr(
                np.zeros(0, np.int64), np.zeros(0, np.int64), np.zeros(0, np.int64), n
            )

        # -- A2: decomposed rho pieces of every repeating palindrome --
        zeros = np.zeros(0, dtype=np.int64)
        cnt = _a2_pieces_kernel(
            pt.length, pt.count, pt.l1, pt.l2, pt.r1, pt.r2, pt.parent,
            False, zeros, zeros, zeros, zeros,
        )
        ob = np.empty(cnt, dtype=np.int64)
        oe = np.empty(cnt, dtype=np.int64)
        opid = np.empty(cnt, dtype=np.int64)
        oside = np.empty(cnt, dtype=np.int64)
        _a2_pieces_kernel(
            pt.length, pt.count, pt.l1, pt.l2, pt.r1, pt.r2, pt.parent,
            True, ob, oe, opid, oside,
        )
        self._a2_off, self._a2_vals = _point_csr(ob, oe, opid * 2 + oside, n)

        # -- R2/A3 rows: (position, character) -> MUPS occurrences in T' --
        self._build_r2a3()

        # -- 1-mismatch arm index: MA groups and the A1-1 candidates --
        self._build_a11()

    # ------------------------------------------------------------------
    # build helpers
    # ------------------------------------------------------------------

    def _build_r2a3(self) -> None:
        n, sigma = self.n, self.sigma
        world = self.lce.world
        sub = self.lce.sub
        codes = self._codes
        mb, me, mlen = self.mb, self.me, self.mlen
        LL = (mlen + 1) // 2  # |Larm| == |Rarm|
        LR = mlen // 2        # |larm| == |rarm|
        pR0 = mb + LL         # start of rarm at the original occurrence

        qs: List[np.ndarray] = []
        cs: List[np.ndarray] = []
        wsl: List[np.ndarray] = []
        occs: List[np.ndarray] = []

        if self.nm:
            # occurrences of Larm_w; a mismatch fixed inside rarm puts w there
            lo, hi = sub.substr_range_vec(mb - 1, LL)
            rows, slots = _expand_ranges(lo, hi)
            j = sub.sa[slots] + 1
            keep = j != mb[rows]
            rows, j = rows[keep], j[keep]
            e1 = world.lce0_vec(j + LL[rows] - 1, pR0[rows] - 1)
            d = e1 + 1
            q = j + LL[rows] - 1 + d
            ok = (q <= n) & (d <= LR[rows])
            rows, j, d, q = rows[ok], j[ok], d[ok], q[ok]
            if len(rows):
                e2 = world.lce0_vec(q, pR0[rows] + d - 1)
                ok2 = d + e2 >= LR[rows]
                rows, j, d, q = rows[ok2], j[ok2], d[ok2], q[ok2]
                qs.append(q)
                cs.append(codes[pR0[rows] + d - 2])
                wsl.append(rows)
                occs.append(j)

            # occurrences of Rarm_w; the mismatch lands inside larm
            pRa = me - LL + 1
            lo, hi = sub.substr_range_vec(pRa - 1, LL)
            rows, slots = _expand_ranges(lo, hi)
            k = sub.sa[slots] + 1
            keep = k != pRa[rows]
            rows, k = rows[keep], k[keep]
            xs0 = 2 * n + 2 - k
            ys0 = 2 * n + 2 - mb[rows] - LR[rows]
            e1 = world.lce0_vec(xs0, ys0)
            d = e1 + 1
            q = k - d
            ok = (q >= 1) & (d <= LR[rows])
            rows, k, d, q, xs0, ys0 = (
                rows[ok], k[ok], d[ok], q[ok], xs0[ok], ys0[ok]
            )
            if len(rows):
                e2 = world.lce0_vec(xs0 + d, ys0 + d)
                ok2 = d + e2 >= LR[rows]
                rows, k, d, q = rows[ok2], k[ok2], d[ok2], q[ok2]
                qs.append(q)
                cs.append(codes[mb[rows] + LR[rows] - d - 1])
                wsl.append(rows)
                occs.append(k - LR[rows])

        if qs:
            q = np.concatenate(qs)
            c = np.concatenate(cs)
            w = np.concatenate(wsl)
            occ = np.concatenate(occs)
        else:
            q = c = w = occ = np.zeros(0, dtype=np.int64)

        order = np.lexsort((occ, w, c, q))
        q, c, w, occ = q[order], c[order], w[order], occ[order]
        if len(q):
            dup = np.zeros(len(q), dtype=bool)
            dup[1:] = (
                (q[1:] == q[:-1]) & (c[1:] == c[:-1]) & (w[1:] == w[:-1]) & (occ[1:] == occ[:-1])
            )
            q, c, w, occ = q[~dup], c[~dup], w[~dup], occ[~dup]
        self._r2_key = q * sigma + c
        self._r2_w = w
        self._r2_occ = occ

    def _build_a11(self) -> None:
        n, sigma = self.n, self.sigma
        world = self.lce.world
        codes = self._codes
        pt = self.pt
        om = _one_mismatch_arrays(self.lce)
        nrec = len(om.parity)

        par = np.concatenate([om.parity, om.parity])
        side = np.concatenate([np.zeros(nrec, np.int64), np.ones(nrec, np.int64)])
        ctr = np.concatenate([om.center, om.center])
        r0 = np.concatenate([om.r0, om.r0])
        R = np.concatenate([om.radius, om.radius])
        key_i = np.concatenate([om.p_left, om.p_right])
        if nrec:
            key_s = np.concatenate([codes[om.p_right - 1], codes[om.p_left - 1]])
        else:
            key_s = np.zeros(0, dtype=np.int64)
        arm_s0 = np.where(
            side == 0,
            np.where(par == 0, ctr - 1, ctr),
            2 * n + 1 - ctr,
        )
        armlen = np.where(par == 0, R + 1, R)
        D = r0 + 1
        F = np.where(par == 0, D + 1, D)
        c2 = np.where(par == 0, 2 * ctr, 2 * ctr + 1)

        key = (par * (n + 1) + key_i) * max(sigma, 1) + key_s

        # occurrences of contractions centered at the edited position itself
        # (independent of group neighbors, so computed before sorting)
        center_term = np.zeros(2 * nrec, dtype=np.int64)
        if nrec:
            ctr_ok = (par == 0) & (codes[ctr - 1] == key_s)
            idx = np.flatnonzero(ctr_ok)
            if len(idx):
                fs0 = np.where(side[idx] == 0, ctr[idx], 2 * n + 2 - ctr[idx])
                e = world.lce0_vec(fs0, key_i[idx])
                capped = np.minimum(e, np.minimum(armlen[idx] - 1, pt.rad_odd[key_i[idx]]))
                center_term[idx] = 1 + capped

        # sort each (parity, i, s) group into lexicographic arm order
        order = np.lexsort((armlen, world.rank[arm_s0], key))
        from .lce import _sort_groups_lexicographic

        perm = np.arange(len(order), dtype=np.int64)
        if len(order):
            mt = world.mintab
            _sort_groups_lexicographic(
                key[order], arm_s0[order], armlen[order],
                world.codes, world.rank, mt.logt, mt.tab, perm,
            )
            order = order[perm]
        stacked = np.stack((par, r0, key_i, arm_s0, armlen, F, c2, key, center_term))
        stacked = stacked[:, order]
        par, r0, key_i, arm_s0, armlen, F, c2, key, center_term = stacked
        nrows = len(key)

        # string lcp between rank-adjacent rows of the same key
        lcpadj = np.zeros(max(nrows - 1, 0), dtype=np.int64)
        if nrows > 1:
            same = key[1:] == key[:-1]
            both = np.flatnonzero(same)
            if len(both):
                e = world.lce0_vec(arm_s0[both], arm_s0[both + 1])
                lcpadj[both] = np.minimum(e, np.minimum(armlen[both], armlen[both + 1]))
        lcp_prev = np.zeros(nrows, dtype=np.int64)
        lcp_next = np.zeros(nrows, dtype=np.int64)
        if nrows > 1:
            lcp_prev[1:] = lcpadj
            lcp_next[:-1] = lcpadj

        a_term = 1 + np.maximum(np.maximum(lcp_prev, lcp_next), center_term)

        # deepest prefix that is an arm of a palindrome of T
        if nrows:
            qstart = arm_s0 + (par == 0)
            qlen = armlen - (par == 0)
            qrank = world.rank[qstart]
            first_code = world.codes[arm_s0]
            P = self.center.arm_presence_depth(qrank, qrank + 1, qlen, first_code, par)
        else:
            P = np.zeros(0, dtype=np.int64)
        b_term = P + 1
        mstar = np.maximum(a_term, b_term)

        emit = (mstar <= armlen) & (mstar > F)
        edge = (mstar <= armlen) & (mstar == F)
        if edge.any():
            eidx = np.flatnonzero(edge)
            decided = np.zeros(len(eidx), dtype=bool)
            # even centers whose exact palindrome is empty: always minimal
            decided |= (par[eidx] == 1) & (r0[eidx] == 0)
            todo = ~decided
            if todo.any():
                k = eidx[todo]
                ypid = pt.maxpal_pid[c2[k]]
                ylen = pt.length[ypid]
                wlo = key_i[k] - ylen + 1
                noncov2 = (
                    ((pt.l2[ypid] > 0) & (pt.l2[ypid] < wlo))
                    | ((pt.r2[ypid] > 0) & (pt.r2[ypid] > key_i[k]))
                    | ((pt.l1[ypid] < wlo) & (pt.r1[ypid] > key_i[k]))
                )
                csrc = center_term[k] >= F[k] - 1
                decided[todo] |= noncov2 | csrc
            # remaining rows: look for a group mate the inner palindrome
            # also fits, with a strictly smaller covering floor
            for x in np.flatnonzero(~decided):
                row = int(eidx[x])
                need = int(F[row]) - 1
                found = False
                tpos = row - 1
                run = _FAR
                while tpos >= 0 and key[tpos] == key[row]:
                    run = min(run, int(lcpadj[tpos]))
                    if run < need:
                        break
                    if F[tpos] <= need:
                        found = True
                        break
                    tpos -= 1
                if not found:
                    tpos = row
                    run = _FAR
                    while tpos + 1 < nrows and key[tpos + 1] == key[row]:
                        run = min(run, int(lcpadj[tpos]))
                        if run < need:
                            break
                        if F[tpos + 1] <= need:
                            found = True
                            break
                        tpos += 1
                decided[x] = found
            emit_edge = np.zeros(nrows, dtype=bool)
            emit_edge[eidx[decided]] = True
            emit = emit | emit_edge

        self._a11_key = key[emit]
        self._a11_c2 = c2[emit]
        self._a11_arm = mstar[emit]

        # odd-parity groups, string-ordered, for the centered-MUPS search;
        # for parity 0 the packed key is exactly i*sigma + s
        oddrows = par == 0
        self._ma_key = key[oddrows]
        self._ma_s0 = arm_s0[oddrows]
        self._ma_len = armlen[oddrows]

    # ------------------------------------------------------------------
    # edit-aware extensions (T' is never materialized)
    # ------------------------------------------------------------------

    def _lce_fwd_edited(self, x: int, y: int, i: int, s: int) -> int:
        """lcp of T'[x..] and T'[y..] where T' has code s at position i."""
        n = self.n
        if x > n or y > n:
            return 0
        if x == y:
            return n - x + 1
        codes = self._codes
        total = 0
        while True:
            if x > n or y > n:
                return total
            e0 = self.lce.lce(x, y)
            bp = _FAR
            if x <= i:
                bp = i - x
            if y <= i:
                bp = min(bp, i - y)
            if e0 < bp:
                return total + e0
            px, py = x + bp, y + bp
            cx = s if px == i else (int(codes[px - 1]) if px <= n else _SENT_F - px)
            cy = s if py == i else (int(codes[py - 1]) if py <= n else _SENT_G - py)
            if cx != cy:
                return total + bp
            total += bp + 1
            x, y = px + 1, py + 1

    def _lce_rev_edited(self, x: int, y: int, i: int, s: int) -> int:
        """lcp of (T'[1..x])^R and (T'[1..y])^R."""
        if x < 1 or y < 1:
            return 0
        if x == y:
            return x
        codes = self._codes
        total = 0
        while True:
            if x < 1 or y < 1:
                return total
            e0 = self.lce.lce_rev(x, y)
            bp = _FAR
            if x >= i:
                bp = x - i
            if y >= i:
                bp = min(bp, y - i)
            if e0 < bp:
                return total + e0
            px, py = x - bp, y - bp
            cx = s if px == i else (int(codes[px - 1]) if px >= 1 else _SENT_F + px)
            cy = s if py == i else (int(codes[py - 1]) if py >= 1 else _SENT_G + py)
            if cx != cy:
                return total + bp
            total += bp + 1
            x, y = px - 1, py - 1

    def _lcp_mixed_edited(self, f: int, g: int, i: int, s: int) -> int:
        """lcp of T'[f..] and (T'[1..g])^R."""
        n = self.n
        codes = self._codes
        total = 0
        while True:
            if f > n or g < 1:
                return total
            e0 = self.lce.lcp_mixed(f, g)
            bp = _FAR
            if f <= i:
                bp = i - f
            if g >= i:
                bp = min(bp, g - i)
            if e0 < bp:
                return total + e0
            pf, pg = f + bp, g - bp
            cf = s if pf == i else (int(codes[pf - 1]) if 1 <= pf <= n else _SENT_F - pf)
            cg = s if pg == i else (int(codes[pg - 1]) if 1 <= pg <= n else _SENT_G - pg)
            if cf != cg:
                return total + bp
            total += bp + 1
            f, g = pf + 1, pg - 1


def build_subst_index(t: Text) -> SubstIndex:
    return SubstIndex(t)


# ---------------------------------------------------------------------------
# queries
# ---------------------------------------------------------------------------


def _mups_interval(ix: SubstIndex, w: int) -> Interval:
    return Interval(int(ix.mb[w]), int(ix.me[w]))


def removed_type_r1(ix: SubstIndex, q: SubstitutionQuery) -> List[Interval]:
    """MUPSs of T whose interval contains the edited position."""
    check_query(ix.t, q)
    sl = ix._r1_vals[ix._r1_off[q.i] : ix._r1_off[q.i + 1]]
    return sorted(_mups_interval(ix, int(w)) for w in sl)


def _r2a3_slice(ix: SubstIndex, i: int, s: int) -> Tuple[np.ndarray, np.ndarray]:
    """(w ordinals, occurrence starts) recorded under key (i, s)."""
    if s >= ix.sigma:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    key = i * ix.sigma + s
    a = int(np.searchsorted(ix._r2_key, key, side="left"))
    b = int(np.searchsorted(ix._r2_key, key, side="right"))
    return ix._r2_w[a:b], ix._r2_occ[a:b]


def _center_mups_ordinal(ix: SubstIndex, cans: CenterAnswer) -> Optional[int]:
    if not cans.is_unique_in_T or cans.contained_mups is None:
        return None
    pos = int(np.searchsorted(ix.mb, cans.contained_mups.b))
    return pos


def _removed_r2(ix: SubstIndex, q: SubstitutionQuery, cans: CenterAnswer) -> List[Interval]:
    ws, _ = _r2a3_slice(ix, q.i, q.s)
    out = set()
    for w in np.unique(ws):
        w = int(w)
        if not (ix.mb[w] <= q.i <= ix.me[w]):
            out.add(_mups_interval(ix, w))
    wc = _center_mups_ordinal(ix, cans)
    if wc is not None:
        out.add(cans.contained_mups)
    return sorted(out)


def removed_type_r2(ix: SubstIndex, q: SubstitutionQuery) -> List[Interval]:
    """MUPSs of T, not covering the edit, that repeat in T'."""
    check_query(ix.t, q)
    return _removed_r2(ix, q, ix.center.answer(q.i, q.s))


def removed_type_r3(ix: SubstIndex, q: SubstitutionQuery) -> List[Interval]:
    """MUPSs of T, not covering the edit, unique but not minimal in T'."""
    check_query(ix.t, q)
    sl = ix._r3_vals[ix._r3_off[q.i] : ix._r3_off[q.i + 1]]
    out = []
    for w in sl:
        w = int(w)
        if not (ix.mb[w] <= q.i <= ix.me[w]):
            out.append(_mups_interval(ix, w))
    return sorted(out)


def added_type_a11(ix: SubstIndex, q: SubstitutionQuery) -> List[Interval]:
    """New MUPSs covering the edited position inside an arm."""
    check_query(ix.t, q)
    if q.s >= ix.sigma:
        return []
    out = []
    for par in (0, 1):
        key = (par * (ix.n + 1) + q.i) * ix.sigma + q.s
        a = int(np.searchsorted(ix._a11_key, key, side="left"))
        b = int(np.searchsorted(ix._a11_key, key, side="right"))
        for k in range(a, b):
            c2 = int(ix._a11_c2[k])
            arm = int(ix._a11_arm[k])
            if c2 % 2 == 0:
                c = c2 // 2
                out.append(Interval(c - arm + 1, c + arm - 1))
            else:
                c = c2 // 2
                out.append(Interval(c - arm + 1, c + arm))
    return sorted(out)


def _a12_arm_bound(ix: SubstIndex, i: int, s: int, Ri: int) -> int:
    """1 + max lcp between s*T[i+1..i+Ri] and the recorded arms of maximal
    palindromes of T' covering i, odd parity (1 when there are none)."""
    if s >= ix.sigma:
        return 1
    key = i * ix.sigma + s
    a = int(np.searchsorted(ix._ma_key, key, side="left"))
    b = int(np.searchsorted(ix._ma_key, key, side="right"))
    if a == b:
        return 1
    codes = ix._codes
    world = ix.lce.world
    ma_s0 = ix._ma_s0
    ma_len = ix._ma_len

    def lcp_with(r: int) -> int:
        c1 = int(world.codes[ma_s0[r]])
        if c1 != s:
            return 0
        if Ri == 0 or ma_len[r] == 1:
            return 1
        e = world.lce0(i, int(ma_s0[r]) + 1)
        return 1 + min(e, Ri, int(ma_len[r]) - 1)

    def row_less_or_prefix(r: int) -> bool:
        l = lcp_with(r)
        if l >= int(ma_len[r]):
            return True  # arm is a prefix of (or equals) the query string
        if l >= Ri + 1:
            return False  # query string is a proper prefix of the arm
        cx = s if l == 0 else int(codes[i + l - 1])
        cr = int(world.codes[int(ma_s0[r]) + l])
        return cr < cx

    lo_i, hi_i = a, b
    while lo_i < hi_i:
        mid = (lo_i + hi_i) >> 1
        if row_less_or_prefix(mid):
            lo_i = mid + 1
        else:
            hi_i = mid
    best = 0
    if lo_i - 1 >= a:
        best = max(best, lcp_with(lo_i - 1))
    if lo_i < b:
        best = max(best, lcp_with(lo_i))
    return 1 + best


def _added_a12(ix: SubstIndex, q: SubstitutionQuery, cans: CenterAnswer) -> Optional[Interval]:
    i, s = q.i, q.s
    Ri = int(ix.pt.rad_odd[i])
    lw = _a12_arm_bound(ix, i, s, Ri)
    m = max(lw, cans.ell_prime)
    if m <= Ri + 1:
        return Interval(i - m + 1, i + m - 1)
    return None


def added_type_a12(ix: SubstIndex, q: SubstitutionQuery) -> Optional[Interval]:
    """The MUPS of T' centered at the edited position, if any."""
    check_query(ix.t, q)
    return _added_a12(ix, q, ix.center.answer(q.i, q.s))


def added_type_a2(ix: SubstIndex, q: SubstitutionQuery) -> List[Interval]:
    """New MUPSs, away from the edit, that repeat in T."""
    check_query(ix.t, q)
    pt = ix.pt
    out = []
    sl = ix._a2_vals[ix._a2_off[q.i] : ix._a2_off[q.i + 1]]
    for v in sl:
        pid, side_flag = int(v) >> 1, int(v) & 1
        ln = int(pt.length[pid])
        st = int(pt.l1[pid]) if side_flag == 0 else int(pt.r1[pid])
        out.append(Interval(st, st + ln - 1))
    return sorted(out)


def _added_a3(ix: SubstIndex, q: SubstitutionQuery, cans: CenterAnswer) -> List[Interval]:
    i, s = q.i, q.s
    ws, occs = _r2a3_slice(ix, i, s)
    per_w: Dict[int, List[int]] = {}
    for w, j in zip(ws, occs):
        w = int(w)
        if ix.mb[w] <= i <= ix.me[w]:
            continue
        per_w.setdefault(w, []).append(int(j))
    wc = _center_mups_ordinal(ix, cans)
    if wc is not None:
        L = int(ix.mlen[wc])
        per_w.setdefault(wc, []).append(i - (L - 1) // 2)
    out = []
    for w, jlist in per_w.items():
        b, e, L = int(ix.mb[w]), int(ix.me[w]), int(ix.mlen[w])
        best = 0
        for j in jlist:
            ra = ix._lce_fwd_edited(j + L, e + 1, i, s)
            la = ix._lce_rev_edited(j - 1, b - 1, i, s)
            best = max(best, min(ra, la))
        kstar = best + 1
        kpal = ix._lcp_mixed_edited(e + 1, b - 1, i, s)
        if kstar <= kpal:
            nb, ne = b - kstar, e + kstar
            if not (nb <= i <= ne):
                out.append(Interval(nb, ne))
    return sorted(out)


def added_type_a3(ix: SubstIndex, q: SubstitutionQuery) -> List[Interval]:
    """New MUPSs, away from the edit, unique but not minimal in T."""
    check_query(ix.t, q)
    return _added_a3(ix, q, ix.center.answer(q.i, q.s))


_R_TAGS = ("R1", "R2", "R3")
_A_TAGS = ("A1-1", "A1-2", "A2", "A3")


def mups_delta_typed(
    ix: SubstIndex, q: SubstitutionQuery
) -> Tuple[List[Tuple[Interval, str]], List[Tuple[Interval, str]]]:
    """Removed and added MUPS intervals with their change-type tags.

    An interval reported by both sides (the centered MUPS whose interval
    survives the edit) is dropped from both: the MUPS *set* keeps it.
    """
    check_query(ix.t, q)
    cans = ix.center.answer(q.i, q.s)
    removed = [(iv, "R1") for iv in removed_type_r1(ix, q)]
    removed += [(iv, "R2") for iv in _removed_r2(ix, q, cans)]
    removed += [(iv, "R3") for iv in removed_type_r3(ix, q)]
    added = [(iv, "A1-1") for iv in added_type_a11(ix, q)]
    a12 = _added_a12(ix, q, cans)
    if a12 is not None:
        added.append((a12, "A1-2"))
    added += [(iv, "A2") for iv in added_type_a2(ix, q)]
    added += [(iv, "A3") for iv in _added_a3(ix, q, cans)]
    common = {iv for iv, _ in removed} & {iv for iv, _ in added}
    removed = sorted((p for p in removed if p[0] not in common))
    added = sorted((p for p in added if p[0] not in common))
    return removed, added


def mups_delta(ix: SubstIndex, q: SubstitutionQuery) -> MupsDelta:
    removed, added = mups_delta_typed(ix, q)
    return MupsDelta(
        tuple(iv for iv, _ in removed),
        tuple(iv for iv, _ in added),
    )


def mups_after(ix: SubstIndex, q: SubstitutionQuery) -> MupsSet:
    """MUPS(T') = (MUPS(T) minus removed) plus added."""
    return mups_delta(ix, q).apply(ix.mups_set)
