"""Vectorized enumeration engine for codeword scans and batched ranks.

Everything here is an exact reformulation of the scalar routines in
kspace/code as numpy integer table lookups:

* arithmetic tables turn field operations on int-encoded elements into
  fancy indexing;
* a span-transition table for K^n maps (subspace state, vector) to the
  state of the enlarged span, so the K-rank of an m x n expansion is a
  fold of m lookups;
* a lockstep Gaussian elimination computes ranks of many small matrices
  over a table-backed field at once.

All functions fall back to None/scalar paths when a field or ambient
space is too large to tabulate; callers must handle that.  Cross-checks
against the scalar implementations live in the test suite.
"""

from __future__ import annotations

import numpy as np

from .kspace import Subspace, gaussian_binomial

TABLE_MAX_ORDER = 1024          # largest field order we tabulate
SPAN_TABLE_MAX = 8_000_000      # states * vectors bound for K^n span tables


class ArithTables:
    """Dense add/sub/mul/inv tables for one field context."""

    __slots__ = ("field", "order", "ADD", "SUB", "MUL", "INV", "NEG")

    def __init__(self, field):
        n = field.order
        self.field = field
        self.order = n
        add = np.zeros((n, n), dtype=np.int32)
        sub = np.zeros((n, n), dtype=np.int32)
        mul = np.zeros((n, n), dtype=np.int32)
        for a in range(n):
            for b in range(n):
                add[a, b] = field.add(a, b)
                sub[a, b] = field.sub(a, b)
                mul[a, b] = field.mul(a, b)
        inv = np.zeros(n, dtype=np.int32)
        for a in range(1, n):
            inv[a] = field.inv(a)
        self.ADD, self.SUB, self.MUL, self.INV = add, sub, mul, inv
        self.NEG = sub[0]


class FieldTables:
    """Tables for a tower: L-arithmetic, K-arithmetic, digits, Frobenius."""

    __slots__ = ("F", "lt", "kt", "DIGITS", "FROB", "q", "m", "_proj_cache")

    def __init__(self, F):
        self.F = F
        self.lt = ArithTables(F.L)
        self.kt = ArithTables(F.K)
        self.q = F.q
        self.m = F.m
        order = F.order
        dig = np.zeros((order, F.m), dtype=np.int32)
        for e in range(order):
            dig[e] = F.coeffs(e)
        self.DIGITS = dig
        frob = np.zeros((F.m, order), dtype=np.int32)
        for i in range(F.m):
            for e in range(order):
                frob[i, e] = F.frobenius(e, i)
        self.FROB = frob
        self._proj_cache = {}

    def projective_coeffs(self, r: int) -> np.ndarray:
        """Canonical coefficient vectors over L^r, one per 1-dim subspace.

        Vectors with first nonzero coordinate equal to 1, ordered by the
        position of that coordinate (last first); (order^r - 1)/(order - 1)
        rows in total.  Every nonzero vector of L^r is a scalar multiple
        of exactly one row.
        """
        got = self._proj_cache.get(r)
        if got is not None:
            return got
        order = self.lt.order
        blocks = []
        tail = np.zeros((1, 0), dtype=np.int32)
        for t in range(r - 1, -1, -1):
            width = r - t - 1
            lead = np.full((tail.shape[0], 1), 1, dtype=np.int32)
            zeros = np.zeros((tail.shape[0], t), dtype=np.int32)
            blocks.append(np.concatenate([zeros, lead, tail], axis=1))
            # extend tail: all values for coordinate t
            vals = np.arange(order, dtype=np.int32)
            tail = np.concatenate(
                [
                    np.repeat(vals, tail.shape[0])[:, None],
                    np.tile(tail, (order, 1)),
                ],
                axis=1,
            )
        out = np.concatenate(blocks, axis=0) if blocks else np.zeros((0, 0), dtype=np.int32)
        self._proj_cache[r] = out
        return out


def field_tables(F) -> FieldTables | None:
    """Cached FieldTables for the tower, or None if the field is too big."""
    if F.order > TABLE_MAX_ORDER:
        return None
    if F._tables is None:
        F._tables = FieldTables(F)
    return F._tables


class SpanTable:
    """Transition table over the subspace lattice of K^n.

    Vectors of K^n are encoded as integers sum(v_j * q^j).  T[s, v] is
    the state of span(S_s + <v>), DIM[s] the dimension, so the rank of
    a list of vectors is a fold of lookups starting at state 0 (or at
    any subspace's state, which doubles as a batched membership test).
    """

    __slots__ = ("K", "n", "q", "subspaces", "index", "T", "DIM")

    def __init__(self, K, n: int):
        self.K = K
        self.n = n
        q = K.order
        self.q = q
        nvec = q**n
        total = sum(gaussian_binomial(n, r, q) for r in range(n + 1))
        # BFS from the zero subspace.  For an uncovered vector v, every
        # vector of span(S + <v>) outside S maps to the same new state,
        # so each lattice edge costs one small RREF.
        subs = [Subspace.zero(K, n)]
        index = {subs[0]: 0}
        T = np.full((total, nvec), -1, dtype=np.int32)
        dims = [0]
        i = 0
        while i < len(subs):
            s = subs[i]
            for w in s.vectors():
                T[i, self.encode(w)] = i
            for v in range(nvec):
                if T[i, v] >= 0:
                    continue
                bigger = Subspace.span(K, n, s.basis.rows + (self.decode(v),))
                j = index.get(bigger)
                if j is None:
                    j = len(subs)
                    index[bigger] = j
                    subs.append(bigger)
                    dims.append(bigger.dim)
                for w in bigger.vectors():
                    enc = self.encode(w)
                    if T[i, enc] < 0:
                        T[i, enc] = j
            i += 1
        assert len(subs) == total
        self.subspaces = subs
        self.index = index
        self.T = T
        self.DIM = np.array(dims, dtype=np.int32)

    def encode(self, vec) -> int:
        acc = 0
        for x in reversed(tuple(vec)):
            acc = acc * self.q + x
        return acc

    def decode(self, v: int) -> tuple:
        out = []
        for _ in range(self.n):
            out.append(v % self.q)
            v //= self.q
        return tuple(out)

    def state_of(self, sub: Subspace) -> int:
        return self.index[sub]

    def fold(self, rowints: np.ndarray, start: int = 0) -> np.ndarray:
        """Fold vectors (last axis) into span states; returns states."""
        state = np.full(rowints.shape[:-1], start, dtype=np.int32)
        for i in range(rowints.shape[-1]):
            state = self.T[state, rowints[..., i]]
        return state

    def ranks(self, rowints: np.ndarray, start: int = 0) -> np.ndarray:
        return self.DIM[self.fold(rowints, start)]


def span_table(F, n: int) -> SpanTable | None:
    """Cached span table for K^n of the tower, or None if too big."""
    st = F._span_tables.get(n)
    if st is not None:
        return st
    q = F.K.order
    states = sum(gaussian_binomial(n, r, q) for r in range(n + 1))
    if states * q**n > SPAN_TABLE_MAX or q**n > 2_000_000:
        return None
    st = SpanTable(F.K, n)
    F._span_tables[n] = st
    return st


# ---------------------------------------------------------------------------
# word generation and expansion
# ---------------------------------------------------------------------------

def combine_words(ft: FieldTables, coeffs: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """Linear combinations coeffs @ rows over L, elementwise via tables.

    coeffs (P, r) with rows (r, n) gives (P, n); with a batch of row
    sets (N, r, n) it gives (N, P, n).
    """
    MUL, ADD = ft.lt.MUL, ft.lt.ADD
    r = coeffs.shape[-1]
    if rows.ndim == 2:
        acc = None
        for t in range(r):
            term = MUL[coeffs[:, t, None], rows[t][None, :]]
            acc = term if acc is None else ADD[acc, term]
        if acc is None:
            acc = np.zeros((coeffs.shape[0], rows.shape[1]), dtype=np.int32)
        return acc
    n = rows.shape[2]
    acc = None
    for t in range(r):
        term = MUL[coeffs[None, :, t, None], rows[:, None, t, :]]
        acc = term if acc is None else ADD[acc, term]
    if acc is None:
        acc = np.zeros((rows.shape[0], coeffs.shape[0], n), dtype=np.int32)
    return acc


def span_words(ft: FieldTables, rows: np.ndarray) -> np.ndarray:
    """All order^r words of the L-span of the given rows, (N, n)."""
    order = ft.lt.order
    r, n = rows.shape
    words = np.zeros((1, n), dtype=np.int32)
    for t in range(r):
        mults = ft.lt.MUL[np.arange(order)[:, None], rows[t][None, :]]
        words = ft.lt.ADD[words[:, None, :], mults[None, :, :]].reshape(-1, n)
    return words


def row_ints(ft: FieldTables, words: np.ndarray) -> np.ndarray:
    """Expansion rows of words as K^n vector encodings, shape (..., m)."""
    q = ft.q
    n = words.shape[-1]
    out = np.zeros(words.shape[:-1] + (ft.m,), dtype=np.int32)
    place = 1
    for j in range(n):
        out += ft.DIGITS[words[..., j], :] * place
        place *= q
    return out


def frobenius_orbit_rows(ft: FieldTables, rows: np.ndarray) -> np.ndarray:
    """Stack of all component-wise Frobenius images of the rows.

    rows: (..., r, n) -> (..., r*m, n), image order: generator-major.
    """
    imgs = [ft.FROB[i][rows] for i in range(ft.m)]
    stacked = np.stack(imgs, axis=-2)  # (..., r, m, n)
    return stacked.reshape(rows.shape[:-2] + (rows.shape[-2] * ft.m, rows.shape[-1]))


# ---------------------------------------------------------------------------
# batched rank over a table field
# ---------------------------------------------------------------------------

def batched_row_echelon(at: ArithTables, mats: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Ranks and row-echelon forms of a batch of matrices over one field.

    mats: (N, R, C) int-encoded elements.  Returns (ranks (N,), ech
    (N, R, C)) where the first ranks[i] rows of ech[i] span the row
    space of mats[i] and the remaining rows are zero.
    """
    A = np.array(mats, dtype=np.int32, copy=True)
    if A.ndim != 3:
        raise ValueError("expected (N, R, C)")
    N, R, C = A.shape
    MUL, SUB, INV = at.MUL, at.SUB, at.INV
    pivot = np.zeros(N, dtype=np.int32)
    if R == 0 or C == 0:
        return pivot, A
    rows_idx = np.arange(R)[None, :]
    for col in range(C):
        colv = A[:, :, col]
        elig = (rows_idx >= pivot[:, None]) & (colv != 0)
        has = elig.any(axis=1)
        if not has.any():
            continue
        idx = np.nonzero(has)[0]
        prow = np.argmax(elig[idx], axis=1)
        r0 = pivot[idx]
        tmp = A[idx, prow, :].copy()
        A[idx, prow, :] = A[idx, r0, :]
        A[idx, r0, :] = tmp
        f = INV[A[idx, r0, col]]
        A[idx, r0, :] = MUL[f[:, None], A[idx, r0, :]]
        piv_rows = A[idx, r0, :]
        for i in range(1, R):
            sub_mask = (i > r0) & (A[idx, i, col] != 0)
            if not sub_mask.any():
                continue
            sel = idx[sub_mask]
            g = A[sel, i, col]
            A[sel, i, :] = SUB[A[sel, i, :], MUL[g[:, None], piv_rows[sub_mask]]]
        pivot[idx] += 1
    return pivot, A


def batched_rank(at: ArithTables, mats: np.ndarray) -> np.ndarray:
    return batched_row_echelon(at, mats)[0]


# ---------------------------------------------------------------------------
# scan helpers used by the weights module
# ---------------------------------------------------------------------------

def max_rank_over_span(ft: FieldTables, st: SpanTable, rows: np.ndarray,
                       chunk: int = 1 << 18) -> int:
    """Maximum rank weight over the projective representatives of the
    L-span of rows (equal to the maximum over the whole span, since
    scalar multiples share their rank)."""
    r = rows.shape[0]
    if r == 0:
        return 0
    coeffs = ft.projective_coeffs(r)
    best = 0
    for lo in range(0, coeffs.shape[0], chunk):
        words = combine_words(ft, coeffs[lo : lo + chunk], rows)
        ranks = st.ranks(row_ints(ft, words))
        m = int(ranks.max(initial=0))
        if m > best:
            best = m
    return best


def support_dims_of_subcodes(ft: FieldTables, st: SpanTable, subrows: np.ndarray) -> np.ndarray:
    """Support dimensions for a batch of subcodes.

    subrows: (N, r, n) generator rows per subcode.  The support is the
    K-span of all expansion rows of all generators.
    """
    N, r, n = subrows.shape
    ri = row_ints(ft, subrows).reshape(N, r * ft.m)
    return st.ranks(ri)
