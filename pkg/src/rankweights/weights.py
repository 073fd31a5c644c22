"""Generalized rank weights and rank weight enumerators.

Five definitions are computed, each by its own exhaustive enumeration,
so that the equivalence theorems between them stay falsifiable by the
test sweep rather than being baked into the code:

* ``jp``       minimum support weight over r-dimensional subcodes;
* ``kmu``      minimum dimension of a Galois-closed subspace meeting
               the code in dimension at least r (closed subspaces are
               exactly the L-extensions of K-subspaces of K^n);
* ``os``       min over r-dimensional subcodes of the max codeword
               rank weight (meaningful for m >= n, computed always);
* ``ducoat``   same min-max but over the Galois closure of the subcode;
* ``closure``  minimum L-dimension of the Galois closure of an
               r-dimensional subcode.

Subcodes are enumerated canonically as r-dimensional subspaces of the
message space L^k mapped through the generator matrix, which is far
cheaper than enumerating subspaces of L^n.  The min-max scans iterate
canonical projective representatives (one word per 1-dimensional
subspace); scalar multiples share their rank weight, so the maximum is
unchanged, and a configurable cutoff on the number of scanned words
aborts with Infeasible rather than ever sampling.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product

import numpy as np

from . import fastscan as fs
from .code import RankCode, extend, rank_weight, subcode_weight, vector_frobenius
from .errors import Infeasible, RankOutOfRange
from .kspace import Matrix, Subspace, enumerate_subspaces, gaussian_binomial

DEFINITIONS = ("jp", "kmu", "os", "ducoat", "closure")
DEFAULT_CUTOFF = 1 << 20
_CHUNK_ELEMS = 1 << 22  # soft bound on words held in memory at once


@dataclass(frozen=True)
class WeightProfile:
    """All weight tables of one code: d[def][r] and enumerators A[r][w]."""

    n: int
    k: int
    q: int
    m: int
    d: dict
    enumerators: tuple
    m_ge_n: bool

    def __eq__(self, other):
        return (
            isinstance(other, WeightProfile)
            and (self.n, self.k, self.q, self.m, self.m_ge_n)
            == (other.n, other.k, other.q, other.m, other.m_ge_n)
            and self.d == other.d
            and self.enumerators == other.enumerators
        )


def _require_r(code: RankCode, r: int) -> None:
    if not 0 <= r <= code.k:
        raise RankOutOfRange(f"r={r} outside 0..k={code.k}")


# ---------------------------------------------------------------------------
# subcode enumeration (canonical, cached per field)
# ---------------------------------------------------------------------------

def message_subspace_bases(F, k: int, r: int) -> list:
    """Canonical bases of the r-dim subspaces of the message space L^k."""
    key = ("msg", k, r)
    got = F._subspace_cache.get(key)
    if got is None:
        got = [s.basis.rows for s in enumerate_subspaces(F.L, k, r)]
        F._subspace_cache[key] = got
    return got


def message_subspace_array(F, k: int, r: int) -> np.ndarray:
    key = ("msgarr", k, r)
    got = F._subspace_cache.get(key)
    if got is None:
        bases = message_subspace_bases(F, k, r)
        got = np.array(bases, dtype=np.int32).reshape(len(bases), r, k)
        F._subspace_cache[key] = got
    return got


def k_subspace_array(F, n: int, dim: int) -> np.ndarray:
    """Bases of the dim-dimensional K-subspaces of K^n as an array."""
    key = ("ksubarr", n, dim)
    got = F._subspace_cache.get(key)
    if got is None:
        bases = [s.basis.rows for s in enumerate_subspaces(F.K, n, dim)]
        got = np.array(bases, dtype=np.int32).reshape(len(bases), dim, n)
        F._subspace_cache[key] = got
    return got


def subcode_rows_array(code: RankCode, r: int) -> np.ndarray:
    """Generator rows of every canonical r-dim subcode, shape (N, r, n)."""
    F = code.field
    ft = fs.field_tables(F)
    U = message_subspace_array(F, code.k, r)
    G = np.array(code.gen.rows, dtype=np.int32).reshape(code.k, code.n)
    N = U.shape[0]
    out = fs.combine_words(ft, U.reshape(N * r, code.k), G)
    return out.reshape(N, r, code.n)


def subcode_rows_iter(code: RankCode, r: int):
    """Scalar companion of subcode_rows_array."""
    for basis in message_subspace_bases(code.field, code.k, r):
        yield Matrix(code.field.L, basis, ncols=code.k).mul(code.gen).rows


def _fast_ready(code: RankCode):
    ft = fs.field_tables(code.field)
    st = fs.span_table(code.field, code.n) if ft is not None else None
    return (ft, st) if ft is not None and st is not None else None


def _thread_ranges(n_items: int, threads: int):
    parts = max(1, min(threads, n_items))
    step = -(-n_items // parts)
    return [(lo, min(lo + step, n_items)) for lo in range(0, n_items, step)]


def _maybe_parallel(fn, ranges, threads):
    if threads <= 1 or len(ranges) <= 1:
        return [fn(lo, hi) for lo, hi in ranges]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(lambda lohi: fn(*lohi), ranges))


# ---------------------------------------------------------------------------
# jp: minimum subcode support weight, and the enumerator
# ---------------------------------------------------------------------------

def _support_dims(code: RankCode, r: int, threads: int = 1) -> np.ndarray:
    fast = _fast_ready(code)
    if fast is not None:
        ft, st = fast
        subrows = subcode_rows_array(code, r)
        if subrows.shape[0] == 0:
            return np.zeros(0, dtype=np.int32)

        def run(lo, hi):
            return fs.support_dims_of_subcodes(ft, st, subrows[lo:hi])

        parts = _maybe_parallel(run, _thread_ranges(subrows.shape[0], threads), threads)
        return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int32)
    dims = [
        subcode_weight(code.field, rows, code.n) for rows in subcode_rows_iter(code, r)
    ]
    return np.array(dims, dtype=np.int32)


def grw_jp(code: RankCode, r: int, threads: int = 1) -> int:
    """Minimum rank support weight over the r-dimensional subcodes."""
    _require_r(code, r)
    if r == 0:
        return 0
    return int(_support_dims(code, r, threads).min())


def enumerator(code: RankCode, r: int, threads: int = 1) -> list[int]:
    """Counts A[w] of r-dimensional subcodes with support weight w."""
    _require_r(code, r)
    if r == 0:
        return [1] + [0] * code.n
    dims = _support_dims(code, r, threads)
    counts = np.bincount(dims, minlength=code.n + 1)
    return [int(c) for c in counts]


# ---------------------------------------------------------------------------
# kmu: minimum dimension of a closed subspace meeting C in dim >= r
# ---------------------------------------------------------------------------

def grw_kmu(code: RankCode, r: int) -> int:
    """Smallest dim of a Galois-closed V <= L^n with dim(C and V) >= r.

    Closed subspaces are exactly the L-spans of K-subspaces of K^n, so
    the search walks J by increasing K-dimension and stops at the first
    success; dim(C and J tensor L) comes from the dimension formula.
    """
    _require_r(code, r)
    if r == 0:
        return 0
    F = code.field
    ft = fs.field_tables(F)
    for jdim in range(code.n + 1):
        if jdim + code.k < r:
            continue
        if ft is not None:
            js = k_subspace_array(F, code.n, jdim)
            if js.shape[0] == 0:
                continue
            G = np.array(code.gen.rows, dtype=np.int32).reshape(1, code.k, code.n)
            stacked = np.concatenate(
                [np.broadcast_to(G, (js.shape[0], code.k, code.n)), js], axis=1
            )
            ranks = fs.batched_rank(ft.lt, stacked)
            inter = code.k + jdim - ranks
            if (inter >= r).any():
                return jdim
        else:
            cspace = code.row_space()
            for j in enumerate_subspaces(F.K, code.n, jdim):
                v = extend(F, j).row_space()
                if cspace.intersect(v).dim >= r:
                    return jdim
    raise AssertionError("unreachable: J = K^n always succeeds for r <= k")


# ---------------------------------------------------------------------------
# min-max scans: os and ducoat
# ---------------------------------------------------------------------------

def _projective_count(order: int, dim: int) -> int:
    return (order**dim - 1) // (order - 1) if dim else 0


def _projective_coeff_iter(order: int, r: int):
    for t in range(r - 1, -1, -1):
        for tail in product(range(order), repeat=r - 1 - t):
            yield (0,) * t + (1,) + tail


def _max_rank_scalar(code: RankCode, rows, what: str, cutoff: int) -> int:
    F = code.field
    r = len(rows)
    if r == 0:
        return 0
    count = _projective_count(F.order, r)
    if count > cutoff:
        raise Infeasible(what, count, cutoff)
    L = F.L
    best = 0
    for coeffs in _projective_coeff_iter(F.order, r):
        word = [0] * code.n
        for c, row in zip(coeffs, rows):
            if c:
                word = [L.add(x, L.mul(c, y)) for x, y in zip(word, row)]
        w = rank_weight(F, word)
        if w > best:
            best = w
            if best == min(F.m, code.n):
                break
    return best


def grw_os(code: RankCode, r: int, cutoff: int = DEFAULT_CUTOFF, threads: int = 1) -> int:
    """Min over r-dim subcodes of the maximum codeword rank weight."""
    _require_r(code, r)
    if r == 0:
        return 0
    what = f"os scan at r={r}"
    fast = _fast_ready(code)
    if fast is None:
        best = None
        for rows in subcode_rows_iter(code, r):
            mx = _max_rank_scalar(code, rows, what, cutoff)
            best = mx if best is None else min(best, mx)
        return best
    ft, st = fast
    pcount = _projective_count(code.field.order, r)
    if pcount > cutoff:
        raise Infeasible(what, pcount, cutoff)
    subrows = subcode_rows_array(code, r)
    coeffs = ft.projective_coeffs(r)

    def run(lo, hi):
        out = np.empty(hi - lo, dtype=np.int32)
        step = max(1, _CHUNK_ELEMS // max(1, pcount * code.n))
        for s in range(lo, hi, step):
            e = min(s + step, hi)
            words = fs.combine_words(ft, coeffs, subrows[s:e])
            ranks = st.ranks(fs.row_ints(ft, words))
            out[s - lo : e - lo] = ranks.max(axis=1)
        return out

    parts = _maybe_parallel(run, _thread_ranges(subrows.shape[0], threads), threads)
    return int(np.concatenate(parts).min())


def _closure_dims_and_bases(code: RankCode, r: int):
    """Batched L-dimensions and echelon bases of subcode Galois closures."""
    ft = fs.field_tables(code.field)
    subrows = subcode_rows_array(code, r)
    orbits = fs.frobenius_orbit_rows(ft, subrows)
    ranks, ech = fs.batched_row_echelon(ft.lt, orbits)
    return ranks, ech


def grw_closure(code: RankCode, r: int, threads: int = 1) -> int:
    """Min over r-dim subcodes of the L-dimension of the Galois closure."""
    _require_r(code, r)
    if r == 0:
        return 0
    ft = fs.field_tables(code.field)
    if ft is not None:
        ranks, _ = _closure_dims_and_bases(code, r)
        return int(ranks.min())
    best = None
    for rows in subcode_rows_iter(code, r):
        dim = RankCode(code.field, code.n, [vector_frobenius(code.field, g, i) for g in rows for i in range(code.field.m)]).k
        best = dim if best is None else min(best, dim)
    return best


def grw_ducoat(code: RankCode, r: int, cutoff: int = DEFAULT_CUTOFF, threads: int = 1) -> int:
    """Min over r-dim subcodes of the max rank weight over the closure."""
    _require_r(code, r)
    if r == 0:
        return 0
    what = f"ducoat scan at r={r}"
    F = code.field
    fast = _fast_ready(code)
    if fast is None:
        best = None
        for rows in subcode_rows_iter(code, r):
            closure = RankCode(F, code.n, [vector_frobenius(F, g, i) for g in rows for i in range(F.m)])
            mx = _max_rank_scalar(code, closure.gen.rows, what, cutoff)
            best = mx if best is None else min(best, mx)
        return best
    ft, st = fast
    ranks, ech = _closure_dims_and_bases(code, r)
    worst = _projective_count(F.order, int(ranks.max(initial=0)))
    if worst > cutoff:
        raise Infeasible(what, worst, cutoff)
    maxima = np.zeros(ranks.shape[0], dtype=np.int32)
    for s in np.unique(ranks):
        sel = np.nonzero(ranks == s)[0]
        if s == 0:
            continue
        coeffs = ft.projective_coeffs(int(s))
        bases = ech[sel, : int(s), :]
        pcount = coeffs.shape[0]
        step = max(1, _CHUNK_ELEMS // max(1, pcount * code.n))

        def run(lo, hi):
            out = np.empty(hi - lo, dtype=np.int32)
            for a in range(lo, hi, step):
                b = min(a + step, hi)
                words = fs.combine_words(ft, coeffs, bases[a:b])
                rr = st.ranks(fs.row_ints(ft, words))
                out[a - lo : b - lo] = rr.max(axis=1)
            return out

        parts = _maybe_parallel(run, _thread_ranges(sel.shape[0], threads), threads)
        maxima[sel] = np.concatenate(parts)
    return int(maxima.min())


# ---------------------------------------------------------------------------
# the full profile
# ---------------------------------------------------------------------------

_GRW_FUNCS = {
    "jp": lambda code, r, cutoff, threads: grw_jp(code, r, threads),
    "kmu": lambda code, r, cutoff, threads: grw_kmu(code, r),
    "os": lambda code, r, cutoff, threads: grw_os(code, r, cutoff, threads),
    "ducoat": lambda code, r, cutoff, threads: grw_ducoat(code, r, cutoff, threads),
    "closure": lambda code, r, cutoff, threads: grw_closure(code, r, threads),
}


def grw(code: RankCode, r: int, definition: str, cutoff: int = DEFAULT_CUTOFF, threads: int = 1) -> int:
    """Dispatch on definition name (one of DEFINITIONS)."""
    if definition not in _GRW_FUNCS:
        raise KeyError(f"unknown definition {definition!r}; pick from {DEFINITIONS}")
    return _GRW_FUNCS[definition](code, r, cutoff, threads)


def profile(
    code: RankCode,
    cutoff: int = DEFAULT_CUTOFF,
    defs=DEFINITIONS,
    threads: int = 1,
    with_enumerators: bool = True,
) -> WeightProfile:
    """Weight tables under every requested definition, plus enumerators."""
    d = {}
    for name in defs:
        if name not in DEFINITIONS:
            raise KeyError(f"unknown definition {name!r}")
        d[name] = tuple(grw(code, r, name, cutoff, threads) for r in range(code.k + 1))
    enums = ()
    if with_enumerators:
        enums = tuple(tuple(enumerator(code, r, threads)) for r in range(code.k + 1))
    return WeightProfile(
        n=code.n,
        k=code.k,
        q=code.field.q,
        m=code.field.m,
        d=d,
        enumerators=enums,
        m_ge_n=code.field.m >= code.n,
    )
