"""Degeneracy diagnostics, the duality relation, and equivalence reports.

A code is degenerate for the rank metric when its dual contains a word
of rank weight one; equivalently its support is a proper subspace of
K^n, equivalently d_k(C) < n.  For a degenerate code this module also
produces the constructive witnesses: the rank-one dual word, its
normalization into K^n, and a coordinate change over K after which
every codeword ends in zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import fastscan as fs
from .code import Isometry, RankCode, code_support, rank_support, rank_weight
from .errors import EmptyCode
from .kspace import Matrix, Subspace
from .weights import DEFAULT_CUTOFF, WeightProfile, grw_jp, profile


@dataclass
class DegeneracyWitness:
    """Constructive evidence that a code is degenerate."""

    dual_word: tuple          # rank-one word of the dual code
    normalized: tuple         # the same word scaled into K^n
    isometry: Isometry        # coordinate change zeroing the last position

    def verify(self, code: RankCode) -> bool:
        F = code.field
        if not code.dual().contains(self.dual_word):
            return False
        if rank_weight(F, self.dual_word) != 1:
            return False
        if not all(F.in_K(x) for x in self.normalized):
            return False
        moved = code.apply_isometry(self.isometry)
        return all(row[-1] == 0 for row in moved.gen.rows)


@dataclass
class AnalysisReport:
    """Aggregated diagnostics for one code."""

    n: int
    k: int
    degenerate: bool
    rsupp_full: bool
    witness: DegeneracyWitness | None
    duality_ok: bool
    weights_self: tuple
    weights_dual: tuple
    equivalence: dict          # pair name -> tuple of per-r agreement flags
    bound_km_ge_n: bool
    profile: WeightProfile
    criteria_agree: bool = True


def _rank_one_dual_word(code: RankCode) -> tuple | None:
    """Lexicographically smallest rank-one word of the dual code."""
    dual = code.dual()
    if dual.k == 0:
        return None
    F = code.field
    ft = fs.field_tables(F)
    st = fs.span_table(F, code.n) if ft is not None else None
    if ft is not None and st is not None:
        rows = np.array(dual.gen.rows, dtype=np.int32).reshape(dual.k, code.n)
        words = fs.span_words(ft, rows)
        ranks = st.ranks(fs.row_ints(ft, words))
        hits = words[ranks == 1]
        if hits.shape[0] == 0:
            return None
        order = np.lexsort(hits.T[::-1])
        return tuple(int(x) for x in hits[order[0]])
    best = None
    for w in dual.codewords():
        if rank_weight(F, w) == 1 and (best is None or w < best):
            best = w
    return best


def _zeroing_isometry(code: RankCode, normalized: tuple) -> Isometry:
    """Invertible K-matrix whose last column is the normalized dual word.

    Codewords map c -> c A, so the last coordinate of every image is
    c . normalized = 0; the witness word itself maps to the last
    standard dual coordinate.
    """
    F = code.field
    n = code.n
    y = [F.coeffs(x)[0] for x in normalized]
    cols = []
    span = Subspace.span(F.K, n, [y])
    for j in range(n):
        e = [1 if t == j else 0 for t in range(n)]
        if not span.contains(e):
            cols.append(e)
            span = Subspace.span(F.K, n, span.basis.rows + (tuple(e),))
        if len(cols) == n - 1:
            break
    cols.append(y)
    mat = Matrix(F.K, [[cols[j][i] for j in range(n)] for i in range(n)], ncols=n)
    return Isometry(1, mat)


def is_degenerate(code: RankCode, cutoff: int = DEFAULT_CUTOFF):
    """Degeneracy verdict plus witnesses.

    Returns (degenerate, witness_or_None).  The primary criterion is
    d_1(dual) = 1; the witness follows the constructive route: pick the
    smallest rank-one dual word h, scale it by the inverse of its first
    nonzero entry so it lands in K^n, and build the coordinate change
    sending it to (0, ..., 0, 1).
    """
    if code.k == 0:
        raise EmptyCode("degeneracy needs k >= 1")
    dual = code.dual()
    if dual.k == 0:
        return False, None
    d1 = grw_jp(dual, 1)
    if d1 != 1:
        return False, None
    h = _rank_one_dual_word(code)
    assert h is not None, "d_1(dual) = 1 guarantees a rank-one dual word"
    F = code.field
    lead = next(x for x in h if x)
    normalized = tuple(F.L.mul(F.L.inv(lead), x) for x in h)
    assert all(F.in_K(x) for x in normalized), "rank-one words are K-multiples"
    iso = _zeroing_isometry(code, normalized)
    witness = DegeneracyWitness(h, normalized, iso)
    return True, witness


def duality_check(code: RankCode, threads: int = 1):
    """The weight-set identity between a code and its dual.

    Returns (holds, weights_of_code, weights_of_dual): the weights of C
    are exactly {1..n} minus the reflected weights of the dual.
    """
    dual = code.dual()
    ws = tuple(grw_jp(code, r, threads) for r in range(1, code.k + 1))
    wd = tuple(grw_jp(dual, r, threads) for r in range(1, dual.k + 1))
    left = set(ws)
    right = set(range(1, code.n + 1)) - {code.n + 1 - d for d in wd}
    return left == right, ws, wd


def dimension_bound_check(code: RankCode, degenerate: bool | None = None) -> bool:
    """Nondegenerate codes must satisfy k*m >= n."""
    if degenerate is None:
        if code.k == 0:
            return True
        degenerate, _ = is_degenerate(code)
    if degenerate:
        return True
    return code.k * code.field.m >= code.n


def equivalence_report(code: RankCode, cutoff: int = DEFAULT_CUTOFF, threads: int = 1) -> AnalysisReport:
    """Run every diagnostic and cross-definition comparison on one code."""
    prof = profile(code, cutoff=cutoff, threads=threads)
    n, k = code.n, code.k
    m_ge_n = prof.m_ge_n

    pairs = {
        "kmu_eq_jp": tuple(prof.d["kmu"][r] == prof.d["jp"][r] for r in range(k + 1)),
        "closure_eq_jp": tuple(prof.d["closure"][r] == prof.d["jp"][r] for r in range(k + 1)),
        "os_eq_jp": tuple(prof.d["os"][r] == prof.d["jp"][r] for r in range(k + 1)),
        "ducoat_eq_closure": tuple(prof.d["ducoat"][r] == prof.d["closure"][r] for r in range(k + 1)),
    }

    rsupp_full = code_support(code).dim == n
    if k >= 1:
        degenerate, witness = is_degenerate(code, cutoff)
        d_k_full = prof.d["jp"][k] == n
        criteria_agree = (degenerate == (not rsupp_full)) and (degenerate == (not d_k_full))
        if witness is not None:
            criteria_agree = criteria_agree and witness.verify(code)
    else:
        degenerate, witness = False, None
        criteria_agree = True

    duality_ok, ws, wd = duality_check(code, threads)
    bound_ok = dimension_bound_check(code, degenerate if k >= 1 else None)

    return AnalysisReport(
        n=n,
        k=k,
        degenerate=degenerate,
        rsupp_full=rsupp_full,
        witness=witness,
        duality_ok=duality_ok,
        weights_self=ws,
        weights_dual=wd,
        equivalence=pairs,
        bound_km_ge_n=bound_ok,
        profile=prof,
        criteria_agree=criteria_agree,
    )
