"""Randomized and exhaustive property sweeps.

Reproducibility contract: all randomness comes from a 64-bit linear
congruential generator with multiplier 6364136223846793005 and
increment 1442695040888963407; a draw advances the state once and
returns its top 32 bits, and bounded draws reduce that value modulo the
bound.  Identical seeds therefore produce identical codes, isometries
and verdicts on any platform.

The property battery re-derives every structural fact about a code from
independent computations (no shortcut through the equivalences under
test) and reports one named pass/fail per property.  A failing check
carries the offending code file verbatim so the case can be replayed.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import fastscan as fs
from .analysis import AnalysisReport, equivalence_report
from .code import (Isometry, RankCode, code_support, expand, extend,
                   rank_support, rank_weight)
from .codefile import serialize_text
from .errors import Infeasible
from .gf import extension_field
from .kspace import Matrix, Subspace, enumerate_subspaces, gaussian_binomial
from .weights import DEFAULT_CUTOFF, profile

LCG_MULT = 6364136223846793005
LCG_INC = 1442695040888963407
_MASK64 = (1 << 64) - 1

GUARD_CODE_SIZE = 1 << 20     # largest |C| a sweep code may have
GUARD_SCAN_WORDS = 1 << 22    # budget for min-max scan words per code


class Lcg:
    """The documented 64-bit LCG; see the module docstring."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u32(self) -> int:
        self.state = (self.state * LCG_MULT + LCG_INC) & _MASK64
        return self.state >> 32

    def below(self, bound: int) -> int:
        if bound <= 0:
            raise ValueError("bound must be positive")
        return self.next_u32() % bound


# ---------------------------------------------------------------------------
# code generation
# ---------------------------------------------------------------------------

def random_code(lcg: Lcg, F, n: int, k: int, attempts: int = 64) -> RankCode:
    """A uniformly drawn k-dimensional code in L^n (redrawing until the
    generator matrix has full rank)."""
    for _ in range(attempts):
        rows = [[lcg.below(F.order) for _ in range(n)] for _ in range(k)]
        code = RankCode(F, n, rows)
        if code.k == k:
            return code
    raise AssertionError("could not draw a full-rank generator matrix")


def random_isometry(lcg: Lcg, F, n: int, attempts: int = 256) -> Isometry:
    scalar = 1 + lcg.below(F.order - 1) if F.order > 1 else 1
    for _ in range(attempts):
        rows = [[lcg.below(F.K.order) for _ in range(n)] for _ in range(n)]
        mat = Matrix(F.K, rows, ncols=n)
        if mat.rank() == n:
            return Isometry(scalar, mat)
    raise AssertionError("could not draw an invertible matrix")


def scan_word_budget(q: int, m: int, n: int, k: int, cutoff: int) -> int | None:
    """Estimated words scanned by the min-max definitions, or None when a
    single subcode would exceed the cutoff."""
    order = q**m
    total = 0
    for r in range(1, k + 1):
        subs = gaussian_binomial(k, r, order)
        p_os = (order**r - 1) // (order - 1)
        sdim = min(n, r * m)
        p_duc = (order**sdim - 1) // (order - 1)
        if max(p_os, p_duc) > cutoff:
            return None
        total += subs * (p_os + p_duc)
    return total


def feasible_combos(q: int, m_max: int, n_max: int, k_max: int,
                    cutoff: int = DEFAULT_CUTOFF) -> list[tuple[int, int, int]]:
    """All (m, n, k) drawable at desk scale, in deterministic order.

    Guard rails: the code itself has at most GUARD_CODE_SIZE words, and
    the total budget for the min-max scans (which the full profile runs
    for every code) stays under GUARD_SCAN_WORDS.
    """
    out = []
    for m in range(1, m_max + 1):
        for n in range(1, n_max + 1):
            for k in range(1, min(n, k_max) + 1):
                if q ** (m * k) > GUARD_CODE_SIZE:
                    continue
                budget = scan_word_budget(q, m, n, k, cutoff)
                if budget is None or budget > GUARD_SCAN_WORDS:
                    continue
                out.append((m, n, k))
    return out


def random_sweep_codes(q: int, m_max: int, n_max: int, k_max: int, seed: int,
                       count: int, cutoff: int = DEFAULT_CUTOFF):
    """The deterministic sequence of (code, isometry_seed) pairs."""
    lcg = Lcg(seed)
    combos = feasible_combos(q, m_max, n_max, k_max, cutoff)
    if not combos:
        raise ValueError("no feasible (m, n, k) combinations at these bounds")
    out = []
    for _ in range(count):
        m, n, k = combos[lcg.below(len(combos))]
        F = extension_field(q, 1, m)
        code = random_code(lcg, F, n, k)
        iso_seed = (lcg.next_u32() << 32) | lcg.next_u32()
        out.append((code, iso_seed))
    return out


def exhaustive_codes(F, n_max: int, k_max: int):
    """Every code over F with length <= n_max and dimension <= k_max."""
    for n in range(1, n_max + 1):
        for k in range(0, min(n, k_max) + 1):
            for sub in enumerate_subspaces(F.L, n, k):
                yield RankCode(F, n, sub.basis.rows)


# ---------------------------------------------------------------------------
# the property battery
# ---------------------------------------------------------------------------

@dataclass
class PropertyResult:
    name: str
    applicable: bool
    passed: bool
    detail: str = ""


@dataclass
class CodeCheckResult:
    params: tuple
    code_text: str
    results: list
    profile_seconds: float
    report: AnalysisReport

    def failed(self) -> list:
        return [r for r in self.results if r.applicable and not r.passed]


def _codeword_arrays(code: RankCode):
    """(words, ranks) over the whole code via the table engine, or None."""
    ft = fs.field_tables(code.field)
    st = fs.span_table(code.field, code.n)
    if ft is None or st is None or code.size() > GUARD_CODE_SIZE:
        return None
    rows = np.array(code.gen.rows, dtype=np.int32).reshape(code.k, code.n)
    words = fs.span_words(ft, rows)
    rowints = fs.row_ints(ft, words)
    ranks = st.ranks(rowints)
    return ft, st, words, rowints, ranks


def check_code(code: RankCode, cutoff: int = DEFAULT_CUTOFF, isometries: int = 50,
               iso_seed: int = 0, threads: int = 1) -> CodeCheckResult:
    """Run every property check on one code."""
    F = code.field
    n, k, m = code.n, code.k, F.m
    out: list[PropertyResult] = []

    t0 = time.perf_counter()
    report = equivalence_report(code, cutoff=cutoff, threads=threads)
    profile_seconds = time.perf_counter() - t0
    prof = report.profile

    def add(name, applicable, passed, detail=""):
        out.append(PropertyResult(name, applicable, bool(passed), detail))

    # definition equivalences
    add("kmu_matches_jp", True, all(report.equivalence["kmu_eq_jp"]),
        f"kmu={prof.d['kmu']} jp={prof.d['jp']}")
    add("closure_matches_jp", True, all(report.equivalence["closure_eq_jp"]),
        f"closure={prof.d['closure']} jp={prof.d['jp']}")
    add("os_matches_jp", m >= n, all(report.equivalence["os_eq_jp"]) if m >= n else True,
        f"os={prof.d['os']} jp={prof.d['jp']}")
    add("ducoat_matches_closure", m >= n,
        all(report.equivalence["ducoat_eq_closure"]) if m >= n else True,
        f"ducoat={prof.d['ducoat']} closure={prof.d['closure']}")

    # trace identity
    support = code_support(code)
    trace = code.trace_code()
    add("trace_code_equals_support", True, support == trace)

    arrays = _codeword_arrays(code)
    if arrays is not None:
        ft, st, words, rowints, ranks = arrays
        tstate = st.state_of(trace)
        folded = st.fold(rowints, start=tstate)
        rows_inside = bool((st.DIM[folded] == trace.dim).all())
        add("expansion_rows_in_trace_code", True, rows_inside)
        if m >= n and k >= 1:
            add("full_support_word", True, int(ranks.max(initial=0)) == support.dim,
                f"max word rank {int(ranks.max(initial=0))}, support dim {support.dim}")
        else:
            add("full_support_word", False, True)
    else:
        scannable = code.size() <= 4096
        ok_rows = True
        ok_full = not (m >= n and k >= 1)
        best = 0
        if scannable:
            for c in code.codewords():
                for row in expand(F, c).rows:
                    ok_rows = ok_rows and trace.contains(row)
                best = max(best, rank_weight(F, c))
            if m >= n and k >= 1:
                ok_full = best == support.dim
        add("expansion_rows_in_trace_code", scannable, ok_rows)
        add("full_support_word", scannable and m >= n and k >= 1, ok_full)

    # four-way characterization of closed codes, each leg independent
    closure = code.galois_closure()
    restr = code.restriction()
    c1 = closure == code
    c2 = extend(F, restr) == code
    c3 = restr.dim == k
    c4 = trace == restr
    add("galois_fourway_agreement", True, c1 == c2 == c3 == c4,
        f"closed={c1} ext(restr)={c2} K-basis={c3} trace=restr={c4}")

    # shortening, against the support-containment definition
    if n <= 3 and arrays is not None:
        ft, st, words, rowints, ranks = arrays
        ok_lemma = True
        ok_dim = True
        ok_bound = True
        ltab = ft.lt
        for j in _all_k_subspaces(F, n):
            short = code.shorten(j)
            jperp_state = st.state_of(j.orthogonal())
            inside = st.DIM[st.fold(rowints, start=jperp_state)] == j.orthogonal().dim
            dots_zero = np.ones(words.shape[0], dtype=bool)
            for y in j.basis.rows:
                acc = np.zeros(words.shape[0], dtype=np.int32)
                for col, yv in enumerate(y):
                    if yv:
                        acc = ltab.ADD[acc, ltab.MUL[words[:, col], F.lift(yv)]]
                dots_zero &= acc == 0
            ok_lemma = ok_lemma and bool((inside == dots_zero).all())
            ok_dim = ok_dim and F.order**short.k == int(inside.sum())
            ok_dim = ok_dim and all(
                rank_support(F, row).leq(j.orthogonal()) for row in short.gen.rows
            )
            ok_bound = ok_bound and short.k >= k - j.dim
        add("shortening_matches_support_definition", True, ok_lemma and ok_dim)
        add("shortening_dimension_bound", True, ok_bound)
    else:
        add("shortening_matches_support_definition", False, True)
        add("shortening_dimension_bound", False, True)

    # degeneracy and duality diagnostics
    if k >= 1:
        add("degeneracy_criteria_agree", True, report.criteria_agree)
        add("degeneracy_witness_valid", report.degenerate,
            report.witness.verify(code) if report.degenerate else True)
    else:
        add("degeneracy_criteria_agree", False, True)
        add("degeneracy_witness_valid", False, True)
    add("duality_weight_sets", True, report.duality_ok,
        f"self={report.weights_self} dual={report.weights_dual}")
    add("dimension_bound_km", True, report.bound_km_ge_n)

    # enumerator consistency
    order = F.order
    sums_ok = all(
        sum(prof.enumerators[r]) == gaussian_binomial(k, r, order)
        for r in range(k + 1)
    )
    add("enumerator_sums", True, sums_ok)
    min_ok = True
    for r in range(1, k + 1):
        first = next(w for w in range(1, n + 1) if prof.enumerators[r][w])
        min_ok = min_ok and first == prof.d["jp"][r]
    add("enumerator_min_index", True, min_ok)
    mono_ok = all(prof.d["jp"][r] <= prof.d["jp"][r + 1] for r in range(k)) and all(
        prof.d[name][0] == 0 for name in prof.d
    )
    add("weight_monotonicity", True, mono_ok)

    # isometry invariance of the full profile
    if isometries > 0 and k >= 1:
        lcg = Lcg(iso_seed)
        ok_iso = True
        for _ in range(isometries):
            iso = random_isometry(lcg, F, n)
            moved = code.apply_isometry(iso)
            if profile(moved, cutoff=cutoff, threads=threads) != prof:
                ok_iso = False
                break
        add("isometry_profile_invariance", True, ok_iso)
    else:
        add("isometry_profile_invariance", False, True)

    return CodeCheckResult(
        params=(F.q, m, n, k),
        code_text=serialize_text(code),
        results=out,
        profile_seconds=profile_seconds,
        report=report,
    )


def _all_k_subspaces(F, n: int):
    key = ("ksub-objs", n)
    got = F._subspace_cache.get(key)
    if got is None:
        got = [s for d in range(n + 1) for s in enumerate_subspaces(F.K, n, d)]
        F._subspace_cache[key] = got
    return got


PROPERTY_NAMES = (
    "kmu_matches_jp",
    "closure_matches_jp",
    "os_matches_jp",
    "ducoat_matches_closure",
    "trace_code_equals_support",
    "expansion_rows_in_trace_code",
    "full_support_word",
    "galois_fourway_agreement",
    "shortening_matches_support_definition",
    "shortening_dimension_bound",
    "degeneracy_criteria_agree",
    "degeneracy_witness_valid",
    "duality_weight_sets",
    "dimension_bound_km",
    "enumerator_sums",
    "enumerator_min_index",
    "weight_monotonicity",
    "isometry_profile_invariance",
)


@dataclass
class SweepReport:
    q: int
    seed: int
    count: int
    checks: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def stats(self) -> dict:
        agg = {name: [0, 0] for name in PROPERTY_NAMES}
        for check in self.checks:
            for res in check.results:
                if res.applicable:
                    agg[res.name][0] += 1
                    agg[res.name][1] += res.passed
        return agg

    @property
    def failures(self) -> list:
        return [c for c in self.checks if c.failed()]

    def all_passed(self) -> bool:
        return not self.failures


def run_sweep(q: int, m_max: int, n_max: int, k_max: int, seed: int, count: int,
              cutoff: int = DEFAULT_CUTOFF, isometries: int = 50,
              threads: int = 1) -> SweepReport:
    """Draw `count` random codes and run the full battery on each."""
    t0 = time.perf_counter()
    pairs = random_sweep_codes(q, m_max, n_max, k_max, seed, count, cutoff)

    def one(pair):
        code, iso_seed = pair
        return check_code(code, cutoff=cutoff, isometries=isometries,
                          iso_seed=iso_seed)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            checks = list(ex.map(one, pairs))
    else:
        checks = [one(p) for p in pairs]
    return SweepReport(q=q, seed=seed, count=count, checks=checks,
                       seconds=time.perf_counter() - t0)
