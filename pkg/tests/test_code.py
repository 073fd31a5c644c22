"""Rank codes: expansion, supports, derived codes, closure properties."""

from itertools import product

import pytest

from rankweights.code import (Isometry, RankCode, code_support,
                              code_support_by_scan, expand, extend,
                              rank_support, rank_weight,
                              shorten_by_support_scan, subcode_support,
                              subcode_weight, vector_frobenius, vector_trace)
from rankweights.errors import SingularMatrix
from rankweights.gf import LBasis, extension_field
from rankweights.kspace import Matrix, Subspace, all_subspaces, enumerate_subspaces
from rankweights.sweep import Lcg, exhaustive_codes, random_code

F4 = extension_field(2, 1, 2)
F8 = extension_field(2, 1, 3)
A = 2  # the power-basis generator in any of these fields


def example_code():
    """Length-4 code over GF(8) generated by (1,a,a^2,a^3), (1,a,a^2,a^4)."""
    pw = F8.L.pow
    return RankCode(F8, 4, [[1, A, pw(A, 2), pw(A, 3)], [1, A, pw(A, 2), pw(A, 4)]])


# ---------------------------------------------------------------------------
# expansion and supports
# ---------------------------------------------------------------------------

def test_expand_frozen_gf4():
    assert expand(F4, (1, A)).rows == ((1, 0), (0, 1))
    assert expand(F4, (0, 0)).rows == ((0, 0), (0, 0))


def test_expand_constant_vector_rank_one():
    vec = (3, 3, 3)
    mat = expand(F4, vec)
    assert mat.rank() == 1
    assert rank_weight(F4, vec) == 1


def test_expand_other_basis_same_row_space():
    lcg = Lcg(5)
    basis = LBasis((2, 3), "normal")  # {a, a^2} in GF(4)
    for _ in range(25):
        vec = tuple(lcg.below(4) for _ in range(3))
        default = rank_support(F4, vec)
        other = rank_support(F4, vec, basis)
        assert default == other
        # reconstruct the vector from its basis coordinates
        mat = expand(F4, vec, basis)
        for j in range(3):
            acc = 0
            for i, b in enumerate(basis.elems):
                acc = F4.L.add(acc, F4.L.mul(F4.lift(mat.rows[i][j]), b))
            assert acc == vec[j]


def test_rank_weight_frozen():
    assert rank_weight(F4, (0, 0)) == 0
    assert rank_weight(F4, (1, A)) == 2
    pw = F8.L.pow
    assert rank_weight(F8, (1, A, pw(A, 2), pw(A, 3))) == 3  # m = 3 caps the rank


def test_support_scalar_invariance_exhaustive():
    # Rsupp(alpha x) = Rsupp(x) over GF(4)^2 and GF(8)^3
    for F, n in ((F4, 2), (F8, 3)):
        for vec in product(range(F.order), repeat=n):
            base = rank_support(F, vec)
            for alpha in range(1, F.order):
                scaled = tuple(F.L.mul(alpha, x) for x in vec)
                assert rank_support(F, scaled) == base


def test_support_subadditive_exhaustive_gf4():
    for x in product(range(4), repeat=2):
        sx = rank_support(F4, x)
        for y in product(range(4), repeat=2):
            sy = rank_support(F4, y)
            z = tuple(F4.L.add(a, b) for a, b in zip(x, y))
            sz = rank_support(F4, z)
            assert sz.leq(sx.sum(sy))
            assert rank_weight(F4, z) <= rank_weight(F4, x) + rank_weight(F4, y)


def test_support_subadditive_random_gf8():
    lcg = Lcg(13)
    for _ in range(200):
        x = tuple(lcg.below(8) for _ in range(3))
        y = tuple(lcg.below(8) for _ in range(3))
        z = tuple(F8.L.add(a, b) for a, b in zip(x, y))
        assert rank_support(F8, z).leq(rank_support(F8, x).sum(rank_support(F8, y)))


def test_generator_sum_equals_codeword_scan():
    # subcode support from generators agrees with the sum over all words
    lcg = Lcg(17)
    for _ in range(15):
        code = random_code(lcg, F8, 3, 2)
        assert code_support(code) == code_support_by_scan(code)
    assert code_support(example_code()) == code_support_by_scan(example_code())


def test_example_code_support_full_but_no_word_attains_it():
    E = example_code()
    assert subcode_weight(F8, E.gen.rows, 4) == 4
    assert code_support(E) == Subspace.full(F8.K, 4)
    assert max(rank_weight(F8, c) for c in E.codewords()) == 3


def test_one_dim_subcode_support_equals_word_support():
    lcg = Lcg(23)
    for _ in range(20):
        vec = tuple(lcg.below(8) for _ in range(3))
        assert subcode_support(F8, [vec], 3) == rank_support(F8, vec)


# ---------------------------------------------------------------------------
# dual
# ---------------------------------------------------------------------------

def test_dual_frozen():
    C = RankCode(F4, 2, [[1, A]])
    D = C.dual()
    assert D.k == 1 and D.contains((A, 1))
    self_dual = RankCode(F4, 2, [[1, 1]])
    assert self_dual.dual() == self_dual
    assert RankCode.full(F4, 2).dual() == RankCode.zero(F4, 2)


def test_dual_involution_and_dimension():
    lcg = Lcg(29)
    for _ in range(20):
        n = 2 + lcg.below(3)
        k = lcg.below(n + 1)
        code = RankCode(F8, n, [[lcg.below(8) for _ in range(n)] for _ in range(k)])
        dual = code.dual()
        assert dual.k == n - code.k
        assert dual.dual() == code


# ---------------------------------------------------------------------------
# shortening
# ---------------------------------------------------------------------------

def test_shorten_trivial_cases():
    E = example_code()
    assert E.shorten(Subspace.zero(F8.K, 4)) == E
    assert E.shorten(Subspace.full(F8.K, 4)).k == 0
    full = RankCode.full(F4, 2)
    assert full.shorten(Subspace.full(F4.K, 2)).k == 0


def test_shorten_example_at_e4():
    E = example_code()
    j = Subspace.span(F8.K, 4, [(0, 0, 0, 1)])
    S = E.shorten(j)
    assert S.k == 1
    assert all(row[3] == 0 for row in S.gen.rows)
    assert all(E.contains(row) for row in S.gen.rows)
    # independent kernel oracle: x*a + y*b with fourth entry zero
    assert S == shorten_by_support_scan(E, j)


def test_shorten_matches_scan_oracle_and_bound():
    lcg = Lcg(31)
    for _ in range(10):
        code = random_code(lcg, F8, 3, 2)
        for j in all_subspaces(F8.K, 3):
            S = code.shorten(j)
            assert S == shorten_by_support_scan(code, j)
            assert S.k >= code.k - j.dim


# ---------------------------------------------------------------------------
# trace code, restriction, extension, Galois closure
# ---------------------------------------------------------------------------

def test_trace_and_closure_frozen_gf4():
    C = RankCode(F4, 2, [[1, A]])
    closure = C.galois_closure()
    assert closure == RankCode.full(F4, 2)
    assert C.trace_code() == Subspace.full(F4.K, 2)
    assert code_support(C) == C.trace_code()
    assert C.restriction() == Subspace.zero(F4.K, 2)


def test_k_generated_code_is_closed():
    X = RankCode(F8, 3, [[1, 1, 0], [0, 1, 1]])
    assert X.is_galois_closed()
    assert X == extend(F8, X.restriction())
    assert X.trace_code() == X.restriction()
    assert X.restriction().dim == X.k


def test_fourway_equivalence_random():
    lcg = Lcg(37)
    for _ in range(40):
        n = 2 + lcg.below(2)
        k = 1 + lcg.below(2)
        if lcg.below(2):
            code = random_code(lcg, F8, n, min(k, n))
        else:  # a closed code: extension of a random K-subspace
            rows = [[lcg.below(2) for _ in range(n)] for _ in range(k)]
            code = extend(F8, Subspace.span(F8.K, n, rows))
        c1 = code.is_galois_closed()
        c2 = code == extend(F8, code.restriction())
        c3 = code.restriction().dim == code.k
        c4 = code.trace_code() == code.restriction()
        assert c1 == c2 == c3 == c4


def test_closure_is_closed_and_idempotent():
    lcg = Lcg(41)
    for _ in range(20):
        code = random_code(lcg, F8, 3, 1 + lcg.below(2))
        closure = code.galois_closure()
        assert closure.is_galois_closed()
        assert closure.galois_closure() == closure
        assert all(closure.contains(g) for g in code.gen.rows)


def test_trace_identity_on_small_codes():
    # support equals trace code; expansion rows lie in the trace code
    for F, n_max in ((F4, 3), (F8, 2)):
        for code in exhaustive_codes(F, n_max, 2):
            tr = code.trace_code()
            assert code_support(code) == tr
            if code.size() <= 256:
                for c in code.codewords():
                    for row in expand(F, c).rows:
                        assert tr.contains(row)


def test_vector_trace_componentwise():
    assert vector_trace(F4, (1, A, 3)) == (0, 1, 1)


def test_single_vector_closure_identity_exhaustive_gf8():
    # <x>* = Rsupp(x) (x) L and dim <x>* = rk M(x), all x in GF(8)^n, n <= 2
    for n in (1, 2):
        for vec in product(range(8), repeat=n):
            single = RankCode(F8, n, [vec])
            closure = single.galois_closure()
            extended = extend(F8, rank_support(F8, vec))
            assert closure == extended
            assert closure.k == rank_weight(F8, vec)


def test_closed_space_is_single_vector_closure():
    # every closed V with dim V <= m arises as <x>* with the basis of its
    # K-form written into the expansion rows of x
    for F, n in ((F4, 2), (F8, 3)):
        for dim in range(0, min(F.m, n) + 1):
            for j in enumerate_subspaces(F.K, n, dim):
                v = extend(F, j)
                coeffs_rows = list(j.basis.rows) + [(0,) * n] * (F.m - dim)
                x = tuple(
                    F.from_coeffs([coeffs_rows[i][col] for i in range(F.m)])
                    for col in range(n)
                )
                assert v.contains(x)
                assert RankCode(F, n, [x]).galois_closure() == v


def test_full_support_word_exists_when_m_ge_n():
    # exhaustive over all codes with q=2, m=3, n <= 3, k <= 2
    for code in exhaustive_codes(F8, 3, 2):
        if code.k == 0:
            continue
        target = code_support(code)
        assert any(rank_support(F8, c) == target for c in code.codewords())


def test_combination_attains_support_sum_when_m_ge_n():
    # for m >= n some alpha x + beta y has support Rsupp(x) + Rsupp(y);
    # scalar invariance reduces the check to projective representatives
    reps = [vec for vec in product(range(8), repeat=3)
            if next((x for x in vec if x), None) in (None, 1)]
    for x in reps:
        sx = rank_support(F8, x)
        for y in reps:
            target = sx.sum(rank_support(F8, y))
            found = False
            for alpha in range(8):
                for beta in range(8):
                    z = tuple(
                        F8.L.add(F8.L.mul(alpha, a), F8.L.mul(beta, b))
                        for a, b in zip(x, y)
                    )
                    if rank_support(F8, z) == target:
                        found = True
                        break
                if found:
                    break
            assert found, (x, y)


# ---------------------------------------------------------------------------
# isometries
# ---------------------------------------------------------------------------

def test_isometry_identity_and_scalar():
    E = example_code()
    eye = Matrix.identity(F8.K, 4)
    assert E.apply_isometry(Isometry(1, eye)) == E
    assert E.apply_isometry(Isometry(A, eye)) == E  # scalar preserves the row space


def test_isometry_group_generators_preserve_rank_weight():
    lcg = Lcg(43)
    n = 3
    gens = []
    for lam in range(1, 8):  # scalar part
        gens.append(Isometry(lam, Matrix.identity(F8.K, n)))
    swap = Matrix(F8.K, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    shear = Matrix(F8.K, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    gens.append(Isometry(1, swap))
    gens.append(Isometry(1, shear))
    for iso in gens:
        for _ in range(30):
            vec = tuple(lcg.below(8) for _ in range(n))
            a_l = Matrix(F8.L, [[F8.lift(v) for v in row] for row in iso.matrix.rows])
            moved = Matrix(F8.L, [vec]).mul(a_l).scale(iso.scalar).rows[0]
            assert rank_weight(F8, moved) == rank_weight(F8, vec)


def test_singular_isometry_rejected():
    with pytest.raises(SingularMatrix):
        Isometry(1, Matrix(F4.K, [[1, 1], [1, 1]]))
    with pytest.raises(SingularMatrix):
        Isometry(0, Matrix.identity(F4.K, 2))


def test_permutation_isometry_preserves_code_support_dim():
    E = example_code()
    perm = Matrix(F8.K, [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    moved = E.apply_isometry(Isometry(1, perm))
    assert code_support(moved).dim == code_support(E).dim


def test_frobenius_semilinearity_on_vectors():
    lcg = Lcg(47)
    for _ in range(30):
        vec = tuple(lcg.below(8) for _ in range(3))
        lam = lcg.below(8)
        scaled = tuple(F8.L.mul(lam, x) for x in vec)
        assert vector_frobenius(F8, scaled) == tuple(
            F8.L.mul(F8.frobenius(lam), x) for x in vector_frobenius(F8, vec)
        )
