"""Field tower: construction, Frobenius, trace, bases, Moore matrices."""

from itertools import combinations

import pytest

from rankweights.errors import NotIrreducible, NotPrime
from rankweights.gf import (DEFAULT_POLYS, FieldSpec, LBasis, PrimeField,
                            default_poly, extension_field, field_make,
                            is_irreducible)
from rankweights.kspace import Matrix

# fields small enough for exhaustive checks (order <= 64)
SMALL_SPECS = [
    (2, 1, 2),   # GF(4)/GF(2)
    (2, 1, 3),   # GF(8)/GF(2)
    (2, 1, 6),   # GF(64)/GF(2)
    (3, 1, 2),   # GF(9)/GF(3)
    (3, 1, 3),   # GF(27)/GF(3)
    (5, 1, 2),   # GF(25)/GF(5)
    (2, 2, 2),   # GF(16)/GF(4), non-prime base
    (2, 2, 3),   # GF(64)/GF(4)
    (3, 2, 1),   # GF(9)/GF(9), degenerate tower m=1
]


@pytest.fixture(params=SMALL_SPECS, ids=lambda s: f"GF({s[0]**s[1]}^{s[2]})")
def F(request):
    p, s, m = request.param
    return extension_field(p, s, m)


def trace_by_mult_matrix(F, x):
    """Independent trace oracle: trace of the K-matrix of y -> x*y."""
    mat = [[0] * F.m for _ in range(F.m)]
    for j in range(F.m):
        col = F.coeffs(F.L.mul(x, F.q**j))
        for i in range(F.m):
            mat[i][j] = col[i]
    acc = 0
    for i in range(F.m):
        acc = F.K.add(acc, mat[i][i])
    return acc


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def test_not_prime_rejected():
    with pytest.raises(NotPrime):
        extension_field(4, 1, 2)
    with pytest.raises(NotPrime):
        extension_field(1, 1, 2)


def test_reducible_poly_rejected():
    # x^2 + 1 = (x+1)^2 over GF(2)
    with pytest.raises(NotIrreducible):
        extension_field(2, 1, 2, l_poly=(1, 0, 1))


def test_non_monic_rejected():
    with pytest.raises(NotIrreducible):
        extension_field(3, 1, 2, l_poly=(1, 0, 2))


def test_default_table_matches_search():
    for (p, d), frozen in DEFAULT_POLYS.items():
        assert default_poly(PrimeField(p), d) == frozen
        assert is_irreducible(frozen, PrimeField(p))
        assert frozen[-1] == 1


def test_example_field_relation():
    # GF(8) with the default polynomial satisfies alpha^3 = 1 + alpha
    F = extension_field(2, 1, 3)
    alpha = 2
    assert F.L.pow(alpha, 3) == F.L.add(1, alpha)


def test_spec_canonicalization():
    spec = FieldSpec(2, 1, 3).canonical()
    assert spec.l_poly == (1, 1, 0, 1)
    assert spec.k_poly == ()
    tower = FieldSpec(2, 2, 2).canonical()
    assert tower.k_poly == (1, 1, 1)
    assert len(tower.l_poly) == 3


def test_field_make_is_cached():
    assert field_make(FieldSpec(2, 1, 3)) is field_make(FieldSpec(2, 1, 3))


# ---------------------------------------------------------------------------
# frobenius
# ---------------------------------------------------------------------------

def test_frobenius_is_field_homomorphism(F):
    frob = F.frobenius
    add, mul = F.L.add, F.L.mul
    for x in range(F.order):
        for y in range(F.order):
            assert frob(add(x, y)) == add(frob(x), frob(y))
            assert frob(mul(x, y)) == mul(frob(x), frob(y))


def test_frobenius_fixes_exactly_K(F):
    fixed = [x for x in range(F.order) if F.frobenius(x) == x]
    assert len(fixed) == F.q
    assert all(F.in_K(x) for x in fixed)


def test_frobenius_power_m_is_identity(F):
    assert all(F.frobenius(x, F.m) == x for x in range(F.order))


def test_frobenius_powers_distinct(F):
    maps = [tuple(F.frobenius(x, i) for x in range(F.order)) for i in range(F.m)]
    assert len(set(maps)) == F.m


def test_frobenius_known_value_gf4():
    F = extension_field(2, 1, 2)
    a = 2  # digits (0, 1)
    assert F.frobenius(a, 1) == 3  # a^2 = a + 1, digits (1, 1)
    assert F.frobenius(0, 1) == 0


# ---------------------------------------------------------------------------
# trace
# ---------------------------------------------------------------------------

def test_trace_known_values_gf4():
    F = extension_field(2, 1, 2)
    a = 2
    assert F.trace(a) == 1   # a + a^2 = a + a + 1
    assert F.trace(1) == 0   # 1 + 1 in characteristic 2
    assert F.trace(0) == 0


def test_trace_lands_in_K_and_matches_mult_matrix_oracle(F):
    for x in range(F.order):
        t = F.trace(x)
        assert 0 <= t < F.q
        assert t == trace_by_mult_matrix(F, x)


def test_trace_is_K_linear_and_surjective(F):
    K, L = F.K, F.L
    for lam in range(F.q):
        for x in range(0, F.order, max(1, F.order // 17)):
            assert F.trace(L.mul(F.lift(lam), x)) == K.mul(lam, F.trace(x))
    sample = [F.trace(x) for x in range(F.order)]
    assert set(sample) == set(range(F.q))
    for x in range(F.order):
        for y in range(0, F.order, max(1, F.order // 13)):
            assert F.trace(L.add(x, y)) == K.add(F.trace(x), F.trace(y))


def test_trace_form_nondegenerate(F):
    for x in range(1, F.order):
        assert any(F.trace(F.L.mul(x, y)) != 0 for y in range(F.order))


# ---------------------------------------------------------------------------
# bases
# ---------------------------------------------------------------------------

def test_dual_basis_gf4_frozen():
    F = extension_field(2, 1, 2)
    dual = F.dual_basis(F.power_basis())
    assert dual.elems == (3, 1)  # {a+1, 1}


def test_dual_basis_pairing(F):
    b = F.power_basis()
    d = F.dual_basis(b)
    for i in range(F.m):
        for j in range(F.m):
            t = F.trace(F.L.mul(b.elems[i], d.elems[j]))
            assert t == (1 if i == j else 0)


def test_dual_basis_self_dual_case():
    # {a, a^2} in GF(4) has identity trace Gram matrix
    F = extension_field(2, 1, 2)
    b = LBasis((2, 3), "normal")
    assert F.dual_basis(b).elems == b.elems


def test_special_trace_basis(F):
    b = F.special_trace_basis()
    assert len(b.elems) == F.m
    traces = [F.trace(x) for x in b.elems]
    assert traces == [1] + [0] * (F.m - 1)
    F.check_basis(b)


def test_special_trace_basis_gf4_frozen():
    F = extension_field(2, 1, 2)
    assert F.special_trace_basis().elems == (2, 1)


def test_special_trace_basis_m1():
    F = extension_field(3, 2, 1)
    assert F.special_trace_basis().elems == (1,)


# ---------------------------------------------------------------------------
# moore matrices
# ---------------------------------------------------------------------------

def test_moore_gf4_frozen():
    F = extension_field(2, 1, 2)
    mm = F.moore_matrix([1, 2])
    assert mm.rows == ((1, 2), (1, 3))
    assert mm.rank() == 2


def test_moore_dependent_singular():
    F = extension_field(2, 1, 2)
    assert F.moore_matrix([1, 1]).rank() < 2


def test_moore_single_nonzero_invertible(F):
    for x in range(1, min(F.order, 9)):
        assert F.moore_matrix([x]).rank() == 1


@pytest.mark.parametrize("spec", [(2, 1, 2), (2, 1, 3), (3, 1, 2)])
def test_moore_invertible_iff_independent_exhaustive(spec):
    F = extension_field(*spec)
    for l in range(1, F.m + 1):
        for elems in combinations(range(1, F.order), l):
            coeff = Matrix(F.K, [F.coeffs(e) for e in elems], ncols=F.m)
            independent = coeff.rank() == l
            invertible = F.moore_matrix(elems).rank() == l
            assert independent == invertible
