"""Finite field towers K = GF(p^s) inside L = GF(q^m), q = p^s.

L is constructed as a degree-m extension of K by an irreducible
polynomial over K (not as GF(p^(s*m)) directly), so the K-coordinates
of an L-element are read straight off its representation.  Elements are
int-encoded: an element sum(c_i * alpha^i) of a degree-d extension is
the integer sum(c_i * base_order^i) with little-endian digits c_i.
Constants of the base field keep their integer value, so K embeds in L
without conversion.

Operations beyond plain arithmetic: Frobenius powers x -> x^(q^i),
the trace L -> K (sum of Frobenius conjugates), dual bases for the
trace form, and Moore matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import DimensionMismatch, NotIrreducible, NotPrime
from .kspace import Matrix, Subspace

# Default defining polynomials, little-endian coefficients, for GF(p^d)
# over GF(p).  Each is the monic irreducible of degree d whose integer
# encoding sum(c_i * p^i) is minimal; regenerated and checked in tests.
DEFAULT_POLYS = {
    (2, 1): (0, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 1, 0, 1, 1, 0, 0, 0, 1),
    (3, 1): (0, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 1, 0, 0, 1),
    (3, 5): (1, 2, 0, 0, 0, 1),
    (3, 6): (2, 1, 0, 0, 0, 0, 1),
    (3, 7): (2, 0, 1, 0, 0, 0, 0, 1),
    (3, 8): (2, 0, 1, 0, 0, 0, 0, 0, 1),
    (5, 1): (0, 1),
    (5, 2): (2, 0, 1),
    (5, 3): (1, 1, 0, 1),
    (5, 4): (2, 0, 0, 0, 1),
    (5, 5): (1, 4, 0, 0, 0, 1),
    (5, 6): (2, 1, 0, 0, 0, 0, 1),
    (5, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (5, 8): (2, 0, 0, 0, 0, 0, 0, 0, 1),
}


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# polynomial helpers over an arbitrary field context
# ---------------------------------------------------------------------------

def _poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_mod(num, den, fld):
    """Remainder of num by den (little-endian coefficient lists)."""
    num = _poly_trim(num)
    den = _poly_trim(den)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    inv = fld.inv(den[-1])
    while len(num) >= len(den):
        f = fld.mul(num[-1], inv)
        shift = len(num) - len(den)
        for i, d in enumerate(den):
            num[shift + i] = fld.sub(num[shift + i], fld.mul(f, d))
        num = _poly_trim(num)
    return num


def is_irreducible(poly, fld) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2.

    Exhaustive and exact; intended for degrees up to ~8 over small
    fields.
    """
    coeffs = _poly_trim(poly)
    d = len(coeffs) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    if coeffs[0] == 0:
        return False  # divisible by x
    for e in range(1, d // 2 + 1):
        for low in product(fld.elements(), repeat=e):
            if not poly_mod(coeffs, list(low) + [1], fld):
                return False
    return True


def default_poly(fld, degree: int):
    """First monic irreducible of the given degree over fld.

    'First' means minimal integer encoding sum(c_i * order^i) of the
    low coefficients; for prime fields this reproduces DEFAULT_POLYS.
    """
    order = fld.order
    for v in range(order**degree, 2 * order**degree):
        coeffs = []
        x = v
        for _ in range(degree + 1):
            coeffs.append(x % order)
            x //= order
        if is_irreducible(coeffs, fld):
            return tuple(coeffs)
    raise NotIrreducible(f"no irreducible of degree {degree} found")  # pragma: no cover


# ---------------------------------------------------------------------------
# field contexts
# ---------------------------------------------------------------------------

class PrimeField:
    """GF(p) with elements 0..p-1."""

    __slots__ = ("p", "order", "key")

    def __init__(self, p: int):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        self.p = p
        self.order = p
        self.key = ("gf", p)

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("division by zero in GF(p)")
        return pow(a, self.p - 2, self.p)

    def pow(self, a, e):
        return pow(a, e, self.p)

    def elements(self):
        return range(self.p)

    def __repr__(self):
        return f"GF({self.p})"


class PolyExtension:
    """base[x]/(poly): a degree-d extension of a field context.

    Elements are ints < order with little-endian base-`base.order`
    digits giving the coefficients in the power basis of the class of x.
    """

    __slots__ = ("base", "poly", "degree", "order", "key", "_red", "_digit_cache")

    def __init__(self, base, poly):
        poly = tuple(poly)
        self.base = base
        d = len(poly) - 1
        if d < 1 or poly[-1] != 1:
            raise NotIrreducible("defining polynomial must be monic of degree >= 1")
        if not is_irreducible(poly, base):
            raise NotIrreducible(f"polynomial {list(poly)} is reducible")
        self.poly = poly
        self.degree = d
        self.order = base.order**d
        self.key = ("ext", base.key, poly)
        # reductions of x^d .. x^(2d-2) as digit tuples
        red = [tuple(base.neg(c) for c in poly[:-1])]
        for _ in range(d - 2):
            prev = red[-1]
            top = prev[-1]
            cur = [0] + list(prev[:-1])  # multiply by x, dropping the overflow
            if top:
                cur = [base.add(a, base.mul(top, b)) for a, b in zip(cur, red[0])]
            red.append(tuple(cur))
        self._red = red
        self._digit_cache = None

    # int <-> digit vector
    def digits(self, a: int) -> tuple:
        if self._digit_cache is None and self.order <= 65536:
            b = self.base.order
            cache = []
            for v in range(self.order):
                ds = []
                x = v
                for _ in range(self.degree):
                    ds.append(x % b)
                    x //= b
                cache.append(tuple(ds))
            self._digit_cache = cache
        if self._digit_cache is not None:
            return self._digit_cache[a]
        b = self.base.order
        ds = []
        x = a
        for _ in range(self.degree):
            ds.append(x % b)
            x //= b
        return tuple(ds)

    def from_digits(self, ds) -> int:
        b = self.base.order
        acc = 0
        for c in reversed(list(ds)):
            acc = acc * b + c
        return acc

    def add(self, a, b):
        f = self.base
        return self.from_digits(f.add(x, y) for x, y in zip(self.digits(a), self.digits(b)))

    def sub(self, a, b):
        f = self.base
        return self.from_digits(f.sub(x, y) for x, y in zip(self.digits(a), self.digits(b)))

    def neg(self, a):
        f = self.base
        return self.from_digits(f.neg(x) for x in self.digits(a))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        f = self.base
        d = self.degree
        da, db = self.digits(a), self.digits(b)
        conv = [0] * (2 * d - 1)
        for i, x in enumerate(da):
            if not x:
                continue
            for j, y in enumerate(db):
                if y:
                    conv[i + j] = f.add(conv[i + j], f.mul(x, y))
        out = conv[:d]
        for t in range(d, 2 * d - 1):
            c = conv[t]
            if c:
                red = self._red[t - d]
                out = [f.add(o, f.mul(c, r)) for o, r in zip(out, red)]
        return self.from_digits(out)

    def pow(self, a, e):
        if e == 0:
            return 1
        acc = 1
        base = a
        while e:
            if e & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            e >>= 1
        return acc

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("division by zero in extension field")
        return self.pow(a, self.order - 2)

    def elements(self):
        return range(self.order)

    def __repr__(self):
        return f"GF({self.order})~{self.base!r}[x]/{list(self.poly)}"


# ---------------------------------------------------------------------------
# the tower
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """Defining data of the tower GF(p) <= K = GF(p^s) <= L = GF(q^m)."""

    p: int
    s: int = 1
    m: int = 1
    k_poly: tuple = ()
    l_poly: tuple = ()

    def canonical(self) -> "FieldSpec":
        """Fill in default polynomials and normalize to tuples."""
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        if self.s < 1 or self.m < 1:
            raise DimensionMismatch("s and m must be >= 1")
        k_poly = tuple(self.k_poly)
        if self.s > 1 and not k_poly:
            k_poly = DEFAULT_POLYS.get((self.p, self.s)) or default_poly(PrimeField(self.p), self.s)
        if self.s == 1:
            k_poly = ()
        l_poly = tuple(self.l_poly)
        if not l_poly:
            if self.s == 1:
                l_poly = DEFAULT_POLYS.get((self.p, self.m)) or default_poly(PrimeField(self.p), self.m)
            else:
                l_poly = default_poly(PolyExtension(PrimeField(self.p), k_poly), self.m)
        return FieldSpec(self.p, self.s, self.m, k_poly, l_poly)


@dataclass(frozen=True)
class LBasis:
    """A K-basis of L, given as m int-encoded elements."""

    elems: tuple
    label: str = ""

    def __len__(self):
        return len(self.elems)


class ExtensionField:
    """Arithmetic context for the tower K inside L, plus Galois machinery."""

    def __init__(self, spec: FieldSpec):
        spec = spec.canonical()
        self.spec = spec
        self.p = spec.p
        self.s = spec.s
        self.m = spec.m
        self.q = spec.p**spec.s
        self.order = self.q**spec.m
        if spec.s == 1:
            self.K = PrimeField(spec.p)
        else:
            self.K = PolyExtension(PrimeField(spec.p), spec.k_poly)
        self.L = PolyExtension(self.K, spec.l_poly)
        # lazy caches, filled by the fast-scan engine and the weights module
        self._tables = None
        self._span_tables = {}
        self._subspace_cache = {}

    @property
    def key(self):
        return self.L.key

    def __repr__(self):
        return f"ExtensionField(GF({self.q}^{self.m}) over GF({self.q}))"

    # -- element views ------------------------------------------------

    def coeffs(self, x: int) -> tuple:
        """K-coordinates of x in the power basis (little-endian)."""
        return self.L.digits(x)

    def from_coeffs(self, cs) -> int:
        return self.L.from_digits(cs)

    def in_K(self, x: int) -> bool:
        return all(c == 0 for c in self.coeffs(x)[1:])

    def lift(self, c: int) -> int:
        """Embed a K-element into L (identity on int encodings)."""
        return c

    # -- Galois machinery ----------------------------------------------

    def frobenius(self, x: int, i: int = 1) -> int:
        """x^(q^i); i is reduced mod m, so i = m is the identity."""
        return self.L.pow(x, self.q ** (i % self.m))

    def trace(self, x: int) -> int:
        """Trace L -> K: the sum of all Frobenius conjugates of x."""
        acc = 0
        for i in range(self.m):
            acc = self.L.add(acc, self.frobenius(x, i))
        cs = self.coeffs(acc)
        assert all(c == 0 for c in cs[1:]), "trace left the base field"
        return cs[0]

    def power_basis(self) -> LBasis:
        return LBasis(tuple(self.q**t for t in range(self.m)), "power")

    def basis_matrix(self, basis: LBasis) -> Matrix:
        """m x m K-matrix whose column j holds the coordinates of basis j."""
        if len(basis.elems) != self.m:
            raise DimensionMismatch(f"basis needs {self.m} elements")
        cols = [self.coeffs(b) for b in basis.elems]
        return Matrix(self.K, [[cols[j][i] for j in range(self.m)] for i in range(self.m)], ncols=self.m)

    def check_basis(self, basis: LBasis) -> None:
        if self.basis_matrix(basis).rank() != self.m:
            raise DimensionMismatch("elements are K-linearly dependent, not a basis")

    def coords(self, x: int, basis: LBasis) -> tuple:
        """Coordinates of x with respect to an arbitrary K-basis of L."""
        inv = self.basis_matrix(basis).inverse()
        return inv.mul_vec(self.coeffs(x))

    def dual_basis(self, basis: LBasis) -> LBasis:
        """The trace-dual basis: Tr(b_i * b'_j) is the Kronecker delta.

        Obtained by inverting the trace Gram matrix [Tr(b_i b_j)] over
        K; the trace form of a separable extension is non-degenerate,
        so the Gram matrix is always invertible here.
        """
        self.check_basis(basis)
        els = basis.elems
        gram = Matrix(self.K, [[self.trace(self.L.mul(a, b)) for b in els] for a in els], ncols=self.m)
        ginv = gram.inverse()
        dual = []
        for j in range(self.m):
            acc = 0
            for t in range(self.m):
                c = ginv.rows[t][j]
                if c:
                    acc = self.L.add(acc, self.L.mul(self.lift(c), els[t]))
            dual.append(acc)
        return LBasis(tuple(dual), basis.label + "-dual" if basis.label else "dual")

    def special_trace_basis(self) -> LBasis:
        """A basis b_1..b_m with Tr(b_1) = 1 and Tr(b_i) = 0 for i >= 2.

        b_2..b_m span the kernel of the trace; b_1 is the first element
        (in int order) of nonzero trace, scaled so its trace is one.
        """
        b1 = None
        for x in range(1, self.order):
            t = self.trace(x)
            if t != 0:
                b1 = self.L.mul(x, self.lift(self.K.inv(t)))
                break
        assert b1 is not None, "trace is surjective, some element has trace 1"
        if self.m == 1:
            return LBasis((b1,), "trace-split")
        # kernel of the K-linear map x -> Tr(x) in power-basis coordinates
        trace_row = Matrix(self.K, [[self.trace(self.q**t) for t in range(self.m)]], ncols=self.m)
        ker = trace_row.right_kernel()
        rest = [self.from_coeffs(row) for row in ker.rows]
        basis = LBasis((b1, *rest), "trace-split")
        self.check_basis(basis)
        return basis

    def moore_matrix(self, elems) -> Matrix:
        """l x l matrix with entry (i, j) = elems[j]^(q^i), i = 0..l-1.

        Invertible over L exactly when the elements are K-linearly
        independent.
        """
        elems = list(elems)
        l = len(elems)
        if not 1 <= l <= self.m:
            raise DimensionMismatch(f"need between 1 and m={self.m} elements")
        return Matrix(self.L, [[self.frobenius(e, i) for e in elems] for i in range(l)], ncols=l)

    def trace_kernel_subspace(self) -> Subspace:
        trace_row = Matrix(self.K, [[self.trace(self.q**t) for t in range(self.m)]], ncols=self.m)
        return Subspace(self.K, self.m, trace_row.right_kernel())


_FIELD_CACHE: dict[tuple, ExtensionField] = {}


def field_make(spec: FieldSpec) -> ExtensionField:
    """Build (or fetch the cached) arithmetic context for a field spec."""
    spec = spec.canonical()
    key = (spec.p, spec.s, spec.m, spec.k_poly, spec.l_poly)
    ctx = _FIELD_CACHE.get(key)
    if ctx is None:
        ctx = ExtensionField(spec)
        _FIELD_CACHE[key] = ctx
    return ctx


def extension_field(p: int, s: int = 1, m: int = 1, k_poly=(), l_poly=()) -> ExtensionField:
    """Convenience wrapper around field_make."""
    return field_make(FieldSpec(p, s, m, tuple(k_poly), tuple(l_poly)))
