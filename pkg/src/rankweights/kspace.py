"""Exact linear algebra over finite fields.

Matrices hold int-encoded field elements and carry a reference to the
field context that interprets them (any object with ``add``, ``sub``,
``mul``, ``neg``, ``inv``, ``order``, ``elements()`` and a hashable
``key``).  Subspaces are stored canonically as reduced-row-echelon
bases, so equality and hashing are structural and exact.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .errors import DimensionMismatch, SingularMatrix


class Matrix:
    """Immutable dense matrix over a finite field context."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field, rows: Iterable[Sequence[int]], ncols: int | None = None):
        self.field = field
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        if self.nrows:
            self.ncols = len(self.rows[0])
            if any(len(r) != self.ncols for r in self.rows):
                raise DimensionMismatch("ragged rows")
            if ncols is not None and ncols != self.ncols:
                raise DimensionMismatch("ncols disagrees with row length")
        else:
            if ncols is None:
                raise DimensionMismatch("empty matrix needs explicit ncols")
            self.ncols = ncols

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field.key == other.field.key
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field.key, self.ncols, self.rows))

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, {list(map(list, self.rows))})"

    def transpose(self) -> "Matrix":
        return Matrix(self.field, zip(*self.rows), ncols=self.nrows) if self.nrows else Matrix(self.field, [[]] * self.ncols if self.ncols else [], ncols=0)

    def stack(self, other: "Matrix") -> "Matrix":
        if other.ncols != self.ncols or other.field.key != self.field.key:
            raise DimensionMismatch("stack needs equal widths and fields")
        return Matrix(self.field, self.rows + other.rows, ncols=self.ncols)

    def mul(self, other: "Matrix") -> "Matrix":
        """Matrix product self @ other."""
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}")
        f = self.field
        ot = tuple(zip(*other.rows)) if other.nrows else tuple(() for _ in range(other.ncols))
        out = []
        for row in self.rows:
            new = []
            for col in ot:
                acc = 0
                for a, b in zip(row, col):
                    if a and b:
                        acc = f.add(acc, f.mul(a, b))
                new.append(acc)
            out.append(new)
        return Matrix(f, out, ncols=other.ncols)

    def mul_vec(self, vec: Sequence[int]) -> tuple:
        """self @ vec as a column vector, returned as a tuple."""
        f = self.field
        return tuple(
            _dot(f, row, vec) for row in self.rows
        )

    def scale(self, c: int) -> "Matrix":
        f = self.field
        return Matrix(f, [[f.mul(c, x) for x in row] for row in self.rows], ncols=self.ncols)

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row echelon form and pivot columns.

        The RREF of a matrix is unique, so this doubles as a canonical
        form for row spaces.  Zero rows are kept (at the bottom).
        """
        f = self.field
        rows = [list(r) for r in self.rows]
        m, n = self.nrows, self.ncols
        pivots = []
        prow = 0
        for col in range(n):
            src = next((i for i in range(prow, m) if rows[i][col]), None)
            if src is None:
                continue
            rows[prow], rows[src] = rows[src], rows[prow]
            inv = f.inv(rows[prow][col])
            rows[prow] = [f.mul(inv, x) for x in rows[prow]]
            for i in range(m):
                if i != prow and rows[i][col]:
                    c = rows[i][col]
                    rows[i] = [f.sub(x, f.mul(c, y)) for x, y in zip(rows[i], rows[prow])]
            pivots.append(col)
            prow += 1
            if prow == m:
                break
        return Matrix(f, rows, ncols=n), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def right_kernel(self) -> "Matrix":
        """Canonical basis (RREF) of {x : self @ x^T = 0}, rows = basis vectors."""
        red, pivots = self.rref()
        n = self.ncols
        free = [j for j in range(n) if j not in pivots]
        f = self.field
        basis = []
        for j in free:
            vec = [0] * n
            vec[j] = 1
            for i, pc in enumerate(pivots):
                vec[pc] = f.neg(red.rows[i][j])
            basis.append(vec)
        ker = Matrix(f, basis, ncols=n)
        red2, piv2 = ker.rref()
        return Matrix(f, red2.rows[: len(piv2)], ncols=n)

    def left_kernel(self) -> "Matrix":
        """Canonical basis of {y : y @ self = 0}."""
        return self.transpose().right_kernel()

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise SingularMatrix("only square matrices invert")
        n = self.nrows
        f = self.field
        aug = Matrix(f, [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(self.rows)], ncols=2 * n)
        red, pivots = aug.rref()
        if tuple(pivots) != tuple(range(n)):
            raise SingularMatrix("matrix is singular")
        return Matrix(f, [row[n:] for row in red.rows], ncols=n)

    @staticmethod
    def identity(field, n: int) -> "Matrix":
        return Matrix(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @staticmethod
    def zero(field, m: int, n: int) -> "Matrix":
        return Matrix(field, [[0] * n for _ in range(m)], ncols=n)


def _dot(f, u: Sequence[int], v: Sequence[int]) -> int:
    if len(u) != len(v):
        raise DimensionMismatch("dot product of unequal lengths")
    acc = 0
    for a, b in zip(u, v):
        if a and b:
            acc = f.add(acc, f.mul(a, b))
    return acc


def dot(field, u: Sequence[int], v: Sequence[int]) -> int:
    """Standard bilinear form u . v over the given field."""
    return _dot(field, u, v)


class Subspace:
    """A subspace of field^n stored as a canonical RREF basis.

    Two Subspace values are equal iff their bases are entry-wise equal,
    which by RREF uniqueness means they are the same subspace.
    """

    __slots__ = ("field", "n", "basis")

    def __init__(self, field, n: int, basis: Matrix):
        self.field = field
        self.n = n
        self.basis = basis  # trusted canonical; use span() to build safely

    @classmethod
    def span(cls, field, n: int, vectors: Iterable[Sequence[int]]) -> "Subspace":
        mat = Matrix(field, vectors, ncols=n)
        red, pivots = mat.rref()
        return cls(field, n, Matrix(field, red.rows[: len(pivots)], ncols=n))

    @classmethod
    def zero(cls, field, n: int) -> "Subspace":
        return cls(field, n, Matrix(field, [], ncols=n))

    @classmethod
    def full(cls, field, n: int) -> "Subspace":
        return cls(field, n, Matrix.identity(field, n))

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field.key == other.field.key
            and self.n == other.n
            and self.basis.rows == other.basis.rows
        )

    def __hash__(self):
        return hash((self.field.key, self.n, self.basis.rows))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of F^{self.n}, {list(map(list, self.basis.rows))})"

    def contains(self, vec: Sequence[int]) -> bool:
        if len(vec) != self.n:
            raise DimensionMismatch("vector length != ambient dimension")
        f = self.field
        v = list(vec)
        for row in self.basis.rows:
            lead = next(j for j, x in enumerate(row) if x)
            if v[lead]:
                c = v[lead]
                v = [f.sub(x, f.mul(c, y)) for x, y in zip(v, row)]
        return not any(v)

    def leq(self, other: "Subspace") -> bool:
        """Is self a subspace of other?"""
        return all(other.contains(r) for r in self.basis.rows)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.field, self.n, self.basis.rows + other.basis.rows)

    def intersect(self, other: "Subspace") -> "Subspace":
        """Intersection via the kernel of the stacked bases.

        Coefficient vectors (x, y) with x @ U + y @ V = 0 give exactly
        the vectors x @ U of the intersection.
        """
        self._check(other)
        a = self.basis.nrows
        stacked = self.basis.stack(other.basis)
        coeffs = stacked.left_kernel()
        vecs = [Matrix(self.field, [c[:a]], ncols=a).mul(self.basis).rows[0] for c in coeffs.rows]
        return Subspace.span(self.field, self.n, vecs)

    def orthogonal(self) -> "Subspace":
        """{y : x . y = 0 for all x in self} under the standard dot product.

        Note self.intersect(self.orthogonal()) may be nonzero: the form
        is non-degenerate on field^n but its restriction to a subspace
        need not be.
        """
        ker = self.basis.right_kernel()
        return Subspace(self.field, self.n, ker)

    def vectors(self) -> Iterator[tuple]:
        """All q^dim vectors of the subspace (small spaces only)."""
        f = self.field
        rows = self.basis.rows
        for coeffs in product(f.elements(), repeat=len(rows)):
            acc = [0] * self.n
            for c, row in zip(coeffs, rows):
                if c:
                    acc = [f.add(x, f.mul(c, y)) for x, y in zip(acc, row)]
            yield tuple(acc)

    def _check(self, other):
        if self.field.key != other.field.key or self.n != other.n:
            raise DimensionMismatch("subspaces live in different spaces")


def gaussian_binomial(n: int, r: int, q: int) -> int:
    """Number of r-dimensional subspaces of an n-dimensional space over GF(q)."""
    if r < 0 or r > n:
        return 0
    num = 1
    den = 1
    for i in range(r):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def enumerate_subspaces(field, n: int, r: int) -> Iterator[Subspace]:
    """Yield every r-dimensional subspace of field^n exactly once.

    Enumerates RREF canonical forms directly: pivot column sets in
    lexicographic order, then the free entries in odometer order
    (row-major positions, last position fastest) over the field's
    element order.  The total count is gaussian_binomial(n, r, q).
    """
    if r < 0 or r > n:
        return
    if r == 0:
        yield Subspace.zero(field, n)
        return
    elems = tuple(field.elements())
    for pivots in combinations(range(n), r):
        pivotset = set(pivots)
        free_pos = [
            (i, j)
            for i in range(r)
            for j in range(pivots[i] + 1, n)
            if j not in pivotset
        ]
        template = [[0] * n for _ in range(r)]
        for i, p in enumerate(pivots):
            template[i][p] = 1
        for values in product(elems, repeat=len(free_pos)):
            rows = [row[:] for row in template]
            for (i, j), v in zip(free_pos, values):
                rows[i][j] = v
            yield Subspace(field, n, Matrix(field, rows, ncols=n))


def all_subspaces(field, n: int) -> Iterator[Subspace]:
    """All subspaces of field^n, by increasing dimension."""
    for r in range(n + 1):
        yield from enumerate_subspaces(field, n, r)
