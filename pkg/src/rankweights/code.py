"""Rank-metric codes: L-linear subspaces of L^n and their derived objects.

A codeword c in L^n expands to an m x n matrix over K whose column j
holds the K-coordinates of c_j.  The row space of that matrix is the
rank support of c; its dimension is the rank weight.  On top of that
this module provides duals, shortenings against K-subspaces, trace
codes, restrictions, extensions of K-spaces, Galois closures, and the
rank-isometry group action.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Sequence

from .errors import DimensionMismatch, SingularMatrix
from .gf import ExtensionField, LBasis
from .kspace import Matrix, Subspace


class RankCode:
    """An L-linear code given by a canonical (RREF) generator matrix."""

    __slots__ = ("field", "n", "k", "gen")

    def __init__(self, field: ExtensionField, n: int, rows: Iterable[Sequence[int]]):
        self.field = field
        self.n = n
        mat = Matrix(field.L, rows, ncols=n)
        red, pivots = mat.rref()
        self.k = len(pivots)
        self.gen = Matrix(field.L, red.rows[: self.k], ncols=n)

    @classmethod
    def full(cls, field: ExtensionField, n: int) -> "RankCode":
        return cls(field, n, Matrix.identity(field.L, n).rows)

    @classmethod
    def zero(cls, field: ExtensionField, n: int) -> "RankCode":
        return cls(field, n, [])

    def __eq__(self, other):
        return (
            isinstance(other, RankCode)
            and self.field.key == other.field.key
            and self.n == other.n
            and self.gen.rows == other.gen.rows
        )

    def __hash__(self):
        return hash((self.field.key, self.n, self.gen.rows))

    def __repr__(self):
        return f"RankCode(n={self.n}, k={self.k}, gen={list(map(list, self.gen.rows))})"

    def row_space(self) -> Subspace:
        return Subspace(self.field.L, self.n, self.gen)

    def contains(self, vec: Sequence[int]) -> bool:
        return self.row_space().contains(vec)

    def codeword(self, message: Sequence[int]) -> tuple:
        """The codeword for a length-k message vector over L."""
        if len(message) != self.k:
            raise DimensionMismatch("message length != k")
        return Matrix(self.field.L, [message], ncols=self.k).mul(self.gen).rows[0]

    def codewords(self) -> Iterator[tuple]:
        """All q^(m k) codewords, message space in odometer order."""
        L = self.field.L
        for msg in product(L.elements(), repeat=self.k):
            yield self.codeword(msg)

    def size(self) -> int:
        return self.field.order**self.k

    # -- derived codes --------------------------------------------------

    def dual(self) -> "RankCode":
        """Orthogonal complement under the standard dot product on L^n."""
        return RankCode(self.field, self.n, self.gen.right_kernel().rows)

    def shorten(self, j: Subspace) -> "RankCode":
        """The subcode of words whose rank support is orthogonal to j.

        Computed through the equivalent linear condition c . y = 0 for
        every y in a basis of j, which exhibits the result as an
        L-linear subcode directly: solve u (G Y^T) = 0 over L for the
        message vectors u.
        """
        if j.n != self.n or j.field.key != self.field.K.key:
            raise DimensionMismatch("j must be a K-subspace of K^n")
        if j.dim == 0 or self.k == 0:
            return self
        yt = Matrix(self.field.L, [[self.field.lift(v) for v in row] for row in j.basis.rows], ncols=self.n).transpose()
        cond = self.gen.mul(yt)  # k x dim(j)
        msgs = cond.left_kernel()
        rows = msgs.mul(self.gen).rows if msgs.nrows else []
        return RankCode(self.field, self.n, rows)

    def trace_code(self) -> Subspace:
        """K-span of Tr(beta * g) over basis scalars beta and generators g."""
        F = self.field
        vecs = []
        for g in self.gen.rows:
            for beta in F.power_basis().elems:
                vecs.append(tuple(F.trace(F.L.mul(beta, c)) for c in g))
        return Subspace.span(F.K, self.n, vecs) if vecs else Subspace.zero(F.K, self.n)

    def restriction(self) -> Subspace:
        """C intersected with K^n, as a K-subspace of K^n.

        Solves for message vectors (as m*k unknowns over K) whose
        codeword has all power-basis coordinates above index 0 equal to
        zero; no enumeration of K^n is involved.
        """
        F = self.field
        m, k, n = F.m, self.k, self.n
        if k == 0:
            return Subspace.zero(F.K, n)
        # unknown a[i, t]: message u_i = sum_t a[i,t] alpha^t
        # codeword entry c_j = sum_{i,t} a[i,t] * (alpha^t G[i][j])
        coeff_digits = [
            [F.coeffs(F.L.mul(F.q**t, self.gen.rows[i][j])) for j in range(n)]
            for i in range(k)
            for t in range(m)
        ]
        eqs = []
        for j in range(n):
            for h in range(1, m):
                eqs.append([col[j][h] for col in coeff_digits])
        if eqs:
            sols = Matrix(F.K, eqs, ncols=m * k).right_kernel()
        else:
            sols = Matrix.identity(F.K, m * k)
        vecs = [
            tuple(_k_dot(F.K, sol, [col[j][0] for col in coeff_digits]) for j in range(n))
            for sol in sols.rows
        ]
        return Subspace.span(F.K, n, vecs) if vecs else Subspace.zero(F.K, n)

    def galois_closure(self) -> "RankCode":
        """Smallest L-subspace containing C closed under component-wise
        Frobenius; spanned by all Frobenius images of the generators."""
        F = self.field
        rows = [vector_frobenius(F, g, i) for g in self.gen.rows for i in range(F.m)]
        return RankCode(F, self.n, rows)

    def is_galois_closed(self) -> bool:
        return self == self.galois_closure()

    def apply_isometry(self, iso: "Isometry") -> "RankCode":
        """Image of the code under x -> scalar * (x A)."""
        F = self.field
        if iso.matrix.ncols != self.n:
            raise DimensionMismatch("isometry matrix size != n")
        a_l = Matrix(F.L, [[F.lift(v) for v in row] for row in iso.matrix.rows], ncols=self.n)
        moved = self.gen.mul(a_l).scale(iso.scalar)
        return RankCode(F, self.n, moved.rows)


def _k_dot(K, u, v):
    acc = 0
    for a, b in zip(u, v):
        if a and b:
            acc = K.add(acc, K.mul(a, b))
    return acc


@dataclass(frozen=True)
class Isometry:
    """A rank isometry of L^n: a nonzero L-scalar and a matrix in GL(n, K)."""

    scalar: int
    matrix: Matrix

    def __post_init__(self):
        if self.scalar == 0:
            raise SingularMatrix("isometry scalar must be nonzero")
        if self.matrix.nrows != self.matrix.ncols or self.matrix.rank() != self.matrix.nrows:
            raise SingularMatrix("isometry matrix must be invertible over K")


# ---------------------------------------------------------------------------
# expansion, supports, weights
# ---------------------------------------------------------------------------

def vector_frobenius(F: ExtensionField, vec: Sequence[int], i: int = 1) -> tuple:
    """Component-wise x -> x^(q^i) on a vector over L."""
    return tuple(F.frobenius(x, i) for x in vec)


def vector_trace(F: ExtensionField, vec: Sequence[int]) -> tuple:
    """Component-wise trace, mapping L^n to K^n."""
    return tuple(F.trace(x) for x in vec)


def expand(F: ExtensionField, vec: Sequence[int], basis: LBasis | None = None) -> Matrix:
    """The m x n K-matrix whose column j holds the coordinates of vec[j].

    With the default power basis the coordinates are just the digit
    vectors; for any other basis a change of coordinates is applied.
    For two bases the results differ by an invertible K-matrix on the
    left, so row space and rank do not depend on the choice.
    """
    m = F.m
    if basis is None:
        cols = [F.coeffs(x) for x in vec]
    else:
        inv = F.basis_matrix(basis).inverse()
        cols = [inv.mul_vec(F.coeffs(x)) for x in vec]
    return Matrix(F.K, [[cols[j][i] for j in range(len(vec))] for i in range(m)], ncols=len(vec))


def rank_support(F: ExtensionField, vec: Sequence[int], basis: LBasis | None = None) -> Subspace:
    """K-row space of the expansion matrix; independent of the basis."""
    mat = expand(F, vec, basis)
    return Subspace.span(F.K, mat.ncols, mat.rows)


def rank_weight(F: ExtensionField, vec: Sequence[int]) -> int:
    return rank_support(F, vec).dim


def subcode_support(F: ExtensionField, rows: Iterable[Sequence[int]], n: int) -> Subspace:
    """Support of the L-span of the given rows: the K-sum of the row
    supports (summing over generators suffices for the whole span)."""
    vecs = []
    for r in rows:
        vecs.extend(expand(F, r).rows)
    return Subspace.span(F.K, n, vecs) if vecs else Subspace.zero(F.K, n)


def subcode_weight(F: ExtensionField, rows: Iterable[Sequence[int]], n: int) -> int:
    return subcode_support(F, rows, n).dim


def code_support(code: RankCode) -> Subspace:
    return subcode_support(code.field, code.gen.rows, code.n)


def code_support_by_scan(code: RankCode, limit: int = 4096) -> Subspace:
    """Oracle version of code_support: the K-sum over every codeword."""
    if code.size() > limit:
        raise DimensionMismatch(f"code too large for exhaustive scan ({code.size()} > {limit})")
    vecs = []
    for c in code.codewords():
        vecs.extend(expand(code.field, c).rows)
    return Subspace.span(code.field.K, code.n, vecs) if vecs else Subspace.zero(code.field.K, code.n)


def shorten_by_support_scan(code: RankCode, j: Subspace, limit: int = 4096) -> RankCode:
    """Oracle version of shorten: filter codewords with support inside
    the orthogonal complement of j, straight from the definition."""
    if code.size() > limit:
        raise DimensionMismatch(f"code too large for exhaustive scan ({code.size()} > {limit})")
    jperp = j.orthogonal()
    rows = [c for c in code.codewords() if rank_support(code.field, c).leq(jperp)]
    return RankCode(code.field, code.n, rows)


def extend(F: ExtensionField, j: Subspace) -> RankCode:
    """The L-span of a K-subspace of K^n, as a rank-metric code."""
    if j.field.key != F.K.key:
        raise DimensionMismatch("extend needs a K-subspace")
    rows = [[F.lift(v) for v in row] for row in j.basis.rows]
    return RankCode(F, j.n, rows)
