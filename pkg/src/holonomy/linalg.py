"""Exact linear algebra over the rationals.

Dense matrices of `fractions.Fraction` entries, reduced row echelon form,
kernels, images, linear solving, and canonical subspaces. Everything is
computed without tolerances so that dimension counts downstream are exact.
All values are immutable and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction

Vec = tuple[Fraction, ...]


def to_fraction(x) -> Fraction:
    """Coerce ints, Fractions, and 'p/q' strings to Fraction; reject floats."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("boolean is not a rational entry")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def vector(entries: Iterable) -> Vec:
    return tuple(to_fraction(x) for x in entries)


def zero_vec(n: int) -> Vec:
    return (Fraction(0),) * n


def unit_vec(n: int, i: int) -> Vec:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def vec_add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v, strict=True))

def vec_sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_scale(c: Fraction, v: Vec) -> Vec:
    return tuple(c * a for a in v)


def is_zero_vec(v: Vec) -> bool:
    return all(a == 0 for a in v)


@dataclass(frozen=True)
class RatMatrix:
    """Dense rational matrix, stored as a tuple of row tuples."""

    rows: tuple[Vec, ...]

    def __post_init__(self):
        if self.rows:
            w = len(self.rows[0])
            if any(len(r) != w for r in self.rows):
                raise ValueError("ragged rows")

    @staticmethod
    def from_rows(rows: Iterable[Iterable]) -> "RatMatrix":
        return RatMatrix(tuple(vector(r) for r in rows))

    @staticmethod
    def identity(n: int) -> "RatMatrix":
        return RatMatrix(tuple(unit_vec(n, i) for i in range(n)))

    @staticmethod
    def zeros(nrows: int, ncols: int) -> "RatMatrix":
        return RatMatrix(tuple(zero_vec(ncols) for _ in range(nrows)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def entry(self, i: int, j: int) -> Fraction:
        return self.rows[i][j]

    def col(self, j: int) -> Vec:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "RatMatrix":
        return RatMatrix(tuple(zip(*self.rows, strict=True))) if self.rows else self

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        return RatMatrix(tuple(vec_add(a, b) for a, b in zip(self.rows, other.rows, strict=True)))

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return RatMatrix(tuple(vec_sub(a, b) for a, b in zip(self.rows, other.rows, strict=True)))

    def __neg__(self) -> "RatMatrix":
        return self.scale(Fraction(-1))

    def scale(self, c) -> "RatMatrix":
        c = to_fraction(c)
        return RatMatrix(tuple(vec_scale(c, r) for r in self.rows))

    def __mul__(self, other):
        if isinstance(other, RatMatrix):
            return self.matmul(other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def matmul(self, other: "RatMatrix") -> "RatMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in matrix product")
        cols = other.transpose().rows
        return RatMatrix(
            tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.rows)
        )

    def __pow__(self, k: int) -> "RatMatrix":
        if not self.is_square or k < 0:
            raise ValueError("power needs a square matrix and k >= 0")
        out = RatMatrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def apply(self, v: Vec) -> Vec:
        if len(v) != self.ncols:
            raise ValueError("shape mismatch in matrix-vector product")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.rows)

    def trace(self) -> Fraction:
        if not self.is_square:
            raise ValueError("trace of a non-square matrix")
        return sum((self.rows[i][i] for i in range(self.nrows)), Fraction(0))

    def det(self) -> Fraction:
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        n = self.nrows
        m = [list(r) for r in self.rows]
        det = Fraction(1)
        for c in range(n):
            piv = next((i for i in range(c, n) if m[i][c] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                det = -det
            det *= m[c][c]
            inv = 1 / m[c][c]
            for i in range(c + 1, n):
                if m[i][c] != 0:
                    f = m[i][c] * inv
                    m[i] = [a - f * b for a, b in zip(m[i], m[c])]
        return det

    def inverse(self) -> "RatMatrix":
        if not self.is_square:
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        aug = [list(self.rows[i]) + list(unit_vec(n, i)) for i in range(n)]
        reduced, pivots = rref(aug)
        if pivots != list(range(n)):
            raise ValueError("matrix is singular")
        return RatMatrix.from_rows(row[n:] for row in reduced)

    def is_zero(self) -> bool:
        return all(is_zero_vec(r) for r in self.rows)

    def is_identity(self) -> bool:
        return self.is_square and self == RatMatrix.identity(self.nrows)

    def is_scalar(self) -> bool:
        return self.is_square and self == RatMatrix.identity(self.nrows).scale(self.rows[0][0] if self.rows else 0)

    def __str__(self) -> str:
        return "\n".join("[" + " ".join(str(x) for x in r) + "]" for r in self.rows)


def vectorize(m: RatMatrix) -> Vec:
    """Row-major flattening."""
    return tuple(x for row in m.rows for x in row)


def matrix_from_vec(v: Sequence[Fraction], nrows: int, ncols: int) -> RatMatrix:
    if len(v) != nrows * ncols:
        raise ValueError("vector length does not match shape")
    return RatMatrix(tuple(tuple(v[i * ncols : (i + 1) * ncols]) for i in range(nrows)))


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form. Returns (rows, pivot column indices)."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


@dataclass(frozen=True)
class Subspace:
    """Rational subspace in canonical form.

    The basis is the set of nonzero rows of the RREF of any spanning set,
    so two subspaces are equal as data exactly when they are equal as spans.
    """

    ambient_dim: int
    basis: tuple[Vec, ...]

    @staticmethod
    def span(vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        vecs = [vector(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise ValueError("vector does not match ambient dimension")
        if not vecs:
            return Subspace(ambient_dim, ())
        reduced, pivots = rref(vecs)
        return Subspace(ambient_dim, tuple(tuple(reduced[i]) for i in range(len(pivots))))

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, ())

    @staticmethod
    def full(ambient_dim: int) -> "Subspace":
        return Subspace.span([unit_vec(ambient_dim, i) for i in range(ambient_dim)], ambient_dim)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: Sequence) -> Vec:
        """Residual of v after eliminating along the canonical basis."""
        w = list(vector(v))
        if len(w) != self.ambient_dim:
            raise ValueError("vector does not match ambient dimension")
        for row in self.basis:
            piv = next(i for i, x in enumerate(row) if x != 0)
            if w[piv] != 0:
                f = w[piv]
                w = [a - f * b for a, b in zip(w, row)]
        return tuple(w)

    def contains(self, v: Sequence) -> bool:
        return is_zero_vec(self.reduce(v))

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)

    def add(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        # Kernel of [A | -B] with basis vectors as columns: a kernel element
        # (x, y) encodes the intersection vector sum_i x_i a_i.
        cols = [list(b) for b in self.basis] + [[-x for x in b] for b in other.basis]
        stacked = RatMatrix.from_rows(cols).transpose()
        _, _, ker, _ = rref_kernel_image(stacked)
        vecs = []
        for coeffs in ker.basis:
            v = zero_vec(self.ambient_dim)
            for c, b in zip(coeffs[: self.dim], self.basis):
                v = vec_add(v, vec_scale(c, b))
            vecs.append(v)
        return Subspace.span(vecs, self.ambient_dim)

    def apply(self, m: RatMatrix) -> "Subspace":
        """Image of this subspace under m."""
        if m.ncols != self.ambient_dim:
            raise ValueError("shape mismatch")
        return Subspace.span([m.apply(b) for b in self.basis], m.nrows)


def rref_kernel_image(m: RatMatrix) -> tuple[RatMatrix, int, Subspace, Subspace]:
    """RREF, rank, kernel, and column-space image, all canonical.

    rank + dim(kernel) = ncols; the image is spanned by the pivot columns
    of the original matrix.
    """
    reduced, pivots = rref(m.rows)
    rank = len(pivots)
    free = [c for c in range(m.ncols) if c not in pivots]
    kernel_vecs = []
    for f in free:
        v = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -reduced[i][f]
        kernel_vecs.append(v)
    kernel = Subspace.span(kernel_vecs, m.ncols)
    image = Subspace.span([m.col(p) for p in pivots], m.nrows)
    return RatMatrix.from_rows(reduced), rank, kernel, image


def kernel_of(m: RatMatrix) -> Subspace:
    return rref_kernel_image(m)[2]


def image_of(m: RatMatrix) -> Subspace:
    return rref_kernel_image(m)[3]


def solve_linear(a: RatMatrix, b: Sequence) -> tuple[Vec, Subspace] | None:
    """Solve a x = b exactly.

    Returns (particular solution, nullspace) with free variables set to 0,
    or None when the system is inconsistent. Raises on shape mismatch.
    """
    bv = vector(b)
    if len(bv) != a.nrows:
        raise ValueError("right-hand side does not match row count")
    aug = [list(row) + [bv[i]] for i, row in enumerate(a.rows)]
    reduced, pivots = rref(aug)
    if a.ncols in pivots:
        return None
    sol = [Fraction(0)] * a.ncols
    for i, p in enumerate(pivots):
        sol[p] = reduced[i][a.ncols]
    return tuple(sol), kernel_of(a)


def restrict_to_subspace(m: RatMatrix, s: Subspace) -> RatMatrix:
    """Matrix of m restricted to an m-invariant subspace, in its canonical basis."""
    cols = []
    basis_matrix = RatMatrix.from_rows(s.basis).transpose()
    for b in s.basis:
        res = solve_linear(basis_matrix, m.apply(b))
        if res is None:
            raise ValueError("subspace is not invariant under the matrix")
        cols.append(res[0])
    return RatMatrix.from_rows(cols).transpose()
