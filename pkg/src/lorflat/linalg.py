"""Exact rational linear algebra.

Everything here works over :class:`fractions.Fraction`.  Vectors are plain
tuples of fractions, matrices are immutable :class:`Matrix` objects stored row
by row.  Elimination always pivots on the first nonzero column and, inside
that column, on the smallest available row index, so every basis returned is
reproducible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


class LinalgError(ValueError):
    """Raised on malformed input (dimension mismatch, non-symmetric form, ...)."""


def rational(value) -> Fraction:
    """Convert ``value`` to a Fraction, refusing anything inexact.

    Accepts ints, Fractions and strings of the form ``"p"`` or ``"p/q"``.
    Floats, bools and decimal strings such as ``"0.5"`` are rejected.
    """
    if isinstance(value, bool):
        raise LinalgError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        m = _RATIONAL_RE.match(value)
        if m is None:
            raise LinalgError(f"not an exact rational literal: {value!r}")
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise LinalgError(f"zero denominator: {value!r}")
        return Fraction(int(m.group(1)), den)
    raise LinalgError(f"not a rational: {value!r}")


def fmt_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# -- vectors ---------------------------------------------------------------

def vec(values: Iterable) -> Vector:
    return tuple(rational(v) for v in values)


def zero_vec(n: int) -> Vector:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def vadd(x: Sequence, y: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def vsub(x: Sequence, y: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(x, y))


def vscale(c, x: Sequence) -> Vector:
    if not c:
        return (ZERO,) * len(x)
    return tuple(c * a for a in x)


def vcomb(terms: Iterable[tuple], n: int) -> Vector:
    """Linear combination ``sum(c * x for c, x in terms)`` of length ``n``."""
    out = [ZERO] * n
    for c, x in terms:
        if not c:
            continue
        for k, a in enumerate(x):
            if a:
                out[k] += c * a
    return tuple(out)


def dot(x: Sequence, y: Sequence) -> Fraction:
    s = ZERO
    for a, b in zip(x, y):
        if a and b:
            s += a * b
    return s


def is_zero_vec(x: Sequence) -> bool:
    return not any(x)


# -- matrices --------------------------------------------------------------

class Matrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("_rows", "rows", "cols")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        rows = tuple(tuple(rational(v) for v in row) for row in data)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise LinalgError("ragged matrix rows")
            if cols is not None and cols != width:
                raise LinalgError("column count mismatch")
        else:
            width = cols or 0
        self._rows = rows
        self.rows = len(rows)
        self.cols = width

    @classmethod
    def _raw(cls, rows: tuple, cols: int) -> "Matrix":
        m = cls.__new__(cls)
        m._rows = rows
        m.rows = len(rows)
        m.cols = cols
        return m

    # constructors
    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls._raw(tuple((ZERO,) * cols for _ in range(rows)), cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw(tuple(unit_vec(n, i) for i in range(n)), n)

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        n = len(values)
        return cls._raw(
            tuple(tuple(rational(values[i]) if i == j else ZERO for j in range(n)) for i in range(n)),
            n,
        )

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "Matrix":
        if not columns:
            return cls.zeros(rows or 0, 0)
        n = len(columns[0])
        return cls._raw(tuple(tuple(rational(c[i]) for c in columns) for i in range(n)), len(columns))

    @classmethod
    def block_diag(cls, *blocks: "Matrix") -> "Matrix":
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        out = [[ZERO] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r0 + i][c0 + j] = b._rows[i][j]
            r0 += b.rows
            c0 += b.cols
        return cls._raw(tuple(tuple(r) for r in out), m)

    @classmethod
    def blocks(cls, grid: Sequence[Sequence["Matrix"]]) -> "Matrix":
        """Assemble a block matrix; blocks in a row must share the row count."""
        out = []
        for brow in grid:
            h = brow[0].rows
            for i in range(h):
                row: list = []
                for b in brow:
                    row.extend(b._rows[i])
                out.append(tuple(row))
        cols = sum(b.cols for b in grid[0]) if grid else 0
        return cls._raw(tuple(out), cols)

    # access
    @property
    def entries(self) -> tuple:
        return tuple(a for r in self._rows for a in r)

    def tolist(self) -> list:
        return [list(r) for r in self._rows]

    def row(self, i: int) -> Vector:
        return self._rows[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self._rows)

    def columns(self) -> list:
        return [self.col(j) for j in range(self.cols)]

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __iter__(self):
        return iter(self._rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.cols == other.cols and self._rows == other._rows

    def __hash__(self):
        return hash((self.cols, self._rows))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(fmt_rational(a) for a in r) + "]" for r in self._rows)
        return f"Matrix([{body}])"

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._rows)

    def is_symmetric(self) -> bool:
        if not self.is_square():
            return False
        n = self.rows
        return all(self._rows[i][j] == self._rows[j][i] for i in range(n) for j in range(i + 1, n))

    # arithmetic
    @property
    def T(self) -> "Matrix":
        if not self.rows:
            return Matrix._raw(tuple(() for _ in range(self.cols)), 0)
        return Matrix._raw(tuple(zip(*self._rows)), self.rows)

    def _check_same(self, other: "Matrix"):
        if self.shape != other.shape:
            raise LinalgError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)), self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)), self.cols)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self._rows), self.cols)

    def scale(self, c) -> "Matrix":
        c = rational(c)
        return Matrix._raw(tuple(tuple(c * a for a in r) for r in self._rows), self.cols)

    def __mul__(self, c) -> "Matrix":
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            return self.matmul(other)
        return self.apply(other)

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise LinalgError(f"cannot multiply {self.shape} by {other.shape}")
        m = other.cols
        brows = other._rows
        out = []
        for r in self._rows:
            acc = [ZERO] * m
            for k, a in enumerate(r):
                if not a:
                    continue
                for j, b in enumerate(brows[k]):
                    if b:
                        acc[j] += a * b
            out.append(tuple(acc))
        return Matrix._raw(tuple(out), m)

    def apply(self, x: Sequence) -> Vector:
        if len(x) != self.cols:
            raise LinalgError(f"cannot apply {self.shape} matrix to length-{len(x)} vector")
        nz = [(k, a) for k, a in enumerate(x) if a]
        return tuple(sum((r[k] * a for k, a in nz if r[k]), ZERO) for r in self._rows)

    def trace(self) -> Fraction:
        return sum((self._rows[i][i] for i in range(min(self.rows, self.cols))), ZERO)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw(tuple(tuple(self._rows[i][j] for j in cols) for i in rows), len(cols))


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return a.matmul(b) - b.matmul(a)


def bilinear(G: Matrix, x: Sequence, y: Sequence) -> Fraction:
    return dot(x, G.apply(y))


# -- elimination -------------------------------------------------------------

def rref(M: Matrix) -> tuple:
    """Reduced row echelon form.

    Returns ``(R, pivots)`` with ``R`` a list of rows (lists of Fractions) and
    ``pivots`` the pivot column indices.
    """
    rows = [list(r) for r in M]
    nrows, ncols = M.rows, M.cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != 1:
            inv = 1 / piv
            rows[r] = [a * inv for a in rows[r]]
        prow = rows[r]
        nzc = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    ri = rows[i]
                    for j in nzc:
                        ri[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return rows, pivots


def rank(M: Matrix) -> int:
    return len(rref(M)[1])


def solve_linear(A: Matrix, b: Sequence) -> Vector | None:
    """Solve ``A x = b`` exactly.

    Returns the echelon particular solution (free variables zero) or ``None``
    when the system is inconsistent.
    """
    if A.rows != len(b):
        raise LinalgError(f"system has {A.rows} rows but right-hand side has length {len(b)}")
    aug = Matrix._raw(tuple(tuple(r) + (rational(bi),) for r, bi in zip(A, b)), A.cols + 1)
    rows, pivots = rref(aug)
    if pivots and pivots[-1] == A.cols:
        return None
    x = [ZERO] * A.cols
    for i, c in enumerate(pivots):
        x[c] = rows[i][A.cols]
    return tuple(x)


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``Q^ambient`` given by a linearly independent basis."""

    ambient: int
    basis: tuple

    def __post_init__(self):
        for v in self.basis:
            if len(v) != self.ambient:
                raise LinalgError("basis vector of wrong length")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> Matrix:
        """Basis vectors as columns (ambient x dim)."""
        return Matrix.from_columns(self.basis) if self.basis else Matrix.zeros(self.ambient, 0)

    def contains(self, x: Sequence) -> bool:
        if is_zero_vec(x):
            return True
        if not self.basis:
            return False
        return solve_linear(self.matrix(), x) is not None

    def coordinates(self, x: Sequence) -> Vector:
        """Coordinates of ``x`` in this basis; raises if ``x`` is outside."""
        if not self.basis:
            if not is_zero_vec(x):
                raise LinalgError("vector not in subspace")
            return ()
        c = solve_linear(self.matrix(), x)
        if c is None:
            raise LinalgError("vector not in subspace")
        return c

    def same_span(self, other: "Subspace") -> bool:
        return self.ambient == other.ambient and self.dim == other.dim and all(self.contains(v) for v in other.basis)

    def intersect(self, other: "Subspace") -> "Subspace":
        # x = S a = T b  <=>  [S | -T] (a, b) = 0
        if not self.basis or not other.basis:
            return Subspace(self.ambient, ())
        S = self.matrix()
        T = other.matrix()
        M = Matrix.blocks([[S, -T]])
        K = kernel_basis(M)
        vecs = [S.apply(k[: self.dim]) for k in K.basis]
        return span(vecs, self.ambient)


def span(vectors: Iterable[Sequence], ambient: int) -> Subspace:
    """Echelon basis of the span of ``vectors``."""
    vs = [tuple(rational(a) for a in v) for v in vectors]
    if not vs:
        return Subspace(ambient, ())
    rows, pivots = rref(Matrix._raw(tuple(vs), ambient))
    return Subspace(ambient, tuple(tuple(rows[i]) for i in range(len(pivots))))


def kernel_basis(A: Matrix) -> Subspace:
    """Basis of ``{x : A x = 0}`` read off the reduced echelon form.

    One vector per free column, with a 1 in that column.
    """
    rows, pivots = rref(A)
    n = A.cols
    pivset = set(pivots)
    basis = []
    for free in range(n):
        if free in pivset:
            continue
        x = [ZERO] * n
        x[free] = ONE
        for i, c in enumerate(pivots):
            x[c] = -rows[i][free]
        basis.append(tuple(x))
    return Subspace(n, tuple(basis))


def stack(mats: Sequence[Matrix], cols: int) -> Matrix:
    """Stack matrices vertically (all with ``cols`` columns)."""
    rows: list = []
    for m in mats:
        if m.cols != cols:
            raise LinalgError("column mismatch in stack")
        rows.extend(m)
    return Matrix._raw(tuple(rows), cols)


def common_kernel(mats: Sequence[Matrix], n: int) -> Subspace:
    if not mats:
        return Subspace(n, tuple(unit_vec(n, i) for i in range(n)))
    return kernel_basis(stack(mats, n))


def inverse(A: Matrix) -> Matrix:
    if not A.is_square():
        raise LinalgError("inverse of non-square matrix")
    n = A.rows
    aug = Matrix._raw(tuple(tuple(r) + unit_vec(n, i) for i, r in enumerate(A)), 2 * n)
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise LinalgError("matrix is singular")
    return Matrix._raw(tuple(tuple(rows[i][n:]) for i in range(n)), n)


def det(A: Matrix) -> Fraction:
    if not A.is_square():
        raise LinalgError("determinant of non-square matrix")
    rows = [list(r) for r in A]
    n = A.rows
    d = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            d = -d
        piv = rows[c][c]
        d *= piv
        for i in range(c + 1, n):
            f = rows[i][c] / piv
            if f:
                for j in range(c, n):
                    rows[i][j] -= f * rows[c][j]
    return d


# -- symmetric forms ---------------------------------------------------------

def congruence_diagonalize(G: Matrix) -> tuple:
    """Return ``(P, d)`` with ``P^T G P = diag(d)`` and ``P`` invertible.

    Symmetric Gaussian elimination.  When every remaining diagonal entry is
    zero but an off-diagonal one is not, basis vector ``i`` is replaced by
    ``e_i + e_j`` which creates the nonzero diagonal entry ``2 G_ij``.
    """
    if not G.is_symmetric():
        raise LinalgError("form is not symmetric")
    n = G.rows
    M = [list(r) for r in G]
    P = [list(unit_vec(n, i)) for i in range(n)]  # rows of P are the new basis vectors
    d: list = []
    for k in range(n):
        p = next((i for i in range(k, n) if M[i][i]), None)
        if p is None:
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if M[i][j]), None)
            if pair is None:
                d.extend([ZERO] * (n - k))
                break
            i, j = pair
            # e_i <- e_i + e_j
            for t in range(n):
                M[i][t] += M[j][t]
            for t in range(n):
                M[t][i] += M[t][j]
            P[i] = [a + b for a, b in zip(P[i], P[j])]
            p = i
        if p != k:
            M[k], M[p] = M[p], M[k]
            for row in M:
                row[k], row[p] = row[p], row[k]
            P[k], P[p] = P[p], P[k]
        piv = M[k][k]
        for i in range(k + 1, n):
            f = M[i][k] / piv
            if f:
                for t in range(n):
                    M[i][t] -= f * M[k][t]
                for t in range(n):
                    M[t][i] -= f * M[t][k]
                P[i] = [a - f * b for a, b in zip(P[i], P[k])]
        d.append(piv)
    return Matrix.from_columns([tuple(r) for r in P]) if n else Matrix.zeros(0), tuple(d)


def signature(G: Matrix) -> tuple:
    """Sylvester inertia ``(n_plus, n_minus, n_zero)`` of a symmetric form."""
    _, d = congruence_diagonalize(G)
    return (sum(1 for x in d if x > 0), sum(1 for x in d if x < 0), sum(1 for x in d if x == 0))


def orthogonal_complement(G: Matrix, S: Subspace) -> Subspace:
    """``{x : G(x, s) = 0 for all s in S}`` for a nondegenerate symmetric ``G``."""
    if not G.is_symmetric():
        raise LinalgError("form is not symmetric")
    if G.rows != S.ambient:
        raise LinalgError("subspace ambient does not match form")
    if signature(G)[2]:
        raise LinalgError("form is degenerate")
    n = G.rows
    if not S.basis:
        return Subspace(n, tuple(unit_vec(n, i) for i in range(n)))
    rows = Matrix._raw(tuple(G.apply(s) for s in S.basis), n)
    return kernel_basis(rows)


def restrict_form(G: Matrix, S: Subspace) -> Matrix:
    """Gram matrix of ``G`` on the basis of ``S``."""
    B = S.matrix()
    return B.T.matmul(G).matmul(B)


def is_skew(M: Matrix, G: Matrix | None = None) -> bool:
    """``G(Mx, y) + G(x, My) = 0``; with ``G`` omitted the identity form is used."""
    if G is None:
        return (M + M.T).is_zero()
    GM = G.matmul(M)
    return (GM + GM.T).is_zero()


def adjoint(M: Matrix, G: Matrix | None = None) -> Matrix:
    """Adjoint of ``M`` with respect to ``G`` (transpose for the identity form)."""
    if G is None:
        return M.T
    return inverse(G).matmul(M.T).matmul(G)
