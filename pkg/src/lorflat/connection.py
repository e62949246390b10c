"""Levi-Civita product, curvature, flatness and the Novikov property."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import MetricLieAlgebra
from .linalg import ZERO, LinalgError, Matrix, Vector, inverse, vcomb
from .report import CheckReport, PreconditionError, Witness


class InconsistencyError(AssertionError):
    """Two formulations that must agree gave different answers."""


@dataclass(frozen=True)
class ProductTable:
    """Bilinear product with ``prod[i][j]`` the coordinates of ``e_i . e_j``."""

    dim: int
    prod: tuple

    @classmethod
    def from_dict(cls, dim: int, entries: dict) -> "ProductTable":
        zero = (ZERO,) * dim
        return cls(dim, tuple(tuple(tuple(entries.get((i, j), zero)) for j in range(dim)) for i in range(dim)))

    @classmethod
    def zero(cls, dim: int) -> "ProductTable":
        return cls.from_dict(dim, {})

    def product(self, x: Sequence, y: Sequence) -> Vector:
        terms = []
        for i, a in enumerate(x):
            if not a:
                continue
            row = self.prod[i]
            for j, b in enumerate(y):
                if b:
                    terms.append((a * b, row[j]))
        return vcomb(terms, self.dim)

    def L(self, i: int) -> Matrix:
        """Left multiplication by ``e_i``."""
        return Matrix.from_columns(self.prod[i]) if self.dim else Matrix.zeros(0)

    def R(self, i: int) -> Matrix:
        """Right multiplication by ``e_i``."""
        return Matrix.from_columns([self.prod[j][i] for j in range(self.dim)]) if self.dim else Matrix.zeros(0)

    def L_vec(self, x: Sequence) -> Matrix:
        n = self.dim
        return Matrix.from_columns([vcomb(((a, self.prod[i][j]) for i, a in enumerate(x)), n) for j in range(n)])

    def R_vec(self, x: Sequence) -> Matrix:
        n = self.dim
        return Matrix.from_columns([vcomb(((a, self.prod[j][i]) for i, a in enumerate(x)), n) for j in range(n)])

    def is_zero(self) -> bool:
        return not any(any(v) for row in self.prod for v in row)


def levi_civita(alg: MetricLieAlgebra) -> ProductTable:
    """Solve the Koszul formula
    ``2<u.v, w> = <[u,v],w> + <[w,u],v> + <[w,v],u>`` for ``u.v``."""
    n = alg.dim
    G = alg.metric
    try:
        Ginv = inverse(G)
    except LinalgError:
        raise PreconditionError("Levi-Civita product needs a nondegenerate metric") from None
    c = alg.brackets
    # low[i][j][k] = <[e_i, e_j], e_k>
    low = [[G.T.apply(c[i][j]) if any(c[i][j]) else (ZERO,) * n for j in range(n)] for i in range(n)]
    half = Fraction(1, 2)
    prod = []
    for i in range(n):
        row = []
        for j in range(n):
            cov = tuple((low[i][j][k] + low[k][i][j] + low[k][j][i]) * half for k in range(n))
            row.append(Ginv.apply(cov) if any(cov) else (ZERO,) * n)
        prod.append(tuple(row))
    return ProductTable(n, tuple(prod))


@dataclass(frozen=True)
class CurvatureTensor:
    dim: int
    K: dict  # (i, j) with i < j -> Matrix

    def at(self, i: int, j: int) -> Matrix:
        if i == j:
            return Matrix.zeros(self.dim)
        if i < j:
            return self.K[(i, j)]
        return -self.K[(j, i)]

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.K.values())


def _left_mults(prod: ProductTable) -> list:
    return [prod.L(i) for i in range(prod.dim)]


def curvature(alg: MetricLieAlgebra, prod: ProductTable | None = None) -> CurvatureTensor:
    """``K(e_i, e_j) = L_[e_i,e_j] - [L_{e_i}, L_{e_j}]`` for every pair ``i < j``."""
    n = alg.dim
    if prod is None:
        prod = levi_civita(alg)
    Ls = _left_mults(prod)
    K = {}
    for i in range(n):
        for j in range(i + 1, n):
            br = alg.brackets[i][j]
            M = Matrix.zeros(n)
            for k, a in enumerate(br):
                if a:
                    M = M + Ls[k].scale(a)
            K[(i, j)] = M - (Ls[i].matmul(Ls[j]) - Ls[j].matmul(Ls[i]))
    return CurvatureTensor(n, K)


def associator(prod: ProductTable, i: int, j: int, k: int) -> Vector:
    """``(e_i e_j) e_k - e_i (e_j e_k)``."""
    n = prod.dim
    p = prod.prod
    left = vcomb(((a, p[m][k]) for m, a in enumerate(p[i][j])), n)
    right = vcomb(((a, p[i][m]) for m, a in enumerate(p[j][k])), n)
    return tuple(x - y for x, y in zip(left, right))


def left_symmetry_defect(prod: ProductTable, i: int, j: int, k: int) -> Vector:
    a = associator(prod, i, j, k)
    b = associator(prod, j, i, k)
    return tuple(x - y for x, y in zip(a, b))


def flatness_report(alg: MetricLieAlgebra, prod: ProductTable | None = None) -> CheckReport:
    """Flatness through both the curvature tensor and the left-symmetry defect.

    Both formulations are always evaluated; a disagreement between them
    raises :class:`InconsistencyError`.
    """
    n = alg.dim
    if prod is None:
        prod = levi_civita(alg)
    K = curvature(alg, prod)
    rep = CheckReport()

    kw = []
    for i in range(n):
        for j in range(i + 1, n):
            M = K.K[(i, j)]
            if M.is_zero():
                continue
            k = next(c for c in range(n) if any(M.col(c)))
            kw.append(Witness({"triple": [i, j, k]}, M.col(k)))
            break
        if kw:
            break
    rep.add("curvature_zero", not kw, kw)

    qw = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                q = left_symmetry_defect(prod, i, j, k)
                if any(q):
                    qw.append(Witness({"triple": [i, j, k]}, q))
                    break
            if qw:
                break
        if qw:
            break
    rep.add("left_symmetric", not qw, qw)

    if bool(kw) != bool(qw):
        raise InconsistencyError("curvature and left-symmetry defect disagree")
    rep.flags["flat"] = not kw
    return rep


def is_flat(alg: MetricLieAlgebra) -> bool:
    return flatness_report(alg).passed


def novikov_check(prod: ProductTable, alg: MetricLieAlgebra | None = None) -> CheckReport:
    """Novikov identity ``(x.y).z = (x.z).y`` on basis triples.

    With ``alg`` given (and flat), the operator characterisation
    ``L_{u.v} = 0`` and ``[L_u, L_v] = 0`` is evaluated as well and must give
    the same verdict.
    """
    n = prod.dim
    p = prod.prod
    rep = CheckReport()
    bad = []
    for i in range(n):
        for j in range(n):
            for k in range(j + 1, n):
                a = vcomb(((c, p[m][k]) for m, c in enumerate(p[i][j])), n)
                b = vcomb(((c, p[m][j]) for m, c in enumerate(p[i][k])), n)
                r = tuple(x - y for x, y in zip(a, b))
                if any(r):
                    bad.append(Witness({"triple": [i, j, k]}, r))
    rep.add("novikov_identity", not bad, bad[:1])
    verdict = not bad

    if alg is not None:
        flat = flatness_report(alg, prod)
        if not flat.passed:
            raise PreconditionError("operator Novikov criterion needs a flat algebra", flat)
        Ls = _left_mults(prod)
        bad = []
        for i in range(n):
            for j in range(n):
                M = Matrix.zeros(n)
                for m, c in enumerate(p[i][j]):
                    if c:
                        M = M + Ls[m].scale(c)
                if not M.is_zero():
                    bad.append(Witness({"pair": [i, j]}, M))
        rep.add("L_of_products_zero", not bad, bad[:1])
        ok1 = not bad
        bad = []
        for i in range(n):
            for j in range(i + 1, n):
                C = Ls[i].matmul(Ls[j]) - Ls[j].matmul(Ls[i])
                if not C.is_zero():
                    bad.append(Witness({"pair": [i, j]}, C))
        rep.add("left_multiplications_commute", not bad, bad[:1])
        op = ok1 and not bad
        if op != verdict:
            raise InconsistencyError("Novikov identity and operator criterion disagree")
    rep.flags["novikov"] = verdict
    return rep
