"""Structure theory of flat metric Lie algebras as executable procedures.

* :func:`milnor_check` splits a flat Euclidean algebra as ``d + a`` with
  ``d = [g, g]`` and ``a = d^perp``, both abelian, ``a`` acting on ``d`` by
  commuting skew maps ``rho``.
* :func:`dichotomy_witness` looks for either a timelike vector killed by every
  left multiplication or a null common eigenvector of them.
* :func:`kundt_verify` checks that a given null vector spans a line stable
  under ``L_x`` for ``x`` orthogonal to it.
* ``lemma_*`` are the three linear-algebra lemmas behind the classification,
  each with its hypotheses checked and its conclusions re-verified.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import sympy

from .algebra import MetricLieAlgebra, lorentz_kind
from .connection import InconsistencyError, ProductTable, flatness_report, levi_civita
from .linalg import (
    ZERO,
    Matrix,
    Subspace,
    Vector,
    common_kernel,
    congruence_diagonalize,
    inverse,
    is_skew,
    kernel_basis,
    orthogonal_complement,
    restrict_form,
    signature,
    solve_linear,
    span,
    stack,
    unit_vec,
    vadd,
    vscale,
    vsub,
)
from .models.rotation import RotationRep
from .report import CheckReport, PreconditionError, Witness

TIMELIKE = "timelike"
NULL = "null"
UNKNOWN = "unknown"


def so_form(A: Matrix, B: Matrix) -> Fraction:
    """Invariant form ``<A, B> = -tr(AB)`` on skew matrices."""
    return -A.matmul(B).trace()


def commutator(A: Matrix, B: Matrix) -> Matrix:
    return A.matmul(B) - B.matmul(A)


# ---------------------------------------------------------------------------
# Milnor decomposition


@dataclass(frozen=True)
class MilnorDecomposition:
    """``g = d + a``; ``rho[k]`` is ``ad`` of the k-th ``a`` basis vector on ``d``,
    written in the basis of ``d``."""

    alg: MetricLieAlgebra
    d: Subspace
    a: Subspace
    rho: tuple
    report: CheckReport = field(default_factory=CheckReport, compare=False)

    def split_matrix(self) -> Matrix:
        """Columns: basis of ``d`` then basis of ``a``."""
        return Matrix.from_columns(self.d.basis + self.a.basis, rows=self.alg.dim)


def euclidean_from_rep(rep: RotationRep, ametric: Matrix | None = None) -> MetricLieAlgebra:
    """Flat Euclidean algebra ``d + a`` with ``[a, x] = rho(a) x``.

    ``d`` comes first with the identity metric; ``a`` carries ``ametric``
    (identity by default), which must be positive definite.
    """
    dd, ad = rep.ddim, rep.adim
    n = dd + ad
    brackets = {}
    for k, R in enumerate(rep.rho_basis()):
        for j in range(dd):
            col = R.col(j)
            if any(col):
                brackets[(dd + k, j)] = tuple(col) + (ZERO,) * ad
    G = Matrix.block_diag(Matrix.identity(dd), ametric if ametric is not None else Matrix.identity(ad))
    names = [f"{p}{i}" for i in range(1, rep.r + 1) for p in ("e", "f")] + [f"a{k}" for k in range(1, ad + 1)]
    return MetricLieAlgebra.from_brackets(n, brackets, G, names)


def _require_flat(alg: MetricLieAlgebra, prod: ProductTable) -> None:
    flat = flatness_report(alg, prod)
    if not flat.passed:
        raise PreconditionError("algebra is not flat", flat)


def milnor_check(alg: MetricLieAlgebra) -> MilnorDecomposition:
    """Decompose a flat Euclidean algebra; raise :class:`PreconditionError`
    (with the failing report) when the input is not one."""
    n = alg.dim
    G = alg.metric
    if not G.is_symmetric() or signature(G) != (n, 0, 0):
        raise PreconditionError("metric is not positive definite")
    prod = levi_civita(alg)
    _require_flat(alg, prod)

    rep = CheckReport()
    d = alg.derived_algebra()
    a = orthogonal_complement(G, d)
    products = span([prod.prod[i][j] for i in range(n) for j in range(n)], n)
    rep.add("[g,g] = g.g", products.same_span(d))

    def abelian(S: Subspace, name: str) -> None:
        bad = []
        for i, x in enumerate(S.basis):
            for j in range(i + 1, S.dim):
                r = alg.bracket(x, S.basis[j])
                if any(r):
                    bad.append(Witness({name: [i, j]}, r))
        rep.add(f"{name} abelian", not bad, bad[:1])

    abelian(d, "d")
    abelian(a, "a")
    rep.add("dim d even", d.dim % 2 == 0, note=f"dim d = {d.dim}")

    Gd = restrict_form(G, d)
    rho = []
    for x in a.basis:
        cols = [d.coordinates(alg.bracket(x, y)) for y in d.basis]
        rho.append(Matrix.from_columns(cols, rows=d.dim) if d.dim else Matrix.zeros(0))
    bad = [Witness({"a": k}, R) for k, R in enumerate(rho) if not is_skew(R, Gd)]
    rep.add("rho(a) skew on d", not bad, bad[:1])

    # Levi-Milnor form: x.y = [x_a, y_d]
    P = Matrix.from_columns(d.basis + a.basis, rows=n) if n else Matrix.zeros(0)
    Pinv = inverse(P) if n else P
    dd = d.dim

    def parts(x):
        c = Pinv.apply(x)
        xd = P.apply(tuple(c[:dd]) + (ZERO,) * (n - dd))
        return xd, vsub(x, xd)

    split = [parts(unit_vec(n, i)) for i in range(n)]
    bad = []
    for i in range(n):
        for j in range(n):
            want = alg.bracket(split[i][1], split[j][0])
            r = vsub(prod.prod[i][j], want)
            if any(r):
                bad.append(Witness({"pair": [i, j]}, r))
    rep.add("product has Levi-Milnor form", not bad, bad[:1])

    # kernel of a -> rho(a), mapped back to ambient coordinates
    if a.dim:
        K = kernel_basis(_rho_as_map(rho, dd, a.dim))
        ker_a = span([a.matrix().apply(k) for k in K.basis], n)
    else:
        ker_a = Subspace(n, ())
    rep.add("center = ker rho", alg.center().same_span(ker_a))

    rep.flags["flat"] = True
    if not rep.passed:
        raise PreconditionError("algebra does not have the flat Euclidean structure", rep)
    return MilnorDecomposition(alg, d, a, tuple(rho), rep)


def _rho_as_map(rho: Sequence[Matrix], dd: int, ad: int) -> Matrix:
    """Linear map ``a -> End(d)`` flattened to a ``dd^2 x ad`` matrix."""
    rows = []
    for p in range(dd):
        for q in range(dd):
            rows.append(tuple(R[p, q] for R in rho))
    return Matrix(rows, cols=ad) if rows else Matrix.zeros(0, ad)


# ---------------------------------------------------------------------------
# Timelike / null dichotomy


@dataclass(frozen=True)
class DichotomyWitness:
    """``kind`` is ``timelike``, ``null`` or ``unknown``.

    For ``null``, ``lam[i]`` is the eigenvalue of ``L_{e_i}`` on ``e``.
    Timelike witnesses are not normalized.
    """

    kind: str
    e: Vector | None = None
    lam: Vector | None = None

    def to_dict(self) -> dict:
        from .report import to_jsonable

        return {"kind": self.kind, "e": to_jsonable(self.e), "lam": to_jsonable(self.lam)}


def _require_flat_lorentzian(alg: MetricLieAlgebra) -> ProductTable:
    if not alg.metric.is_symmetric() or lorentz_kind(signature(alg.metric)) != "lorentzian":
        raise PreconditionError("metric is not Lorentzian")
    prod = levi_civita(alg)
    _require_flat(alg, prod)
    return prod


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def null_vector_in(G: Matrix, W: Subspace) -> Vector | None:
    """A nonzero ``G``-null vector of ``W`` with rational coordinates, if the
    diagonalized form exposes one."""
    if not W.dim:
        return None
    B = W.matrix()
    P, d = congruence_diagonalize(restrict_form(G, W))
    cols = [B.apply(P.col(i)) for i in range(W.dim)]
    for i, di in enumerate(d):
        if di == 0:
            return cols[i]
    for i, di in enumerate(d):
        for j, dj in enumerate(d):
            if di > 0 > dj:
                s = _rational_sqrt(-dj / di)
                if s is not None:
                    return vadd(vscale(s, cols[i]), cols[j])
    return None


def rational_eigenvalues(M: Matrix) -> list:
    """Rational roots of the characteristic polynomial, in descending order."""
    if not M.rows:
        return []
    S = sympy.Matrix([[sympy.Rational(a.numerator, a.denominator) for a in row] for row in M])
    roots = S.charpoly().ground_roots()
    return sorted((Fraction(int(r.p), int(r.q)) for r in roots), reverse=True)


def dichotomy_witness(alg: MetricLieAlgebra) -> DichotomyWitness:
    """Search for a timelike ``e`` with ``L_u e = 0`` for all ``u``, else a null
    common eigenvector of all ``L_u``.

    The eigenvalue search only sees rational eigenvalues and null vectors
    exposed by rational diagonalization, so ``unknown`` means the search was
    inconclusive, not that no witness exists.
    """
    prod = _require_flat_lorentzian(alg)
    n = alg.dim
    G = alg.metric
    Ls = [prod.L(i) for i in range(n)]

    P = common_kernel(Ls, n)
    if P.dim:
        Q, d = congruence_diagonalize(restrict_form(G, P))
        for i, di in enumerate(d):
            if di < 0:
                return DichotomyWitness(TIMELIKE, P.matrix().apply(Q.col(i)))

    full = Subspace(n, tuple(unit_vec(n, i) for i in range(n)))
    eig_cache: dict = {}

    def eigs(i):
        if i not in eig_cache:
            eig_cache[i] = rational_eigenvalues(Ls[i])
        return eig_cache[i]

    def search(i: int, W: Subspace, lam: tuple):
        if i == n:
            e = null_vector_in(G, W)
            return (e, lam) if e is not None else None
        if Ls[i].is_zero():
            return search(i + 1, W, lam + (ZERO,))
        for mu in eigs(i):
            W2 = W.intersect(kernel_basis(Ls[i] - Matrix.identity(n).scale(mu)))
            if W2.dim:
                found = search(i + 1, W2, lam + (mu,))
                if found:
                    return found
        return None

    found = search(0, full, ())
    if found is None:
        return DichotomyWitness(UNKNOWN)
    e, lam = found
    for i in range(n):
        if Ls[i].apply(e) != vscale(lam[i], e):
            raise InconsistencyError("common eigenvector check failed")
    return DichotomyWitness(NULL, e, lam)


def kundt_verify(alg: MetricLieAlgebra, e: Sequence) -> CheckReport:
    """Check ``L_x e = alpha(x) e`` for ``x`` in a basis of ``e^perp``.

    ``data["perp_basis"]`` lists that basis and ``data["alpha"]`` the values
    of ``alpha`` on it (``None`` where ``L_x e`` leaves the line).  The flag
    ``geodesic`` records whether ``L_e e = 0``.
    """
    prod = _require_flat_lorentzian(alg)
    n = alg.dim
    e = tuple(Fraction(x) for x in e)
    if len(e) != n:
        raise PreconditionError(f"vector has length {len(e)}, expected {n}")
    if not any(e):
        raise PreconditionError("vector is zero")
    norm = alg.inner(e, e)
    if norm != 0:
        raise PreconditionError(f"vector is not null (<e,e> = {norm})")
    rep = CheckReport()
    rep.add("<e,e> = 0", True)
    rep.add("e != 0", True)
    perp = orthogonal_complement(alg.metric, span([e], n))
    line = span([e], n)
    piv = next(k for k in range(n) if e[k])
    alpha, bad = [], []
    for k, x in enumerate(perp.basis):
        y = prod.L_vec(x).apply(e)
        if line.contains(y):
            alpha.append(y[piv] / e[piv])
        else:
            alpha.append(None)
            bad.append(Witness({"perp": k}, y))
    rep.add("L_x e in span(e) for x in e^perp", not bad, bad[:1])
    ee = prod.product(e, e)
    rep.flags["geodesic"] = not any(ee)
    rep.flags["kundt"] = rep.passed
    rep.data["perp_basis"] = [list(x) for x in perp.basis]
    rep.data["alpha"] = alpha
    return rep


# ---------------------------------------------------------------------------
# Lemmas


def lemma_lb_solve(Lambda: Sequence[Matrix], B: Sequence[Sequence], metric: Matrix | None = None) -> Vector:
    """Find ``v`` with ``B(a) = Lambda_a v`` for every index ``a``.

    Hypotheses (each checked, failures raise with witnesses): every
    ``Lambda_a`` is skew for ``metric`` (identity if omitted), their common
    kernel is zero, they commute, and ``Lambda_a B(b) = Lambda_b B(a)``.
    """
    if len(Lambda) != len(B):
        raise PreconditionError("Lambda and B must have the same length")
    if not Lambda:
        raise PreconditionError("no operators given")
    n = Lambda[0].rows
    Bv = [tuple(Fraction(x) for x in b) for b in B]
    rep = CheckReport()
    bad = [Witness({"a": k}, L) for k, L in enumerate(Lambda) if not is_skew(L, metric)]
    rep.add("Lambda_a skew", not bad, bad[:1])
    K = common_kernel(list(Lambda), n)
    rep.add("cap ker Lambda_a = {0}", K.dim == 0, [Witness({"kernel": 0}, K.basis[0])] if K.dim else [])
    bad, bad2 = [], []
    for i in range(len(Lambda)):
        for j in range(i + 1, len(Lambda)):
            c = commutator(Lambda[i], Lambda[j])
            if not c.is_zero():
                bad.append(Witness({"pair": [i, j]}, c))
            r = vsub(Lambda[i].apply(Bv[j]), Lambda[j].apply(Bv[i]))
            if any(r):
                bad2.append(Witness({"pair": [i, j]}, r))
    rep.add("[Lambda_a,Lambda_b] = 0", not bad, bad[:1])
    rep.add("Lambda_a B(b) = Lambda_b B(a)", not bad2, bad2[:1])
    if not rep.passed:
        raise PreconditionError("hypotheses of the solve fail", rep)
    v = solve_linear(stack(list(Lambda), n), [x for b in Bv for x in b])
    if v is None:
        raise InconsistencyError("stacked system inconsistent although hypotheses hold")
    return v


def lemma_lf_decompose(F: Matrix, A: Matrix, lam) -> tuple:
    """For skew ``F`` with ``[F, A] = A^2 - lam A`` and ``lam != 0``, return
    ``(ker A, U, F1, F2)``.

    In the basis ``ker A`` then ``(ker A)^perp`` the operator ``A`` is
    ``[[0, U], [0, lam I]]`` and ``F = diag(F1, F2)`` with ``F1 U = U F2``.
    These conclusions are re-verified and raise
    :class:`InconsistencyError` if they fail.
    """
    lam = Fraction(lam)
    if lam == 0:
        raise PreconditionError("lambda must be nonzero")
    n = A.rows
    rep = CheckReport()
    rep.add("F skew", is_skew(F))
    lhs = commutator(F, A)
    rhs = A.matmul(A) - A.scale(lam)
    rep.add("[F,A] = A^2 - lambda A", lhs == rhs, [] if lhs == rhs else [Witness({"matrix": "[F,A]-A^2+lambda A"}, lhs - rhs)])
    if not rep.passed:
        raise PreconditionError("hypotheses fail", rep)
    if A.matmul(A) != A.scale(lam):
        raise InconsistencyError("A^2 != lambda A")
    if not commutator(F, A).is_zero():
        raise InconsistencyError("[F,A] != 0")

    K = kernel_basis(A)
    Kp = orthogonal_complement(Matrix.identity(n), K)
    k = K.dim
    P = Matrix.from_columns(K.basis + Kp.basis, rows=n)
    Pinv = inverse(P)
    Ab = Pinv.matmul(A).matmul(P)
    Fb = Pinv.matmul(F).matmul(P)
    top, bot = list(range(k)), list(range(k, n))
    U = Ab.submatrix(top, bot)
    F1, F2 = Fb.submatrix(top, top), Fb.submatrix(bot, bot)
    if not (Ab.submatrix(top, top).is_zero() and Ab.submatrix(bot, top).is_zero()):
        raise InconsistencyError("A does not vanish on ker A")
    if Ab.submatrix(bot, bot) != Matrix.identity(n - k).scale(lam):
        raise InconsistencyError("lower block of A is not lambda I")
    if not (Fb.submatrix(top, bot).is_zero() and Fb.submatrix(bot, top).is_zero()):
        raise InconsistencyError("F does not preserve the splitting")
    if F1.matmul(U) != U.matmul(F2):
        raise InconsistencyError("F1 U != U F2")
    return K, U, F1, F2


def lemma_am_blocks(dec: MilnorDecomposition, A: Matrix) -> tuple:
    """Blocks of ``A`` satisfying ``A[x,y] = x.Ay - y.Ax`` on a flat Euclidean
    algebra, in the splitting ``d + a`` of ``dec``.

    Returns ``(A1, h, A2)``: ``A1`` and ``A2`` are the diagonal blocks in the
    bases of ``d`` and ``a``, and ``h`` (ambient coordinates, in ``d``) gives
    the off-diagonal block ``a -> rho(a) h``.
    """
    alg = dec.alg
    n = alg.dim
    prod = levi_civita(alg)
    rep = CheckReport()
    bad = []
    for i in range(n):
        for j in range(i + 1, n):
            x, y = unit_vec(n, i), unit_vec(n, j)
            lhs = A.apply(alg.brackets[i][j])
            r = vsub(lhs, vsub(prod.product(x, A.col(j)), prod.product(y, A.col(i))))
            if any(r):
                bad.append(Witness({"pair": [i, j]}, r))
    rep.add("A[x,y] = x.Ay - y.Ax", not bad, bad[:1])
    if not rep.passed:
        raise PreconditionError("A fails the derivation-type identity", rep)

    dd, ad = dec.d.dim, dec.a.dim
    P = dec.split_matrix()
    Ab = inverse(P).matmul(A).matmul(P)
    top, bot = list(range(dd)), list(range(dd, n))
    A1, Bm, C, A2 = Ab.submatrix(top, top), Ab.submatrix(top, bot), Ab.submatrix(bot, top), Ab.submatrix(bot, bot)
    if not C.is_zero():
        raise InconsistencyError("A maps d outside d")
    if dd and ad:
        hd = lemma_lb_solve(list(dec.rho), [Bm.col(k) for k in range(ad)], restrict_form(alg.metric, dec.d))
    else:
        if not Bm.is_zero():
            raise InconsistencyError("off-diagonal block without an acting space")
        hd = (ZERO,) * dd
    for k, R in enumerate(dec.rho):
        if not commutator(A1, R).is_zero():
            raise InconsistencyError(f"[A1, rho(a_{k})] != 0")
        if R.apply(hd) != Bm.col(k):
            raise InconsistencyError("off-diagonal block is not a -> rho(a) h")
    h = dec.d.matrix().apply(hd) if dd else (ZERO,) * n
    return A1, h, A2
