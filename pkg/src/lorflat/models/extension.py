"""Generalized and classical double extensions ``R e + h + R f``.

The extension basis is ordered ``(e, h_1, ..., h_m, f)`` with
``<e, f> = 1``, ``<e, e> = <f, f> = 0`` and ``h`` Euclidean and orthogonal
to ``e`` and ``f``.  All formulas are evaluated on basis vectors of ``h``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from ..algebra import MetricLieAlgebra
from ..connection import InconsistencyError, ProductTable, flatness_report, levi_civita
from ..linalg import (
    ZERO,
    LinalgError,
    Matrix,
    Vector,
    adjoint,
    commutator,
    dot,
    inverse,
    signature,
    unit_vec,
    vadd,
    vcomb,
    vec,
    vscale,
    vsub,
)
from ..report import CheckReport, PreconditionError, Witness


@dataclass(frozen=True)
class ExtensionData:
    """``(E, F, A, u, v, w, alpha, lam)`` over a Euclidean algebra ``(h, star)``."""

    hmetric: Matrix
    star: ProductTable
    E: Matrix
    F: Matrix
    A: Matrix
    u: Vector
    v: Vector
    w: Vector
    alpha: Fraction = ZERO
    lam: Fraction = ZERO
    hbasis: tuple = field(default=())

    @property
    def hdim(self) -> int:
        return self.hmetric.rows

    @classmethod
    def zero(cls, hmetric: Matrix, star: ProductTable | None = None) -> "ExtensionData":
        m = hmetric.rows
        z = (ZERO,) * m
        return cls(hmetric, star or ProductTable.zero(m), Matrix.zeros(m), Matrix.zeros(m), Matrix.zeros(m), z, z, z)

    def with_(self, **changes) -> "ExtensionData":
        return replace(self, **changes)


def extension_well_formed(data: ExtensionData) -> CheckReport:
    """Shapes, Euclidean metric, and skewness of ``E``, ``F`` and every ``L_a``."""
    rep = CheckReport()
    m = data.hdim
    G = data.hmetric
    shapes_ok = (
        G.shape == (m, m)
        and data.star.dim == m
        and all(M.shape == (m, m) for M in (data.E, data.F, data.A))
        and all(len(x) == m for x in (data.u, data.v, data.w))
    )
    rep.add("shapes", shapes_ok)
    if not shapes_ok:
        return rep
    ok = G.is_symmetric() and signature(G) == (m, 0, 0)
    rep.add("h Euclidean", ok)
    if not ok:
        return rep
    for name, M in (("E", data.E), ("F", data.F)):
        S = M.T.matmul(G) + G.matmul(M)
        rep.add(f"{name} skew", S.is_zero(), [] if S.is_zero() else [Witness({"matrix": name}, S)])
    bad = []
    for i in range(m):
        L = data.star.L(i)
        S = L.T.matmul(G) + G.matmul(L)
        if not S.is_zero():
            bad.append(Witness({"a": i}, S))
    rep.add("L_a skew", not bad, bad)
    return rep


def _require_well_formed(data: ExtensionData) -> None:
    rep = extension_well_formed(data)
    if not rep.passed:
        raise PreconditionError("malformed extension data", rep)


def extension_metric(hmetric: Matrix) -> Matrix:
    m = hmetric.rows
    n = m + 2
    rows = [[ZERO] * n for _ in range(n)]
    rows[0][n - 1] = rows[n - 1][0] = Fraction(1)
    for i in range(m):
        for j in range(m):
            rows[i + 1][j + 1] = hmetric[i, j]
    return Matrix(rows)


def _embed(x: Sequence, e=ZERO, f=ZERO) -> Vector:
    return (Fraction(e),) + tuple(x) + (Fraction(f),)


def generalized_extension(data: ExtensionData, basis: Sequence[str] = ()) -> tuple:
    """Bracket and Levi-Civita product of the extension.

    Returns ``(alg, table)`` where ``alg`` carries the brackets
    ``[f,e] = v + lam e + alpha f``, ``[e,a] = Ea + <a,v-u> e``,
    ``[a,b] = [a,b]_star + <(A - A*)a, b> e`` and
    ``[f,a] = (F + A)a + <a,w> e + <a,u> f``, and ``table`` is the product
    these brackets come from.  The product is metric compatible by
    construction, so it equals ``levi_civita(alg)``; the brackets satisfy
    Jacobi exactly when that product is left symmetric.
    """
    _require_well_formed(data)
    m = data.hdim
    n = m + 2
    G = data.hmetric
    E, F, A = data.E, data.F, data.A
    u, v, w = data.u, data.v, data.w
    al, lam = data.alpha, data.lam
    ip = lambda x, y: dot(x, G.apply(y))  # noqa: E731
    hu = [ip(unit_vec(m, i), u) for i in range(m)]
    hv = [ip(unit_vec(m, i), v) for i in range(m)]
    hw = [ip(unit_vec(m, i), w) for i in range(m)]
    GA = G.matmul(A)  # GA[j, i] = <A h_i, h_j>
    ei, fi = 0, n - 1
    P = {}
    P[(fi, ei)] = _embed((ZERO,) * m, e=lam)
    P[(ei, ei)] = _embed((ZERO,) * m, e=al)
    P[(fi, fi)] = _embed(vscale(-1, w), f=-lam)
    P[(ei, fi)] = _embed(vscale(-1, v), f=-al)
    for i in range(m):
        a = i + 1
        P[(a, ei)] = _embed((ZERO,) * m, e=hu[i])
        P[(ei, a)] = _embed(E.col(i), e=hv[i])
        P[(fi, a)] = _embed(F.col(i), e=hw[i])
        P[(a, fi)] = _embed(vscale(-1, A.col(i)), f=-hu[i])
        for j in range(m):
            P[(a, j + 1)] = _embed(data.star.prod[i][j], e=GA[j, i])
    table = ProductTable.from_dict(n, P)
    br = {}
    for i in range(n):
        for j in range(i + 1, n):
            br[(i, j)] = vsub(table.prod[i][j], table.prod[j][i])
    names = tuple(basis) or ("e",) + (data.hbasis or tuple(f"h{i}" for i in range(m))) + ("f",)
    alg = MetricLieAlgebra.from_brackets(n, br, extension_metric(G), names)
    return alg, table


def extension_modular_vector(data: ExtensionData) -> Vector:
    """``h0 - v + (tr A + lam) e - alpha f`` with ``<h0, a> = -tr(R_a)``."""
    m = data.hdim
    t = [-data.star.R(i).trace() for i in range(m)]
    h0 = inverse(data.hmetric).apply(t) if m else ()
    return _embed(vsub(h0, data.v), e=data.A.trace() + data.lam, f=-data.alpha)


# -- flatness system -------------------------------------------------------------

class _Ctx:
    """Precomputed operators for evaluating the extension systems."""

    def __init__(self, data: ExtensionData):
        self.d = data
        self.m = m = data.hdim
        self.G = data.hmetric
        self.L = [data.star.L(i) for i in range(m)]
        self.Astar = adjoint(data.A, self.G)
        self.basis = [unit_vec(m, i) for i in range(m)]

    def ip(self, x, y) -> Fraction:
        return dot(x, self.G.apply(y))

    def prod(self, x, y) -> Vector:
        return self.d.star.product(x, y)

    def Lvec(self, x) -> Matrix:
        m = self.m
        M = Matrix.zeros(m)
        for k, c in enumerate(x):
            if c:
                M = M + self.L[k].scale(c)
        return M

    def Rvec(self, x) -> Matrix:
        return self.d.star.R_vec(x)

    def sbr(self, x, y) -> Vector:
        return vsub(self.prod(x, y), self.prod(y, x))

    def ass(self, x, y, z) -> Vector:
        return vsub(self.prod(self.prod(x, y), z), self.prod(x, self.prod(y, z)))

    def Aform(self, i, j) -> Fraction:
        """``<A h_i, h_j>``."""
        return self.ip(self.d.A.col(i), self.basis[j])


def _nz(x) -> bool:
    if isinstance(x, Matrix):
        return not x.is_zero()
    if isinstance(x, (tuple, list)):
        return any(x)
    return x != 0


def _collect(rep: CheckReport, name: str, items) -> None:
    bad = [Witness(loc, r) for loc, r in items if _nz(r)]
    rep.add(name, not bad, bad)


CURVATURE_EQUATIONS = (
    "ass(a,b,c)-ass(b,a,c) = (<Ab,a>-<Aa,b>)Ec",
    "A[a,b] + b*Aa - a*Ab + (<Aa,b>-<Ab,a>)v + <b,u>Aa - <a,u>Ab = 0",
    "[E,L_a] = L_Ea + (<a,v>-<a,u>)E",
    "[E,A]a - <a,v>v - a*v + alpha Aa = 0",
    "[F,L_a] = L_(Fa+Aa) + <a,w>E + <a,u>F",
    "[F,A]a = A^2a - lambda Aa + 2<a,u>w + <a,w>v + a*w",
    "[F,E] = lambda E + alpha F + L_v",
    "Av - Fv + Ew + 2 alpha w = 0",
    "A*u + lambda u - Fu + alpha w = 0",
    "<u,v> = -2 alpha lambda",
    "<u,[a,b]> = alpha(<Ab,a>-<Aa,b>)",
    "Eu = alpha(v-u)",
)


def curvature_system_check(data: ExtensionData) -> CheckReport:
    """Every equation of the extension flatness system as a named check.

    Residuals are ``lhs - rhs``; ``[a,b]`` and ``*`` refer to the product
    on ``h``.  The extension is flat exactly when all checks pass.
    """
    _require_well_formed(data)
    c = _Ctx(data)
    m, B = c.m, c.basis
    E, F, A = data.E, data.F, data.A
    u, v, w, al, lam = data.u, data.v, data.w, data.alpha, data.lam
    names = CURVATURE_EQUATIONS
    rep = CheckReport()

    def eq1():
        for i in range(m):
            for j in range(i + 1, m):
                k_ = c.Aform(j, i) - c.Aform(i, j)
                for k in range(m):
                    lhs = vsub(c.ass(B[i], B[j], B[k]), c.ass(B[j], B[i], B[k]))
                    yield {"a": i, "b": j, "c": k}, vsub(lhs, vscale(k_, E.col(k)))

    def eq2():
        for i in range(m):
            for j in range(i + 1, m):
                Aa, Ab = A.col(i), A.col(j)
                r = vcomb(
                    [
                        (1, A.apply(c.sbr(B[i], B[j]))),
                        (1, c.prod(B[j], Aa)),
                        (-1, c.prod(B[i], Ab)),
                        (c.Aform(i, j) - c.Aform(j, i), v),
                        (c.ip(B[j], u), Aa),
                        (-c.ip(B[i], u), Ab),
                    ],
                    m,
                )
                yield {"a": i, "b": j}, r

    def eq3():
        for i in range(m):
            r = commutator(E, c.L[i]) - c.Lvec(E.col(i)) - E.scale(c.ip(B[i], v) - c.ip(B[i], u))
            yield {"a": i}, r

    def eq4():
        EA = commutator(E, A)
        for i in range(m):
            r = vcomb([(1, EA.col(i)), (-c.ip(B[i], v), v), (-1, c.prod(B[i], v)), (al, A.col(i))], m)
            yield {"a": i}, r

    def eq5():
        for i in range(m):
            r = (
                commutator(F, c.L[i])
                - c.Lvec(vadd(F.col(i), A.col(i)))
                - E.scale(c.ip(B[i], w))
                - F.scale(c.ip(B[i], u))
            )
            yield {"a": i}, r

    def eq6():
        FA = commutator(F, A)
        A2 = A.matmul(A)
        for i in range(m):
            r = vcomb(
                [
                    (1, FA.col(i)),
                    (-1, A2.col(i)),
                    (lam, A.col(i)),
                    (-2 * c.ip(B[i], u), w),
                    (-c.ip(B[i], w), v),
                    (-1, c.prod(B[i], w)),
                ],
                m,
            )
            yield {"a": i}, r

    def eq7():
        yield {}, commutator(F, E) - E.scale(lam) - F.scale(al) - c.Lvec(v)

    def eq8():
        yield {}, vcomb([(1, A.apply(v)), (-1, F.apply(v)), (1, E.apply(w)), (2 * al, w)], m)

    def eq9():
        yield {}, vcomb([(1, c.Astar.apply(u)), (lam, u), (-1, F.apply(u)), (al, w)], m)

    def eq10():
        yield {}, c.ip(u, v) + 2 * al * lam

    def eq11():
        for i in range(m):
            for j in range(i + 1, m):
                yield {"a": i, "b": j}, c.ip(u, c.sbr(B[i], B[j])) - al * (c.Aform(j, i) - c.Aform(i, j))

    def eq12():
        yield {}, vsub(E.apply(u), vscale(al, vsub(v, u)))

    for name, gen in zip(names, (eq1, eq2, eq3, eq4, eq5, eq6, eq7, eq8, eq9, eq10, eq11, eq12)):
        _collect(rep, name, gen())
    rep.flags["flat"] = rep.passed
    return rep


# -- Novikov system --------------------------------------------------------------

NOVIKOV_EQUATIONS = (
    "a*(b*c) - b*(a*c) = 0",
    "L_(a*b) = -<Aa,b>E",
    "b*Aa - a*Ab = <a,u>Ab - <b,u>Aa",
    "A(a*b) = -<Aa,b>v",
    "A^2a = -<a,u>w",
    "[E,F] = 0",
    "[E,L_a] = 0",
    "[F,L_a] = 0",
    "EA = R_v + <.,u>v",
    "FA = R_w - lambda A + <.,u>w",
    "AE = -<.,v>v",
    "AF = -<.,w>v",
    "L_Ea = -<a,v>E",
    "L_Fa = -<a,w>E",
    "L_Aa = -<a,u>F",
    "lambda v - Ew + Fv = 0",
    "alpha = 0",
    "lambda v = 0",
    "lambda E = 0",
    "|u|E = 0",
    "|u|v = 0",
    "Eu = 0",
    "Fu = 0",
    "A*u = -lambda u",
    "R_u = 0",
    "Aw = -lambda w",
    "<u,w> = -lambda^2",
    "L_w = -lambda F",
    "L_v = 0",
    "Av = 0",
)


def novikov_system_check(data: ExtensionData, require_flat: bool = True) -> CheckReport:
    """Every relation of the extension Novikov system as a named check.

    The system characterizes the Novikov property only for flat
    extensions, so the flatness system is checked first.
    """
    if require_flat:
        flat = curvature_system_check(data)
        if not flat.passed:
            raise PreconditionError("Novikov system needs data satisfying the flatness system", flat)
    else:
        _require_well_formed(data)
    c = _Ctx(data)
    m, B = c.m, c.basis
    E, F, A = data.E, data.F, data.A
    u, v, w, al, lam = data.u, data.v, data.w, data.alpha, data.lam
    rep = CheckReport()
    unz = any(u)
    Z = Matrix.zeros(m)

    def pairs():
        for i in range(m):
            for j in range(m):
                yield i, j

    gens = [
        lambda: (({"a": i, "b": j}, commutator(c.L[i], c.L[j])) for i in range(m) for j in range(i + 1, m)),
        lambda: (({"a": i, "b": j}, c.Lvec(c.prod(B[i], B[j])) + E.scale(c.Aform(i, j))) for i, j in pairs()),
        lambda: (
            (
                {"a": i, "b": j},
                vcomb(
                    [
                        (1, c.prod(B[j], A.col(i))),
                        (-1, c.prod(B[i], A.col(j))),
                        (-c.ip(B[i], u), A.col(j)),
                        (c.ip(B[j], u), A.col(i)),
                    ],
                    m,
                ),
            )
            for i in range(m)
            for j in range(i + 1, m)
        ),
        lambda: (({"a": i, "b": j}, vadd(A.apply(c.prod(B[i], B[j])), vscale(c.Aform(i, j), v))) for i, j in pairs()),
        lambda: (({"a": i}, vadd(A.matmul(A).col(i), vscale(c.ip(B[i], u), w))) for i in range(m)),
        lambda: [({}, commutator(E, F))],
        lambda: (({"a": i}, commutator(E, c.L[i])) for i in range(m)),
        lambda: (({"a": i}, commutator(F, c.L[i])) for i in range(m)),
        lambda: (
            ({"a": i}, vcomb([(1, E.apply(A.col(i))), (-1, c.prod(B[i], v)), (-c.ip(B[i], u), v)], m))
            for i in range(m)
        ),
        lambda: (
            (
                {"a": i},
                vcomb([(1, F.apply(A.col(i))), (-1, c.prod(B[i], w)), (lam, A.col(i)), (-c.ip(B[i], u), w)], m),
            )
            for i in range(m)
        ),
        lambda: (({"a": i}, vadd(A.apply(E.col(i)), vscale(c.ip(B[i], v), v))) for i in range(m)),
        lambda: (({"a": i}, vadd(A.apply(F.col(i)), vscale(c.ip(B[i], w), v))) for i in range(m)),
        lambda: (({"a": i}, c.Lvec(E.col(i)) + E.scale(c.ip(B[i], v))) for i in range(m)),
        lambda: (({"a": i}, c.Lvec(F.col(i)) + E.scale(c.ip(B[i], w))) for i in range(m)),
        lambda: (({"a": i}, c.Lvec(A.col(i)) + F.scale(c.ip(B[i], u))) for i in range(m)),
        lambda: [({}, vcomb([(lam, v), (-1, E.apply(w)), (1, F.apply(v))], m))],
        lambda: [({}, al)],
        lambda: [({}, vscale(lam, v))],
        lambda: [({}, E.scale(lam))],
        lambda: [({}, E if unz else Z)],
        lambda: [({}, tuple(v) if unz else (ZERO,) * m)],
        lambda: [({}, E.apply(u))],
        lambda: [({}, F.apply(u))],
        lambda: [({}, vadd(c.Astar.apply(u), vscale(lam, u)))],
        lambda: [({}, c.Rvec(u))],
        lambda: [({}, vadd(A.apply(w), vscale(lam, w)))],
        lambda: [({}, c.ip(u, w) + lam * lam)],
        lambda: [({}, c.Lvec(w) + F.scale(lam))],
        lambda: [({}, c.Lvec(v))],
        lambda: [({}, A.apply(v))],
    ]
    for name, gen in zip(NOVIKOV_EQUATIONS, gens):
        _collect(rep, name, gen())
    rep.flags["novikov"] = rep.passed
    return rep


# -- classical double extension ----------------------------------------------------

def classical_conditions(h: MetricLieAlgebra, A: Matrix, D: Matrix, lam, w: Sequence) -> CheckReport:
    """The compatibility conditions of a classical double extension of ``h``."""
    m = h.dim
    G = h.metric
    rep = CheckReport()
    shapes = A.shape == (m, m) and D.shape == (m, m) and len(w) == m
    rep.add("shapes", shapes)
    if not shapes:
        return rep
    star = levi_civita(h)
    Fm = D - A
    S = Fm.T.matmul(G) + G.matmul(Fm)
    rep.add("D-A skew", S.is_zero(), [] if S.is_zero() else [Witness({"matrix": "D-A"}, S)])
    B = [unit_vec(m, i) for i in range(m)]
    bad = []
    for i in range(m):
        for j in range(i + 1, m):
            r = vsub(
                A.apply(h.brackets[i][j]),
                vsub(star.product(B[i], A.col(j)), star.product(B[j], A.col(i))),
            )
            if any(r):
                bad.append(Witness({"a": i, "b": j}, r))
    rep.add("A[a,b] = a*Ab - b*Aa", not bad, bad)
    lam = Fraction(lam)
    R = commutator(D, A) - A.matmul(A) + A.scale(lam) - star.R_vec(w)
    rep.add("[D,A] = A^2 - lambda A + R_w", R.is_zero(), [] if R.is_zero() else [Witness({}, R)])
    bad = []
    for i in range(m):
        for j in range(m):
            ab = star.product(B[i], B[j])
            lhs = vsub(star.product(B[i], A.col(j)), A.apply(ab))
            rhs = vsub(vadd(star.product(D.col(i), B[j]), star.product(B[i], D.col(j))), D.apply(ab))
            r = vsub(lhs, rhs)
            if any(r):
                bad.append(Witness({"a": i, "b": j}, r))
    rep.add("a*Ab - A(a*b) = Da*b + a*Db - D(a*b)", not bad, bad)
    return rep


def classical_double_extension(h: MetricLieAlgebra, A: Matrix, D: Matrix, lam, w: Sequence) -> MetricLieAlgebra:
    """``R e + h + R f`` with ``[f,e] = lam e``, ``[f,a] = Da + <w,a> e`` and
    ``[a,b] = [a,b]_h + <(A - A*)a, b> e``.

    ``h`` must be flat; the conditions of :func:`classical_conditions` are
    checked and the result is verified flat before it is returned.
    """
    pre = flatness_report(h)
    if not pre.passed:
        raise PreconditionError("classical double extension needs a flat base algebra", pre)
    w = vec(w)
    lam = Fraction(lam)
    rep = classical_conditions(h, A, D, lam, w)
    if not rep.passed:
        raise PreconditionError("double extension conditions fail", rep)
    m = h.dim
    n = m + 2
    G = h.metric
    As = adjoint(A, G)
    C = G.matmul(A - As)  # C[j, i] = <(A - A*) h_i, h_j>
    Gw = G.apply(w)
    br = {(n - 1, 0): _embed((ZERO,) * m, e=lam)}
    for i in range(m):
        br[(n - 1, i + 1)] = _embed(D.col(i), e=Gw[i])
        for j in range(i + 1, m):
            br[(i + 1, j + 1)] = _embed(h.brackets[i][j], e=C[j, i])
    alg = MetricLieAlgebra.from_brackets(n, br, extension_metric(G), ("e",) + h.basis + ("f",))
    flat = flatness_report(alg)
    if not flat.passed:
        raise InconsistencyError("double extension of a flat algebra is not flat")
    return alg


def data_to_dict(data: ExtensionData) -> dict:
    from ..linalg import fmt_rational

    fm = lambda M: [[fmt_rational(x) for x in r] for r in M]  # noqa: E731
    fv = lambda x: [fmt_rational(a) for a in x]  # noqa: E731
    m = data.hdim
    star = {f"{i},{j}": fv(data.star.prod[i][j]) for i in range(m) for j in range(m) if any(data.star.prod[i][j])}
    return {
        "hmetric": fm(data.hmetric),
        "star": star,
        "E": fm(data.E),
        "F": fm(data.F),
        "A": fm(data.A),
        "u": fv(data.u),
        "v": fv(data.v),
        "w": fv(data.w),
        "alpha": fmt_rational(data.alpha),
        "lambda": fmt_rational(data.lam),
    }


def data_from_dict(d: dict) -> ExtensionData:
    from ..linalg import rational

    try:
        G = Matrix(d["hmetric"])
        m = G.rows
        entries = {}
        for key, val in d.get("star", {}).items():
            i, j = (int(t) for t in key.split(","))
            if not (0 <= i < m and 0 <= j < m):
                raise LinalgError(f"star index {key} out of range")
            entries[(i, j)] = vec(val)
        mat = lambda k: Matrix(d[k]) if k in d else Matrix.zeros(m)  # noqa: E731
        vv = lambda k: vec(d.get(k, [0] * m))  # noqa: E731
        return ExtensionData(
            G,
            ProductTable.from_dict(m, entries),
            mat("E"),
            mat("F"),
            mat("A"),
            vv("u"),
            vv("v"),
            vv("w"),
            rational(d.get("alpha", 0)),
            rational(d.get("lambda", 0)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise PreconditionError(f"malformed extension data: {exc}") from None
