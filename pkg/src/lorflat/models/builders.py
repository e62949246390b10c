"""Table-literal construction of the six families.

:func:`build_model` writes down exactly the non-vanishing brackets and the
metric listed for each family.  Basis orders:

* g1: ``e, a_1.., (e_i, f_i).., (z_j, zb_j).., c_1..``
* g2: ``e, (e_i, f_i).., a_1.., u, f``
* g3: ``e, (e_i, f_i).., a_1.., f``
* g4: ``e, a_1.., (e_i, f_i).., x_1..x_2s, f``
* g5: ``e, (e_i, f_i).., (p_i, q_i).., a_1.., c_1.., f``
* g6: ``e, (e_i, f_i).., a_1.., f``
"""

from __future__ import annotations

from fractions import Fraction

from ..algebra import MetricLieAlgebra
from ..linalg import ZERO, Matrix, adjoint, dot, unit_vec, vadd, vscale, vsub
from ..report import PreconditionError
from .layout import Layout, pair_names, seq_names
from .specs import G1Spec, G2Spec, G3Spec, G4Spec, G5Spec, G6Spec, ModelSpec, validate_model_params


class _Brackets:
    """Accumulates ``[x_i, x_j]`` for basis indices, normalizing to ``i < j``."""

    def __init__(self, n: int):
        self.n = n
        self.table: dict = {}

    def add(self, i: int, j: int, v) -> None:
        if i == j or not any(v):
            return
        if i > j:
            i, j, v = j, i, vscale(-1, v)
        cur = self.table.get((i, j), (ZERO,) * self.n)
        self.table[(i, j)] = vadd(cur, v)


def layout_for(spec: ModelSpec) -> Layout:
    f = spec.family
    if f == "g1":
        r = spec.rep
        return Layout.make(
            [
                ("e", ["e"]),
                ("a", seq_names("a", r.adim)),
                ("d", pair_names("e", "f", r.r)),
                ("z0", pair_names("z", "zb", len(spec.mus))),
                ("z1", seq_names("c", spec.z1dim)),
            ]
        )
    if f == "g2":
        r = spec.rep
        return Layout.make(
            [
                ("e", ["e"]),
                ("d", pair_names("e", "f", r.r)),
                ("A", seq_names("a", r.adim - 1)),
                ("u", ["u"]),
                ("f", ["f"]),
            ]
        )
    if f in ("g3", "g6"):
        r = spec.rep
        return Layout.make(
            [("e", ["e"]), ("d", pair_names("e", "f", r.r)), ("a", seq_names("a", r.adim)), ("f", ["f"])]
        )
    if f == "g4":
        return Layout.make(
            [
                ("e", ["e"]),
                ("a", seq_names("a", spec.rep1.adim)),
                ("d", pair_names("e", "f", spec.rep1.r)),
                ("b", seq_names("x", spec.rep2.ddim)),
                ("f", ["f"]),
            ]
        )
    if f == "g5":
        return Layout.make(
            [
                ("e", ["e"]),
                ("d1", pair_names("e", "f", spec.rep1.r)),
                ("d2", pair_names("p", "q", spec.rep2.r)),
                ("a1", seq_names("a", spec.rep1.adim)),
                ("a2", seq_names("c", spec.a2dim)),
                ("f", ["f"]),
            ]
        )
    raise ValueError(f"unknown family {f!r}")


def _null_pair_metric(lay: Layout, hmetric: Matrix | None = None) -> Matrix:
    n = lay.dim
    rows = [[ZERO] * n for _ in range(n)]
    rows[0][n - 1] = rows[n - 1][0] = Fraction(1)
    m = n - 2
    for i in range(m):
        rows[i + 1][i + 1] = Fraction(1)
    if hmetric is not None:
        for i in range(m):
            for j in range(m):
                rows[i + 1][j + 1] = hmetric[i, j]
    return Matrix(rows)


def build_model(spec: ModelSpec, check: bool = True) -> MetricLieAlgebra:
    """The metric Lie algebra listed for the family, with the table's basis."""
    if check:
        rep = validate_model_params(spec)
        if not rep.passed:
            raise PreconditionError(f"{spec.family} parameters fail their conditions", rep)
    if spec.family == "g2" and spec.form == "proposition":
        from .propositions import extension_data
        from .extension import generalized_extension

        alg, _ = generalized_extension(extension_data(spec), basis=layout_for(spec).names)
        return alg
    fn = {"g1": _g1, "g2": _g2, "g3": _g3, "g4": _g4, "g5": _g5, "g6": _g6}[spec.family]
    return fn(spec)


def _g1(s: G1Spec) -> MetricLieAlgebra:
    lay = layout_for(s)
    n = lay.dim
    br = _Brackets(n)
    e = lay.index("e")
    for i, lam in enumerate(s.lambdas):
        ei, fi = lay.index("d", 2 * i), lay.index("d", 2 * i + 1)
        br.add(e, ei, vscale(lam, unit_vec(n, fi)))
        br.add(e, fi, vscale(-lam, unit_vec(n, ei)))
    for j, mu in enumerate(s.mus):
        z, zb = lay.index("z0", 2 * j), lay.index("z0", 2 * j + 1)
        br.add(e, z, vscale(mu, unit_vec(n, zb)))
        br.add(e, zb, vscale(-mu, unit_vec(n, z)))
    for k in range(s.rep.adim):
        a = lay.index("a", k)
        for i, u in enumerate(s.rep.uvecs):
            ei, fi = lay.index("d", 2 * i), lay.index("d", 2 * i + 1)
            br.add(a, ei, vscale(u[k], unit_vec(n, fi)))
            br.add(a, fi, vscale(-u[k], unit_vec(n, ei)))
    G = Matrix.diag([-1] + [1] * (n - 1))
    return MetricLieAlgebra.from_brackets(n, br.table, G, lay.names)


def _g2(s: G2Spec) -> MetricLieAlgebra:
    lay = layout_for(s)
    n = lay.dim
    r = s.rep
    na = r.adim - 1
    br = _Brackets(n)
    e, f, u = lay.index("e"), lay.index("f"), lay.index("u")
    lam, c = s.lam, s.unorm2
    h = s.h
    nfull = tuple(s.n) + (ZERO,)
    rho_u = r.rho(unit_vec(r.adim, na))
    rho_n = r.rho(nfull)
    E = lambda x: lay.vec(e=x)  # noqa: E731
    D = lambda x: lay.vec(d=x)  # noqa: E731
    m = vadd(rho_u.apply(h), h)
    w = vadd(vsub(vscale(lam, h), rho_n.apply(h)), vscale(lam, rho_u.apply(h)))
    br.add(f, e, E(lam))
    br.add(u, e, E(1))
    for j in range(r.ddim):
        b = unit_vec(r.ddim, j)
        bi = lay.index("d", j)
        br.add(u, bi, vadd(D(rho_u.apply(b)), E(dot(m, b))))
        Fb = vadd(vscale(-1, rho_n.apply(b)), vscale(lam, rho_u.apply(b)))
        br.add(f, bi, vadd(D(Fb), E(dot(b, w))))
    for k in range(na):
        a = unit_vec(r.adim, k)
        ai = lay.index("A", k)
        br.add(u, ai, E(s.n[k]))
        br.add(f, ai, vadd(D(r.rho(a).apply(h)), E(lam * s.n[k])))
        for j in range(r.ddim):
            b = unit_vec(r.ddim, j)
            rb = r.rho(a).apply(b)
            br.add(ai, lay.index("d", j), vadd(D(rb), E(-dot(h, rb))))
    fu = vadd(D(vadd(rho_u.apply(h), h)), lay.vec(A=tuple(s.n), u=-lam, e=-lam * lam * c, f=1))
    br.add(f, u, fu)
    hm = Matrix.diag([1] * (n - 3) + [c])
    G = _null_pair_metric(lay, hm)
    return MetricLieAlgebra.from_brackets(n, br.table, G, lay.names)


def _g3(s: G3Spec) -> MetricLieAlgebra:
    lay = layout_for(s)
    n = lay.dim
    r = s.rep
    br = _Brackets(n)
    e, f = lay.index("e"), lay.index("f")
    E = lambda x: lay.vec(e=x)  # noqa: E731
    w1 = vsub(s.F1.apply(s.h), s.A1.apply(s.h))
    C1 = s.A1 - adjoint(s.A1)
    C2 = s.A2 - adjoint(s.A2)
    dd, ad = r.ddim, r.adim
    for i in range(dd):
        for j in range(i + 1, dd):
            br.add(lay.index("d", i), lay.index("d", j), E(C1[j, i]))
    for i in range(ad):
        for j in range(i + 1, ad):
            br.add(lay.index("a", i), lay.index("a", j), E(C2[j, i]))
    for k in range(ad):
        a = unit_vec(ad, k)
        R = r.rho(a)
        ak = lay.index("a", k)
        for j in range(dd):
            rb = R.col(j)
            br.add(ak, lay.index("d", j), vadd(lay.vec(d=rb), E(-dot(s.h, rb))))
        fa = lay.vec(a=vadd(s.F2.col(k), s.A2.col(k)), d=R.apply(s.h), e=s.w2[k])
        br.add(f, ak, fa)
    for j in range(dd):
        br.add(f, lay.index("d", j), lay.vec(d=vadd(s.F1.col(j), s.A1.col(j)), e=w1[j]))
    return MetricLieAlgebra.from_brackets(n, br.table, _null_pair_metric(lay), lay.names)


def _g4(s: G4Spec) -> MetricLieAlgebra:
    lay = layout_for(s)
    n = lay.dim
    br = _Brackets(n)
    e, f = lay.index("e"), lay.index("f")
    r1, r2 = s.rep1, s.rep2
    ad, dd, bd = r1.adim, r1.ddim, r2.ddim
    v, h, Em = s.v, s.h, s.E
    Ev = Em.apply(v)
    X = lambda x: lay.vec(b=x)  # noqa: E731
    E = lambda x: lay.vec(e=x)  # noqa: E731
    br.add(f, e, X(Ev))
    for j in range(bd):
        x = unit_vec(bd, j)
        xj = lay.index("b", j)
        Ex = Em.col(j)
        br.add(e, xj, vadd(X(Ex), E(-dot(Ex, v))))
        br.add(f, xj, lay.vec(b=vadd(s.F3.col(j), vscale(v[j], Ev)), e=dot(s.F3.apply(v), x)))
        for k in range(j + 1, bd):
            y = unit_vec(bd, k)
            Ey = Em.col(k)
            val = vsub(vscale(v[j], Ey), vscale(v[k], Ex))
            coef = v[j] * dot(Ev, y) - v[k] * dot(Ev, x)
            br.add(xj, lay.index("b", k), vadd(X(val), E(coef)))
    for i in range(ad):
        a = unit_vec(ad, i)
        ai = lay.index("a", i)
        R1, R2 = r1.rho(a), r2.rho(a)
        for j in range(dd):
            rb = R1.col(j)
            br.add(ai, lay.index("d", j), vadd(lay.vec(d=rb), E(-dot(rb, h))))
        for j in range(bd):
            rx = R2.col(j)
            br.add(ai, lay.index("b", j), vadd(X(rx), E(-dot(rx, v))))
        br.add(f, ai, lay.vec(a=s.F2.col(i), d=R1.apply(h), b=R2.apply(v)))
    F1h = s.F1.apply(h)
    for j in range(dd):
        b = unit_vec(dd, j)
        bj = lay.index("d", j)
        bh = dot(b, h)
        for k in range(bd):
            x = unit_vec(bd, k)
            br.add(bj, lay.index("b", k), vadd(X(vscale(bh, Em.col(k))), E(bh * dot(Ev, x))))
        br.add(f, bj, lay.vec(d=s.F1.col(j), b=vscale(bh, Ev), e=dot(F1h, b)))
    return MetricLieAlgebra.from_brackets(n, br.table, _null_pair_metric(lay), lay.names)


def _g5(s: G5Spec) -> MetricLieAlgebra:
    lay = layout_for(s)
    n = lay.dim
    br = _Brackets(n)
    e, f = lay.index("e"), lay.index("f")
    r1, r2 = s.rep1, s.rep2
    d1, d2, a1, a2 = r1.ddim, r2.ddim, r1.adim, s.a2dim
    lam = s.lam
    E = lambda x: lay.vec(e=x)  # noqa: E731
    # w1 lies in d1 + d2; its d1 part collects lam h1 + F1 h1 - U h2
    w1_d1 = vsub(vadd(vscale(lam, s.h1), s.F1.apply(s.h1)), s.U.apply(s.h2))
    w1_d2 = s.F2.apply(s.h2)
    br.add(f, e, E(lam))
    for k in range(a1):
        a = unit_vec(a1, k)
        ak = lay.index("a1", k)
        R1, R2 = r1.rho(a), r2.rho(a)
        for j in range(d1):
            rb = R1.col(j)
            br.add(ak, lay.index("d1", j), vadd(lay.vec(d1=rb), E(-dot(s.h1, rb))))
        for j in range(d2):
            rb = R2.col(j)
            br.add(ak, lay.index("d2", j), vadd(lay.vec(d2=rb), E(-dot(s.h2, rb))))
        for j in range(a2):
            br.add(ak, lay.index("a2", j), E(-s.V[k, j]))
        br.add(f, ak, lay.vec(a1=s.G1.col(k), d1=R1.apply(s.h1), d2=R2.apply(s.h2), e=s.w2[k]))
    for i in range(d1):
        for j in range(d2):
            br.add(lay.index("d1", i), lay.index("d2", j), E(-s.U[i, j]))
        br.add(f, lay.index("d1", i), lay.vec(d1=s.F1.col(i), e=w1_d1[i]))
    for j in range(d2):
        br.add(
            f,
            lay.index("d2", j),
            lay.vec(d2=vadd(s.F2.col(j), vscale(lam, unit_vec(d2, j))), d1=s.U.col(j), e=w1_d2[j]),
        )
    for j in range(a2):
        br.add(
            f,
            lay.index("a2", j),
            lay.vec(a2=vadd(s.G2.col(j), vscale(lam, unit_vec(a2, j))), a1=s.V.col(j), e=s.w2[a1 + j]),
        )
    return MetricLieAlgebra.from_brackets(n, br.table, _null_pair_metric(lay), lay.names)


def _g6(s: G6Spec) -> MetricLieAlgebra:
    lay = layout_for(s)
    n = lay.dim
    br = _Brackets(n)
    e, f = lay.index("e"), lay.index("f")
    r = s.rep
    br.add(f, e, lay.vec(f=s.lam))
    for j in range(r.ddim):
        br.add(e, lay.index("d", j), lay.vec(d=s.E1.col(j)))
    for k in range(r.adim):
        ak = lay.index("a", k)
        br.add(e, ak, lay.vec(a=s.E2.col(k)))
        R = r.rho(unit_vec(r.adim, k))
        for j in range(r.ddim):
            br.add(ak, lay.index("d", j), lay.vec(d=R.col(j)))
    return MetricLieAlgebra.from_brackets(n, br.table, _null_pair_metric(lay), lay.names)
