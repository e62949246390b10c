"""Extension data ``(E, F, A, u, v, w, alpha, lam)`` realizing families g2-g6.

Feeding :func:`extension_data` into
:func:`~lorflat.models.extension.generalized_extension` reproduces the
family built by :func:`~lorflat.models.builders.build_model`, in the same
basis order.
"""

from __future__ import annotations

from ..connection import ProductTable
from ..report import CheckReport
from ..linalg import ONE, ZERO, Matrix, unit_vec, vadd, vscale, vsub
from .extension import ExtensionData
from .layout import Layout
from .builders import layout_for
from .specs import G2Spec, G3Spec, G4Spec, G5Spec, G6Spec, ModelSpec


def _hlayout(spec: ModelSpec) -> Layout:
    lay = layout_for(spec)
    return Layout(lay.blocks[1:-1], lay.names[1:-1])


def _mat_from_cols(cols, m: int) -> Matrix:
    return Matrix.from_columns(cols, rows=m) if m else Matrix.zeros(0)


def extension_data(spec: ModelSpec) -> ExtensionData:
    """Data of the generalized double extension underlying a g2-g6 instance."""
    fn = {"g2": _g2, "g3": _g3, "g4": _g4, "g5": _g5, "g6": _g6}.get(spec.family)
    if fn is None:
        raise ValueError(f"family {spec.family} is not a null extension")
    return fn(spec)


def _milnor_star(hl: Layout, pieces) -> ProductTable:
    """Product with ``a * b = rho(a) b`` for each ``(a_block, d_block, rep)``."""
    m = hl.dim
    entries = {}
    for a_block, d_block, rep in pieces:
        for k in range(rep.adim):
            R = rep.rho(unit_vec(rep.adim, k))
            for j in range(rep.ddim):
                col = R.col(j)
                if any(col):
                    key = (hl.index(a_block, k), hl.index(d_block, j))
                    cur = entries.get(key, (ZERO,) * m)
                    entries[key] = vadd(cur, hl.vec(**{d_block: col}))
    return ProductTable.from_dict(m, entries)


def _g2(s: G2Spec) -> ExtensionData:
    hl = _hlayout(s)
    m = hl.dim
    r = s.rep
    na = r.adim - 1
    lam, c = s.lam, s.unorm2
    tdir = unit_vec(r.adim, na)
    rho_t = r.rho(tdir)
    nfull = tuple(s.n) + (ZERO,)
    rho_n = r.rho(nfull)
    h = s.h
    G = Matrix.diag([ONE] * (m - 1) + [c])
    # acting space A + R t sits after d; rep coordinates match
    star = _milnor_star(hl, [("A", "d", _Shift(r, na)), ("u", "d", _Tail(r))])
    if s.form == "table":
        k = ONE
        uvec = hl.vec(u=ONE / c)
        scale = ONE
    else:
        k = c
        uvec = hl.vec(u=ONE)
        scale = ONE / c
    cols = []
    for j in range(r.ddim):
        cols.append((ZERO,) * m)
    for q in range(na):
        cols.append(hl.vec(d=r.rho(unit_vec(r.adim, q)).apply(h)))
    At = hl.vec(d=vadd(rho_t.apply(h), vscale(k, h)), A=tuple(s.n), u=-lam)
    cols.append(At)
    A = _mat_from_cols(cols, m)
    Fd = (rho_n.scale(-1) + rho_t.scale(lam)).scale(scale)
    F = Matrix.block_diag(Fd, Matrix.zeros(r.adim))
    w1 = vadd(vsub(vscale(lam, h), vscale(scale, rho_n.apply(h))), vscale(lam * scale, rho_t.apply(h)))
    w = hl.vec(d=w1, A=vscale(lam * scale, s.n), u=-lam * lam * scale)
    z = (ZERO,) * m
    return ExtensionData(G, star, Matrix.zeros(m), F, A, uvec, z, w, ZERO, lam, hl.names)


class _Shift:
    """Restriction of a rep to the first ``k`` acting coordinates."""

    def __init__(self, rep, k):
        self.rep, self.adim, self.ddim = rep, k, rep.ddim

    def rho(self, a):
        return self.rep.rho(tuple(a) + (ZERO,) * (self.rep.adim - self.adim))


class _Tail:
    """Restriction of a rep to its last acting coordinate."""

    def __init__(self, rep):
        self.rep, self.adim, self.ddim = rep, 1, rep.ddim

    def rho(self, a):
        return self.rep.rho((ZERO,) * (self.rep.adim - 1) + tuple(a))


def _g3(s: G3Spec) -> ExtensionData:
    hl = _hlayout(s)
    m = hl.dim
    r = s.rep
    star = _milnor_star(hl, [("a", "d", r)])
    Rh = _mat_from_cols([r.rho(unit_vec(r.adim, k)).apply(s.h) for k in range(r.adim)], r.ddim) \
        if r.ddim else Matrix.zeros(0, r.adim)
    A = Matrix.blocks([[s.A1, Rh], [Matrix.zeros(r.adim, r.ddim), s.A2]])
    F = Matrix.block_diag(s.F1, s.F2)
    w = hl.vec(d=vsub(s.F1.apply(s.h), s.A1.apply(s.h)), a=s.w2)
    z = (ZERO,) * m
    return ExtensionData(Matrix.identity(m), star, Matrix.zeros(m), F, A, z, z, w, ZERO, ZERO, hl.names)


def _g4(s: G4Spec) -> ExtensionData:
    hl = _hlayout(s)
    m = hl.dim
    r1, r2 = s.rep1, s.rep2
    ad, dd, bd = r1.adim, r1.ddim, r2.ddim
    Em, v0, h = s.E, s.v, s.h
    Ev = Em.apply(v0)
    entries = {}
    star1 = _milnor_star(hl, [("a", "d", r1), ("a", "b", r2)])
    for i in range(m):
        for j in range(m):
            if any(star1.prod[i][j]):
                entries[(i, j)] = star1.prod[i][j]
    # L_d = <d,h> E and L_x = <x,v0> E, both acting on b
    for k in range(bd):
        Ecol = hl.vec(b=Em.col(k))
        xk = hl.index("b", k)
        for j in range(dd):
            if h[j]:
                entries[(hl.index("d", j), xk)] = vscale(h[j], Ecol)
        for j in range(bd):
            if v0[j]:
                entries[(hl.index("b", j), xk)] = vscale(v0[j], Ecol)
    star = ProductTable.from_dict(m, entries)
    cols = []
    for k in range(ad):
        a = unit_vec(ad, k)
        cols.append(hl.vec(d=r1.rho(a).apply(h), b=r2.rho(a).apply(v0)))
    for j in range(dd):
        cols.append(hl.vec(b=vscale(h[j], Ev)))
    for j in range(bd):
        cols.append(hl.vec(b=vscale(v0[j], Ev)))
    A = _mat_from_cols(cols, m)
    F = Matrix.block_diag(s.F2, s.F1, s.F3)
    w = hl.vec(d=s.F1.apply(h), b=s.F3.apply(v0))
    E = Matrix.block_diag(Matrix.zeros(ad + dd), Em)
    z = (ZERO,) * m
    return ExtensionData(Matrix.identity(m), star, E, F, A, z, hl.vec(b=Ev), w, ZERO, ZERO, hl.names)


def _g5(s: G5Spec) -> ExtensionData:
    hl = _hlayout(s)
    m = hl.dim
    r1, r2 = s.rep1, s.rep2
    d1, d2, a1, a2 = r1.ddim, r2.ddim, r1.adim, s.a2dim
    lam = s.lam
    star = _milnor_star(hl, [("a1", "d1", r1), ("a1", "d2", r2)])
    cols = [(ZERO,) * m for _ in range(d1)]
    for j in range(d2):
        cols.append(hl.vec(d1=s.U.col(j), d2=vscale(lam, unit_vec(d2, j))))
    for k in range(a1):
        a = unit_vec(a1, k)
        cols.append(hl.vec(d1=r1.rho(a).apply(s.h1), d2=r2.rho(a).apply(s.h2)))
    for j in range(a2):
        cols.append(hl.vec(a1=s.V.col(j), a2=vscale(lam, unit_vec(a2, j))))
    A = _mat_from_cols(cols, m)
    F = Matrix.block_diag(s.F1, s.F2, s.G1, s.G2)
    w1_d1 = vsub(vadd(vscale(lam, s.h1), s.F1.apply(s.h1)), s.U.apply(s.h2))
    w = hl.vec(d1=w1_d1, d2=s.F2.apply(s.h2), a1=s.w2[:a1], a2=s.w2[a1:])
    z = (ZERO,) * m
    return ExtensionData(Matrix.identity(m), star, Matrix.zeros(m), F, A, z, z, w, ZERO, lam, hl.names)


def _g6(s: G6Spec) -> ExtensionData:
    hl = _hlayout(s)
    m = hl.dim
    star = _milnor_star(hl, [("a", "d", s.rep)])
    E = Matrix.block_diag(s.E1, s.E2)
    z = (ZERO,) * m
    Z = Matrix.zeros(m)
    return ExtensionData(Matrix.identity(m), star, E, Z, Z, z, z, z, s.lam, ZERO, hl.names)


def g3_novikov_conditions(s: G3Spec, literal: bool = False) -> CheckReport:
    """Conditions under which a g3 instance is a Novikov algebra:
    ``A1 = 0``, ``A2^2 = 0``, ``Im F2`` and ``Im A2`` in ``ker rho``,
    ``A2 F2 = F2 A2 = 0``, ``rho(w2) = 0`` and ``A2 w2 = 0``.

    ``f.f = -w`` forces ``L_w = 0``, hence ``rho(w2) = 0``.  With
    ``literal=True`` the weaker ``rho(w2) h = 0`` is used instead, which is
    not sufficient (kept to exhibit counterexamples)."""
    r = s.rep
    rep = CheckReport()
    rep.add("A1=0", s.A1.is_zero())
    rep.add("A2^2=0", s.A2.matmul(s.A2).is_zero())
    cols_F = [s.F2.col(k) for k in range(r.adim)]
    cols_A = [s.A2.col(k) for k in range(r.adim)]
    rep.add("Im F2 in ker rho", all(r.rho(c).is_zero() for c in cols_F))
    rep.add("Im A2 in ker rho", all(r.rho(c).is_zero() for c in cols_A))
    rep.add("A2F2=0", s.A2.matmul(s.F2).is_zero())
    rep.add("F2A2=0", s.F2.matmul(s.A2).is_zero())
    if literal:
        rep.add("rho(w2)h=0", not any(r.rho(s.w2).apply(s.h)))
    else:
        rep.add("rho(w2)=0", r.rho(s.w2).is_zero())
    rep.add("A2w2=0", not any(s.A2.apply(s.w2)))
    rep.flags["novikov"] = rep.passed
    return rep
