"""Metric Lie algebras given by structure constants in a fixed basis."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .linalg import (
    ZERO,
    LinalgError,
    Matrix,
    Subspace,
    Vector,
    common_kernel,
    dot,
    inverse,
    is_zero_vec,
    kernel_basis,
    orthogonal_complement,
    rational,
    signature,
    span,
    unit_vec,
    vcomb,
    vec,
)
from .report import CheckReport, PreconditionError, Witness


@dataclass(frozen=True)
class MetricLieAlgebra:
    """Structure constants ``brackets[i][j]`` (coordinates of ``[e_i, e_j]``)
    together with a symmetric bilinear form ``metric``.

    The constructor stores exactly what it is given; use
    :func:`validate_algebra` to check antisymmetry, Jacobi and the metric.
    """

    dim: int
    brackets: tuple
    metric: Matrix
    basis: tuple = ()

    def __post_init__(self):
        n = self.dim
        if len(self.brackets) != n or any(len(row) != n for row in self.brackets):
            raise LinalgError("bracket table must be dim x dim")
        if any(len(v) != n for row in self.brackets for v in row):
            raise LinalgError("bracket vectors must have length dim")
        if self.metric.shape != (n, n):
            raise LinalgError("metric must be dim x dim")
        if self.basis and len(self.basis) != n:
            raise LinalgError("basis names must have length dim")
        if not self.basis:
            object.__setattr__(self, "basis", tuple(f"x{i}" for i in range(n)))

    @classmethod
    def from_brackets(
        cls,
        dim: int,
        brackets: Mapping[tuple, Sequence],
        metric,
        basis: Sequence[str] = (),
    ) -> "MetricLieAlgebra":
        """Build from the brackets ``[e_i, e_j]`` listed for some ordered pairs.

        Each given pair also fixes its mirror by antisymmetry; a pair given
        twice (in both orders) must be consistent.
        """
        table = [[None] * dim for _ in range(dim)]
        for (i, j), v in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise LinalgError(f"bracket index ({i},{j}) out of range")
            if i == j:
                if any(rational(a) for a in v):
                    raise LinalgError(f"[e_{i}, e_{i}] must vanish")
                continue
            v = vec(v)
            if len(v) != dim:
                raise LinalgError(f"bracket ({i},{j}) has length {len(v)}, expected {dim}")
            neg = tuple(-a for a in v)
            for (p, q, w) in ((i, j, v), (j, i, neg)):
                if table[p][q] is not None and table[p][q] != w:
                    raise LinalgError(f"inconsistent brackets for pair ({i},{j})")
                table[p][q] = w
        zero = (ZERO,) * dim
        full = tuple(tuple(table[i][j] if table[i][j] is not None else zero for j in range(dim)) for i in range(dim))
        G = metric if isinstance(metric, Matrix) else Matrix(metric)
        return cls(dim, full, G, tuple(basis))

    # basic operations
    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        n = self.dim
        terms = []
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if b:
                    terms.append((a * b, self.brackets[i][j]))
        return vcomb(terms, n)

    def ad(self, i: int) -> Matrix:
        """Matrix of ``ad_{e_i}`` (column j holds ``[e_i, e_j]``)."""
        return Matrix.from_columns(self.brackets[i]) if self.dim else Matrix.zeros(0)

    def ad_vec(self, x: Sequence) -> Matrix:
        n = self.dim
        cols = [vcomb(((a, self.brackets[i][j]) for i, a in enumerate(x)), n) for j in range(n)]
        return Matrix.from_columns(cols)

    def inner(self, x: Sequence, y: Sequence) -> Fraction:
        return dot(x, self.metric.apply(y))

    def unit(self, i: int) -> Vector:
        return unit_vec(self.dim, i)

    def index(self, name: str) -> int:
        return self.basis.index(name)

    def derived_algebra(self) -> Subspace:
        n = self.dim
        return span([self.brackets[i][j] for i in range(n) for j in range(i + 1, n)], n)

    def center(self) -> Subspace:
        return common_kernel([self.ad(j) for j in range(self.dim)], self.dim)

    def with_metric(self, metric) -> "MetricLieAlgebra":
        G = metric if isinstance(metric, Matrix) else Matrix(metric)
        return MetricLieAlgebra(self.dim, self.brackets, G, self.basis)

    def scaled_brackets(self, c) -> "MetricLieAlgebra":
        c = rational(c)
        return MetricLieAlgebra(
            self.dim,
            tuple(tuple(tuple(c * a for a in v) for v in row) for row in self.brackets),
            self.metric,
            self.basis,
        )

    def change_basis(self, P: Matrix) -> "MetricLieAlgebra":
        """Express the algebra in the basis given by the columns of ``P``."""
        n = self.dim
        Pinv = inverse(P)
        cols = P.columns()
        table = []
        for i in range(n):
            row = []
            for j in range(n):
                row.append(Pinv.apply(self.bracket(cols[i], cols[j])))
            table.append(tuple(row))
        G = P.T.matmul(self.metric).matmul(P)
        return MetricLieAlgebra(n, tuple(table), G, tuple(f"y{i}" for i in range(n)))

    def same_structure(self, other: "MetricLieAlgebra") -> bool:
        """Equal structure constants and metric (basis names ignored)."""
        return self.dim == other.dim and self.brackets == other.brackets and self.metric == other.metric

    def nonzero_brackets(self) -> dict:
        n = self.dim
        return {(i, j): self.brackets[i][j] for i in range(n) for j in range(i + 1, n) if any(self.brackets[i][j])}


# -- validation ----------------------------------------------------------------

def lorentz_kind(sig: tuple) -> str | None:
    """``"lorentzian"`` for (n-1, 1, 0), ``"lorentzian-up-to-sign"`` for
    (1, n-1, 0), otherwise ``None``."""
    p, m, z = sig
    if z:
        return None
    if m == 1:
        return "lorentzian"
    if p == 1:
        return "lorentzian-up-to-sign"
    return None


def jacobiator(alg: MetricLieAlgebra, i: int, j: int, k: int) -> Vector:
    n = alg.dim
    e = alg.unit
    c = alg.brackets
    return vcomb(
        (
            (1, alg.bracket(c[i][j], e(k))),
            (1, alg.bracket(c[j][k], e(i))),
            (1, alg.bracket(c[k][i], e(j))),
        ),
        n,
    )


def validate_algebra(alg: MetricLieAlgebra) -> CheckReport:
    """Antisymmetry, Jacobi, symmetry and nondegeneracy of the metric, signature."""
    n = alg.dim
    rep = CheckReport()
    c = alg.brackets

    bad = []
    for i in range(n):
        for j in range(i, n):
            r = tuple(a + b for a, b in zip(c[i][j], c[j][i]))
            if any(r):
                bad.append(Witness({"pair": [i, j]}, r))
    rep.add("antisymmetry", not bad, bad)

    bad = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                r = jacobiator(alg, i, j, k)
                if any(r):
                    bad.append(Witness({"triple": [i, j, k]}, r))
    rep.add("jacobi", not bad, bad)

    G = alg.metric
    bad = [
        Witness({"pair": [i, j]}, G[i, j] - G[j, i])
        for i in range(n)
        for j in range(i + 1, n)
        if G[i, j] != G[j, i]
    ]
    rep.add("metric_symmetric", not bad, bad)

    if bad:
        rep.add("metric_nondegenerate", False, note="metric is not symmetric")
        rep.add("signature", False, note="metric is not symmetric")
        return rep

    K = kernel_basis(G)
    rep.add(
        "metric_nondegenerate",
        K.dim == 0,
        [Witness({"kernel_vector": list(v)}) for v in K.basis[:1]],
    )
    sig = signature(G)
    kind = lorentz_kind(sig)
    rep.add("signature", sig[2] == 0, note=f"signature {sig}" + (f", {kind}" if kind else ""))
    rep.data["signature"] = list(sig)
    rep.flags["lorentzian"] = kind is not None
    return rep


# -- modular vector ----------------------------------------------------------------

@dataclass(frozen=True)
class ModularData:
    h: Vector
    h0: Vector | None = None

    @property
    def unimodular(self) -> bool:
        return is_zero_vec(self.h)


def ad_traces(alg: MetricLieAlgebra) -> Vector:
    n = alg.dim
    return tuple(sum((alg.brackets[i][j][j] for j in range(n)), ZERO) for i in range(n))


def modular_vector(alg: MetricLieAlgebra) -> ModularData:
    """The vector ``h`` with ``<u, h> = tr(ad_u)`` for all ``u``."""
    if not alg.metric.is_symmetric() or signature(alg.metric)[2]:
        raise PreconditionError("modular vector needs a nondegenerate symmetric metric")
    t = ad_traces(alg)
    return ModularData(inverse(alg.metric).apply(t))


def modular_properties_check(alg: MetricLieAlgebra) -> CheckReport:
    """Properties every flat metric Lie algebra's modular vector must have."""
    from .connection import flatness_report, levi_civita

    flat = flatness_report(alg)
    if not flat.passed:
        raise PreconditionError("modular properties are only asserted for flat algebras", flat)
    n = alg.dim
    prod = levi_civita(alg)
    md = modular_vector(alg)
    h = md.h
    rep = CheckReport()
    rep.data["h"] = list(h)

    D = alg.derived_algebra()
    rep.add("h_in_derived", D.contains(h), [] if D.contains(h) else [Witness({"h": list(h)})])
    bad = [Witness({"derived_basis": list(d)}, alg.inner(h, d)) for d in D.basis if alg.inner(h, d)]
    rep.add("h_orthogonal_to_derived", not bad, bad)

    Rh = prod.R_vec(h)
    GR = alg.metric.matmul(Rh)
    bad = [
        Witness({"pair": [i, j]}, GR[i, j] - GR[j, i])
        for i in range(n)
        for j in range(i + 1, n)
        if GR[i, j] != GR[j, i]
    ]
    rep.add("R_h_symmetric", not bad, bad)

    traces = ad_traces(alg)
    bad = []
    for i in range(n):
        r = traces[i] + prod.R(i).trace()
        if r:
            bad.append(Witness({"index": i}, r))
    rep.add("trace_ad_equals_minus_trace_R", not bad, bad)

    if not md.unimodular:
        hh = alg.inner(h, h)
        rep.add("h_null", hh == 0, [] if hh == 0 else [Witness({"h": list(h)}, hh)])
        hsq = prod.product(h, h)
        rep.add("h_dot_h_zero", not any(hsq), [] if not any(hsq) else [Witness({"h": list(h)}, hsq)])
    else:
        rep.add("h_null", True, note="unimodular")
        rep.add("h_dot_h_zero", True, note="unimodular")

    sig = signature(alg.metric)
    if lorentz_kind(sig) is not None and not md.unimodular:
        H = span([h], n)
        perp = orthogonal_complement(alg.metric, H)
        bad = []
        for x in perp.basis:
            for label, y in (("x.h", prod.product(x, h)), ("h.x", prod.product(h, x))):
                if not H.contains(y):
                    bad.append(Witness({"x": list(x), "product": label}, y))
        rep.add("span_h_ideal_in_h_perp", not bad, bad)
    else:
        rep.add("span_h_ideal_in_h_perp", True, note="vacuous")
    rep.flags["unimodular"] = md.unimodular
    return rep


# -- fingerprint -----------------------------------------------------------------

@dataclass(frozen=True)
class Fingerprint:
    derived: tuple
    lower_central: tuple
    center_dim: int
    signature: tuple
    unimodular: bool


def _series(alg: MetricLieAlgebra, step) -> tuple:
    n = alg.dim
    cur = Subspace(n, tuple(unit_vec(n, i) for i in range(n)))
    dims = [cur.dim]
    while cur.dim:
        nxt = step(cur)
        dims.append(nxt.dim)
        if nxt.dim == cur.dim:
            break
        cur = nxt
    return tuple(dims)


def derived_series_dims(alg: MetricLieAlgebra) -> tuple:
    """Dimensions of g, [g,g], [[g,g],[g,g]], ... ending at 0 or at the
    first repeated value (which is included)."""
    n = alg.dim

    def step(S: Subspace) -> Subspace:
        B = S.basis
        return span([alg.bracket(B[i], B[j]) for i in range(len(B)) for j in range(i + 1, len(B))], n)

    return _series(alg, step)


def lower_central_dims(alg: MetricLieAlgebra) -> tuple:
    n = alg.dim

    def step(S: Subspace) -> Subspace:
        return span([alg.bracket(alg.unit(i), y) for i in range(n) for y in S.basis], n)

    return _series(alg, step)


def fingerprint(alg: MetricLieAlgebra) -> Fingerprint:
    sig = signature(alg.metric)
    uni = is_zero_vec(ad_traces(alg))
    return Fingerprint(derived_series_dims(alg), lower_central_dims(alg), alg.center().dim, sig, uni)
