"""Parameter bundles for the six model families and their validation.

Each family is a dataclass; :func:`spec_from_dict` and ``to_dict`` convert
to and from the JSON layout ``{"family": "g3", "params": {...}}``.
Conditions are evaluated on basis vectors of the acting spaces, which is
enough because every condition is linear in the quantified vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Union

from ..linalg import (
    ONE,
    ZERO,
    LinalgError,
    Matrix,
    Vector,
    commutator,
    det,
    fmt_rational,
    rank,
    rational,
    unit_vec,
    vadd,
    vec,
)
from ..report import CheckReport, Witness
from .rotation import RotationRep, rep_from_dict

FAMILIES = ("g1", "g2", "g3", "g4", "g5", "g6")


class SpecError(ValueError):
    """Malformed model parameters (wrong keys, shapes or literals)."""


def _vec(value, n: int, name: str) -> Vector:
    v = vec(value if value is not None else [0] * n)
    if len(v) != n:
        raise SpecError(f"{name}: expected length {n}, got {len(v)}")
    return v


def _mat(value, rows: int, cols: int, name: str) -> Matrix:
    if value is None:
        return Matrix.zeros(rows, cols)
    if isinstance(value, Matrix):
        m = value
    elif rows == 0:
        if value not in ([], [[]]):
            raise SpecError(f"{name}: expected an empty matrix")
        return Matrix.zeros(0, cols)
    else:
        try:
            m = Matrix(value)
        except LinalgError as exc:
            raise SpecError(f"{name}: {exc}") from None
        if cols == 0 and m.rows == rows and m.cols == 0:
            return Matrix.zeros(rows, 0)
    if m.shape != (rows, cols):
        raise SpecError(f"{name}: expected shape {(rows, cols)}, got {m.shape}")
    return m


def _q(value, name: str) -> Fraction:
    try:
        return rational(value)
    except LinalgError as exc:
        raise SpecError(f"{name}: {exc}") from None


def _rep(value, name: str, allow_zero: bool = False) -> RotationRep:
    if isinstance(value, RotationRep):
        return value
    if not isinstance(value, dict) or "adim" not in value:
        raise SpecError(f"{name}: expected {{'uvecs': [...], 'adim': n}}")
    try:
        return rep_from_dict(value, allow_zero=allow_zero)
    except LinalgError as exc:
        raise SpecError(f"{name}: {exc}") from None


def _mjson(m: Matrix) -> list:
    return [[fmt_rational(a) for a in r] for r in m]


def _vjson(v) -> list:
    return [fmt_rational(a) for a in v]


@dataclass(frozen=True)
class G1Spec:
    """Timelike family: ``R e + a + d + Z0 + Z1`` with ``<e,e> = -1``."""

    lambdas: tuple
    mus: tuple
    rep: RotationRep
    z1dim: int = 0
    family: str = field(default="g1", init=False)

    @property
    def dim(self) -> int:
        return 1 + self.rep.adim + self.rep.ddim + 2 * len(self.mus) + self.z1dim

    @classmethod
    def from_params(cls, p: dict) -> "G1Spec":
        rep = _rep(p.get("rep", {"uvecs": [], "adim": 0}), "rep")
        lambdas = tuple(_q(x, "lambdas") for x in p.get("lambdas", []))
        mus = tuple(_q(x, "mus") for x in p.get("mus", []))
        z1 = int(p.get("z1dim", 0))
        if z1 < 0:
            raise SpecError("z1dim must be nonnegative")
        return cls(lambdas, mus, rep, z1)

    def params(self) -> dict:
        return {
            "lambdas": _vjson(self.lambdas),
            "mus": _vjson(self.mus),
            "rep": self.rep.to_dict(),
            "z1dim": self.z1dim,
        }


@dataclass(frozen=True)
class G2Spec:
    """Unimodular family with ``u != 0``: ``h = d + A + R u``.

    ``rep`` acts through ``A + R u`` with the u-direction as last
    coordinate.  ``unorm2`` is the squared length of the u basis vector.
    With ``form="table"`` the parameters are read in the normalized layout;
    with ``form="proposition"`` ``u`` and ``n`` are read before the
    substitution ``u -> u/|u|^2``, ``n -> n/|u|^2``.
    """

    lam: Fraction
    h: Vector
    n: Vector
    rep: RotationRep
    unorm2: Fraction = ONE
    form: str = "table"
    family: str = field(default="g2", init=False)

    @property
    def dim(self) -> int:
        return 2 + self.rep.ddim + self.rep.adim

    @classmethod
    def from_params(cls, p: dict) -> "G2Spec":
        rep = _rep(p.get("rep"), "rep")
        if rep.adim < 1:
            raise SpecError("rep must act through at least the u-direction (adim >= 1)")
        form = p.get("form", "table")
        if form not in ("table", "proposition"):
            raise SpecError("form must be 'table' or 'proposition'")
        return cls(
            _q(p.get("lambda", 0), "lambda"),
            _vec(p.get("h"), rep.ddim, "h"),
            _vec(p.get("n"), rep.adim - 1, "n"),
            rep,
            _q(p.get("unorm2", 1), "unorm2"),
            form,
        )

    def params(self) -> dict:
        return {
            "lambda": fmt_rational(self.lam),
            "h": _vjson(self.h),
            "n": _vjson(self.n),
            "rep": self.rep.to_dict(),
            "unorm2": fmt_rational(self.unorm2),
            "form": self.form,
        }


@dataclass(frozen=True)
class G3Spec:
    """Unimodular family with ``E = 0`` and ``u = 0``: ``h = d + a``."""

    rep: RotationRep
    h: Vector
    A1: Matrix
    A2: Matrix
    F1: Matrix
    F2: Matrix
    w2: Vector
    family: str = field(default="g3", init=False)

    @property
    def dim(self) -> int:
        return 2 + self.rep.ddim + self.rep.adim

    @classmethod
    def from_params(cls, p: dict) -> "G3Spec":
        rep = _rep(p.get("rep"), "rep")
        d, a = rep.ddim, rep.adim
        return cls(
            rep,
            _vec(p.get("h"), d, "h"),
            _mat(p.get("A1"), d, d, "A1"),
            _mat(p.get("A2"), a, a, "A2"),
            _mat(p.get("F1"), d, d, "F1"),
            _mat(p.get("F2"), a, a, "F2"),
            _vec(p.get("w2"), a, "w2"),
        )

    def params(self) -> dict:
        return {
            "rep": self.rep.to_dict(),
            "h": _vjson(self.h),
            "A1": _mjson(self.A1),
            "A2": _mjson(self.A2),
            "F1": _mjson(self.F1),
            "F2": _mjson(self.F2),
            "w2": _vjson(self.w2),
        }


@dataclass(frozen=True)
class G4Spec:
    """Unimodular family with ``E != 0``: ``h = a + d + b`` (``b`` of even
    dimension at least 2 carries the invertible block ``E``).

    ``v`` is the vector ``v0`` of ``b``; the extension vector is ``E v0``.
    """

    rep1: RotationRep
    rep2: RotationRep
    h: Vector
    v: Vector
    E: Matrix
    F1: Matrix
    F2: Matrix
    F3: Matrix
    family: str = field(default="g4", init=False)

    @property
    def dim(self) -> int:
        return 2 + self.rep1.adim + self.rep1.ddim + self.rep2.ddim

    @classmethod
    def from_params(cls, p: dict) -> "G4Spec":
        rep1 = _rep(p.get("rep1"), "rep1")
        rep2 = _rep(p.get("rep2"), "rep2", allow_zero=True)
        if rep2.adim != rep1.adim:
            raise SpecError("rep1 and rep2 must act through the same space")
        a, d, b = rep1.adim, rep1.ddim, rep2.ddim
        return cls(
            rep1,
            rep2,
            _vec(p.get("h"), d, "h"),
            _vec(p.get("v"), b, "v"),
            _mat(p.get("E"), b, b, "E"),
            _mat(p.get("F1"), d, d, "F1"),
            _mat(p.get("F2"), a, a, "F2"),
            _mat(p.get("F3"), b, b, "F3"),
        )

    def params(self) -> dict:
        return {
            "rep1": self.rep1.to_dict(),
            "rep2": self.rep2.to_dict(),
            "h": _vjson(self.h),
            "v": _vjson(self.v),
            "E": _mjson(self.E),
            "F1": _mjson(self.F1),
            "F2": _mjson(self.F2),
            "F3": _mjson(self.F3),
        }


@dataclass(frozen=True)
class G5Spec:
    """Non-unimodular family with ``tr(A) + lambda != 0``:
    ``h = d1 + d2 + a1 + a2``, both reps acting through ``a1``."""

    lam: Fraction
    rep1: RotationRep
    rep2: RotationRep
    a2dim: int
    h1: Vector
    h2: Vector
    F1: Matrix
    F2: Matrix
    G1: Matrix
    G2: Matrix
    U: Matrix
    V: Matrix
    w2: Vector
    family: str = field(default="g5", init=False)

    @property
    def dim(self) -> int:
        return 2 + self.rep1.ddim + self.rep2.ddim + self.rep1.adim + self.a2dim

    @classmethod
    def from_params(cls, p: dict) -> "G5Spec":
        rep1 = _rep(p.get("rep1"), "rep1")
        rep2 = _rep(p.get("rep2"), "rep2")
        if rep2.adim != rep1.adim:
            raise SpecError("rep1 and rep2 must act through the same space a1")
        a2 = int(p.get("a2dim", 0))
        if a2 < 0:
            raise SpecError("a2dim must be nonnegative")
        d1, d2, a1 = rep1.ddim, rep2.ddim, rep1.adim
        return cls(
            _q(p.get("lambda", 0), "lambda"),
            rep1,
            rep2,
            a2,
            _vec(p.get("h1"), d1, "h1"),
            _vec(p.get("h2"), d2, "h2"),
            _mat(p.get("F1"), d1, d1, "F1"),
            _mat(p.get("F2"), d2, d2, "F2"),
            _mat(p.get("G1"), a1, a1, "G1"),
            _mat(p.get("G2"), a2, a2, "G2"),
            _mat(p.get("U"), d1, d2, "U"),
            _mat(p.get("V"), a1, a2, "V"),
            _vec(p.get("w2"), a1 + a2, "w2"),
        )

    def params(self) -> dict:
        return {
            "lambda": fmt_rational(self.lam),
            "rep1": self.rep1.to_dict(),
            "rep2": self.rep2.to_dict(),
            "a2dim": self.a2dim,
            "h1": _vjson(self.h1),
            "h2": _vjson(self.h2),
            "F1": _mjson(self.F1),
            "F2": _mjson(self.F2),
            "G1": _mjson(self.G1),
            "G2": _mjson(self.G2),
            "U": _mjson(self.U),
            "V": _mjson(self.V),
            "w2": _vjson(self.w2),
        }


@dataclass(frozen=True)
class G6Spec:
    """Non-unimodular family with ``alpha != 0``: ``h = d + a``.

    ``lam`` is the coefficient in ``[f, e] = lam f``.
    """

    lam: Fraction
    rep: RotationRep
    E1: Matrix
    E2: Matrix
    family: str = field(default="g6", init=False)

    @property
    def dim(self) -> int:
        return 2 + self.rep.ddim + self.rep.adim

    @classmethod
    def from_params(cls, p: dict) -> "G6Spec":
        rep = _rep(p.get("rep"), "rep")
        return cls(
            _q(p.get("lambda", 0), "lambda"),
            rep,
            _mat(p.get("E1"), rep.ddim, rep.ddim, "E1"),
            _mat(p.get("E2"), rep.adim, rep.adim, "E2"),
        )

    def params(self) -> dict:
        return {
            "lambda": fmt_rational(self.lam),
            "rep": self.rep.to_dict(),
            "E1": _mjson(self.E1),
            "E2": _mjson(self.E2),
        }


ModelSpec = Union[G1Spec, G2Spec, G3Spec, G4Spec, G5Spec, G6Spec]

_CLASSES = {"g1": G1Spec, "g2": G2Spec, "g3": G3Spec, "g4": G4Spec, "g5": G5Spec, "g6": G6Spec}


def spec_from_dict(d: dict) -> ModelSpec:
    if not isinstance(d, dict) or "family" not in d:
        raise SpecError("model spec must be an object with a 'family' key")
    fam = str(d["family"]).lower()
    if fam not in _CLASSES:
        raise SpecError(f"unknown family {d['family']!r}")
    params = d.get("params", {})
    if not isinstance(params, dict):
        raise SpecError("'params' must be an object")
    return _CLASSES[fam].from_params(params)


def spec_to_dict(spec: ModelSpec) -> dict:
    return {"family": spec.family, "params": spec.params()}


# -- validation ------------------------------------------------------------------

def _each_basis(n: int, fn: Callable[[Vector], Any], label: str = "a") -> list:
    """Witnesses for basis vectors ``k`` where ``fn(e_k)`` is nonzero."""
    out = []
    for k in range(n):
        r = fn(unit_vec(n, k))
        nonzero = (not r.is_zero()) if isinstance(r, Matrix) else any(r)
        if nonzero:
            out.append(Witness({label: k}, r))
    return out


def _check_commuting(rep: RotationRep, rep_name: str, report: CheckReport, name: str) -> None:
    Rs = rep.rho_basis()
    bad = []
    for i in range(len(Rs)):
        for j in range(i + 1, len(Rs)):
            C = commutator(Rs[i], Rs[j])
            if not C.is_zero():
                bad.append(Witness({"pair": [i, j]}, C))
    report.add(name, not bad, bad)


def _check_commutes_with(M: Matrix, rep: RotationRep, report: CheckReport, name: str) -> None:
    bad = _each_basis(rep.adim, lambda a: commutator(M, rep.rho(a)))
    report.add(name, not bad, bad)


def _check_kernel(rep: RotationRep, report: CheckReport, name: str) -> None:
    ok = rep.kernel_trivial
    report.add(name, ok, [] if ok else [Witness({"zero_uvec_blocks": [i for i, u in enumerate(rep.uvecs) if not any(u)]})])


def _check_skew(M: Matrix, report: CheckReport, name: str) -> None:
    S = M + M.T
    report.add(name, S.is_zero(), [] if S.is_zero() else [Witness({"matrix": name.split()[0]}, S)])


def _check_zero_matrix(M: Matrix, report: CheckReport, name: str, where: dict | None = None) -> None:
    report.add(name, M.is_zero(), [] if M.is_zero() else [Witness(where or {}, M)])


def _check_nonzero_uvecs(rep: RotationRep, report: CheckReport, name: str) -> None:
    bad = [Witness({"block": i}) for i, u in enumerate(rep.uvecs) if not any(u)]
    report.add(name, not bad, bad)


def validate_model_params(spec: ModelSpec) -> CheckReport:
    """Evaluate every condition of the family as a named check."""
    rep = CheckReport()
    fn = {
        "g1": _validate_g1,
        "g2": _validate_g2,
        "g3": _validate_g3,
        "g4": _validate_g4,
        "g5": _validate_g5,
        "g6": _validate_g6,
    }[spec.family]
    fn(spec, rep)
    rep.data["family"] = spec.family
    rep.data["dim"] = spec.dim
    return rep


def _validate_g1(s: G1Spec, rep: CheckReport) -> None:
    _check_nonzero_uvecs(s.rep, rep, "u_i != 0")
    ok = s.rep.spans
    rep.add("a = span{u_1..u_r}", ok, [] if ok else [Witness({"rank": rank(Matrix(s.rep.uvecs)) if s.rep.uvecs else 0, "adim": s.rep.adim})])
    ok = len(s.lambdas) == s.rep.r
    rep.add("one lambda per block", ok, [] if ok else [Witness({"lambdas": len(s.lambdas), "blocks": s.rep.r})])
    for name, seq in (("0 <= lambda_1 <= ... <= lambda_r", s.lambdas), ("0 <= mu_1 <= ... <= mu_s", s.mus)):
        bad = [Witness({"index": i}, x) for i, x in enumerate(seq) if x < 0]
        bad += [Witness({"pair": [i, i + 1]}, seq[i] - seq[i + 1]) for i in range(len(seq) - 1) if seq[i] > seq[i + 1]]
        rep.add(name, not bad, bad)


def _validate_g2(s: G2Spec, rep: CheckReport) -> None:
    _check_commuting(s.rep, "rep", rep, "[rho(a),rho(b)]=0")
    _check_kernel(s.rep, rep, "cap ker rho(a)={0}")
    rep.add("dim d=2r", s.rep.ddim % 2 == 0)
    rep.add("|u|^2 > 0", s.unorm2 > 0, [] if s.unorm2 > 0 else [Witness({"unorm2": 0}, s.unorm2)])


def _validate_g3(s: G3Spec, rep: CheckReport) -> None:
    r = s.rep
    _check_commuting(r, "rep", rep, "[rho(a),rho(b)]=0")
    _check_commutes_with(s.F1, r, rep, "[F1,rho(a)]=0")
    _check_commutes_with(s.A1, r, rep, "[A1,rho(a)]=0")
    bad = _each_basis(r.adim, lambda a: r.rho(vadd(s.F2.apply(a), s.A2.apply(a))))
    rep.add("rho(F2(a)+A2(a))=0", not bad, bad)
    _check_kernel(r, rep, "cap ker rho(a)={0}")
    rep.add("dim d=2r", r.ddim % 2 == 0)
    _check_skew(s.F1, rep, "F1 in so(d)")
    _check_skew(s.F2, rep, "F2 in so(a)")
    for i, (F, A) in enumerate(((s.F1, s.A1), (s.F2, s.A2)), start=1):
        R = commutator(F, A) - A.matmul(A)
        _check_zero_matrix(R, rep, f"[F{i},A{i}]=A{i}^2")



def _validate_g4(s: G4Spec, rep: CheckReport) -> None:
    r1, r2 = s.rep1, s.rep2
    _check_nonzero_uvecs(r1, rep, "rho1 blocks nonzero")
    _check_commuting(r1, "rep1", rep, "[rho1(a),rho1(b)]=0")
    _check_commuting(r2, "rep2", rep, "[rho2(a),rho2(b)]=0")
    _check_commutes_with(s.F1, r1, rep, "[F1,rho1(a)]=0")
    _check_commutes_with(s.F3, r2, rep, "[F3,rho2(a)]=0")
    _check_commutes_with(s.E, r2, rep, "[E,rho2(a)]=0")
    b = r2.ddim
    ok = b > 0 and det(s.E) != 0
    rep.add("det(E)!=0", ok, [] if ok else [Witness({"dim_b": b}, det(s.E) if b else ZERO)])
    bad = _each_basis(r1.adim, lambda a: r1.rho(s.F2.apply(a)))
    rep.add("rho1(F2(a))=0", not bad, bad)
    bad = _each_basis(r1.adim, lambda a: r2.rho(s.F2.apply(a)))
    rep.add("rho2(F2(a))=0", not bad, bad)
    _check_zero_matrix(commutator(s.E, s.F3), rep, "[E,F3]=0")
    _check_kernel(r1, rep, "cap ker rho1(a)={0}")
    rep.add("dim d=2r", r1.ddim % 2 == 0)
    rep.add("dim b=2s>=2", b >= 2 and b % 2 == 0, [] if b >= 2 else [Witness({"dim_b": b})])
    _check_skew(s.E, rep, "E in so(b)")
    _check_skew(s.F1, rep, "F1 in so(d)")
    _check_skew(s.F2, rep, "F2 in so(a)")
    _check_skew(s.F3, rep, "F3 in so(b)")


def _validate_g5(s: G5Spec, rep: CheckReport) -> None:
    r1, r2 = s.rep1, s.rep2
    rep.add("lambda!=0", s.lam != 0, [] if s.lam else [Witness({"lambda": 0})])
    _check_commuting(r1, "rep1", rep, "[rho1(a),rho1(b)]=0")
    _check_commuting(r2, "rep2", rep, "[rho2(a),rho2(b)]=0")
    _check_commutes_with(s.F1, r1, rep, "[F1,rho1(a)]=0")
    _check_commutes_with(s.F2, r2, rep, "[F2,rho2(a)]=0")
    bad = _each_basis(r1.adim, lambda a: r1.rho(s.G1.apply(a)))
    rep.add("rho1(G1(a))=0", not bad, bad)
    bad = _each_basis(r1.adim, lambda a: r2.rho(s.G1.apply(a)))
    rep.add("rho2(G1(a))=0", not bad, bad)
    bad = _each_basis(s.a2dim, lambda a: r1.rho(s.V.apply(a)))
    rep.add("rho1(V(a))=0", not bad, bad)
    _check_kernel(r1, rep, "cap ker rho1(a)={0}")
    _check_kernel(r2, rep, "cap ker rho2(a)={0}")
    _check_zero_matrix(s.V.matmul(s.G2) - s.G1.matmul(s.V), rep, "VG2=G1V")
    _check_zero_matrix(s.U.matmul(s.F2) - s.F1.matmul(s.U), rep, "UF2=F1U")
    bad = _each_basis(r1.adim, lambda a: s.U.matmul(r2.rho(a)) - r1.rho(a).matmul(s.U))
    rep.add("U rho2(a)=rho1(a) U", not bad, bad)
    rep.add("dim d_i=2r_i", r1.ddim % 2 == 0 and r2.ddim % 2 == 0)
    _check_skew(s.F1, rep, "F1 in so(d1)")
    _check_skew(s.F2, rep, "F2 in so(d2)")
    _check_skew(s.G1, rep, "G1 in so(a1)")
    _check_skew(s.G2, rep, "G2 in so(a2)")


def _validate_g6(s: G6Spec, rep: CheckReport) -> None:
    r = s.rep
    rep.add("lambda!=0", s.lam != 0, [] if s.lam else [Witness({"lambda": 0})])
    _check_commuting(r, "rep", rep, "[rho(a),rho(b)]=0")
    _check_commutes_with(s.E1, r, rep, "[E1,rho(a)]=0")
    bad = _each_basis(r.adim, lambda a: r.rho(s.E2.apply(a)))
    rep.add("rho(E2(a))=0", not bad, bad)
    _check_kernel(r, rep, "cap ker rho(a)={0}")
    rep.add("dim d=2r", r.ddim % 2 == 0)
    _check_skew(s.E1, rep, "E1 in so(d)")
    _check_skew(s.E2, rep, "E2 in so(a)")
