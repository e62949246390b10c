"""The full check battery run by ``lorflat check``."""

from __future__ import annotations

from typing import Sequence

from .algebra import MetricLieAlgebra, lorentz_kind, modular_properties_check, validate_algebra
from .connection import flatness_report, levi_civita, novikov_check
from .linalg import LinalgError, rational, signature
from .report import CheckReport, PreconditionError, Witness
from .structure import NULL, TIMELIKE, dichotomy_witness, kundt_verify


def parse_witness(alg: MetricLieAlgebra, text: str) -> tuple:
    """A basis name (``"e"``) or comma-separated coordinates (``"1,0,-1/2"``)."""
    if text in alg.basis:
        return alg.unit(alg.index(text))
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != alg.dim:
        raise ValueError(f"witness {text!r} is neither a basis name nor {alg.dim} coordinates")
    try:
        return tuple(rational(p) for p in parts)
    except LinalgError as exc:
        raise ValueError(str(exc)) from None


def _timelike_report(alg: MetricLieAlgebra, e: Sequence) -> CheckReport:
    prod = levi_civita(alg)
    rep = CheckReport()
    norm = alg.inner(e, e)
    rep.add("<e,e> < 0", norm < 0, note=f"<e,e> = {norm}")
    bad = []
    for i in range(alg.dim):
        y = prod.L(i).apply(e)
        if any(y):
            bad.append(Witness({"u": i}, y))
    rep.add("L_u e = 0 for all u", not bad, bad[:1])
    return rep


def witness_report(alg: MetricLieAlgebra, witness: str) -> CheckReport:
    """Checks for a user-supplied witness vector, or a search with ``"auto"``."""
    rep = CheckReport()
    if witness == "auto":
        try:
            w = dichotomy_witness(alg)
        except PreconditionError as exc:
            rep.add("witness: flat Lorentzian input", False, note=str(exc))
            return rep
        rep.data["witness"] = w.to_dict()
        if w.kind == TIMELIKE:
            rep.extend(_timelike_report(alg, w.e), "witness: ")
        elif w.kind == NULL:
            rep.extend(kundt_verify(alg, w.e), "witness: ")
        else:
            rep.add("witness: search", True, note="inconclusive over the rationals")
        return rep
    e = parse_witness(alg, witness)
    rep.data["witness"] = {"e": list(e)}
    norm = alg.inner(e, e)
    if norm < 0:
        rep.extend(_timelike_report(alg, e), "witness: ")
    elif norm == 0:
        try:
            k = kundt_verify(alg, e)
        except PreconditionError as exc:
            rep.add("witness: kundt", False, note=str(exc))
            return rep
        rep.extend(k, "witness: ")
        rep.flags["geodesic"] = k.flags["geodesic"]
        rep.data["alpha"] = k.data["alpha"]
    else:
        rep.add("witness: timelike or null", False, note=f"<e,e> = {norm} > 0")
    return rep


def run_battery(alg: MetricLieAlgebra, witness: str | None = None) -> CheckReport:
    """Structure, flatness and modular-vector checks plus summary flags.

    Novikov and unimodularity are reported as flags, not pass/fail checks.
    """
    rep = CheckReport()
    v = validate_algebra(alg)
    rep.extend(v)
    structural = v.passed
    sig = signature(alg.metric) if alg.metric.is_symmetric() else None
    rep.flags["lorentzian"] = sig is not None and lorentz_kind(sig) == "lorentzian"
    if not structural:
        rep.flags["flat"] = False
        return rep
    prod = levi_civita(alg)
    flat = flatness_report(alg, prod)
    rep.extend(flat)
    rep.flags["flat"] = flat.passed
    if flat.passed:
        rep.flags["novikov"] = novikov_check(prod, alg).passed
        mp = modular_properties_check(alg)
        rep.extend(mp, "modular: ")
        rep.flags["unimodular"] = mp.flags["unimodular"]
        rep.flags["complete"] = mp.flags["unimodular"]
        rep.data["h"] = mp.data["h"]
        if witness is not None:
            w = witness_report(alg, witness)
            rep.extend(w)
            rep.data.update(w.data)
            if "geodesic" in w.flags:
                rep.flags["geodesic"] = w.flags["geodesic"]
    return rep
