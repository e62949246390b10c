"""Bundled example corpora.

* :func:`corpus_lowdim`: the flat Lorentzian algebras of dimension 2, 3 and 4
  from the classification, parameters fixed at spot values, plus a non-flat
  negative control.
* :func:`corpus_model_examples`: one deterministic instance per family at a
  requested total dimension.

Deviations from the printed classification are recorded in ``CHANGES.md``
next to this module.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .algebra import MetricLieAlgebra, lorentz_kind, modular_vector, validate_algebra
from .connection import flatness_report, levi_civita, novikov_check
from .linalg import Matrix, signature
from .models.builders import build_model
from .models.generators import MIN_DIM, random_spec
from .models.specs import FAMILIES, ModelSpec, validate_model_params
from .report import CheckReport

SEED_ENV = "LORFLAT_SEED"


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    algebra: MetricLieAlgebra
    expected: dict
    note: str = ""
    params: dict = field(default_factory=dict)

    @property
    def label(self) -> str:
        if not self.params:
            return self.name
        return self.name + " " + ",".join(f"{k}={v}" for k, v in self.params.items())


def _alg(names: list, brackets: dict, metric: dict) -> MetricLieAlgebra:
    """Algebra from named brackets ``{(x, y): {z: c}}`` and a metric given by
    ``{(x, y): c}``; an off-diagonal coefficient sets both ``G(x,y)`` and ``G(y,x)``."""
    n = len(names)
    idx = {s: i for i, s in enumerate(names)}
    table = {}
    for (x, y), val in brackets.items():
        v = [Fraction(0)] * n
        for z, c in val.items():
            v[idx[z]] += Fraction(c)
        table[(idx[x], idx[y])] = tuple(v)
    G = [[Fraction(0)] * n for _ in range(n)]
    for (x, y), c in metric.items():
        G[idx[x]][idx[y]] = Fraction(c)
        G[idx[y]][idx[x]] = Fraction(c)
    return MetricLieAlgebra.from_brackets(n, table, Matrix(G), names)


def _plus_line(alg: MetricLieAlgebra, name: str = "x") -> MetricLieAlgebra:
    """Orthogonal sum with a Euclidean line."""
    n = alg.dim
    table = {}
    for i in range(n):
        for j in range(i + 1, n):
            if any(alg.brackets[i][j]):
                table[(i, j)] = tuple(alg.brackets[i][j]) + (Fraction(0),)
    G = Matrix.block_diag(alg.metric, Matrix.identity(1))
    return MetricLieAlgebra.from_brackets(n + 1, table, G, tuple(alg.basis) + (name,))


def _flags(flat=True, novikov=False, unimodular=False) -> dict:
    return {"flat": flat, "novikov": novikov, "unimodular": unimodular}


LAMBDAS = (1, 2)


def _dim2() -> list:
    out = []
    for lam in LAMBDAS:
        a = _alg(["eb", "e"], {("eb", "e"): {"e": 1}}, {("eb", "e"): lam})
        out.append(CorpusEntry("A_2", a, _flags(), "", {"lambda": lam}))
    return out


def _dim3() -> list:
    out = []
    nm = ["eb", "e", "e1"]
    for lam in LAMBDAS:
        g = {("eb", "e"): lam, ("e1", "e1"): 1}
        out.append(CorpusEntry("A_2+A_1", _alg(nm, {("eb", "e"): {"e": 1}}, g), _flags(), "", {"lambda": lam}))
        out.append(CorpusEntry("A_{3,2}", _alg(nm, {("eb", "e"): {"e": 1}, ("eb", "e1"): {"e": 1, "e1": 1}}, g),
                               _flags(), "", {"lambda": lam}))
        out.append(CorpusEntry("A_{3,3}", _alg(nm, {("eb", "e"): {"e": 1}, ("eb", "e1"): {"e1": 1}}, g),
                               _flags(), "", {"lambda": lam}))
        out.append(CorpusEntry("A_{3,4}", _alg(nm, {("e1", "e"): {"e": 1}, ("e1", "eb"): {"eb": -1}},
                                               {("eb", "e"): 1, ("e1", "e1"): lam * lam}),
                               _flags(novikov=True, unimodular=True), "", {"lambda": lam}))
        out.append(CorpusEntry("A_{3,6}", _alg(["e1", "e2", "e3"], {("e1", "e2"): {"e3": 1}, ("e1", "e3"): {"e2": -1}},
                                               {("e1", "e1"): -lam * lam, ("e2", "e2"): 1, ("e3", "e3"): 1}),
                               _flags(novikov=True, unimodular=True), "", {"lambda": lam}))
    out.append(CorpusEntry("A_{3,1}", _alg(nm, {("eb", "e1"): {"e": 1}}, {("eb", "e"): 1, ("e1", "e1"): 1}),
                           _flags(novikov=True, unimodular=True)))
    return sorted(out, key=lambda e: e.label)


def _dim4() -> list:
    out = []
    for base in _dim3():
        out.append(CorpusEntry(base.name + "+Rx", _plus_line(base.algebra), dict(base.expected),
                               "dimension-3 row plus a Euclidean line", dict(base.params)))
    mu = 1
    a412 = {("e1", "e2"): {"e3": 1}, ("e1", "e3"): {"e2": -1}, ("e4", "e2"): {"e3": 1}, ("e4", "e3"): {"e2": -1}}
    n412 = ["e1", "e2", "e3", "e4"]
    for lam in LAMBDAS:
        out.append(CorpusEntry(
            "A_{4,12}", _alg(n412, a412, {("e1", "e1"): -lam * lam, ("e2", "e2"): 1, ("e3", "e3"): 1, ("e4", "e4"): mu * mu}),
            _flags(novikov=True, unimodular=True), "diagonal metric", {"lambda": lam, "mu": mu, "metric": 1}))
        out.append(CorpusEntry(
            "A_{4,12}", _alg(n412, a412, {("e1", "e4"): lam, ("e2", "e2"): 1, ("e3", "e3"): 1}),
            _flags(novikov=True, unimodular=True), "null metric on span(e1,e4)", {"lambda": lam, "metric": 2}))
    nm = ["eb", "e", "e1", "e2"]
    g46 = {("eb", "e"): 1, ("e1", "e1"): mu * mu, ("e2", "e2"): mu * mu, ("eb", "e2"): 1}
    for lam in LAMBDAS:
        out.append(CorpusEntry(
            "A_{4,6}^{lambda,0}",
            _alg(nm, {("eb", "e"): {"e": lam}, ("eb", "e1"): {"e2": 1}, ("eb", "e2"): {"e1": -1}}, g46),
            _flags(), "", {"lambda": lam, "mu": mu}))
        out.append(CorpusEntry(
            "A_{4,6}^{lambda,lambda}",
            _alg(nm, {("eb", "e"): {"e": lam}, ("eb", "e1"): {"e2": 1, "e1": lam}, ("eb", "e2"): {"e1": -1, "e2": lam}}, g46),
            _flags(), "", {"lambda": lam, "mu": mu}))
    for al in (2, 3):
        for y in (0, 1, -2):
            out.append(CorpusEntry(
                "A_{4,9}^0",
                _alg(nm, {("eb", "e"): {"e": 1}, ("eb", "e2"): {"e2": 1}, ("e2", "e1"): {"e": 1}},
                     {("eb", "e"): 1, ("e1", "e1"): 1, ("e2", "e2"): al * al, ("eb", "e1"): y, ("e1", "e2"): 1}),
                _flags(), "alpha in {2,3}: alpha=1 is degenerate, alpha=0 not Lorentzian", {"alpha": al, "y": y}))
    out.append(CorpusEntry(
        "A_{4,5}^{1,1}",
        _alg(nm, {("eb", "e"): {"e": 1}, ("eb", "e1"): {"e1": 1}, ("eb", "e2"): {"e2": 1}},
             {("eb", "e"): 1, ("e1", "e1"): 1, ("e2", "e2"): 1}), _flags()))
    for rho in (1, 2):
        out.append(CorpusEntry(
            "A_{4,2}^1",
            _alg(nm, {("eb", "e"): {"e": 1}, ("eb", "e1"): {"e1": 1, "e": 1}, ("eb", "e2"): {"e2": 1}},
                 {("eb", "e"): rho * rho, ("e1", "e1"): 1, ("e2", "e2"): 1}), _flags(), "", {"rho": rho}))
    for al in (0, 1):
        out.append(CorpusEntry(
            "A_{4,1}",
            _alg(nm, {("eb", "e2"): {"e1": 1}, ("e2", "e1"): {"e": 1}},
                 {("eb", "e"): 1, ("e1", "e1"): 1, ("e2", "e2"): 1, ("eb", "e1"): al}),
            _flags(novikov=(al == 0), unimodular=True), "Novikov iff alpha=0", {"alpha": al}))
    return out


def negative_control() -> CorpusEntry:
    heis = _alg(["e1", "e2", "e3"], {("e1", "e2"): {"e3": 1}}, {("e1", "e1"): 1, ("e2", "e2"): 1, ("e3", "e3"): 1})
    return CorpusEntry("Heisenberg+Euclidean", heis, {"flat": False}, "negative control, not in the classification")


def corpus_lowdim(include_control: bool = True) -> list:
    out = _dim2() + _dim3() + _dim4()
    if include_control:
        out.append(negative_control())
    return out


def check_entry(entry: CorpusEntry) -> CheckReport:
    """Compute flags for ``entry`` and compare them with the expected ones."""
    alg = entry.algebra
    rep = CheckReport()
    rep.extend(validate_algebra(alg), "structure: ")
    prod = levi_civita(alg)
    flat = flatness_report(alg, prod)
    flags = {"flat": flat.passed}
    if flat.passed:
        rep.extend(flat, "flatness: ")
        flags["novikov"] = novikov_check(prod, alg).passed
        flags["unimodular"] = modular_vector(alg).unimodular
        flags["lorentzian"] = lorentz_kind(signature(alg.metric)) == "lorentzian"
        rep.add("signature (n-1,1,0)", flags["lorentzian"])
    else:
        rep.data["curvature_witnesses"] = [w.to_dict() for c in flat.checks for w in c.witnesses]
    for k, want in entry.expected.items():
        got = flags.get(k)
        rep.add(f"expected {k}={'yes' if want else 'no'}", got == want, note=f"computed {got}")
    rep.flags.update(flags)
    rep.data["entry"] = entry.label
    return rep


def default_seed() -> int:
    return int(os.environ.get(SEED_ENV, "0"))


def corpus_model_examples(dim: int, seed: int | None = None) -> list:
    """One instance per family at total dimension ``dim``.

    Returns ``(family, spec or None, algebra or None, message)`` tuples; a
    family that cannot reach ``dim`` gets ``None`` and a reason.  Each draw
    uses ``random.Random(f"{family}:{dim}:{seed}")``, so the choice is
    deterministic for a given seed (``LORFLAT_SEED``, default 0).
    """
    if not 4 <= dim <= 10:
        raise ValueError("dim must be between 4 and 10")
    if seed is None:
        seed = default_seed()
    out = []
    for fam in FAMILIES:
        if dim < MIN_DIM[fam]:
            out.append((fam, None, None, f"family {fam} needs dimension >= {MIN_DIM[fam]}"))
            continue
        rng = random.Random(f"{fam}:{dim}:{seed}")
        spec: ModelSpec = random_spec(fam, dim, rng)
        if not validate_model_params(spec).passed:
            out.append((fam, spec, None, "generated parameters failed validation"))
            continue
        out.append((fam, spec, build_model(spec, check=False), ""))
    return out


def corpus_changes() -> str:
    return resources.files("lorflat").joinpath("CHANGES.md").read_text(encoding="utf-8")
