from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import a2, a36, heisenberg, invertible, small_q
from lorflat.algebra import (
    MetricLieAlgebra,
    fingerprint,
    modular_properties_check,
    modular_vector,
    validate_algebra,
)
from lorflat.connection import levi_civita
from lorflat.corpus import corpus_lowdim
from lorflat.linalg import Matrix
from lorflat.report import PreconditionError


def abelian(n, G=None):
    return MetricLieAlgebra.from_brackets(n, {}, G if G is not None else Matrix.identity(n))


def test_abelian_valid():
    rep = validate_algebra(abelian(3))
    assert rep.passed
    assert tuple(rep.data["signature"]) == (3, 0, 0)


def test_heisenberg_valid():
    assert validate_algebra(heisenberg()).passed


def test_antisymmetry_witness():
    z = (Q(0),) * 3
    br = [[z, (0, 0, 1), z], [(0, 0, 2), z, z], [z, z, z]]
    alg = MetricLieAlgebra(3, tuple(tuple(tuple(Q(x) for x in v) for v in row) for row in br), Matrix.identity(3))
    rep = validate_algebra(alg)
    c = rep.get("antisymmetry")
    assert not c.passed
    assert c.witnesses[0].location == {"pair": [0, 1]}


def test_jacobi_failures_listed():
    # [e0,e1]=e2, [e1,e2]=e0, [e0,e2]=e0 breaks Jacobi
    alg = MetricLieAlgebra.from_brackets(3, {(0, 1): (0, 0, 1), (1, 2): (1, 0, 0), (0, 2): (1, 0, 0)}, Matrix.identity(3))
    c = validate_algebra(alg).get("jacobi")
    assert not c.passed and c.witnesses[0].location == {"triple": [0, 1, 2]}


def test_degenerate_metric_flagged():
    rep = validate_algebra(abelian(2, Matrix([[1, 1], [1, 1]])))
    assert not rep.get("metric_nondegenerate").passed


def test_modular_abelian():
    md = modular_vector(abelian(2))
    assert md.unimodular and md.h == (0, 0)


@pytest.mark.parametrize("lam", [1, 2, Q(-1, 3)])
def test_modular_a2(lam):
    # tr ad_eb = 1, tr ad_e = 0, so <eb,h> = 1 and <e,h> = 0
    assert modular_vector(a2(lam)).h == (0, 1 / Q(lam))


def test_modular_a36_zero():
    assert modular_vector(a36(2)).unimodular


def test_modular_degenerate_rejected():
    with pytest.raises(PreconditionError):
        modular_vector(abelian(2, Matrix.zeros(2)))


def test_modular_properties_a2():
    assert modular_properties_check(a2()).passed


def test_modular_properties_rejects_heisenberg():
    with pytest.raises(PreconditionError):
        modular_properties_check(heisenberg())


def test_fingerprint_examples():
    f = fingerprint(abelian(4))
    assert f.derived == (4, 0) and f.center_dim == 4
    h = fingerprint(heisenberg())
    assert h.derived == (3, 1, 0) and h.lower_central == (3, 1, 0) and h.center_dim == 1
    s = fingerprint(a36())
    assert s.center_dim == 0
    # [g,g] = span(e2,e3) is abelian, so the derived series ends at 0;
    # the lower central series stabilizes at dimension 2
    assert s.derived == (3, 2, 0)
    assert s.lower_central == (3, 2, 2)


@given(st.sampled_from(range(2, 7)))
def test_modular_linear_in_brackets(k):
    entries = [e for e in corpus_lowdim(include_control=False)]
    alg = entries[k].algebra
    h = modular_vector(alg).h
    assert modular_vector(alg.scaled_brackets(2)).h == tuple(2 * x for x in h)


def test_trace_formulas_agree_on_corpus():
    for entry in corpus_lowdim(include_control=False):
        alg = entry.algebra
        prod = levi_civita(alg)
        for i in range(alg.dim):
            tr_ad = alg.ad(i).trace()
            assert tr_ad == -prod.R(i).trace(), entry.label


@given(invertible(4))
def test_fingerprint_basis_invariant(P):
    entries = corpus_lowdim(include_control=False)
    for entry in entries:
        if entry.algebra.dim == 4 and entry.name in ("A_{4,1}", "A_{4,9}^0", "A_{4,12}"):
            alg = entry.algebra
            assert fingerprint(alg.change_basis(P)) == fingerprint(alg)
