import random
from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lorflat.algebra import MetricLieAlgebra, lorentz_kind, modular_vector, validate_algebra
from lorflat.connection import is_flat, levi_civita, novikov_check
from lorflat.linalg import LinalgError, Matrix, signature, unit_vec
from lorflat.models.builders import build_model
from lorflat.models.extension import (
    CURVATURE_EQUATIONS,
    ExtensionData,
    classical_double_extension,
    curvature_system_check,
    data_from_dict,
    data_to_dict,
    extension_modular_vector,
    generalized_extension,
    novikov_system_check,
)
from lorflat.models.generators import PERTURB_TARGETS, perturb, random_spec, seeded_specs, zero_data
from lorflat.models.propositions import extension_data, g3_novikov_conditions
from lorflat.models.rotation import make_rotation_rep
from lorflat.models.specs import FAMILIES, SpecError, spec_from_dict, spec_to_dict, validate_model_params
from lorflat.report import PreconditionError

NULL_FAMILIES = ("g2", "g3", "g4", "g5", "g6")


def spec(family, **params):
    return spec_from_dict({"family": family, "params": params})


def lorentzian(alg):
    return lorentz_kind(signature(alg.metric)) == "lorentzian"


# -- rotation representations ----------------------------------------------------

def test_rotation_single_block():
    r = make_rotation_rep([[1]], 1)
    assert r.rho((1,)) == Matrix([[0, -1], [1, 0]])
    assert r.spans and r.kernel_trivial


def test_rotation_two_blocks_commute():
    r = make_rotation_rep([[1, 0], [1, 2]], 2)
    R0, R1 = r.rho_basis()
    assert R0.matmul(R1) == R1.matmul(R0)
    assert r.kernel_trivial and r.spans


def test_rotation_acting_kernel():
    r = make_rotation_rep([[1, 0]], 2)
    assert not r.spans
    K = r.acting_kernel()
    assert K.dim == 1 and r.rho(K.basis[0]).is_zero()


def test_rotation_rejects_zero_and_bad_length():
    with pytest.raises(LinalgError):
        make_rotation_rep([[0, 0]], 2)
    with pytest.raises(LinalgError):
        make_rotation_rep([[1]], 2)
    assert not make_rotation_rep([[0]], 1, allow_zero=True).kernel_trivial


@given(st.lists(st.lists(st.integers(-3, 3), min_size=2, max_size=2).filter(any), min_size=1, max_size=3))
def test_rotation_maps_are_skew_and_commute(us):
    r = make_rotation_rep(us, 2)
    Rs = r.rho_basis()
    for R in Rs:
        assert (R + R.T).is_zero()
    assert Rs[0].matmul(Rs[1]) == Rs[1].matmul(Rs[0])


# -- parameter validation --------------------------------------------------------

def test_validate_g6_minimal_passes():
    assert validate_model_params(spec("g6", **{"lambda": 1, "rep": {"uvecs": [[1]], "adim": 1}})).passed


def test_validate_g3_noncommuting_A1():
    s = spec("g3", rep={"uvecs": [[1]], "adim": 1}, A1=[[1, 0], [0, 0]])
    rep = validate_model_params(s)
    chk = rep.get("[A1,rho(a)]=0")
    assert not chk.passed
    assert chk.witnesses[0].location == {"a": 0}


def test_validate_g4_singular_E():
    s = spec("g4", rep1={"uvecs": [[1]], "adim": 1}, rep2={"uvecs": [[0]], "adim": 1})
    rep = validate_model_params(s)
    assert not rep.get("det(E)!=0").passed


def test_validate_g6_lambda_zero():
    s = spec("g6", **{"lambda": 0, "rep": {"uvecs": [[1]], "adim": 1}})
    assert not validate_model_params(s).get("lambda!=0").passed


def test_spec_errors():
    with pytest.raises(SpecError):
        spec_from_dict({"params": {}})
    with pytest.raises(SpecError):
        spec_from_dict({"family": "g9"})
    with pytest.raises(SpecError):
        spec("g3", rep={"uvecs": [[1]], "adim": 1}, h=[1, 2, 3])
    with pytest.raises(SpecError):
        spec("g6", **{"lambda": 0.5, "rep": {"uvecs": [[1]], "adim": 1}})


@pytest.mark.parametrize("family", FAMILIES)
def test_spec_json_round_trip(family):
    for s in seeded_specs(family, 5, seed=3, dims=range(4, 8)):
        assert spec_from_dict(spec_to_dict(s)) == s


# -- builders --------------------------------------------------------------------

def test_g1_example():
    alg = build_model(spec("g1", lambdas=[1], rep={"uvecs": [[1]], "adim": 1}))
    assert alg.dim == 4 and is_flat(alg) and lorentzian(alg)
    assert novikov_check(levi_civita(alg), alg).passed


def test_g6_minimal_example():
    alg = build_model(spec("g6", **{"lambda": 1, "rep": {"uvecs": [[1]], "adim": 1}}))
    assert alg.dim == 5 and is_flat(alg) and lorentzian(alg)
    h = modular_vector(alg).h
    f = alg.index("f")
    assert h[f] != 0 and all(x == 0 for i, x in enumerate(h) if i != f)


def test_g3_without_d():
    s = spec("g3", rep={"uvecs": [], "adim": 2}, A2=[[0, 1], [0, 0]])
    assert validate_model_params(s).passed
    alg = build_model(s)
    assert alg.dim == 4 and is_flat(alg) and modular_vector(alg).unimodular


@pytest.mark.parametrize("family", FAMILIES)
def test_seeded_instances_are_flat_lorentzian(family):
    for s in seeded_specs(family, 4, seed=5, dims=range(4, 8)):
        assert validate_model_params(s).passed
        alg = build_model(s, check=False)
        assert validate_algebra(alg).passed
        assert is_flat(alg) and lorentzian(alg)
        assert alg.dim == s.dim


@pytest.mark.parametrize("family", NULL_FAMILIES)
def test_extension_data_reproduces_builder(family):
    for s in seeded_specs(family, 4, seed=7, dims=range(4, 8)):
        alg = build_model(s, check=False)
        ext, table = generalized_extension(extension_data(s), alg.basis)
        assert ext.brackets == alg.brackets
        assert ext.metric == alg.metric
        assert table.prod == levi_civita(alg).prod


def test_g2_proposition_form_is_flat():
    s = spec("g2", **{"lambda": 1, "h": [1, 0], "rep": {"uvecs": [[2]], "adim": 1}, "unorm2": 2, "form": "proposition"})
    assert validate_model_params(s).passed
    assert is_flat(build_model(s))


def test_random_spec_dimension():
    rng = random.Random(1)
    for fam in FAMILIES:
        assert random_spec(fam, 6, rng).dim == 6


def test_seeded_specs_deterministic():
    assert seeded_specs("g5", 3, seed=9) == seeded_specs("g5", 3, seed=9)


# -- modular vector --------------------------------------------------------------

@pytest.mark.parametrize("family", NULL_FAMILIES)
def test_modular_vector_formula(family):
    # oracle: trace of ad on the built algebra
    for s in seeded_specs(family, 5, seed=13, dims=range(4, 8)):
        alg = build_model(s, check=False)
        assert extension_modular_vector(extension_data(s)) == modular_vector(alg).h


@pytest.mark.parametrize("family,unimodular", [("g2", True), ("g3", True), ("g4", True), ("g5", False), ("g6", False)])
def test_family_unimodularity(family, unimodular):
    for s in seeded_specs(family, 5, seed=17, dims=range(4, 8)):
        assert modular_vector(build_model(s, check=False)).unimodular == unimodular


# -- classical double extension --------------------------------------------------

def abelian(m):
    return MetricLieAlgebra.from_brackets(m, {}, Matrix.identity(m))


def test_classical_rotation_extension():
    D = Matrix([[0, 1], [-1, 0]])
    alg = classical_double_extension(abelian(2), Matrix.zeros(2), D, 0, (0, 0))
    assert alg.dim == 4 and is_flat(alg) and lorentzian(alg)
    assert modular_vector(alg).unimodular


def test_classical_lambda_not_unimodular():
    alg = classical_double_extension(abelian(2), Matrix.zeros(2), Matrix.zeros(2), 1, (0, 0))
    assert alg.brackets[3][0] == (1, 0, 0, 0)
    assert is_flat(alg) and not modular_vector(alg).unimodular


def test_classical_rejects_nonskew():
    with pytest.raises(PreconditionError) as exc:
        classical_double_extension(abelian(2), Matrix.zeros(2), Matrix([[1, 0], [0, 0]]), 0, (0, 0))
    assert not exc.value.report.get("D-A skew").passed


def test_classical_rejects_nonflat_base():
    heis = MetricLieAlgebra.from_brackets(3, {(0, 1): (0, 0, 1)}, Matrix.identity(3))
    with pytest.raises(PreconditionError):
        classical_double_extension(heis, Matrix.zeros(3), Matrix.zeros(3), 0, (0, 0, 0))


# -- generalized double extension ------------------------------------------------

def test_generalized_zero_data_is_abelian():
    alg, table = generalized_extension(zero_data(2))
    assert not alg.nonzero_brackets() and table.is_zero()
    assert curvature_system_check(zero_data(2)).passed


def test_generalized_alpha_bracket():
    data = zero_data(1).with_(alpha=Q(1))
    alg, _ = generalized_extension(data)
    assert alg.brackets[2][0] == (0, 0, 1)
    assert curvature_system_check(data).passed == is_flat(alg)


def test_curvature_system_names():
    assert len(CURVATURE_EQUATIONS) == 12
    assert [c.name for c in curvature_system_check(zero_data(2)).checks] == list(CURVATURE_EQUATIONS)


@given(st.integers(0, 10_000), st.sampled_from(NULL_FAMILIES), st.sampled_from(PERTURB_TARGETS))
def test_curvature_system_matches_flatness(seed, family, target):
    rng = random.Random(seed)
    s = random_spec(family, rng.randrange(4, 7), rng)
    data = perturb(extension_data(s), target, rng)
    alg, _ = generalized_extension(data)
    assert curvature_system_check(data).passed == is_flat(alg)


def test_perturbation_keeps_skew():
    rng = random.Random(0)
    data = extension_data(seeded_specs("g4", 1, seed=2, dims=[6])[0])
    G = data.hmetric
    for _ in range(20):
        p = perturb(data, "E", rng)
        S = p.E.T.matmul(G) + G.matmul(p.E)
        assert S.is_zero() and p.E != data.E


def test_data_dict_round_trip():
    data = extension_data(seeded_specs("g5", 1, seed=4, dims=[7])[0])
    back = data_from_dict(data_to_dict(data))
    assert back.with_(hbasis=data.hbasis) == data


# -- Novikov system --------------------------------------------------------------

def test_novikov_system_zero_and_g2():
    assert novikov_system_check(zero_data(2)).passed
    for s in seeded_specs("g2", 3, seed=1, dims=range(4, 7)):
        assert novikov_system_check(extension_data(s)).passed


def test_novikov_system_requires_flat():
    data = zero_data(1).with_(alpha=Q(1), lam=Q(1), v=(Q(1),))
    alg, _ = generalized_extension(data)
    assert not is_flat(alg)
    with pytest.raises(PreconditionError):
        novikov_system_check(data)


@pytest.mark.parametrize("family", NULL_FAMILIES)
def test_novikov_system_matches_product(family):
    for s in seeded_specs(family, 6, seed=19, dims=range(4, 8)):
        data = extension_data(s)
        alg = build_model(s, check=False)
        assert novikov_system_check(data).passed == novikov_check(levi_civita(alg), alg).passed


# -- g3 Novikov conditions -------------------------------------------------------

def g3_counterexample():
    # rho(w2) != 0 while rho(w2) h = 0 because h = 0
    return spec("g3", rep={"uvecs": [[1]], "adim": 1}, w2=[1])


def test_g3_literal_condition_insufficient():
    s = g3_counterexample()
    alg = build_model(s)
    assert is_flat(alg)
    assert not novikov_check(levi_civita(alg), alg).passed
    assert g3_novikov_conditions(s, literal=True).passed
    assert not g3_novikov_conditions(s).passed


def test_g3_conditions_match_novikov():
    for s in seeded_specs("g3", 30, seed=23, dims=range(4, 8)):
        alg = build_model(s, check=False)
        assert g3_novikov_conditions(s).passed == novikov_check(levi_civita(alg), alg).passed


def test_g3_zero_is_novikov():
    s = spec("g3", rep={"uvecs": [[1]], "adim": 1})
    assert g3_novikov_conditions(s).passed
    assert novikov_check(levi_civita(build_model(s))).passed
