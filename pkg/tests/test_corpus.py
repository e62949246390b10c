import pytest

from lorflat.corpus import check_entry, corpus_changes, corpus_lowdim, corpus_model_examples
from lorflat.models.generators import MIN_DIM
from lorflat.models.specs import FAMILIES

ENTRIES = corpus_lowdim()


def find(name, **params):
    return next(e for e in ENTRIES if e.name == name and all(e.params.get(k) == v for k, v in params.items()))


@pytest.mark.parametrize("entry", ENTRIES, ids=lambda e: e.label)
def test_entry_matches_expectations(entry):
    rep = check_entry(entry)
    assert rep.passed, rep.to_text()


def test_dimensions_present():
    dims = {e.algebra.dim for e in ENTRIES}
    assert dims == {2, 3, 4}


def test_a2_flags():
    rep = check_entry(find("A_2", **{"lambda": 1}))
    assert rep.flags == {"flat": True, "novikov": False, "unimodular": False, "lorentzian": True}


def test_a36_flags():
    rep = check_entry(find("A_{3,6}", **{"lambda": 2}))
    assert rep.flags["novikov"] and rep.flags["unimodular"]


def test_a41_novikov_depends_on_alpha():
    assert check_entry(find("A_{4,1}", alpha=0)).flags["novikov"]
    assert not check_entry(find("A_{4,1}", alpha=1)).flags["novikov"]


def test_negative_control_fails_flatness():
    rep = check_entry(find("Heisenberg+Euclidean"))
    assert rep.passed and not rep.flags["flat"]
    assert rep.data["curvature_witnesses"]


def test_corpus_all_lorentzian():
    for e in ENTRIES:
        if e.expected.get("flat", True):
            assert check_entry(e).flags["lorentzian"], e.label


@pytest.mark.parametrize("dim", [6, 7])
def test_model_examples(dim):
    out = corpus_model_examples(dim, seed=0)
    assert [fam for fam, *_ in out] == list(FAMILIES)
    for fam, spec, alg, msg in out:
        assert alg is not None, msg
        assert alg.dim == dim == spec.dim


def test_model_examples_deterministic(monkeypatch):
    a = corpus_model_examples(5, seed=4)
    monkeypatch.setenv("LORFLAT_SEED", "4")
    b = corpus_model_examples(5)
    assert [s for _, s, _, _ in a] == [s for _, s, _, _ in b]


def test_model_examples_bad_dim():
    with pytest.raises(ValueError):
        corpus_model_examples(3)


def test_min_dims_reachable():
    assert all(MIN_DIM[f] <= 4 for f in FAMILIES)


def test_changes_ledger_present():
    text = corpus_changes()
    assert "A_{4,9}" in text or "A_4,9" in text
    assert "g3" in text
