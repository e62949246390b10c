from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import a2, heisenberg, invertible, matrices, small_q
from lorflat.algebra import MetricLieAlgebra
from lorflat.connection import levi_civita
from lorflat.linalg import Matrix, orthogonal_complement, span, unit_vec, vscale
from lorflat.models.builders import build_model
from lorflat.models.generators import seeded_specs
from lorflat.models.rotation import make_rotation_rep
from lorflat.report import PreconditionError
from lorflat.structure import (
    NULL,
    TIMELIKE,
    commutator,
    dichotomy_witness,
    euclidean_from_rep,
    kundt_verify,
    lemma_am_blocks,
    lemma_lb_solve,
    lemma_lf_decompose,
    milnor_check,
    null_vector_in,
    rational_eigenvalues,
    so_form,
)

uvec2 = st.lists(st.integers(-3, 3), min_size=2, max_size=2).filter(any)
reps = st.lists(uvec2, min_size=1, max_size=3).map(lambda us: make_rotation_rep(us, 2))


def skew(n):
    def build(vals):
        it = iter(vals)
        M = [[Q(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                M[i][j] = next(it)
                M[j][i] = -M[i][j]
        return Matrix(M)

    return st.lists(small_q, min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2).map(build)


def pos_def(n):
    return invertible(n).map(lambda P: P.T.matmul(P))


# -- so(n) form ------------------------------------------------------------------

@given(skew(3), skew(3), skew(3))
def test_so_form_invariant(A, B, C):
    assert so_form(A, B) == so_form(B, A)
    assert so_form(commutator(A, B), C) == so_form(A, commutator(B, C))
    if not A.is_zero():
        assert so_form(A, A) > 0


# -- Milnor decomposition --------------------------------------------------------

@given(reps, pos_def(2))
def test_milnor_round_trip(rep, ametric):
    alg = euclidean_from_rep(rep, ametric)
    dec = milnor_check(alg)
    assert dec.d.dim == rep.ddim and dec.a.dim == rep.adim
    assert dec.report.passed
    # oracle: brackets of the split basis read back through rho
    for k, x in enumerate(dec.a.basis):
        for j, y in enumerate(dec.d.basis):
            assert alg.bracket(x, y) == dec.d.matrix().apply(dec.rho[k].col(j))
    if dec.d.basis == tuple(unit_vec(alg.dim, i) for i in range(rep.ddim)):
        a_coords = [tuple(x[rep.ddim:]) for x in dec.a.basis]
        for k, R in enumerate(dec.rho):
            assert R == rep.rho(a_coords[k])


@given(st.data())
def test_milnor_after_basis_change(data):
    rep = data.draw(reps)
    alg = euclidean_from_rep(rep)
    moved = alg.change_basis(data.draw(invertible(alg.dim)))
    dec = milnor_check(moved)
    assert dec.d.dim == rep.ddim and dec.a.dim == rep.adim
    # d is the derived algebra, a its orthogonal complement
    assert dec.d.same_span(moved.derived_algebra())
    for x in dec.a.basis:
        assert all(moved.inner(x, y) == 0 for y in dec.d.basis)


def test_milnor_rejects_heisenberg():
    with pytest.raises(PreconditionError):
        milnor_check(heisenberg())


def test_milnor_rejects_deformed_metric():
    alg = euclidean_from_rep(make_rotation_rep([[1]], 1)).with_metric(Matrix.diag([1, 2, 1]))
    with pytest.raises(PreconditionError):
        milnor_check(alg)


def test_milnor_rejects_lorentzian():
    with pytest.raises(PreconditionError):
        milnor_check(a2())


def test_milnor_abelian():
    alg = MetricLieAlgebra.from_brackets(3, {}, Matrix.identity(3))
    dec = milnor_check(alg)
    assert dec.d.dim == 0 and dec.a.dim == 3


# -- dichotomy and Kundt ---------------------------------------------------------

def test_dichotomy_a2_null():
    # eb.e = e by the Koszul formula, so e is a null eigenvector with eigenvalue 1 for eb
    w = dichotomy_witness(a2())
    assert w.kind == NULL
    assert w.e[0] == 0 and w.e[1] != 0
    assert w.lam == (1, 0)


def test_dichotomy_abelian_timelike():
    alg = MetricLieAlgebra.from_brackets(3, {}, Matrix.diag([-1, 1, 1]))
    w = dichotomy_witness(alg)
    assert w.kind == TIMELIKE and alg.inner(w.e, w.e) < 0


def test_dichotomy_g6_null():
    s = seeded_specs("g6", 1, seed=0, dims=[5])[0]
    alg = build_model(s)
    w = dichotomy_witness(alg)
    assert w.kind == NULL and alg.inner(w.e, w.e) == 0
    prod = levi_civita(alg)
    for i in range(alg.dim):
        assert prod.L(i).apply(w.e) == vscale(w.lam[i], w.e)


@pytest.mark.parametrize("seed", range(5))
def test_dichotomy_g1_timelike(seed):
    for s in seeded_specs("g1", 2, seed=seed, dims=range(4, 8)):
        alg = build_model(s)
        w = dichotomy_witness(alg)
        assert w.kind == TIMELIKE
        prod = levi_civita(alg)
        assert all(not any(prod.L(i).apply(w.e)) for i in range(alg.dim))


def test_dichotomy_rejects_nonflat():
    alg = MetricLieAlgebra.from_brackets(3, {(0, 1): (0, 0, 1)}, Matrix.diag([1, 1, -1]))
    with pytest.raises(PreconditionError):
        dichotomy_witness(alg)


def test_kundt_abelian_alpha_zero():
    alg = MetricLieAlgebra.from_brackets(3, {}, Matrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]]))
    rep = kundt_verify(alg, (1, 0, 0))
    assert rep.passed and rep.flags["geodesic"]
    assert rep.data["alpha"] == [0, 0]


def test_kundt_a2():
    rep = kundt_verify(a2(), (0, 1))
    assert rep.passed and rep.flags["kundt"]


@pytest.mark.parametrize("e", [(1, 1), (0, 0), (1, 0, 0)])
def test_kundt_rejects_bad_vectors(e):
    alg = MetricLieAlgebra.from_brackets(2, {}, Matrix([[0, 1], [1, 0]]))
    with pytest.raises(PreconditionError):
        kundt_verify(alg, e)


def test_null_vector_in():
    G = Matrix.diag([1, -4])
    W = span([unit_vec(2, 0), unit_vec(2, 1)], 2)
    e = null_vector_in(G, W)
    assert e is not None and any(e)
    assert G.apply(e)[0] * e[0] + G.apply(e)[1] * e[1] == 0
    assert null_vector_in(Matrix.diag([1, -2]), W) is None


def test_rational_eigenvalues():
    assert rational_eigenvalues(Matrix([[2, 1], [0, -1]])) == [2, -1]
    assert rational_eigenvalues(Matrix([[0, -1], [1, 0]])) == []


# -- solve for v with B(a) = Lambda_a v ------------------------------------------

@given(reps, st.lists(small_q, min_size=6, max_size=6))
def test_lemma_lb_recovers_vector(rep, vals):
    v0 = tuple(vals[: rep.ddim])
    Lam = rep.rho_basis()
    B = [L.apply(v0) for L in Lam]
    assert lemma_lb_solve(Lam, B) == v0


def test_lemma_lb_example():
    J = Matrix([[0, -1], [1, 0]])
    assert lemma_lb_solve([J], [(0, 1)]) == (1, 0)


def test_lemma_lb_rejections():
    J = Matrix([[0, -1], [1, 0]])
    with pytest.raises(PreconditionError) as exc:
        lemma_lb_solve([Matrix([[1, 0], [0, 1]])], [(0, 0)])
    assert not exc.value.report.get("Lambda_a skew").passed
    with pytest.raises(PreconditionError) as exc:
        lemma_lb_solve([Matrix.zeros(2)], [(0, 0)])
    assert not exc.value.report.get("cap ker Lambda_a = {0}").passed
    with pytest.raises(PreconditionError) as exc:
        lemma_lb_solve([J, J], [(1, 0), (0, 1)])
    assert not exc.value.report.get("Lambda_a B(b) = Lambda_b B(a)").passed
    K = Matrix.block_diag(J, Matrix.zeros(1))
    K2 = Matrix([[0, 0, 1], [0, 0, 0], [-1, 0, 0]])
    with pytest.raises(PreconditionError) as exc:
        lemma_lb_solve([K, K2], [(0, 0, 0), (0, 0, 0)])
    assert not exc.value.report.get("[Lambda_a,Lambda_b] = 0").passed


def test_lemma_lb_with_metric():
    G = Matrix.diag([1, 4])
    L = Matrix([[0, -4], [1, 0]])  # skew for G
    assert lemma_lb_solve([L], [L.apply((1, 1))], G) == (1, 1)


# -- splitting of A with A^2 = lambda A -------------------------------------------

@given(st.integers(1, 2), st.integers(1, 2), st.sampled_from([1, -2, Q(1, 2)]), matrices(2, 2))
def test_lemma_lf_split(k, r, lam, Uraw):
    n = k + r
    U = Uraw.submatrix(list(range(k)), list(range(r)))
    rows = [[Q(0)] * n for _ in range(n)]
    for i in range(k):
        for j in range(r):
            rows[i][k + j] = U[i, j]
    for j in range(r):
        rows[k + j][k + j] = Q(lam)
    A = Matrix(rows)
    K, _, _, _ = lemma_lf_decompose(Matrix.zeros(n), A, lam)
    assert K.dim == k
    for x in K.basis:
        assert not any(A.apply(x))
    Kp = orthogonal_complement(Matrix.identity(n), K)
    for y in Kp.basis:
        # A y = lam y modulo ker A
        z = tuple(a - lam * b for a, b in zip(A.apply(y), y))
        assert K.contains(z)


def test_lemma_lf_with_rotation():
    J = Matrix([[0, -1], [1, 0]])
    F = Matrix.block_diag(J, J)
    A = Matrix.block_diag(Matrix.zeros(2), Matrix.identity(2).scale(3))
    K, U, F1, F2 = lemma_lf_decompose(F, A, 3)
    assert K.dim == 2 and U.is_zero()
    assert F1.matmul(U) == U.matmul(F2)


def test_lemma_lf_rejections():
    A = Matrix([[0, 1], [0, 1]])
    with pytest.raises(PreconditionError):
        lemma_lf_decompose(Matrix.zeros(2), A, 0)
    with pytest.raises(PreconditionError) as exc:
        lemma_lf_decompose(Matrix.identity(2), A, 1)
    assert not exc.value.report.get("F skew").passed
    with pytest.raises(PreconditionError) as exc:
        lemma_lf_decompose(Matrix.zeros(2), A, 2)
    assert not exc.value.report.get("[F,A] = A^2 - lambda A").passed


# -- blocks of A on a flat Euclidean algebra -------------------------------------

def _am_operator(rep, A1, h, A2):
    dd, ad = rep.ddim, rep.adim
    n = dd + ad
    cols = []
    for j in range(dd):
        cols.append(tuple(A1.col(j)) + (Q(0),) * ad)
    for k in range(ad):
        top = rep.rho(unit_vec(ad, k)).apply(h)
        cols.append(tuple(top) + tuple(A2.col(k)))
    return Matrix.from_columns(cols, rows=n)


@given(reps, small_q, small_q, st.lists(small_q, min_size=6, max_size=6), matrices(2, 2))
def test_lemma_am_recovers_blocks(rep, c0, c1, hv, A2):
    h = tuple(hv[: rep.ddim])
    A1 = Matrix.identity(rep.ddim).scale(c0) + rep.rho((c1, 1))
    A = _am_operator(rep, A1, h, A2)
    dec = milnor_check(euclidean_from_rep(rep))
    B1, hamb, B2 = lemma_am_blocks(dec, A)
    assert B1 == A1 and B2 == A2
    assert tuple(hamb[: rep.ddim]) == h and not any(hamb[rep.ddim:])


def test_lemma_am_rejects():
    rep = make_rotation_rep([[1]], 1)
    dec = milnor_check(euclidean_from_rep(rep))
    A = Matrix.block_diag(Matrix.diag([1, 0]), Matrix.zeros(1))
    with pytest.raises(PreconditionError) as exc:
        lemma_am_blocks(dec, A)
    assert exc.value.report.get("A[x,y] = x.Ay - y.Ax").witnesses
