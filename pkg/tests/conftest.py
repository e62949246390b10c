from fractions import Fraction

import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lorflat.algebra import MetricLieAlgebra
from lorflat.linalg import Matrix

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

small_q = st.fractions(min_value=-3, max_value=3, max_denominator=3)


def matrices(rows, cols, elements=small_q):
    return st.lists(st.lists(elements, min_size=cols, max_size=cols), min_size=rows, max_size=rows).map(
        lambda r: Matrix(r, cols=cols)
    )


def invertible(n):
    # unit lower triangular times unit upper triangular: always invertible
    def build(pair):
        lo, up = pair
        L = [[Fraction(int(i == j)) if i <= j else lo[i][j] for j in range(n)] for i in range(n)]
        U = [[Fraction(int(i == j)) if i >= j else up[i][j] for j in range(n)] for i in range(n)]
        return Matrix(L).matmul(Matrix(U))

    sq = st.lists(st.lists(small_q, min_size=n, max_size=n), min_size=n, max_size=n)
    return st.tuples(sq, sq).map(build)


def a2(lam=1) -> MetricLieAlgebra:
    """[eb, e] = e with lam * (eb* . e*)."""
    return MetricLieAlgebra.from_brackets(2, {(0, 1): (0, 1)}, [[0, lam], [lam, 0]], ("eb", "e"))


def heisenberg() -> MetricLieAlgebra:
    return MetricLieAlgebra.from_brackets(3, {(0, 1): (0, 0, 1)}, Matrix.identity(3), ("e1", "e2", "e3"))


def a36(lam=1) -> MetricLieAlgebra:
    return MetricLieAlgebra.from_brackets(
        3, {(0, 1): (0, 0, 1), (0, 2): (0, -1, 0)}, Matrix.diag([-lam * lam, 1, 1]), ("e1", "e2", "e3")
    )


@pytest.fixture
def A2():
    return a2()


@pytest.fixture
def heis():
    return heisenberg()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, detail = results[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}{'  ' + detail if detail else ''}")
