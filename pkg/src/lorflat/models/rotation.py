"""Abelian actions by rotation blocks.

A :class:`RotationRep` acts on ``d = span(e_1, f_1, ..., e_r, f_r)`` through
``rho(a) e_i = <u_i, a> f_i`` and ``rho(a) f_i = -<u_i, a> e_i``.  All maps are
rational and commute, and ``<u_i, .>`` is evaluated in the coordinates of the
acting space.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..connection import ProductTable
from ..linalg import (
    ZERO,
    LinalgError,
    Matrix,
    Subspace,
    Vector,
    common_kernel,
    dot,
    kernel_basis,
    rank,
    unit_vec,
    vec,
)


@dataclass(frozen=True)
class RotationRep:
    uvecs: tuple
    adim: int

    @property
    def r(self) -> int:
        return len(self.uvecs)

    @property
    def ddim(self) -> int:
        return 2 * len(self.uvecs)

    def rho(self, a: Sequence) -> Matrix:
        n = self.ddim
        M = [[ZERO] * n for _ in range(n)]
        for i, u in enumerate(self.uvecs):
            c = dot(u, a)
            M[2 * i + 1][2 * i] = c
            M[2 * i][2 * i + 1] = -c
        return Matrix(M) if n else Matrix.zeros(0)

    def rho_basis(self) -> list:
        return [self.rho(unit_vec(self.adim, k)) for k in range(self.adim)]

    @property
    def spans(self) -> bool:
        """Whether the u-vectors span the acting space."""
        if not self.uvecs:
            return self.adim == 0
        return rank(Matrix(self.uvecs)) == self.adim

    @property
    def kernel_trivial(self) -> bool:
        """Whether the common kernel of all ``rho(a)`` on ``d`` is zero."""
        return common_kernel(self.rho_basis(), self.ddim).dim == 0

    def acting_kernel(self) -> Subspace:
        """``{a : rho(a) = 0}``, the orthogonal of the u-vectors."""
        if not self.uvecs:
            return Subspace(self.adim, tuple(unit_vec(self.adim, k) for k in range(self.adim)))
        return kernel_basis(Matrix(self.uvecs))

    def star(self) -> ProductTable:
        """Flat Euclidean product on ``d + a`` (``d`` first): ``a * b = rho(a) b``
        for ``a`` in the acting space and ``b`` in ``d``, all other products zero."""
        n = self.ddim + self.adim
        entries = {}
        for k in range(self.adim):
            R = self.rho(unit_vec(self.adim, k))
            for j in range(self.ddim):
                col = R.col(j)
                if any(col):
                    entries[(self.ddim + k, j)] = col + (ZERO,) * self.adim
        return ProductTable.from_dict(n, entries)

    def to_dict(self) -> dict:
        from ..linalg import fmt_rational

        return {"uvecs": [[fmt_rational(a) for a in u] for u in self.uvecs], "adim": self.adim}


def make_rotation_rep(uvecs: Sequence[Sequence], adim: int, allow_zero: bool = False) -> RotationRep:
    """Validate and build a rotation representation.

    Zero u-vectors are refused unless ``allow_zero`` is set (a zero vector
    gives a block on which every ``rho(a)`` vanishes).
    """
    us = tuple(vec(u) for u in uvecs)
    if adim < 0:
        raise LinalgError("negative dimension")
    for i, u in enumerate(us):
        if len(u) != adim:
            raise LinalgError(f"u-vector {i} has length {len(u)}, expected {adim}")
        if not allow_zero and not any(u):
            raise LinalgError(f"u-vector {i} is zero")
    return RotationRep(us, adim)


def rep_from_dict(d: dict, allow_zero: bool = False) -> RotationRep:
    return make_rotation_rep(d.get("uvecs", []), int(d["adim"]), allow_zero=allow_zero)

