"""Seeded random parameters satisfying each family's conditions.

Every generated representation uses rotation blocks, and every map that
must commute with ``rho`` is built from 2x2 blocks ``pI + qJ`` linking
blocks with the same u-vector, so all draws are exact rationals.  The
u-vectors are supported on the first ``k`` coordinates of the acting space
and span them; the remaining coordinates are then exactly ``ker rho``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable

from ..connection import ProductTable
from ..linalg import ZERO, Matrix, inverse, rank
from .extension import ExtensionData
from .rotation import RotationRep
from .specs import FAMILIES, G1Spec, G2Spec, G3Spec, G4Spec, G5Spec, G6Spec, ModelSpec

MIN_DIM = {"g1": 1, "g2": 3, "g3": 2, "g4": 4, "g5": 2, "g6": 2}

J = ((ZERO, Fraction(-1)), (Fraction(1), ZERO))


def rand_q(rng: random.Random, lo: int = -3, hi: int = 3, nonzero: bool = False) -> Fraction:
    while True:
        if rng.random() < 0.2:
            x = Fraction(rng.randint(lo, hi), rng.choice((2, 3)))
        else:
            x = Fraction(rng.randint(lo, hi))
        if x or not nonzero:
            return x


def rand_vec(rng: random.Random, n: int, density: float = 0.7) -> tuple:
    return tuple(rand_q(rng) if rng.random() < density else ZERO for _ in range(n))


def _rand_uvecs(rng: random.Random, r: int, adim: int, k: int, repeat: float = 0.35) -> tuple:
    """``r`` nonzero vectors supported on the first ``k`` coordinates that span them."""
    if r == 0 or k == 0:
        return tuple((ZERO,) * adim for _ in range(r))
    for _ in range(200):
        us = []
        for i in range(r):
            if us and rng.random() < repeat:
                us.append(rng.choice(us))
                continue
            while True:
                u = tuple(rand_q(rng) if j < k else ZERO for j in range(adim))
                if any(u):
                    break
            us.append(u)
        if rank(Matrix(us)) == k:
            return tuple(us)
    # deterministic fallback: coordinate vectors then repeats
    return tuple(tuple(Fraction(int(j == i % k)) for j in range(adim)) for i in range(r))


def _groups(uvecs: tuple) -> list:
    """Block indices grouped by identical u-vector, in first-seen order."""
    out: dict = {}
    for i, u in enumerate(uvecs):
        out.setdefault(u, []).append(i)
    return list(out.values())


def _zeros(n: int) -> list:
    return [[ZERO] * n for _ in range(n)]


def _put(M: list, bi: int, bj: int, blk) -> None:
    for a in range(2):
        for b in range(2):
            M[2 * bi + a][2 * bj + b] += blk[a][b]


def _pq(p, q) -> tuple:
    return ((p, -q), (q, p))


def _rand_skew_commutant(rng: random.Random, uvecs: tuple, qmap: dict | None = None, cross: bool = True) -> Matrix:
    """Skew map on ``d`` commuting with every ``rho(a)``.

    Diagonal blocks are ``q J``; with ``qmap`` given, ``q`` depends only on
    the u-vector so that the result also commutes with every intertwiner
    built by :func:`_rand_intertwiner`.  Off-diagonal blocks inside a group
    are ``pI + qJ`` paired with ``-pI + qJ``.
    """
    r = len(uvecs)
    M = _zeros(2 * r)
    for g in _groups(uvecs):
        for idx, i in enumerate(g):
            q = qmap[uvecs[i]] if qmap is not None else rand_q(rng)
            _put(M, i, i, _pq(ZERO, q))
            if cross and qmap is None:
                for j in g[idx + 1:]:
                    if rng.random() < 0.5:
                        p, q2 = rand_q(rng), rand_q(rng)
                        _put(M, i, j, _pq(p, q2))
                        _put(M, j, i, _pq(-p, q2))
    return Matrix(M) if r else Matrix.zeros(0)


def _rand_intertwiner(rng: random.Random, u_to: tuple, u_from: tuple) -> Matrix:
    """``U`` with ``U rho_from(a) = rho_to(a) U``: blocks ``pI + qJ`` where the u-vectors agree."""
    rows, cols = 2 * len(u_to), 2 * len(u_from)
    M = [[ZERO] * cols for _ in range(rows)]
    for i, ui in enumerate(u_to):
        for j, uj in enumerate(u_from):
            if ui == uj and rng.random() < 0.7:
                p, q = rand_q(rng), rand_q(rng)
                for a in range(2):
                    for b in range(2):
                        M[2 * i + a][2 * j + b] = _pq(p, q)[a][b]
    return Matrix(M) if rows else Matrix.zeros(0, cols)


def _rand_skew_on(rng: random.Random, n: int, coords: list) -> Matrix:
    """Skew matrix supported on ``coords x coords``."""
    M = _zeros(n)
    for x in range(len(coords)):
        for y in range(x + 1, len(coords)):
            if rng.random() < 0.7:
                c = rand_q(rng)
                M[coords[x]][coords[y]] = c
                M[coords[y]][coords[x]] = -c
    return Matrix(M) if n else Matrix.zeros(0)


def _rank1_nilpotent(rng: random.Random, n: int, xs: list, ys: list) -> Matrix:
    """``x y^T`` with ``x`` on ``xs``, ``y`` on ``ys`` and ``y . x = 0``."""
    if not xs or not ys or rng.random() < 0.25:
        return Matrix.zeros(n)
    x = [ZERO] * n
    y = [ZERO] * n
    for c in xs:
        x[c] = rand_q(rng)
    for c in ys:
        y[c] = rand_q(rng)
    common = [c for c in xs if c in ys]
    if common:
        # fix y on one common coordinate so that y . x = 0
        c0 = common[0]
        rest = sum(x[c] * y[c] for c in common[1:])
        if x[c0]:
            y[c0] = -rest / x[c0]
        else:
            for c in common[1:]:
                y[c] = ZERO
    return Matrix([[x[i] * y[j] for j in range(n)] for i in range(n)])


def _split_dims(rng: random.Random, total: int, parts: int) -> list:
    cuts = sorted(rng.randint(0, total) for _ in range(parts - 1))
    out, prev = [], 0
    for c in cuts + [total]:
        out.append(c - prev)
        prev = c
    return out


# -- per-family draws ----------------------------------------------------------------

def _gen_g1(rng: random.Random, n: int) -> G1Spec:
    rest = n - 1
    adim = rng.randint(0, rest // 3)
    rmin = adim
    rmax = (rest - adim) // 2
    r = rng.randint(rmin, rmax) if rmax >= rmin else rmin
    if adim and r == 0:
        r = 1
    if adim == 0:
        r = 0
    left = rest - adim - 2 * r
    s = rng.randint(0, left // 2)
    z1 = left - 2 * s
    uvecs = _rand_uvecs(rng, r, adim, adim)
    lambdas = tuple(sorted(abs(rand_q(rng)) for _ in range(r)))
    mus = tuple(sorted(abs(rand_q(rng)) for _ in range(s)))
    return G1Spec(lambdas, mus, RotationRep(uvecs, adim), z1)


def _gen_g2(rng: random.Random, n: int) -> G2Spec:
    r = rng.randint(0, (n - 3) // 2)
    adim = n - 2 - 2 * r
    uvecs = _rand_uvecs(rng, r, adim, rng.randint(1, adim))
    rep = RotationRep(uvecs, adim)
    c = Fraction(1) if rng.random() < 0.5 else abs(rand_q(rng, nonzero=True))
    form = "proposition" if rng.random() < 0.3 else "table"
    return G2Spec(rand_q(rng), rand_vec(rng, 2 * r), rand_vec(rng, adim - 1), rep, c, form)


def _gen_g3(rng: random.Random, n: int) -> G3Spec:
    r = rng.randint(0, (n - 2) // 2)
    adim = n - 2 - 2 * r
    if r and adim == 0:
        r, adim = r - 1, adim + 2
    k = rng.randint(1, min(adim, max(r, 1))) if r else 0
    uvecs = _rand_uvecs(rng, r, adim, k)
    rep = RotationRep(uvecs, adim)
    qmap = {u: rand_q(rng) for u in set(uvecs)}
    F1 = _rand_skew_commutant(rng, uvecs, qmap)
    A1 = _zeros(2 * r)
    for g in _groups(uvecs):
        if len(g) > 1 and rng.random() < 0.6:
            for j in g[1:]:
                _put(A1, g[0], j, _pq(rand_q(rng), rand_q(rng)))
    A1 = Matrix(A1) if r else Matrix.zeros(0)
    kern = list(range(k, adim))
    nk1 = rng.randint(0, len(kern))
    K1 = kern[len(kern) - nk1:] if nk1 >= 2 else []
    K0 = [c for c in kern if c not in K1]
    F2 = _rand_skew_on(rng, adim, K1)
    A2 = _rank1_nilpotent(rng, adim, K0, [c for c in range(adim) if c not in K1])
    return G3Spec(rep, rand_vec(rng, 2 * r), A1, A2, F1, F2, rand_vec(rng, adim))


def _gen_g4(rng: random.Random, n: int) -> G4Spec:
    rest = n - 2
    s = rng.randint(1, rest // 2)
    rest -= 2 * s
    r = rng.randint(0, rest // 2)
    adim = rest - 2 * r
    if r and adim == 0:
        r, adim = r - 1, 2
    if r:
        k = rng.randint(1, min(adim, r))
        u1 = _rand_uvecs(rng, r, adim, k)
    else:
        k = rng.randint(0, adim)
        u1 = ()
    # rho2 shares the support of rho1 so that ker rho1 lies in ker rho2
    u2 = []
    for _ in range(s):
        x = rng.random()
        if x < 0.3 or k == 0:
            u2.append((ZERO,) * adim)
        elif x < 0.6 and u1:
            u2.append(rng.choice(u1))
        else:
            u2.append(tuple(rand_q(rng) if j < k else ZERO for j in range(adim)))
    u2 = tuple(u2)
    rep1, rep2 = RotationRep(u1, adim), RotationRep(u2, adim)
    E = _zeros(2 * s)
    F3 = _zeros(2 * s)
    for i in range(s):
        _put(E, i, i, _pq(ZERO, rand_q(rng, nonzero=True)))
        _put(F3, i, i, _pq(ZERO, rand_q(rng)))
    qmap = {u: rand_q(rng) for u in set(u1)}
    F1 = _rand_skew_commutant(rng, u1, qmap)
    F2 = _rand_skew_on(rng, adim, list(range(k, adim)))
    return G4Spec(rep1, rep2, rand_vec(rng, 2 * r), rand_vec(rng, 2 * s), Matrix(E), F1, F2, Matrix(F3))


def _gen_g5(rng: random.Random, n: int) -> G5Spec:
    rest = n - 2
    for _ in range(100):
        r1, r2, a1, a2 = _split_dims(rng, rest, 4)
        if r1 % 2 or r2 % 2:
            continue
        r1, r2 = r1 // 2, r2 // 2
        if (r1 or r2) and a1 == 0:
            continue
        break
    else:
        r1, r2, a1, a2 = 0, 0, rest, 0
    k = rng.randint(1, min(a1, r1 + r2)) if (r1 or r2) else 0
    # both reps need every block nonzero; draw them from one pool so U can link them
    pool = _rand_uvecs(rng, max(r1 + r2, 1), a1, k) if k else ()
    u1 = tuple(rng.choice(pool) for _ in range(r1)) if r1 else ()
    u2 = tuple(rng.choice(pool) for _ in range(r2)) if r2 else ()
    rep1, rep2 = RotationRep(u1, a1), RotationRep(u2, a1)
    qmap = {u: rand_q(rng) for u in set(u1) | set(u2)}
    F1 = _rand_skew_commutant(rng, u1, qmap)
    F2 = _rand_skew_commutant(rng, u2, qmap)
    U = _rand_intertwiner(rng, u1, u2)
    kern = list(range(k, a1))
    nk1 = rng.randint(0, len(kern))
    K1 = kern[len(kern) - nk1:] if nk1 >= 2 else []
    K0 = [c for c in kern if c not in K1]
    G1 = _rand_skew_on(rng, a1, K1)
    nb = rng.randint(0, a2)
    G2 = _rand_skew_on(rng, a2, list(range(a2 - nb, a2)) if nb >= 2 else [])
    ycoords = list(range(a2 - nb)) if nb >= 2 else list(range(a2))
    V = [[ZERO] * a2 for _ in range(a1)]
    if K0 and ycoords and rng.random() < 0.75:
        x = {c: rand_q(rng) for c in K0}
        y = {c: rand_q(rng) for c in ycoords}
        for i in K0:
            for j in ycoords:
                V[i][j] = x[i] * y[j]
    V = Matrix(V) if a1 else Matrix.zeros(0, a2)
    lam = rand_q(rng, nonzero=True)
    return G5Spec(
        lam, rep1, rep2, a2, rand_vec(rng, 2 * r1), rand_vec(rng, 2 * r2), F1, F2, G1, G2, U, V, rand_vec(rng, a1 + a2)
    )


def _gen_g6(rng: random.Random, n: int) -> G6Spec:
    r = rng.randint(0, (n - 2) // 2)
    adim = n - 2 - 2 * r
    if r and adim == 0:
        r, adim = r - 1, 2
    k = rng.randint(1, min(adim, max(r, 1))) if r else 0
    uvecs = _rand_uvecs(rng, r, adim, k)
    E1 = _rand_skew_commutant(rng, uvecs)
    E2 = _rand_skew_on(rng, adim, list(range(k, adim)))
    return G6Spec(rand_q(rng, nonzero=True), RotationRep(uvecs, adim), E1, E2)


_GEN: dict = {"g1": _gen_g1, "g2": _gen_g2, "g3": _gen_g3, "g4": _gen_g4, "g5": _gen_g5, "g6": _gen_g6}


def random_spec(family: str, dim: int, rng: random.Random) -> ModelSpec:
    """A parameter draw of total dimension ``dim`` satisfying the family's conditions."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if dim < MIN_DIM[family]:
        raise ValueError(f"{family} needs dimension at least {MIN_DIM[family]}")
    spec = _GEN[family](rng, dim)
    assert spec.dim == dim, (family, dim, spec.dim)
    return spec


def seeded_specs(family: str, count: int, seed: int = 0, dims=range(4, 11)) -> list:
    rng = random.Random(f"{family}:{seed}")
    dims = [d for d in dims if d >= MIN_DIM[family]]
    return [random_spec(family, dims[i % len(dims)], rng) for i in range(count)]


# -- extension fuzzing -----------------------------------------------------------------

PERTURB_TARGETS = ("E", "F", "A", "u", "v", "w", "alpha", "lam")


def perturb(data: ExtensionData, target: str, rng: random.Random) -> ExtensionData:
    """Change one entry of ``target`` by a nonzero rational.

    ``E`` and ``F`` must stay skew, so they receive ``P - G^{-1} P^T G`` for
    a single-entry ``P``, which touches one entry and its mirror.
    """
    m = data.hdim
    c = rand_q(rng, nonzero=True)
    if target in ("alpha", "lam"):
        return data.with_(**{target: getattr(data, target) + c})
    if m == 0:
        return data.with_(lam=data.lam + c)
    if target in ("u", "v", "w"):
        x = list(getattr(data, target))
        x[rng.randrange(m)] += c
        return data.with_(**{target: tuple(x)})
    i, j = rng.randrange(m), rng.randrange(m)
    P = Matrix([[c if (a, b) == (i, j) else ZERO for b in range(m)] for a in range(m)])
    if target == "A":
        return data.with_(A=data.A + P)
    if m == 1:
        # no nonzero skew map in dimension one; move lam instead
        return data.with_(lam=data.lam + c)
    if i == j:
        j = (i + 1) % m
        P = Matrix([[c if (a, b) == (i, j) else ZERO for b in range(m)] for a in range(m)])
    G = data.hmetric
    X = P - inverse(G).matmul(P.T).matmul(G)
    return data.with_(**{target: getattr(data, target) + X})


def zero_data(m: int) -> ExtensionData:
    return ExtensionData.zero(Matrix.identity(m), ProductTable.zero(m))


def generator_for(family: str) -> Callable:
    return _GEN[family]
