"""Reduced rational Betti numbers via sparse modular rank.

Ranks of boundary maps are computed over GF(p) for random primes near 2**30
(seeded, so runs are reproducible).  A modular rank never exceeds the
rational one; two independent primes must agree, a third breaks ties, and
any further disagreement is an error.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csc_matrix
from sympy import nextprime

from . import _kernels
from .simplicial import SimplicialComplex, row_index

log = logging.getLogger(__name__)


class HomologyError(RuntimeError):
    pass


class FaceBudgetExceeded(MemoryError):
    def __init__(self, dim, count, budget):
        super().__init__(f"{count} faces in dimension {dim} exceed the budget of {budget}")
        self.dim = dim


@dataclass
class ChainComplexData:
    """Faces per dimension and boundary matrices of the augmented chain complex.

    ``faces[k + 1]`` holds the ``k``-faces (``faces[0]`` is the empty face);
    ``boundaries[k]`` is ``d_k : C_k -> C_{k-1}`` for ``k >= 0``, with
    ``boundaries[0]`` the augmentation.
    """

    faces: list
    boundaries: list

    @property
    def f_vector(self) -> list:
        return [len(f) for f in self.faces[1:]]

    def check_dd_zero(self) -> bool:
        for k in range(1, len(self.boundaries)):
            prod = self.boundaries[k - 1].astype(np.int64) @ self.boundaries[k].astype(np.int64)
            if prod.count_nonzero():
                return False
        return True


def boundary_matrix(faces_k, faces_km1) -> csc_matrix:
    """``d_k`` with orientation from sorted vertex order: ``sum_i (-1)^i``."""
    n, k1 = faces_k.shape
    if k1 == 1:
        return csc_matrix(np.ones((1, n), dtype=np.int8))
    sub = _kernels.drop_one(faces_k)
    rows = row_index(faces_km1, sub)
    signs = np.tile(np.where(np.arange(k1) % 2 == 0, 1, -1).astype(np.int8), n)
    indptr = np.arange(0, n * k1 + 1, k1)
    return csc_matrix((signs, rows, indptr), shape=(len(faces_km1), n))


def boundary_matrices(K: SimplicialComplex, max_faces: int | None = None) -> ChainComplexData:
    faces = [np.empty((1, 0), dtype=np.int32)]
    for k in range(K.dimension + 1):
        f = K.faces(k)
        if max_faces is not None and len(f) > max_faces:
            raise FaceBudgetExceeded(k, len(f), max_faces)
        faces.append(f)
    bnds = [boundary_matrix(faces[k + 1], faces[k]) for k in range(K.dimension + 1)]
    return ChainComplexData(faces, bnds)


def _csc_parts(M: csc_matrix):
    M = M.tocsc()
    return (
        M.indptr.astype(np.int64),
        M.indices.astype(np.int64),
        M.data.astype(np.int64),
        M.shape[0],
    )


def boundary_ranks_mod_p(chain: ChainComplexData, p: int, method: str = "cohomology") -> list:
    """Ranks of every ``d_k`` over GF(p), using clearing.

    ``method='cohomology'`` reduces coboundaries upward from dimension -1;
    ``'homology'`` reduces boundaries downward from the top dimension.
    """
    bnds = chain.boundaries
    d = len(bnds)
    ranks = [0] * d
    if method == "cohomology":
        cleared = np.zeros(1, dtype=np.bool_)
        for k in range(d):
            # delta_{k-1} = d_k^T : columns are (k-1)-faces, rows k-faces
            T = bnds[k].T.tocsc()
            indptr, indices, data, n_rows = _csc_parts(T)
            skip = cleared if len(cleared) == T.shape[1] else np.zeros(T.shape[1], dtype=np.bool_)
            r, piv = _kernels.rank_mod_p(indptr, indices, data, n_rows, p, skip)
            ranks[k] = int(r)
            cleared = np.zeros(n_rows, dtype=np.bool_)
            cleared[piv] = True
    elif method == "homology":
        cleared = None
        for k in range(d - 1, -1, -1):
            indptr, indices, data, n_rows = _csc_parts(bnds[k])
            n_cols = len(indptr) - 1
            skip = cleared if cleared is not None else np.zeros(n_cols, dtype=np.bool_)
            r, piv = _kernels.rank_mod_p(indptr, indices, data, n_rows, p, skip)
            ranks[k] = int(r)
            cleared = np.zeros(n_rows, dtype=np.bool_)
            cleared[piv] = True
    else:
        raise ValueError(f"unknown method {method!r}")
    return ranks


def draw_primes(count: int, seed: int | None = 0) -> list:
    """``count`` distinct primes in ``[2**29, 2**30)``; ``seed=None`` uses OS entropy."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        p = int(nextprime(int(rng.integers(1 << 29, (1 << 30) - (1 << 20)))))
        if p not in out:
            out.append(p)
    return out


@dataclass(frozen=True)
class BettiVector:
    """Reduced Betti numbers; ``values[0]`` is degree -1."""

    values: tuple
    primes: tuple = ()
    fvector: tuple = field(default=(), compare=False)

    def __getitem__(self, k: int) -> int:
        i = k + 1
        return self.values[i] if 0 <= i < len(self.values) else 0

    def nonzero(self) -> dict:
        return {k - 1: b for k, b in enumerate(self.values) if b}

    def top(self) -> int:
        return len(self.values) - 2

    def as_list(self, start: int = 0) -> list:
        return list(self.values[start + 1 :])

    def reduced_euler_characteristic(self) -> int:
        return sum((-1) ** (k - 1) * b for k, b in enumerate(self.values))


def betti_from_ranks(f_aug: list, ranks: list) -> tuple:
    """``f_aug[k+1]`` = number of k-faces; ``ranks[k]`` = rank of ``d_k``."""
    d = len(ranks)
    out = []
    for k in range(-1, d):
        rk = ranks[k] if 0 <= k < d else 0
        rk1 = ranks[k + 1] if k + 1 < d else 0
        out.append(f_aug[k + 1] - rk - rk1)
    return tuple(out)


def reduced_betti(
    K: SimplicialComplex,
    primes=None,
    *,
    seed: int | None = 0,
    method: str = "cohomology",
    max_faces: int | None = None,
    chain: ChainComplexData | None = None,
) -> BettiVector:
    """Reduced rational Betti numbers of ``K``.

    ``primes`` overrides the seeded random primes.  The empty complex gives
    ``beta_{-1} = 1``.
    """
    if chain is None:
        chain = boundary_matrices(K, max_faces=max_faces)
    f_aug = [len(f) for f in chain.faces]
    candidates = list(primes) if primes is not None else draw_primes(3, seed)
    results = []
    for p in candidates:
        ranks = boundary_ranks_mod_p(chain, p, method)
        results.append((p, ranks))
        if len(results) >= 2:
            best = max(tuple(r) for _, r in results)
            agree = [q for q, r in results if tuple(r) == best]
            if len(agree) >= 2:
                return BettiVector(betti_from_ranks(f_aug, list(best)), tuple(agree), tuple(f_aug[1:]))
        if len(results) >= 3:
            break
    if len(results) == 1 and primes is not None:
        p, r = results[0]
        return BettiVector(betti_from_ranks(f_aug, r), (p,), tuple(f_aug[1:]))
    raise HomologyError(
        "modular ranks disagree across primes "
        + ", ".join(f"{p}: {r}" for p, r in results)
        + "; an exact computation is required"
    )


def exact_reduced_betti(K: SimplicialComplex) -> BettiVector:
    """Rational Betti numbers by exact elimination over QQ.  Small inputs only."""
    from sympy.polys.domains import QQ
    from sympy.polys.matrices import DomainMatrix

    chain = boundary_matrices(K)
    ranks = []
    for B in chain.boundaries:
        coo = B.tocoo()
        d = {}
        for r, c, v in zip(coo.row, coo.col, coo.data):
            d.setdefault(int(r), {})[int(c)] = QQ(int(v))
        ranks.append(DomainMatrix(d, B.shape, QQ).rank() if d else 0)
    f_aug = [len(f) for f in chain.faces]
    return BettiVector(betti_from_ranks(f_aug, ranks), (), tuple(f_aug[1:]))


def is_integrally_acyclic(K: SimplicialComplex) -> bool:
    """True iff all reduced integral homology of ``K`` vanishes.

    Requires rational acyclicity and unit invariant factors for every
    boundary map (no torsion).  Small inputs only.
    """
    from sympy import Matrix
    from sympy.matrices.normalforms import invariant_factors
    from sympy.polys.domains import ZZ

    if any(exact_reduced_betti(K).values):
        return False
    chain = boundary_matrices(K)
    for B in chain.boundaries:
        if B.nnz == 0:
            continue
        facs = invariant_factors(Matrix(B.toarray().astype(int)), domain=ZZ)
        if any(abs(int(f)) not in (0, 1) for f in facs):
            return False
    return True
