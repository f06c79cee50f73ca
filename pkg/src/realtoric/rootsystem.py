"""Cartan data, simple reflections and roots for finite irreducible types.

Simple roots use Bourbaki numbering throughout. Cartan entries follow
``A[i][j] = <alpha_i, alpha_j^vee>``, so column ``j`` of ``A`` holds the
coroot ``alpha_j^vee`` in the fundamental co-weight basis.  Indices passed to
public functions are 1-based, as in the Dynkin diagram labels.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

VALID_RANKS = {
    "A": "A_n with n >= 1",
    "B": "B_n with n >= 2",
    "C": "C_n with n >= 3",
    "D": "D_n with n >= 4",
    "E": "E_6, E_7 or E_8",
    "F": "F_4",
    "G": "G_2",
}

COXETER_NUMBER = {
    "A": lambda n: n + 1,
    "B": lambda n: 2 * n,
    "C": lambda n: 2 * n,
    "D": lambda n: 2 * n - 2,
    "E": lambda n: {6: 12, 7: 18, 8: 30}[n],
    "F": lambda n: 12,
    "G": lambda n: 6,
}


class InvalidSpecError(ValueError):
    """Raised for a (family, rank) pair outside the finite irreducible types."""


@dataclass(frozen=True, order=True)
class RootSystemSpec:
    family: str
    rank: int

    def __post_init__(self):
        fam = self.family.upper() if isinstance(self.family, str) else self.family
        object.__setattr__(self, "family", fam)
        if not _is_valid(fam, self.rank):
            hint = VALID_RANKS.get(fam, "one of the families A, B, C, D, E, F, G")
            raise InvalidSpecError(
                f"invalid root system {fam}{self.rank}: expected {hint}"
            )

    def __str__(self):
        return f"{self.family}{self.rank}"

    @property
    def coxeter_number(self) -> int:
        return COXETER_NUMBER[self.family](self.rank)


def _is_valid(family, rank) -> bool:
    if not isinstance(rank, (int, np.integer)) or rank < 1:
        return False
    return {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 3,
        "D": rank >= 4,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }.get(family, False)


_SPEC_RE = re.compile(r"^\s*([A-Za-z])\s*_?\s*(\d+)\s*$")


def parse_spec(text) -> RootSystemSpec:
    """Parse strings such as ``"E7"``, ``"a5"`` or ``"D_4"``."""
    if isinstance(text, RootSystemSpec):
        return text
    m = _SPEC_RE.match(str(text))
    if not m:
        raise InvalidSpecError(
            f"cannot parse root system type {text!r}; expected e.g. 'E7' or 'A5'"
        )
    return RootSystemSpec(m.group(1).upper(), int(m.group(2)))


def _dynkin_edges(spec: RootSystemSpec):
    """Edges (i, j, mult) of the Dynkin diagram, 0-based.

    ``mult`` is the entry ``A[i][j]`` for the pair; the transposed entry is -1.
    """
    fam, n = spec.family, spec.rank
    chain = [(i, i + 1, -1) for i in range(n - 1)]
    if fam == "A":
        return chain
    if fam == "B":
        # alpha_n short: A[n-2][n-1] = <alpha_{n-1}, alpha_n^vee> = -2
        return chain[:-1] + [(n - 2, n - 1, -2)]
    if fam == "C":
        # alpha_n long
        return chain[:-1] + [(n - 1, n - 2, -2)]
    if fam == "D":
        return [(i, i + 1, -1) for i in range(n - 2)] + [(n - 3, n - 1, -1)]
    if fam == "E":
        # 1-3-4-5-6-7-8 with 2 attached to 4
        return [(0, 2, -1), (1, 3, -1)] + [(i, i + 1, -1) for i in range(2, n - 1)]
    if fam == "F":
        return [(0, 1, -1), (1, 2, -2), (2, 3, -1)]
    if fam == "G":
        # alpha_1 short, alpha_2 long
        return [(1, 0, -3)]
    raise InvalidSpecError(f"unknown family {fam}")


@lru_cache(maxsize=None)
def _cartan_cached(spec: RootSystemSpec) -> np.ndarray:
    n = spec.rank
    A = 2 * np.eye(n, dtype=np.int64)
    for i, j, m in _dynkin_edges(spec):
        A[i, j] = m
        A[j, i] = -1
    A.setflags(write=False)
    return A


def cartan_matrix(spec) -> np.ndarray:
    """Bourbaki-numbered Cartan matrix as a read-only integer array."""
    return _cartan_cached(parse_spec(spec))


def reflection_matrix(cartan, j: int) -> np.ndarray:
    """Simple reflection ``s_j`` (1-based) acting on co-weight coordinates.

    Identity with column ``j`` replaced by ``e_j - A[:, j]``.
    """
    A = np.asarray(cartan, dtype=np.int64)
    n = A.shape[0]
    if not 1 <= j <= n:
        raise IndexError(f"simple reflection index {j} outside 1..{n}")
    M = np.eye(n, dtype=np.int64)
    M[:, j - 1] = -A[:, j - 1]
    M[j - 1, j - 1] = 1 - A[j - 1, j - 1]
    return M


def root_reflection_matrix(cartan, j: int) -> np.ndarray:
    """``s_j`` acting on simple-root coordinates: ``s_j(b) = b - <b, a_j^vee> a_j``."""
    return reflection_matrix(cartan, j).T.copy()


@dataclass(frozen=True)
class CartanData:
    spec: RootSystemSpec
    cartan: np.ndarray
    reflection_matrices: tuple

    @property
    def rank(self) -> int:
        return self.spec.rank


@lru_cache(maxsize=None)
def _cartan_data_cached(spec: RootSystemSpec) -> CartanData:
    A = cartan_matrix(spec)
    mats = []
    for j in range(1, spec.rank + 1):
        M = reflection_matrix(A, j)
        M.setflags(write=False)
        mats.append(M)
    return CartanData(spec, A, tuple(mats))


def cartan_data(spec) -> CartanData:
    return _cartan_data_cached(parse_spec(spec))


def enumerate_roots(cartan, max_roots: int = 10_000) -> np.ndarray:
    """All roots in simple-root coordinates, by closure of the simple roots.

    Returned sorted lexicographically, as an ``(N, n)`` integer array.
    Raises ``ValueError`` if the closure exceeds ``max_roots`` (the matrix is
    then not of finite type).
    """
    A = np.asarray(cartan, dtype=np.int64)
    n = A.shape[0]
    seen = {tuple(int(x) for x in row) for row in np.eye(n, dtype=np.int64)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for b in frontier:
            pairing = np.asarray(b) @ A  # <b, alpha_j^vee> for each j
            for j in range(n):
                c = list(b)
                c[j] -= int(pairing[j])
                t = tuple(c)
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
                    if len(seen) > max_roots:
                        raise ValueError(
                            "root closure exceeded the iteration cap; "
                            "Cartan matrix is not of finite type"
                        )
        frontier = nxt
    return np.array(sorted(seen), dtype=np.int64)
