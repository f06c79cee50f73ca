"""Mod-2 characteristic matrix, its row space, and Weyl orbits of row elements.

A row element ``u`` in GF(2)^n selects the vertex set
``S_u = {v : <u, lambda(v)> = 1 mod 2}``.  The group acts on row elements by
``u -> M(g)^{-T} u`` (the action on roots, reduced mod 2), and
``g . S_u = S_{g . u}``, so orbits are computed on at most 255 vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .rootsystem import cartan_data, parse_spec
from .weyl import VertexTable, WeylElement, vertex_table

# reference vertex counts |S| used to attach the conventional labels S1..S5
KNOWN_SUBSET_LABELS = {
    "E7": {9176: "S1", 8672: "S2", 4664: "S3"},
    "E8": {432944: "S4", 451200: "S5"},
}


@dataclass(frozen=True)
class CharacteristicMatrix:
    """``columns[:, v]`` is the lattice vector of vertex ``v`` mod 2."""

    columns: np.ndarray = field(repr=False)

    @property
    def shape(self):
        return self.columns.shape

    def rank(self) -> int:
        return gf2_rank(self.columns)


def gf2_rank(M) -> int:
    A = (np.asarray(M) % 2).astype(np.uint8).copy()
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        piv = np.nonzero(A[r:, c])[0]
        if len(piv) == 0:
            continue
        p = r + piv[0]
        A[[r, p]] = A[[p, r]]
        hit = np.nonzero(A[:, c])[0]
        hit = hit[hit != r]
        A[hit] ^= A[r]
        r += 1
        if r == rows:
            break
    return r


def characteristic_matrix(K) -> CharacteristicMatrix:
    """From a ``CoxeterComplex``, a ``VertexTable`` or a type string."""
    table = K if isinstance(K, VertexTable) else getattr(K, "table", None)
    if table is None:
        table = vertex_table(K)
    cols = (table.vectors.astype(np.int64).T % 2).astype(np.uint8)
    cols.setflags(write=False)
    return CharacteristicMatrix(cols)


def as_row(u, n: int | None = None) -> tuple:
    """Normalise a row element given as bits, a bit string or a sequence."""
    if isinstance(u, str):
        bits = tuple(int(c) for c in u.strip())
        if any(b not in (0, 1) for b in bits):
            raise ValueError(f"row element {u!r} must be a string of 0/1")
    else:
        bits = tuple(int(x) % 2 for x in u)
    if n is not None and len(bits) != n:
        raise ValueError(f"row element needs {n} bits, got {len(bits)}")
    return bits


def row_string(u) -> str:
    return "".join(str(b) for b in u)


def subset_for_row(u, char: CharacteristicMatrix) -> np.ndarray:
    """Boolean mask of the vertices ``v`` with ``<u, lambda(v)> = 1``."""
    u = np.asarray(as_row(u, char.shape[0]), dtype=np.int64)
    if not u.any():
        raise ValueError("row element must be nonzero")
    return (u @ char.columns.astype(np.int64)) % 2 == 1


def dual_action(g: WeylElement, u) -> tuple:
    """``M(g)^{-T} u`` mod 2."""
    return tuple(int(x) for x in (g.root_matrix @ np.asarray(u, dtype=np.int64)) % 2)


def _generator_actions(spec):
    # the root action of s_j is M_j^T
    return [M.T % 2 for M in cartan_data(spec).reflection_matrices]


@dataclass(frozen=True)
class RowOrbit:
    representative: tuple
    size: int
    members: tuple = field(repr=False)
    transversal: dict = field(repr=False, compare=False, default_factory=dict)

    @property
    def bits(self) -> str:
        return row_string(self.representative)


def row_orbits(spec) -> list:
    """Orbits of nonzero row elements, ordered by (size, representative).

    Each representative is the lexicographically smallest member.  The
    transversal maps each member ``x`` to a word ``w`` with ``w . rep = x``.
    """
    spec = parse_spec(spec)
    n = spec.rank
    acts = _generator_actions(spec)
    remaining = {u for u in product((0, 1), repeat=n) if any(u)}
    orbits = []
    while remaining:
        rep = min(remaining)
        trans = {rep: ()}
        frontier = [rep]
        while frontier:
            nxt = []
            for x in frontier:
                for j, R in enumerate(acts, start=1):
                    y = tuple(int(c) for c in (R @ np.asarray(x)) % 2)
                    if y not in trans:
                        trans[y] = (j,) + trans[x]
                        nxt.append(y)
            frontier = nxt
        remaining -= set(trans)
        orbits.append(RowOrbit(rep, len(trans), tuple(sorted(trans)), trans))
    orbits.sort(key=lambda o: (o.size, o.representative))
    return orbits


def stabilizer_generators(spec, u, limit: int | None = None, seed: int = 0) -> list:
    """Schreier generators of the stabilizer of ``u`` under the dual action.

    With ``limit`` set, a seeded random subset of at most ``limit`` distinct
    nontrivial generators is returned; every returned element fixes ``u``.
    """
    spec = parse_spec(spec)
    u = as_row(u, spec.rank)
    orbit = next(o for o in row_orbits(spec) if u in o.members)
    # words sending u (not the representative) to each member
    base = WeylElement.from_word(spec, orbit.transversal[u])
    base_inv = base.inverse()
    trans = {x: WeylElement.from_word(spec, w) * base_inv for x, w in orbit.transversal.items()}
    gens = {}
    for x, t in trans.items():
        for j in range(1, spec.rank + 1):
            s = WeylElement.from_word(spec, (j,))
            st = s * t
            y = dual_action(st, u)
            h = trans[y].inverse() * st
            if not h.is_identity():
                gens.setdefault(h.matrix.tobytes(), h)
    out = [gens[k] for k in sorted(gens)]
    if limit is not None and len(out) > limit:
        rng = np.random.default_rng(seed)
        idx = np.sort(rng.choice(len(out), size=limit, replace=False))
        out = [out[i] for i in idx]
    return out


def orbit_label(spec, subset_size: int) -> str | None:
    return KNOWN_SUBSET_LABELS.get(str(parse_spec(spec)), {}).get(int(subset_size))
