"""Weyl group elements, co-weight orbits, parabolic stabilizers and cosets.

Group elements are carried as integer matrices in the fundamental co-weight
basis (column ``i`` is ``w . omega_i``), together with a word in the simple
reflections.  Bulk enumeration works layer by layer on stacked matrices so
that the E7 group (2,903,040 elements) never leaves numpy, and the E8 group
is only ever handled in coset-factored form.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

import numpy as np

from .rootsystem import RootSystemSpec, cartan_data, enumerate_roots, parse_spec

log = logging.getLogger(__name__)

_KEY_BITS = 7
_KEY_OFFSET = 1 << (_KEY_BITS - 1)


class ResourceBudgetExceeded(RuntimeError):
    """A computation would exceed the configured element or memory budget."""


def encode_vectors(vectors) -> np.ndarray:
    """Order-preserving int64 keys for integer vectors of length <= 9.

    Key order equals lexicographic order of the vectors.
    """
    v = np.asarray(vectors, dtype=np.int64)
    if v.ndim == 1:
        v = v[None, :]
    if v.shape[1] * _KEY_BITS > 63:
        raise ValueError("vector too long to encode")
    if v.size and (v.min() < -_KEY_OFFSET or v.max() >= _KEY_OFFSET):
        raise OverflowError("coordinate outside the encodable range")
    keys = np.zeros(v.shape[0], dtype=np.int64)
    for c in range(v.shape[1]):
        keys = (keys << _KEY_BITS) | (v[:, c] + _KEY_OFFSET)
    return keys


@dataclass(frozen=True, eq=False)
class WeylElement:
    """A Weyl group element as a co-weight-basis matrix plus a word."""

    matrix: np.ndarray
    word: tuple = ()

    @classmethod
    def identity(cls, n: int) -> "WeylElement":
        return cls(np.eye(n, dtype=np.int64), ())

    @classmethod
    def from_word(cls, spec, word) -> "WeylElement":
        cd = cartan_data(spec)
        M = np.eye(cd.rank, dtype=np.int64)
        for j in word:
            M = M @ cd.reflection_matrices[j - 1]
        return cls(M, tuple(word))

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(self.matrix @ other.matrix, self.word + other.word)

    def inverse(self) -> "WeylElement":
        M = np.rint(np.linalg.inv(self.matrix)).astype(np.int64)
        return WeylElement(M, tuple(reversed(self.word)))

    def __eq__(self, other):
        return isinstance(other, WeylElement) and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash(self.matrix.tobytes())

    @property
    def root_matrix(self) -> np.ndarray:
        """Action on simple-root coordinates, the inverse transpose of ``matrix``."""
        return np.rint(np.linalg.inv(self.matrix).T).astype(np.int64)

    def act(self, vectors) -> np.ndarray:
        """Apply to co-weight vectors given as rows."""
        return np.asarray(vectors, dtype=np.int64) @ self.matrix.T

    def perm(self, roots) -> np.ndarray:
        """Permutation of ``roots`` (rows, simple-root coordinates)."""
        roots = np.asarray(roots, dtype=np.int64)
        keys = encode_vectors(roots)
        order = np.argsort(keys)
        img = encode_vectors(roots @ self.root_matrix.T)
        pos = np.searchsorted(keys[order], img)
        return order[pos]

    def is_identity(self) -> bool:
        return np.array_equal(self.matrix, np.eye(self.matrix.shape[0], dtype=np.int64))


def _generator_indices(spec, generators) -> list:
    n = spec.rank
    if generators is None:
        return list(range(1, n + 1))
    gens = sorted(set(int(j) for j in generators))
    if any(not 1 <= j <= n for j in gens):
        raise IndexError(f"generator indices must lie in 1..{n}")
    return gens


def orbit_of_vector(spec, vector, generators=None) -> np.ndarray:
    """Orbit of a co-weight vector under the subgroup generated by ``generators``.

    Rows sorted lexicographically.
    """
    spec = parse_spec(spec)
    mats = [cartan_data(spec).reflection_matrices[j - 1] for j in _generator_indices(spec, generators)]
    start = np.asarray(vector, dtype=np.int64)[None, :]
    seen = encode_vectors(start)
    frontier = start
    layers = [start]
    while len(frontier):
        cand = np.concatenate([frontier @ M.T for M in mats])
        keys = encode_vectors(cand)
        keys, idx = np.unique(keys, return_index=True)
        fresh = ~np.isin(keys, seen, assume_unique=True)
        frontier = cand[idx[fresh]]
        seen = np.union1d(seen, keys[fresh])
        if len(frontier):
            layers.append(frontier)
    allv = np.concatenate(layers)
    return allv[np.argsort(encode_vectors(allv))]


def coweight_orbit(spec, i: int) -> np.ndarray:
    """Orbit ``W . omega_i`` (1-based ``i``) in lexicographic order."""
    spec = parse_spec(spec)
    if not 1 <= i <= spec.rank:
        raise IndexError(f"co-weight index {i} outside 1..{spec.rank}")
    return _coweight_orbit_cached(spec, i)


@lru_cache(maxsize=None)
def _coweight_orbit_cached(spec: RootSystemSpec, i: int) -> np.ndarray:
    e = np.zeros(spec.rank, dtype=np.int64)
    e[i - 1] = 1
    orb = orbit_of_vector(spec, e)
    orb.setflags(write=False)
    return orb


def stabilizer_parabolic(spec, i: int) -> tuple:
    """Simple reflections generating the stabilizer of ``omega_i``."""
    spec = parse_spec(spec)
    if not 1 <= i <= spec.rank:
        raise IndexError(f"co-weight index {i} outside 1..{spec.rank}")
    return tuple(j for j in range(1, spec.rank + 1) if j != i)


def dominant_word(spec, vector) -> tuple:
    """``(dominant, word)`` with ``vector == from_word(word).act(dominant)``.

    Reflects in the first simple root with a negative coordinate until none is left.
    """
    spec = parse_spec(spec)
    A = cartan_data(spec).cartan.astype(np.int64)
    x = np.array(vector, dtype=np.int64)
    word = []
    while True:
        neg = np.nonzero(x < 0)[0]
        if not len(neg):
            return x, tuple(word)
        j = int(neg[0])
        x = x - x[j] * A[:, j]
        word.append(j + 1)


def element_to_vertex(spec, vertex: int) -> WeylElement:
    """A group element sending ``omega_i`` to ``vertex`` (``i`` its orbit label)."""
    table = vertex_table(spec)
    _, word = dominant_word(spec, table.vectors[int(vertex)])
    return WeylElement.from_word(spec, word)


def _parabolic_order(A: np.ndarray) -> int:
    """Order of the Weyl group of a (possibly reducible) Cartan matrix.

    Recursion ``|W| = |W . omega_last| * |W_parabolic|`` on principal
    submatrices; orbits are taken in the submatrix's own co-weight lattice.
    """
    n = A.shape[0]
    if n == 0:
        return 1
    mats = []
    for j in range(n):
        M = np.eye(n, dtype=np.int64)
        M[:, j] = -A[:, j]
        M[j, j] = 1 - A[j, j]
        mats.append(M)
    e = np.zeros(n, dtype=np.int64)
    e[-1] = 1
    seen = {tuple(e)}
    frontier = [e]
    while frontier:
        nxt = []
        for v in frontier:
            for M in mats:
                t = tuple(M @ v)
                if t not in seen:
                    seen.add(t)
                    nxt.append(np.array(t))
        frontier = nxt
    return len(seen) * _parabolic_order(A[:-1, :-1])


def weyl_group_order(spec, generators=None) -> int:
    """Order of ``W`` or of the standard parabolic generated by ``generators``."""
    spec = parse_spec(spec)
    idx = [j - 1 for j in _generator_indices(spec, generators)]
    A = cartan_data(spec).cartan[np.ix_(idx, idx)]
    return _parabolic_order(np.asarray(A))


def _bfs_layers(spec, gens, payload, step):
    """Breadth-first layers of a standard parabolic, carrying a payload.

    ``step(payload, j)`` returns the payload of ``s_j . w`` for the stacked
    elements ``w``.  Elements are identified by ``w . rho``, whose
    stabilizer is trivial.
    """
    mats = [cartan_data(spec).reflection_matrices[j - 1] for j in gens]
    rho = np.ones((1, spec.rank), dtype=np.int64)
    prev_keys = np.empty(0, dtype=np.int64)
    cur_keys = encode_vectors(rho)
    while len(rho):
        yield payload
        cand_rho = np.concatenate([rho @ M.T for M in mats])
        keys = encode_vectors(cand_rho)
        keys, idx = np.unique(keys, return_index=True)
        fresh = ~np.isin(keys, prev_keys, assume_unique=True)
        idx = idx[fresh]
        prev_keys, cur_keys = cur_keys, keys[fresh]
        rho = cand_rho[idx]
        cand = np.concatenate([step(payload, j) for j in gens])
        payload = cand[idx]


def _check_budget(spec, gens, max_elements):
    if max_elements is not None:
        order = weyl_group_order(spec, gens)
        if order > max_elements:
            raise ResourceBudgetExceeded(
                f"{spec} subgroup of order {order} exceeds the element budget "
                f"{max_elements}; use the coset-factored path"
            )


def generate_weyl_group(spec, generators=None, max_elements: int | None = 50_000_000) -> Iterator[np.ndarray]:
    """Stream the group (or a standard parabolic) as stacked co-weight matrices.

    Yields one ``(k, n, n)`` int64 array per length layer; every element
    appears exactly once.  Refuses when the group order exceeds
    ``max_elements``.
    """
    spec = parse_spec(spec)
    gens = _generator_indices(spec, generators)
    _check_budget(spec, gens, max_elements)
    mats = cartan_data(spec).reflection_matrices

    def step(current, j):
        return np.matmul(mats[j - 1], current)

    yield from _bfs_layers(spec, gens, np.eye(spec.rank, dtype=np.int64)[None], step)


def chamber_layers(spec, generators=None, base=None, max_elements: int | None = 50_000_000):
    """Stream facets ``{w . omega_i}`` as vertex-id rows, layer by layer.

    ``base`` is the starting facet (default: the fundamental chamber);
    column ``i`` holds the vertex of orbit ``i + 1``.
    """
    spec = parse_spec(spec)
    gens = _generator_indices(spec, generators)
    _check_budget(spec, gens, max_elements)
    table = vertex_table(spec)
    perms = {j: table.permutation(WeylElement.from_word(spec, (j,))) for j in gens}
    if base is None:
        base = table.lookup(np.eye(spec.rank, dtype=np.int64)).astype(np.int32)

    def step(facets, j):
        return perms[j][facets]

    yield from _bfs_layers(spec, gens, np.asarray(base, dtype=np.int32)[None], step)


@dataclass(frozen=True)
class CosetTable:
    """Minimal-length representatives of ``W / H`` for ``H = Stab(omega_i)``.

    ``representatives[k]`` sends ``omega_i`` to the ``k``-th vector of the
    lexicographically sorted orbit.
    """

    spec: RootSystemSpec
    coweight: int
    subgroup_generators: tuple
    representatives: list = field(repr=False)

    def __len__(self):
        return len(self.representatives)


def coset_representatives(spec, i: int) -> CosetTable:
    """One minimal-length representative per coset of ``Stab(omega_i)``."""
    spec = parse_spec(spec)
    cd = cartan_data(spec)
    orbit = coweight_orbit(spec, i)
    keys = encode_vectors(orbit)
    n = spec.rank
    start = np.zeros(n, dtype=np.int64)
    start[i - 1] = 1
    reps = {int(encode_vectors(start)[0]): WeylElement.identity(n)}
    frontier = [(start, reps[int(encode_vectors(start)[0])])]
    while frontier:
        nxt = []
        for v, g in frontier:
            for j in range(1, n + 1):
                if v[j - 1] == 0:
                    continue
                w = cd.reflection_matrices[j - 1] @ v
                k = int(encode_vectors(w)[0])
                if k not in reps:
                    h = WeylElement(cd.reflection_matrices[j - 1] @ g.matrix, (j,) + g.word)
                    reps[k] = h
                    nxt.append((w, h))
        frontier = nxt
    ordered = [reps[int(k)] for k in keys]
    return CosetTable(spec, i, stabilizer_parabolic(spec, i), ordered)


def decomposition_coweight(spec) -> int:
    """Co-weight used for the coset decomposition of the Coxeter complex.

    The node whose orbit has exactly ``|Phi|`` elements (the adjoint node) when
    one exists, otherwise the smallest orbit; ties go to the smaller index.
    """
    spec = parse_spec(spec)
    n_roots = spec.rank * spec.coxeter_number
    sizes = [len(coweight_orbit(spec, i)) for i in range(1, spec.rank + 1)]
    adjoint = [i + 1 for i, s in enumerate(sizes) if s == n_roots]
    if adjoint:
        return adjoint[0]
    return int(np.argmin(sizes)) + 1


@dataclass(frozen=True)
class VertexTable:
    """Canonical vertex ids for the Coxeter complex of ``spec``.

    Vertex ids are orbit-major: orbit ``i`` (1-based) occupies ids
    ``offsets[i-1] .. offsets[i]-1`` in lexicographic order of the vectors.
    """

    spec: RootSystemSpec
    vectors: np.ndarray
    labels: np.ndarray
    offsets: np.ndarray
    _sorted_keys: np.ndarray = field(repr=False)
    _key_order: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.labels)

    def orbit_sizes(self) -> np.ndarray:
        return np.diff(self.offsets)

    def orbit_ids(self, i: int) -> np.ndarray:
        return np.arange(self.offsets[i - 1], self.offsets[i])

    def lookup(self, vectors) -> np.ndarray:
        """Vertex ids of co-weight vectors (rows); raises KeyError if absent."""
        keys = encode_vectors(vectors)
        pos = np.searchsorted(self._sorted_keys, keys)
        pos = np.minimum(pos, len(self._sorted_keys) - 1)
        if not np.array_equal(self._sorted_keys[pos], keys):
            raise KeyError("vector is not a vertex of the Coxeter complex")
        return self._key_order[pos]

    def permutation(self, element) -> np.ndarray:
        """Vertex permutation ``v -> g . v`` induced by a group element."""
        M = element.matrix if isinstance(element, WeylElement) else np.asarray(element)
        return self.lookup(self.vectors.astype(np.int64) @ M.T).astype(np.int32)


@lru_cache(maxsize=None)
def _vertex_table_cached(spec: RootSystemSpec) -> VertexTable:
    orbits = [coweight_orbit(spec, i) for i in range(1, spec.rank + 1)]
    vectors = np.concatenate(orbits).astype(np.int16)
    labels = np.concatenate([np.full(len(o), i + 1, dtype=np.int8) for i, o in enumerate(orbits)])
    offsets = np.concatenate([[0], np.cumsum([len(o) for o in orbits])]).astype(np.int64)
    keys = encode_vectors(vectors)
    order = np.argsort(keys, kind="stable")
    for a in (vectors, labels, offsets, order):
        a.setflags(write=False)
    return VertexTable(spec, vectors, labels, offsets, keys[order], order)


def vertex_table(spec) -> VertexTable:
    return _vertex_table_cached(parse_spec(spec))


def root_permutation_group(spec) -> list:
    """Simple reflections as permutations of the sorted root list."""
    spec = parse_spec(spec)
    roots = enumerate_roots(cartan_data(spec).cartan)
    return [WeylElement.from_word(spec, (j,)).perm(roots) for j in range(1, spec.rank + 1)]
