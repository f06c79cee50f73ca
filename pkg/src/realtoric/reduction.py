"""Homology-preserving vertex removal for subcomplexes of a Coxeter complex.

A vertex whose link is nonempty and acyclic can be deleted without changing
homology (Mayer-Vietoris, the star being a cone).  Vertices of one Weyl orbit
are pairwise non-adjacent, so all removable vertices of an orbit are found
against the frozen complex and deleted together; orbits are processed in
ascending size.
"""

from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components as _graph_components

from .coxeter import induced_link
from .homology import is_integrally_acyclic, reduced_betti
from .rootsystem import parse_spec
from .simplicial import SimplicialComplex
from .weyl import vertex_table

log = logging.getLogger(__name__)


class RemovalPreconditionError(RuntimeError):
    def __init__(self, vertex, degree, betti):
        super().__init__(
            f"vertex {vertex}: link has nonzero reduced homology around degree {degree} "
            f"({betti}); compute this degree on the full complex"
        )
        self.vertex = vertex


def _link_is_connected(L: SimplicialComplex) -> bool:
    return len(L.connected_components()) == 1


def is_removable(K: SimplicialComplex, v, *, integral: bool = False, seed: int | None = 0) -> bool:
    """True iff the link of ``v`` is nonempty with vanishing reduced homology.

    Rational coefficients by default; ``integral=True`` also rules out torsion
    (exact elimination, small links only).
    """
    return link_is_acyclic(K.link(v), integral=integral, seed=seed)


def link_is_acyclic(L: SimplicialComplex, *, integral: bool = False, seed: int | None = 0) -> bool:
    """Nonempty, connected and without reduced homology."""
    if L.is_empty():
        return False
    if not _link_is_connected(L):
        return False
    if L.n_facets == 1:
        return True  # a simplex
    if integral:
        return is_integrally_acyclic(L)
    return not any(reduced_betti(L, seed=seed).values)


@dataclass
class PassRecord:
    orbit: int
    tested: int
    removed: int
    vertices: int
    facets: int | None = None


@dataclass
class ReductionTrace:
    passes: list = field(default_factory=list)
    initial_vertices: int = 0
    initial_facets: int | None = None

    @property
    def final_vertices(self) -> int:
        return self.passes[-1].vertices if self.passes else self.initial_vertices

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)


def orbit_order(labels, sizes=None) -> list:
    """Orbit labels by ascending orbit size, ties by label.

    ``sizes`` maps label -> |V_i| of the ambient complex; defaults to the
    label frequencies in ``labels``.
    """
    if sizes is None:
        vals, counts = np.unique(np.asarray(labels), return_counts=True)
        sizes = dict(zip(vals.tolist(), counts.tolist()))
    return sorted(sizes, key=lambda i: (sizes[i], i))


def _vertex_classes(vertices: np.ndarray, symmetry) -> np.ndarray:
    """Representatives of the classes of ``vertices`` under vertex permutations."""
    n = len(vertices)
    if not symmetry or n == 0:
        return vertices, np.arange(n)
    rows, cols = [], []
    for perm in symmetry:
        img = np.asarray(perm)[vertices]
        pos = np.searchsorted(vertices, img)
        pos = np.minimum(pos, n - 1)
        ok = vertices[pos] == img
        rows.append(np.arange(n)[ok])
        cols.append(pos[ok])
    r = np.concatenate(rows)
    c = np.concatenate(cols)
    g = coo_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(n, n))
    _, lab = _graph_components(g, directed=False)
    _, first = np.unique(lab, return_index=True)
    return vertices[np.sort(first)], lab


def _removable_among(cand: np.ndarray, test, symmetry) -> tuple:
    """Removable members of ``cand`` and the number of tests run."""
    if not len(cand):
        return cand, 0
    if not symmetry:
        ok = np.array([test(int(v)) for v in cand], dtype=bool)
        return cand[ok], len(cand)
    reps, lab = _vertex_classes(cand, symmetry)
    rep_lab = lab[np.searchsorted(cand, reps)]
    ok_by_lab = {int(c): test(int(v)) for c, v in zip(rep_lab, reps)}
    return cand[np.array([ok_by_lab[x] for x in lab.tolist()], dtype=bool)], len(reps)


def reduce(
    K: SimplicialComplex,
    labels,
    order=None,
    *,
    symmetry=None,
    integral: bool = False,
    seed: int | None = 0,
) -> tuple:
    """Orbit-batched removal of removable vertices.

    ``labels[v]`` is the orbit of vertex ``v`` in the ambient Coxeter complex
    and ``order`` the orbit labels to process (default: ascending orbit size
    among ``labels``).  ``symmetry`` is an optional list of vertex
    permutations that are automorphisms of ``K`` preserving every orbit;
    removability is then decided once per class.  Returns ``(K_hat, trace)``.
    """
    labels = np.asarray(labels)
    if order is None:
        order = orbit_order(labels)
    trace = ReductionTrace(initial_vertices=K.n_vertices, initial_facets=K.n_facets)
    for i in order:
        verts = K.vertices
        cand = verts[labels[verts] == i]
        removable, tested = _removable_among(
            cand, lambda v: is_removable(K, v, integral=integral, seed=seed), symmetry
        )
        if len(removable):
            K = K.delete_vertices(removable)
        trace.passes.append(PassRecord(int(i), int(tested), int(len(removable)), K.n_vertices, K.n_facets))
        log.info("orbit %s: tested %d, removed %d, %d vertices left", i, tested, len(removable), K.n_vertices)
    return K, trace


def reduce_induced(spec, mask, order=None, *, symmetry=None, integral: bool = False, seed: int | None = 0) -> tuple:
    """``reduce`` for the subcomplex of ``K_R`` induced on ``mask``, without building it.

    Deleting vertices from an induced subcomplex leaves the subcomplex induced
    on the remaining vertices, so every link is the link in ``K_R`` restricted
    to the current vertex set.  ``order`` defaults to ascending orbit size in
    ``K_R``.  Returns ``(mask_hat, trace)``; trace facet counts are left empty.
    """
    spec = parse_spec(spec)
    table = vertex_table(spec)
    mask = np.array(mask, dtype=bool)
    if order is None:
        order = orbit_order(table.labels, dict(enumerate(table.orbit_sizes().tolist(), start=1)))
    trace = ReductionTrace(initial_vertices=int(mask.sum()))
    for i in order:
        lo, hi = table.offsets[i - 1], table.offsets[i]
        cand = lo + np.flatnonzero(mask[lo:hi])

        def test(v):
            return link_is_acyclic(induced_link(spec, v, mask), integral=integral, seed=seed)

        removable, tested = _removable_among(cand, test, symmetry)
        mask[removable] = False
        trace.passes.append(PassRecord(int(i), int(tested), int(len(removable)), int(mask.sum())))
        log.info("orbit %s: tested %d, removed %d, %d vertices left", i, tested, len(removable), int(mask.sum()))
    return mask, trace


def reduce_for_degree(K: SimplicialComplex, k: int, V, *, seed: int | None = 0) -> SimplicialComplex:
    """Delete all of ``V`` at once, preserving only reduced homology in degree ``k``.

    Every vertex of ``V`` in ``K`` must have a link with vanishing reduced
    homology in degrees ``k`` and ``k - 1``; the first violation raises
    ``RemovalPreconditionError``.  ``V`` must be pairwise non-adjacent.
    """
    V = np.asarray(V, dtype=np.int64)
    present = np.intersect1d(V, K.vertices)
    for v in present:
        b = reduced_betti(K.link(int(v)), seed=seed)
        if b[k] or b[k - 1]:
            raise RemovalPreconditionError(int(v), k, b.nonzero())
    if not len(present):
        return K
    return K.delete_vertices(present)
