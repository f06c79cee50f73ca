"""Facet-represented simplicial complexes.

A complex is stored as its maximal faces only: an ``(N, w)`` int32 array,
each row sorted ascending and padded with ``-1``, rows in lexicographic
order.  The complex with no facets is ``{empty face}``, whose only reduced
homology is in degree -1.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components as _graph_components

from . import _kernels


def sort_rows(rows) -> np.ndarray:
    """Sort each row ascending with ``-1`` entries moved to the end."""
    a = np.asarray(rows, dtype=np.int32)
    if a.size == 0:
        return a.reshape(a.shape[0], a.shape[1] if a.ndim == 2 else 0)
    big = np.iinfo(np.int32).max
    a = np.where(a < 0, big, a)
    a.sort(axis=1)
    a[a == big] = -1
    return a


def _void_view(rows):
    be = np.ascontiguousarray(rows, dtype=">i4")
    return be.view(np.dtype((np.void, be.dtype.itemsize * be.shape[1]))).ravel()


def unique_rows(rows) -> np.ndarray:
    """Distinct rows in lexicographic order (``-1`` sorts last)."""
    rows = np.asarray(rows, dtype=np.int32)
    if len(rows) == 0 or rows.shape[1] == 0:
        return rows[:1] if len(rows) else rows
    u = np.unique(_void_view(rows))
    return u.view(">i4").reshape(-1, rows.shape[1]).astype(np.int32)


def row_index(table, queries) -> np.ndarray:
    """Positions of ``queries`` rows in the lexicographically sorted ``table``."""
    if table.shape[1] == 0:
        return np.zeros(len(queries), dtype=np.int64)
    t = _void_view(table)
    q = _void_view(queries)
    pos = np.searchsorted(t, q)
    return pos


def maximalize(rows) -> np.ndarray:
    """Canonical maximal-face array from arbitrary (possibly redundant) rows."""
    rows = sort_rows(rows)
    if len(rows) == 0:
        return np.empty((0, 0), dtype=np.int32)
    sizes = _kernels.row_sizes(rows)
    width = int(sizes.max()) if len(sizes) else 0
    rows = rows[:, :width]
    if width == 0:
        return np.empty((0, 0), dtype=np.int32)
    rows = unique_rows(rows[sizes > 0])
    sizes = _kernels.row_sizes(rows)
    order = np.argsort(-sizes, kind="stable")
    keep = _kernels.maximal_mask(rows[order], sizes[order], int(rows.max()) + 1)
    out = rows[np.sort(order[keep])]
    return out


def _as_mask(S, n_ids) -> np.ndarray:
    S = np.asarray(S)
    if S.dtype == np.bool_:
        if len(S) >= n_ids:
            return S
        m = np.zeros(n_ids, dtype=bool)
        m[: len(S)] = S
        return m
    m = np.zeros(max(n_ids, int(S.max()) + 1 if S.size else 0), dtype=bool)
    m[S.astype(np.int64)] = True
    return m


class SimplicialComplex:
    """A finite simplicial complex on non-negative integer vertex ids.

    ``labels`` optionally maps vertex id to an orbit label (shared, indexed by
    id).  Instances are treated as immutable.
    """

    def __init__(self, facets=None, labels=None, *, _canonical=False):
        if facets is None or len(facets) == 0:
            self.facets = np.empty((0, 0), dtype=np.int32)
        elif _canonical:
            self.facets = np.asarray(facets, dtype=np.int32)
        else:
            self.facets = maximalize(np.asarray(facets, dtype=np.int32))
        self.facets.setflags(write=False)
        self.labels = labels
        self._vertices = None
        self._incidence = None

    @classmethod
    def from_simplices(cls, simplices, labels=None) -> "SimplicialComplex":
        simplices = [sorted(set(int(v) for v in s)) for s in simplices]
        simplices = [s for s in simplices if s]
        if not simplices:
            return cls(labels=labels)
        w = max(len(s) for s in simplices)
        rows = np.full((len(simplices), w), -1, dtype=np.int32)
        for r, s in enumerate(simplices):
            rows[r, : len(s)] = s
        return cls(rows, labels)

    # -- basic data ---------------------------------------------------------

    @property
    def vertices(self) -> np.ndarray:
        if self._vertices is None:
            f = self.facets
            self._vertices = np.unique(f[f >= 0]).astype(np.int64)
        return self._vertices

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_facets(self) -> int:
        return len(self.facets)

    @property
    def dimension(self) -> int:
        if not len(self.facets):
            return -1
        return int(_kernels.row_sizes(self.facets).max()) - 1

    def facet_sizes(self) -> np.ndarray:
        return _kernels.row_sizes(self.facets)

    def is_empty(self) -> bool:
        """True for the complex whose only face is the empty face."""
        return len(self.facets) == 0

    def facet_list(self) -> list:
        return [tuple(int(v) for v in row if v >= 0) for row in self.facets]

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and _same_rows(self.facets, other.facets)

    def __hash__(self):
        return hash(self.facets.tobytes())

    def __repr__(self):
        return f"SimplicialComplex(vertices={self.n_vertices}, facets={self.n_facets}, dim={self.dimension})"

    def __contains__(self, simplex) -> bool:
        s = sorted(int(v) for v in simplex)
        if not s:
            return True
        verts = set(s)
        for row in self.facets[self._rows_with(s[0])]:
            if verts.issubset(set(int(v) for v in row if v >= 0)):
                return True
        return False

    def _new(self, rows) -> "SimplicialComplex":
        return SimplicialComplex(rows, self.labels)

    def _id_space(self) -> int:
        return int(self.facets.max()) + 1 if self.facets.size else 0

    def _incidence_csr(self):
        """Vertex -> facet-row incidence as (indptr, rows)."""
        if self._incidence is None:
            f = self.facets
            r, c = np.nonzero(f >= 0)
            v = f[r, c].astype(np.int64)
            order = np.argsort(v, kind="stable")
            counts = np.bincount(v, minlength=self._id_space())
            indptr = np.concatenate([[0], np.cumsum(counts)])
            self._incidence = (indptr, r[order])
        return self._incidence

    def _rows_with(self, v) -> np.ndarray:
        indptr, rows = self._incidence_csr()
        if v < 0 or v >= len(indptr) - 1:
            return np.empty(0, dtype=np.int64)
        return rows[indptr[v] : indptr[v + 1]]

    # -- operations ----------------------------------------------------------

    def induced(self, S) -> "SimplicialComplex":
        """Induced subcomplex on the vertex set ``S`` (ids or boolean mask)."""
        if not len(self.facets):
            return self._new(None)
        mask = _as_mask(S, self._id_space())
        f = self.facets
        kept = np.where((f >= 0) & mask[np.maximum(f, 0)], f, -1)
        return self._new(kept)

    def delete_vertices(self, W) -> "SimplicialComplex":
        """``K - W``: remove the vertices of ``W`` from every face."""
        if not len(self.facets):
            return self._new(None)
        mask = _as_mask(W, self._id_space())
        f = self.facets
        kept = np.where((f >= 0) & ~mask[np.maximum(f, 0)], f, -1)
        return self._new(kept)

    def star(self, v) -> "SimplicialComplex":
        """Closed star of ``v``."""
        return SimplicialComplex(self.facets[np.sort(self._rows_with(v))], self.labels, _canonical=True)

    def link(self, v) -> "SimplicialComplex":
        """Link of ``v``; the empty complex when ``v`` is isolated or absent."""
        rows = self.facets[np.sort(self._rows_with(v))]
        rows = np.where(rows == v, -1, rows)
        return self._new(rows)

    def relabel(self, perm) -> "SimplicialComplex":
        """Image under the vertex map ``v -> perm[v]``."""
        if not len(self.facets):
            return self._new(None)
        perm = np.asarray(perm)
        f = self.facets
        img = np.where(f >= 0, perm[np.maximum(f, 0)], -1)
        return SimplicialComplex(unique_rows(sort_rows(img)), self.labels, _canonical=True)

    def connected_components(self) -> list:
        """Components ordered by smallest vertex id."""
        if not len(self.facets):
            return []
        verts = self.vertices
        f = self.facets
        r, c = np.nonzero(f >= 0)
        vidx = np.searchsorted(verts, f[r, c])
        nv, nf = len(verts), len(f)
        # bipartite vertex-facet incidence graph
        g = coo_matrix((np.ones(len(r), dtype=np.int8), (vidx, nv + r)), shape=(nv + nf, nv + nf))
        ncomp, lab = _graph_components(g, directed=False)
        facet_lab = lab[nv:]
        first_vertex = {}
        for i, l in enumerate(lab[:nv]):
            first_vertex.setdefault(int(l), i)
        comps = []
        for l in sorted(first_vertex, key=first_vertex.get):
            comps.append(SimplicialComplex(f[facet_lab == l], self.labels, _canonical=True))
        return comps

    def faces(self, k: int) -> np.ndarray:
        """All ``k``-dimensional faces, lexicographically sorted ``(N, k+1)`` array."""
        if k < 0:
            return np.empty((1 if k == -1 else 0, 0), dtype=np.int32)
        if not len(self.facets):
            return np.empty((0, k + 1), dtype=np.int32)
        sizes = self.facet_sizes()
        sel = sizes >= k + 1
        sub = _kernels.subsets_of_size(self.facets[sel], sizes[sel], k + 1)
        return unique_rows(sub)

    def f_vector(self) -> list:
        """Face counts ``[f_0, f_1, ...]``."""
        return [len(self.faces(k)) for k in range(self.dimension + 1)]

    def is_pure(self) -> bool:
        sizes = self.facet_sizes()
        return bool(len(sizes) == 0 or sizes.min() == sizes.max())

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * f for k, f in enumerate(self.f_vector()))

    def all_simplices(self) -> set:
        """Every nonempty face as a tuple.  Only for small complexes."""
        out = set()
        for row in self.facet_list():
            for k in range(1, len(row) + 1):
                out.update(combinations(row, k))
        return out


def _same_rows(a, b) -> bool:
    if len(a) == 0 and len(b) == 0:
        return True
    return a.shape == b.shape and np.array_equal(a, b)


def induced_subcomplex(K: SimplicialComplex, S) -> SimplicialComplex:
    return K.induced(S)


def link(K: SimplicialComplex, v) -> SimplicialComplex:
    return K.link(v)


def star(K: SimplicialComplex, v) -> SimplicialComplex:
    return K.star(v)


def delete_vertices(K: SimplicialComplex, W) -> SimplicialComplex:
    return K.delete_vertices(W)


def connected_components(K: SimplicialComplex) -> list:
    return K.connected_components()


def f_vector(K: SimplicialComplex) -> list:
    return K.f_vector()


def is_pure(K: SimplicialComplex) -> bool:
    return K.is_pure()


def isomorphic_via(g, K1: SimplicialComplex, K2: SimplicialComplex, table=None) -> bool:
    """True iff relabelling ``K1`` by ``g`` gives exactly ``K2``.

    ``g`` is a vertex permutation array, or a group element together with the
    vertex ``table`` of the ambient Coxeter complex.
    """
    perm = table.permutation(g) if table is not None else np.asarray(g)
    return K1.relabel(perm) == K2
