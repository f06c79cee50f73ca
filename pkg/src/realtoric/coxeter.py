"""The Coxeter complex and its decomposition into coset pieces.

Each Weyl group element ``w`` gives the facet ``{w . omega_1, ..., w . omega_n}``;
column ``i`` of a facet array holds the vertex from orbit ``i + 1``, and since
vertex ids are orbit-major every row is already sorted.

For the stabilizer ``H`` of a fundamental co-weight, the facets split into
pieces ``K^g = g . K_omega`` over the cosets ``gH``.  An induced subcomplex is
assembled piece by piece, and a piece already computed for ``g0`` is carried
to ``g`` by the element ``g g0^{-1}`` whenever that element maps vertex sets
onto each other.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .rootsystem import RootSystemSpec, parse_spec
from .simplicial import SimplicialComplex, maximalize, unique_rows
from .weyl import (
    ResourceBudgetExceeded,
    VertexTable,
    WeylElement,
    chamber_layers,
    coset_representatives,
    decomposition_coweight,
    element_to_vertex,
    stabilizer_parabolic,
    vertex_table,
    weyl_group_order,
)

log = logging.getLogger(__name__)

DEFAULT_MAX_FACETS = 5_000_000


@dataclass(frozen=True)
class CoxeterComplex:
    spec: RootSystemSpec
    table: VertexTable = field(repr=False)
    facets: np.ndarray = field(repr=False)

    @property
    def n_vertices(self) -> int:
        return len(self.table)

    @property
    def n_facets(self) -> int:
        return len(self.facets)

    @property
    def labels(self) -> np.ndarray:
        return self.table.labels

    def as_simplicial(self) -> SimplicialComplex:
        return SimplicialComplex(self.facets, self.table.labels, _canonical=True)


def build_coxeter_complex(spec, max_facets: int | None = DEFAULT_MAX_FACETS) -> CoxeterComplex:
    """Monolithic ``K_R``; refuses above ``max_facets`` chambers."""
    spec = parse_spec(spec)
    return _build_cached(spec, max_facets)


@lru_cache(maxsize=4)
def _build_cached(spec, max_facets):
    order = weyl_group_order(spec)
    if max_facets is not None and order > max_facets:
        raise ResourceBudgetExceeded(
            f"K_{spec} has {order} facets, above the budget of {max_facets}; "
            "use the piecewise path (build_piece / induced_complex_piecewise)"
        )
    layers = list(chamber_layers(spec, max_elements=None))
    facets = unique_rows(np.concatenate(layers))
    if len(facets) != order:
        raise AssertionError("chamber enumeration produced repeated facets")
    facets.setflags(write=False)
    return CoxeterComplex(spec, vertex_table(spec), facets)


@dataclass(frozen=True)
class ChamberPiece:
    """Facets ``{g h . Omega : h in H}`` for one coset representative ``g``."""

    coset_rep: WeylElement
    facets: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.facets)

    def vertices(self) -> np.ndarray:
        return np.unique(self.facets)


@lru_cache(maxsize=4)
def _base_piece(spec: RootSystemSpec, coweight: int) -> np.ndarray:
    gens = stabilizer_parabolic(spec, coweight)
    rows = np.concatenate(list(chamber_layers(spec, gens, max_elements=None)))
    rows.setflags(write=False)
    return rows


def build_piece(spec, g: WeylElement | None = None, coweight: int | None = None) -> ChamberPiece:
    """The piece ``K^g`` of the decomposition along ``Stab(omega_coweight)``."""
    spec = parse_spec(spec)
    if coweight is None:
        coweight = decomposition_coweight(spec)
    base = _base_piece(spec, coweight)
    if g is None or g.is_identity():
        return ChamberPiece(g or WeylElement.identity(spec.rank), base)
    perm = vertex_table(spec).permutation(g)
    return ChamberPiece(g, perm[base])


def transport_subcomplex(perm, piece_subcomplex: SimplicialComplex, target_vertices) -> SimplicialComplex | None:
    """Carry ``K^h_S`` to ``K^{gh}_S`` along the vertex map ``perm`` of ``g``.

    Returns the relabelled complex when ``g . V^h_S`` equals
    ``target_vertices``; otherwise ``None``, and the caller must build the
    target piece directly.
    """
    image = np.sort(np.asarray(perm)[piece_subcomplex.vertices])
    target = np.unique(np.asarray(target_vertices))
    if not np.array_equal(image, target):
        return None
    return piece_subcomplex.relabel(perm)


def _piece_rows_in(rows: np.ndarray, mask: np.ndarray) -> np.ndarray:
    """Distinct nonempty intersections of facet rows with the vertex set ``mask``."""
    kept = np.where(mask[rows], rows, -1)
    kept = kept[(kept >= 0).any(axis=1)]
    return unique_rows(kept)


def induced_rows(facets: np.ndarray, mask: np.ndarray, chunk: int = 1_000_000) -> np.ndarray:
    """Maximal faces of the subcomplex induced on ``mask`` by facet rows.

    Rows keep the orbit-column layout, so they are already sorted.
    """
    parts = [_piece_rows_in(facets[i : i + chunk], mask) for i in range(0, len(facets), chunk)]
    if not parts:
        return np.empty((0, 0), dtype=np.int32)
    return maximalize(unique_rows(np.concatenate(parts)))


@dataclass
class PieceStats:
    direct: int = 0
    transported: int = 0
    rejected: int = 0


def induced_complex_piecewise(
    spec,
    mask: np.ndarray,
    u=None,
    coweight: int | None = None,
    stats: PieceStats | None = None,
    max_rows: int | None = None,
):
    """Induced subcomplex ``K_S`` assembled from coset pieces.

    With the defining row element ``u`` given, pieces whose representatives
    agree on ``g^{-1} . u`` are obtained by transport instead of filtering the
    full piece again.  ``max_rows`` bounds the piece facets held before the
    final merge.  Returns ``(SimplicialComplex, PieceStats)``.
    """
    spec = parse_spec(spec)
    table = vertex_table(spec)
    if coweight is None:
        coweight = decomposition_coweight(spec)
    base = _base_piece(spec, coweight)
    base_vertices = np.unique(base)
    cosets = coset_representatives(spec, coweight)
    stats = stats or PieceStats()
    done = {}  # key -> (g0, K^{g0}_S)
    pieces = []
    held = 0
    for g in cosets.representatives:
        perm_g = table.permutation(g)
        target = perm_g[base_vertices]
        target = np.sort(target[mask[target]])
        key = None
        if u is not None:
            key = tuple(int(x) for x in (g.matrix.T @ np.asarray(u, dtype=np.int64)) % 2)
        hit = done.get(key) if key is not None else None
        piece = None
        if hit is not None:
            g0, piece0 = hit
            t = g * g0.inverse()
            piece = transport_subcomplex(table.permutation(t), piece0, target)
            if piece is None:
                stats.rejected += 1
            else:
                stats.transported += 1
        if piece is None:
            rows = perm_g[base]
            piece = SimplicialComplex(_piece_rows_in(rows, mask), table.labels)
            stats.direct += 1
            if key is not None and key not in done:
                done[key] = (g, piece)
        if len(piece.facets):
            pieces.append(piece.facets)
            held += len(piece.facets)
            if max_rows is not None and held > max_rows:
                raise ResourceBudgetExceeded(
                    f"piecewise K_S for {spec} holds more than {max_rows} piece facets after "
                    f"{len(pieces)} of {len(cosets)} cosets"
                )
    if not pieces:
        return SimplicialComplex(labels=table.labels), stats
    width = max(p.shape[1] for p in pieces)
    rows = np.concatenate([np.pad(p, ((0, 0), (0, width - p.shape[1])), constant_values=-1) for p in pieces])
    return SimplicialComplex(rows, table.labels), stats


@lru_cache(maxsize=16)
def _star_template(spec: RootSystemSpec, i: int, types: tuple | None):
    rows = np.concatenate(list(chamber_layers(spec, stabilizer_parabolic(spec, i), max_elements=None)))
    if types is not None:
        rows = unique_rows(rows[:, [t - 1 for t in types]])
    verts = np.unique(rows)
    local = np.searchsorted(verts, rows).astype(np.int32)
    for a in (verts, local):
        a.setflags(write=False)
    return verts, local


def vertex_star_rows(spec, v: int, types=None) -> np.ndarray:
    """Chambers of ``K_R`` containing vertex ``v``, as facet rows.

    Built from the chambers of the parabolic fixing ``omega_i`` moved by an
    element sending ``omega_i`` to ``v``.  With ``types`` (orbit labels, which
    must include that of ``v``) only those columns are kept, deduplicated.
    """
    spec = parse_spec(spec)
    table = vertex_table(spec)
    i = int(table.labels[v])
    if types is not None:
        types = tuple(sorted(set(int(t) for t in types)))
        if i not in types:
            raise ValueError(f"types {types} must include the orbit {i} of vertex {v}")
    verts, local = _star_template(spec, i, types)
    g = element_to_vertex(spec, v)
    ids = table.lookup(table.vectors[verts].astype(np.int64) @ g.matrix.T).astype(np.int32)
    return ids[local]


def induced_link(spec, v: int, mask: np.ndarray) -> SimplicialComplex:
    """Link of ``v`` in the subcomplex of ``K_R`` induced on ``mask``."""
    rows = vertex_star_rows(spec, v)
    keep = mask[rows] & (rows != v)
    kept = np.where(keep, rows, -1)
    kept = kept[keep.any(axis=1)]
    return SimplicialComplex(unique_rows(kept), vertex_table(spec).labels)


def induced_complex_from_stars(spec, mask: np.ndarray) -> SimplicialComplex:
    """``K_R`` induced on ``mask`` as the union of restricted vertex stars.

    Cost grows with the number of chosen vertices, so this suits small
    vertex sets in large types.
    """
    spec = parse_spec(spec)
    table = vertex_table(spec)
    chosen = np.flatnonzero(mask)
    types = tuple(np.unique(table.labels[chosen]).tolist())
    parts = []
    for v in chosen:
        rows = vertex_star_rows(spec, int(v), types)
        kept = np.where(mask[rows], rows, -1)
        # each face is collected once, from the star of its smallest vertex
        low = np.where(kept >= 0, kept, np.iinfo(np.int32).max).min(axis=1)
        parts.append(unique_rows(kept[low == v]))
    if not parts:
        return SimplicialComplex(labels=table.labels)
    return SimplicialComplex(np.concatenate(parts), table.labels)


def face_counts_by_type(spec) -> dict:
    """Number of faces of ``K_R`` with vertex-type set ``T``, for every ``T``.

    Faces of type ``T`` correspond to cosets of the parabolic generated by the
    complementary simple reflections.
    """
    spec = parse_spec(spec)
    n = spec.rank
    order = weyl_group_order(spec)
    out = {}
    for mask in range(1 << n):
        T = tuple(i + 1 for i in range(n) if mask >> i & 1)
        comp = [j for j in range(1, n + 1) if j not in T]
        out[T] = order // weyl_group_order(spec, comp) if comp else order
    return out


def coxeter_f_vector(spec) -> list:
    """``f_{-1}, f_0, ..., f_{n-1}`` of ``K_R`` without building facets."""
    spec = parse_spec(spec)
    f = [0] * (spec.rank + 1)
    for T, c in face_counts_by_type(spec).items():
        f[len(T)] += c
    return f
