import numpy as np
import pytest
from conftest import boundary_of_simplex
from hypothesis import given, settings
from strategies import complexes

from realtoric.charrow import characteristic_matrix, row_orbits, stabilizer_generators, subset_for_row
from realtoric.coxeter import build_coxeter_complex, induced_complex_from_stars
from realtoric.homology import reduced_betti
from realtoric.reduction import (
    RemovalPreconditionError,
    is_removable,
    orbit_order,
    reduce,
    reduce_for_degree,
    reduce_induced,
)
from realtoric.simplicial import SimplicialComplex
from realtoric.weyl import vertex_table

SMALL = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2", "F4"]


def _subsets(spec):
    K = build_coxeter_complex(spec).as_simplicial()
    char = characteristic_matrix(spec)
    for o in row_orbits(spec):
        yield o, K.induced(subset_for_row(o.representative, char))


def test_is_removable_examples(hexagon):
    path = SimplicialComplex.from_simplices([[0, 1], [1, 2], [2, 3]])
    assert is_removable(path, 0) and not is_removable(path, 1)
    assert not is_removable(hexagon, 0)  # link is two points
    iso = SimplicialComplex.from_simplices([[0, 1], [2]])
    assert not is_removable(iso, 2)  # empty link
    cone = SimplicialComplex.from_simplices([[9, 0, 1], [9, 1, 2], [9, 2, 0]])
    assert not is_removable(cone, 9)  # link is a circle
    assert is_removable(cone, 0)


def test_integral_flag(rp2):
    # the cone over RP^2 has apex link RP^2: rationally acyclic only
    cone = SimplicialComplex.from_simplices([list(f) + [6] for f in rp2.facet_list()])
    assert is_removable(cone, 6)
    assert not is_removable(cone, 6, integral=True)


def test_orbit_order():
    assert orbit_order([3, 3, 1, 2, 2, 2]) == [1, 3, 2]
    assert orbit_order([], {1: 5, 2: 3, 3: 3}) == [2, 3, 1]


@pytest.mark.parametrize("spec", SMALL)
def test_reduce_preserves_betti(spec):
    labels = vertex_table(spec).labels
    for o, K_S in _subsets(spec):
        K_hat, trace = reduce(K_S, labels)
        assert reduced_betti(K_hat).nonzero() == reduced_betti(K_S).nonzero()
        assert set(K_hat.vertices.tolist()) <= set(K_S.vertices.tolist())
        counts = [trace.initial_vertices] + [p.vertices for p in trace.passes]
        assert counts == sorted(counts, reverse=True)
        assert trace.final_vertices == K_hat.n_vertices


@pytest.mark.parametrize("spec", ["A4", "B3", "C4", "D4", "F4"])
def test_any_orbit_order_preserves_betti(spec, rng):
    labels = vertex_table(spec).labels
    orbits = sorted(set(labels.tolist()))
    for o, K_S in _subsets(spec):
        want = reduced_betti(K_S).nonzero()
        for _ in range(3):
            order = rng.permutation(orbits).tolist()
            K_hat, _ = reduce(K_S, labels, order)
            assert reduced_betti(K_hat).nonzero() == want


@settings(max_examples=60, deadline=None)
@given(complexes(max_vertices=9, max_facets=10))
def test_reduce_on_random_complexes(K):
    # one label per vertex makes every pass a single deletion
    labels = np.arange(K.vertices.max() + 1)
    K_hat, _ = reduce(K, labels)
    assert reduced_betti(K_hat).nonzero() == reduced_betti(K).nonzero()


@pytest.mark.parametrize("spec", ["B3", "F4"])
def test_batch_equals_sequential(spec):
    """Removable vertices of one orbit stay removable after deleting the others."""
    labels = vertex_table(spec).labels
    for o, K_S in _subsets(spec):
        K_hat, _ = reduce(K_S, labels)
        K = K_S
        for i in orbit_order(labels):
            for v in K.vertices[labels[K.vertices] == i]:
                if is_removable(K, int(v)):
                    K = K.delete_vertices([int(v)])
        assert K == K_hat


@pytest.mark.parametrize("spec", ["F4", "E6"])
def test_reduce_induced_matches_reduce(spec):
    table = vertex_table(spec)
    K = build_coxeter_complex(spec).as_simplicial()
    char = characteristic_matrix(spec)
    order = orbit_order(table.labels, dict(enumerate(table.orbit_sizes().tolist(), start=1)))
    for o in row_orbits(spec):
        mask = subset_for_row(o.representative, char)
        K_hat, trace = reduce(K.induced(mask), table.labels, order)
        mask_hat, trace2 = reduce_induced(spec, mask)
        assert np.array_equal(np.flatnonzero(mask_hat), K_hat.vertices)
        assert induced_complex_from_stars(spec, mask_hat) == K_hat
        assert [p.removed for p in trace.passes] == [p.removed for p in trace2.passes]


@pytest.mark.parametrize("spec", ["D4", "F4", "E6"])
def test_symmetry_classes_give_same_result(spec):
    table = vertex_table(spec)
    K = build_coxeter_complex(spec).as_simplicial()
    char = characteristic_matrix(spec)
    for o in row_orbits(spec):
        mask = subset_for_row(o.representative, char)
        sym = [table.permutation(g) for g in stabilizer_generators(spec, o.representative, limit=8)]
        plain, t1 = reduce(K.induced(mask), table.labels)
        fast, t2 = reduce(K.induced(mask), table.labels, symmetry=sym)
        assert plain == fast
        assert sum(p.tested for p in t2.passes) <= sum(p.tested for p in t1.passes)


def test_reduce_for_degree():
    # two disjoint triangle boundaries joined by an edge between vertices 0 and 3
    K = SimplicialComplex.from_simplices([[0, 1], [1, 2], [2, 0], [3, 4], [4, 5], [5, 3], [0, 3]])
    assert reduce_for_degree(K, 1, [7, 8]) == K
    with pytest.raises(RemovalPreconditionError):
        reduce_for_degree(K, 1, [0])  # link {1, 2, 3} is three points
    S = boundary_of_simplex(3)
    cone = SimplicialComplex.from_simplices([list(f) + [9] for f in S.facet_list()] + [[0, 1, 2, 3]])
    # apex link is a 2-sphere: fine for degree 0, not for degree 2
    assert reduced_betti(reduce_for_degree(cone, 0, [9]))[0] == 0
    with pytest.raises(RemovalPreconditionError):
        reduce_for_degree(cone, 2, [9])
