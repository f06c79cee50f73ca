import numpy as np
import pytest

from realtoric.charrow import characteristic_matrix, row_orbits, subset_for_row
from realtoric.coxeter import (
    PieceStats,
    build_coxeter_complex,
    build_piece,
    coxeter_f_vector,
    induced_complex_from_stars,
    induced_complex_piecewise,
    induced_link,
    induced_rows,
    transport_subcomplex,
    vertex_star_rows,
)
from realtoric.simplicial import SimplicialComplex, unique_rows
from realtoric.weyl import (
    ResourceBudgetExceeded,
    coset_representatives,
    decomposition_coweight,
    vertex_table,
    weyl_group_order,
)


def test_hexagon():
    K = build_coxeter_complex("A2").as_simplicial()
    assert K.f_vector() == [6, 6]
    assert all(len(K.link(v).vertices) == 2 for v in K.vertices)


@pytest.mark.parametrize("spec", ["A3", "B3", "C3", "D4", "G2", "F4"])
def test_complex_shape(spec):
    K = build_coxeter_complex(spec)
    assert K.n_facets == weyl_group_order(spec)
    assert K.n_vertices == len(vertex_table(spec))
    S = K.as_simplicial()
    assert S.is_pure() and S.dimension == len(vertex_table(spec).orbit_sizes()) - 1
    assert S.f_vector() == coxeter_f_vector(spec)[1:]
    # a sphere: reduced Euler characteristic (-1)^(n-1)
    n = S.dimension + 1
    assert S.euler_characteristic() == 1 + (-1) ** (n - 1)


def test_budget():
    with pytest.raises(ResourceBudgetExceeded):
        build_coxeter_complex("E8")


@pytest.mark.slow
def test_e7_statistics():
    K = build_coxeter_complex("E7")
    assert (K.n_vertices, K.n_facets) == (17_642, 2_903_040)
    assert len(coset_representatives("E7", decomposition_coweight("E7"))) == 126
    assert len(build_piece("E7")) == 23_040


@pytest.mark.slow
def test_e8_statistics_without_facets():
    assert len(vertex_table("E8")) == 881_760
    assert len(coset_representatives("E8", decomposition_coweight("E8"))) == 240
    assert weyl_group_order("E8") == 696_729_600
    assert coxeter_f_vector("E8")[-1] == 696_729_600


@pytest.mark.parametrize("spec", ["B3", "F4", "E6"])
def test_pieces_partition_chambers(spec):
    K = build_coxeter_complex(spec)
    cw = decomposition_coweight(spec)
    pieces = [build_piece(spec, g).facets for g in coset_representatives(spec, cw).representatives]
    allrows = np.concatenate(pieces)
    assert len(allrows) == K.n_facets
    assert np.array_equal(unique_rows(allrows), K.facets)


@pytest.mark.parametrize("spec", ["B3", "C3", "F4", "E6"])
def test_piecewise_equals_monolithic(spec):
    K = build_coxeter_complex(spec).as_simplicial()
    char = characteristic_matrix(spec)
    for o in row_orbits(spec):
        m = subset_for_row(o.representative, char)
        direct = K.induced(m)
        stats = PieceStats()
        pw, _ = induced_complex_piecewise(spec, m, u=o.representative, stats=stats)
        assert pw == direct
        assert stats.direct + stats.transported == len(coset_representatives(spec, decomposition_coweight(spec)))
        assert stats.transported > 0
        plain, st2 = induced_complex_piecewise(spec, m)
        assert plain == direct and st2.transported == 0
        assert induced_complex_from_stars(spec, m) == direct


def test_transport_on_all_f4_cosets():
    spec = "F4"
    table = vertex_table(spec)
    cw = decomposition_coweight(spec)
    base = build_piece(spec, coweight=cw).facets
    reps = coset_representatives(spec, cw).representatives
    char = characteristic_matrix(spec)
    accepted = rejected = 0
    for o in row_orbits(spec):
        m = subset_for_row(o.representative, char)
        direct = [SimplicialComplex(induced_rows(table.permutation(g)[base], m)) for g in reps]
        verts = [np.unique(table.permutation(g)[base]) for g in reps]
        for a, g0 in enumerate(reps):
            for b, g in enumerate(reps):
                t = g * g0.inverse()
                target = verts[b][m[verts[b]]]
                moved = transport_subcomplex(table.permutation(t), direct[a], target)
                if moved is None:
                    rejected += 1
                    assert not np.array_equal(np.sort(table.permutation(t)[direct[a].vertices]), np.sort(target))
                else:
                    accepted += 1
                    assert moved == direct[b]
    assert accepted and rejected


def test_piecewise_budget():
    m = subset_for_row((0, 0, 0, 0, 0, 1), characteristic_matrix("E6"))
    with pytest.raises(ResourceBudgetExceeded):
        induced_complex_piecewise("E6", m, max_rows=10)


@pytest.mark.parametrize("spec", ["B3", "F4", "E6"])
def test_star_rows_and_links(spec):
    K = build_coxeter_complex(spec).as_simplicial()
    table = vertex_table(spec)
    rng = np.random.default_rng(0)
    m = rng.random(len(table)) < 0.6
    chosen = np.flatnonzero(m)
    for v in rng.choice(chosen, min(15, len(chosen)), replace=False):
        rows = vertex_star_rows(spec, int(v))
        assert (rows == v).any(axis=1).all()
        assert len(rows) == len(K.star(int(v)).facets)
        assert induced_link(spec, int(v), m) == K.induced(m).link(int(v))
    with pytest.raises(ValueError):
        vertex_star_rows(spec, 0, types=(2,))
