import numpy as np
import pytest
from conftest import boundary_of_simplex
from hypothesis import given, settings
from strategies import complexes

from realtoric.homology import (
    BettiVector,
    FaceBudgetExceeded,
    HomologyError,
    boundary_matrices,
    boundary_ranks_mod_p,
    draw_primes,
    exact_reduced_betti,
    is_integrally_acyclic,
    reduced_betti,
)
from realtoric.simplicial import SimplicialComplex


def test_empty_complex_convention():
    b = reduced_betti(SimplicialComplex())
    assert b.values == (1,)
    assert b[-1] == 1 and b[0] == 0
    assert b.reduced_euler_characteristic() == -1


def test_point_and_spheres(hexagon):
    assert reduced_betti(SimplicialComplex.from_simplices([[0]])).nonzero() == {}
    assert reduced_betti(hexagon).nonzero() == {1: 1}
    for n in range(1, 6):
        assert reduced_betti(boundary_of_simplex(n)).nonzero() == {n - 1: 1}


def test_torus(torus):
    b = reduced_betti(torus)
    assert b.nonzero() == {1: 2, 2: 1}
    assert len(b.primes) == 2


def test_rp2_torsion(rp2):
    assert reduced_betti(rp2).nonzero() == {}
    assert not is_integrally_acyclic(rp2)
    # GF(2) sees the torsion; the other two primes outvote it
    assert reduced_betti(rp2, primes=[2, 3, 5]).nonzero() == {}
    with pytest.raises(HomologyError):
        reduced_betti(rp2, primes=[2, 3])
    assert reduced_betti(rp2, primes=[2]).nonzero() == {1: 1, 2: 1}


def test_integral_acyclicity():
    assert is_integrally_acyclic(SimplicialComplex.from_simplices([[0, 1, 2], [2, 3]]))
    assert not is_integrally_acyclic(boundary_of_simplex(2))


def test_disjoint_union_adds(torus, hexagon):
    shifted = SimplicialComplex(np.where(hexagon.facets >= 0, hexagon.facets + 10, -1))
    both = SimplicialComplex(np.concatenate([
        np.pad(torus.facets, ((0, 0), (0, 0)), constant_values=-1),
        np.pad(shifted.facets, ((0, 0), (0, 1)), constant_values=-1),
    ]))
    b = reduced_betti(both)
    assert b.nonzero() == {0: 1, 1: 3, 2: 1}


def test_face_budget(torus):
    with pytest.raises(FaceBudgetExceeded):
        reduced_betti(torus, max_faces=10)


def test_primes():
    ps = draw_primes(5, seed=7)
    assert ps == draw_primes(5, seed=7)
    assert len(set(ps)) == 5 and all((1 << 29) <= p < (1 << 30) for p in ps)


def test_betti_vector():
    b = BettiVector((0, 1, 0, 4))
    assert b[0] == 1 and b[2] == 4 and b[7] == 0 and b[-3] == 0
    assert b.nonzero() == {0: 1, 2: 4} and b.top() == 2
    assert b.as_list() == [1, 0, 4]


@settings(max_examples=80, deadline=None)
@given(complexes(max_vertices=9, max_facets=10, max_size=5))
def test_boundary_squares_to_zero(K):
    assert boundary_matrices(K).check_dd_zero()


@settings(max_examples=80, deadline=None)
@given(complexes(max_vertices=9, max_facets=10, max_size=5))
def test_modular_equals_exact(K):
    chain = boundary_matrices(K)
    assert sum(len(f) for f in chain.faces) <= 2000
    b = reduced_betti(K, chain=chain)
    assert b.values == exact_reduced_betti(K).values
    assert b.reduced_euler_characteristic() == K.euler_characteristic() - 1


@settings(max_examples=60, deadline=None)
@given(complexes(max_vertices=9, max_facets=10, max_size=5))
def test_two_primes_and_methods_agree(K):
    chain = boundary_matrices(K)
    p, q = draw_primes(2, seed=11)
    rp = boundary_ranks_mod_p(chain, p, "cohomology")
    assert rp == boundary_ranks_mod_p(chain, q, "cohomology")
    assert rp == boundary_ranks_mod_p(chain, p, "homology")


def test_unknown_method(torus):
    with pytest.raises(ValueError):
        boundary_ranks_mod_p(boundary_matrices(torus), 101, "other")
