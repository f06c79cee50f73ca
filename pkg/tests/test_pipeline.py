import json

import pytest

from realtoric.charrow import row_orbits
from realtoric.pipeline import (
    PipelineConfig,
    betti_of_real_toric,
    expected_betti,
    orbit_report,
    reduced_complex,
    subset_complex,
    verify,
)
from realtoric.weyl import ResourceBudgetExceeded


def test_config_from_env():
    env = {"REALTORIC_MAX_FACETS": "none", "REALTORIC_SEED": "7", "REALTORIC_SYMMETRY": "off",
           "REALTORIC_THREADS": "3", "REALTORIC_CACHE_DIR": "/tmp/x"}
    cfg = PipelineConfig.from_env(env)
    assert cfg.max_facets is None and cfg.seed == 7 and cfg.symmetry is False
    assert cfg.threads == 3 and cfg.cache_dir == "/tmp/x"
    assert PipelineConfig.from_env(env, seed=9, threads=None).seed == 9
    assert PipelineConfig.from_env(env, threads=None).threads == 3
    assert PipelineConfig.from_env({}) == PipelineConfig()
    with pytest.raises(ValueError):
        PipelineConfig.from_env({"REALTORIC_THREADS": "0"})


def test_facet_budget():
    with pytest.raises(ResourceBudgetExceeded):
        betti_of_real_toric("F4", PipelineConfig(max_facets=100))


def test_piecewise_facet_budget():
    u = row_orbits("F4")[0].representative
    cfg = PipelineConfig(piecewise_rank=2)
    assert subset_complex("F4", u, cfg) == subset_complex("F4", u)
    with pytest.raises(ResourceBudgetExceeded):
        subset_complex("F4", u, PipelineConfig(piecewise_rank=2, max_facets=10))


def test_face_budget():
    with pytest.raises(ResourceBudgetExceeded):
        betti_of_real_toric("F4", PipelineConfig(max_faces=20))


def test_threads_and_seed_do_not_change_result():
    base = betti_of_real_toric("E6", PipelineConfig())
    assert betti_of_real_toric("E6", PipelineConfig(threads=2)).betti == base.betti
    other = betti_of_real_toric("E6", PipelineConfig(seed=5, symmetry=False))
    assert other.betti == base.betti
    assert other.provenance["primes"] != base.provenance["primes"]


def test_rank_six_paths_agree():
    # E6 through both the monolithic and the link-local strategy
    for o in row_orbits("E6"):
        a, _ = reduced_complex("E6", o.representative, PipelineConfig())
        b, _ = reduced_complex("E6", o.representative, PipelineConfig(piecewise_rank=5))
        assert a == b


def test_documents():
    report = betti_of_real_toric("F4", PipelineConfig())
    doc = json.loads(json.dumps(report.to_dict()))
    assert doc["schema"] == "realtoric.report/1"
    assert doc["betti"] == [1, 57, 264]
    assert sum(o["size"] for o in doc["orbits"]) == 2**4 - 1
    assert all(o["first_degree"] == -1 for o in doc["orbits"])
    orbits = orbit_report("E7")
    assert orbits["schema"] == "realtoric.orbits/1"
    assert sorted(o["label"] for o in orbits["orbits"]) == ["S1", "S2", "S3"]


def test_verify_and_expected():
    v = verify("B3")
    assert v.ok and v.source == "closed form" and v.messages() == []
    assert expected_betti("E8")[1] == "reference table"


def test_d6_candidates_for_s1_component():
    from itertools import product

    from realtoric.charrow import characteristic_matrix, row_string, subset_for_row
    from realtoric.coxeter import build_coxeter_complex
    from realtoric.homology import reduced_betti

    K, _ = reduced_complex("E7", "0000001")
    comp = K.connected_components()[0]
    target = (comp.f_vector(), reduced_betti(comp).nonzero())
    assert target == ([204, 1312, 1920], {2: 811})
    D = build_coxeter_complex("D6").as_simplicial()
    char = characteristic_matrix("D6")
    matches = []
    for u in product((0, 1), repeat=6):
        if any(u):
            S = D.induced(subset_for_row(u, char))
            if S.f_vector() == target[0] and reduced_betti(S).nonzero() == target[1]:
                matches.append(row_string(u))
    assert matches == ["101001", "101010"]
