import numpy as np
import pytest

from realtoric.charrow import characteristic_matrix, row_orbits, subset_for_row
from realtoric.coxeter import build_coxeter_complex
from realtoric.io import (
    ArtifactCache,
    CacheFormatError,
    format_complex,
    format_orbit_table,
    load_complex,
    parse_complex,
    parse_orbit_table,
    save_complex,
)
from realtoric.pipeline import PipelineConfig, betti_of_real_toric
from realtoric.simplicial import SimplicialComplex
from realtoric.weyl import coweight_orbit


@pytest.fixture(scope="module")
def f4_subset():
    K = build_coxeter_complex("F4").as_simplicial()
    o = row_orbits("F4")[0]
    return K.induced(subset_for_row(o.representative, characteristic_matrix("F4")))


def test_complex_round_trip(f4_subset, tmp_path):
    text = format_complex(f4_subset, "F4", "K_S", "0001")
    K, meta = parse_complex(text)
    assert K == f4_subset
    assert meta == {"spec": "F4", "kind": "K_S", "key": "0001", "vertices": f4_subset.n_vertices,
                    "facets": f4_subset.n_facets}
    assert format_complex(K, "F4", "K_S", "0001") == text
    path = tmp_path / "k.txt"
    save_complex(path, K, "F4", "K_S", "0001")
    assert path.read_text() == text
    assert load_complex(path)[0] == K


def test_empty_complex_round_trip():
    K, meta = parse_complex(format_complex(SimplicialComplex(), "A2"))
    assert K.is_empty() and meta["facets"] == 0


def test_corrupt_files(f4_subset):
    text = format_complex(f4_subset, "F4", "K_S", "0001")
    with pytest.raises(CacheFormatError):
        parse_complex("garbage\n")
    with pytest.raises(CacheFormatError):
        parse_complex(text.replace("kind K_S", "sort K_S"))
    with pytest.raises(CacheFormatError):
        parse_complex("\n".join(text.splitlines()[:-1]))  # truncated
    lines = text.splitlines()
    first = lines[6].split()
    first[2] = str(int(first[2]) + 1)  # wrong co-weight coordinates
    lines[6] = " ".join(first)
    with pytest.raises(CacheFormatError):
        parse_complex("\n".join(lines))


def test_orbit_table_round_trip():
    vecs = coweight_orbit("E6", 1)
    text = format_orbit_table("E6", 1, vecs)
    spec, index, back = parse_orbit_table(text)
    assert str(spec) == "E6" and index == 1 and np.array_equal(back, vecs)
    assert format_orbit_table(spec, index, back) == text
    with pytest.raises(CacheFormatError):
        parse_orbit_table(text.replace("size 27", "size 28"))


def test_cache_hits_and_misses(f4_subset, tmp_path):
    cache = ArtifactCache(tmp_path)
    assert cache.get_complex("F4", "K_S", "x") is None
    cache.put_complex("F4", "K_S", "x", f4_subset)
    assert cache.get_complex("F4", "K_S", "x") == f4_subset
    cache.put_json("F4", "betti", "x", {"a": [1, 2]})
    assert cache.get_json("F4", "betti", "x") == {"a": [1, 2]}
    assert (cache.hits, cache.misses) == (2, 1)
    assert (tmp_path / "F4" / "K_S" / "x.txt").exists()


def test_disabled_cache(f4_subset):
    cache = ArtifactCache(None)
    cache.put_complex("F4", "K_S", "x", f4_subset)
    assert cache.get_complex("F4", "K_S", "x") is None
    assert cache.misses == 1


def test_resume_from_cache(tmp_path):
    cfg = PipelineConfig(cache_dir=str(tmp_path))
    first = betti_of_real_toric("E6", cfg)
    again = betti_of_real_toric("E6", cfg)
    assert again.betti == first.betti
    assert again.provenance["cache_misses"] == 0
    assert again.provenance["cache_hits"] == len(first.orbits)
    assert all(o.cached for o in again.orbits)
    # dropping the Betti documents falls back to the cached reduced complexes
    for p in (tmp_path / "E6" / "betti").iterdir():
        p.unlink()
    third = betti_of_real_toric("E6", cfg)
    assert third.betti == first.betti
    assert not any(o.cached for o in third.orbits)
