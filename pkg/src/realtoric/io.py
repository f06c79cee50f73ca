"""Text formats for complexes and orbit tables, and the on-disk artifact cache.

Complex file::

    # realtoric complex 1
    spec E7
    kind K_hat
    key 0000001
    vertices 408
    facets 3840
    <id> <orbit label> <co-weight vector ...>     (one line per vertex, ascending id)
    ...
    <sorted vertex ids of one facet>              (one line per facet, canonical order)

Orbit table file::

    # realtoric orbit 1
    spec E7
    index 7
    size 56
    <vector>                                      (one line per vector, lexicographic)
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

import numpy as np

from .rootsystem import parse_spec
from .simplicial import SimplicialComplex
from .weyl import vertex_table

COMPLEX_MAGIC = "# realtoric complex 1"
ORBIT_MAGIC = "# realtoric orbit 1"


class CacheFormatError(ValueError):
    pass


def _atomic_write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _header(lines, names):
    out = {}
    for line, name in zip(lines, names):
        key, _, value = line.partition(" ")
        if key != name:
            raise CacheFormatError(f"expected header field {name!r}, got {line!r}")
        out[name] = value.strip()
    return out


def format_complex(K: SimplicialComplex, spec, kind: str = "complex", key: str = "-") -> str:
    spec = parse_spec(spec)
    table = vertex_table(spec)
    verts = K.vertices
    lines = [
        COMPLEX_MAGIC,
        f"spec {spec}",
        f"kind {kind}",
        f"key {key}",
        f"vertices {len(verts)}",
        f"facets {K.n_facets}",
    ]
    for v in verts:
        vec = " ".join(str(int(x)) for x in table.vectors[v])
        lines.append(f"{int(v)} {int(table.labels[v])} {vec}")
    for row in K.facets:
        lines.append(" ".join(str(int(x)) for x in row if x >= 0))
    return "\n".join(lines) + "\n"


def parse_complex(text: str) -> tuple:
    """Inverse of ``format_complex``: ``(K, meta)``.

    The vertex table lines are checked against the canonical table for the
    spec, so files from a different numbering are rejected.
    """
    lines = text.splitlines()
    if not lines or lines[0] != COMPLEX_MAGIC:
        raise CacheFormatError("not a complex file")
    meta = _header(lines[1:6], ["spec", "kind", "key", "vertices", "facets"])
    spec = parse_spec(meta["spec"])
    table = vertex_table(spec)
    nv, nf = int(meta["vertices"]), int(meta["facets"])
    body = lines[6:]
    if len(body) != nv + nf:
        raise CacheFormatError(f"expected {nv + nf} body lines, found {len(body)}")
    if nv:
        vt = np.array([line.split() for line in body[:nv]], dtype=np.int64)
        ids = vt[:, 0]
        if not (np.array_equal(table.labels[ids], vt[:, 1]) and np.array_equal(table.vectors[ids], vt[:, 2:])):
            raise CacheFormatError("vertex table does not match the canonical numbering")
    rows = [[int(x) for x in line.split()] for line in body[nv:]]
    width = max((len(r) for r in rows), default=0)
    facets = np.full((len(rows), width), -1, dtype=np.int32)
    for i, r in enumerate(rows):
        facets[i, : len(r)] = r
    K = SimplicialComplex(facets if nf else None, table.labels, _canonical=True)
    meta["spec"] = str(spec)
    meta["vertices"], meta["facets"] = nv, nf
    return K, meta


def save_complex(path, K: SimplicialComplex, spec, kind: str = "complex", key: str = "-"):
    _atomic_write(Path(path), format_complex(K, spec, kind, key))


def load_complex(path) -> tuple:
    return parse_complex(Path(path).read_text())


def format_orbit_table(spec, index: int, vectors) -> str:
    vectors = np.asarray(vectors)
    lines = [ORBIT_MAGIC, f"spec {parse_spec(spec)}", f"index {int(index)}", f"size {len(vectors)}"]
    lines += [" ".join(str(int(x)) for x in row) for row in vectors]
    return "\n".join(lines) + "\n"


def parse_orbit_table(text: str) -> tuple:
    """``(spec, index, vectors)``."""
    lines = text.splitlines()
    if not lines or lines[0] != ORBIT_MAGIC:
        raise CacheFormatError("not an orbit table file")
    meta = _header(lines[1:4], ["spec", "index", "size"])
    spec = parse_spec(meta["spec"])
    n = int(meta["size"])
    if len(lines) - 4 != n:
        raise CacheFormatError(f"expected {n} vectors, found {len(lines) - 4}")
    vecs = np.array([line.split() for line in lines[4:]], dtype=np.int64).reshape(n, spec.rank)
    return spec, int(meta["index"]), vecs


class ArtifactCache:
    """Files under ``root/<spec>/<kind>/<key>.{txt,json}``.

    A ``None`` root disables caching; every lookup misses and writes are dropped.
    """

    def __init__(self, root=None):
        self.root = Path(root) if root is not None else None
        self.hits = 0
        self.misses = 0

    def path(self, spec, kind: str, key: str, suffix: str) -> Path | None:
        if self.root is None:
            return None
        return self.root / str(parse_spec(spec)) / kind / f"{key}{suffix}"

    def _probe(self, p):
        if p is not None and p.exists():
            self.hits += 1
            return True
        self.misses += 1
        return False

    def get_complex(self, spec, kind: str, key: str) -> SimplicialComplex | None:
        p = self.path(spec, kind, key, ".txt")
        return load_complex(p)[0] if self._probe(p) else None

    def put_complex(self, spec, kind: str, key: str, K: SimplicialComplex):
        p = self.path(spec, kind, key, ".txt")
        if p is not None:
            save_complex(p, K, spec, kind, key)

    def get_json(self, spec, kind: str, key: str):
        p = self.path(spec, kind, key, ".json")
        return json.loads(p.read_text()) if self._probe(p) else None

    def put_json(self, spec, kind: str, key: str, obj):
        p = self.path(spec, kind, key, ".json")
        if p is not None:
            _atomic_write(p, json.dumps(obj, indent=2, sort_keys=True) + "\n")
