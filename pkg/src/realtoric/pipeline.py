"""End-to-end rational Betti numbers of the real toric variety of a Weyl fan.

For each orbit of nonzero row elements ``u`` the subcomplex ``K_S`` of the
Coxeter complex is reduced and its reduced homology computed; then
``beta_0 = 1`` and ``beta_k = sum over orbits of |orbit| * betti~_{k-1}(K_S)``.

Two strategies produce the reduced complex.  Up to ``piecewise_rank`` the
Coxeter complex is built whole and ``K_S`` induced from it.  Above it,
``K_S`` is never materialized: the reduction runs on vertex sets with links
taken from parabolic stars, and only the reduced complex is assembled.
"""

from __future__ import annotations

import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields

from .charrow import as_row, characteristic_matrix, row_orbits, row_string, stabilizer_generators, subset_for_row
from .coxeter import (
    DEFAULT_MAX_FACETS,
    build_coxeter_complex,
    induced_complex_from_stars,
    induced_complex_piecewise,
)
from .homology import BettiVector, FaceBudgetExceeded, reduced_betti
from .io import ArtifactCache
from .known import KNOWN_BETTI, subset_label
from .oracles import alternating_sum, assemble_betti, closed_form_betti_vector, euler_characteristic
from .reduction import PassRecord, ReductionTrace, orbit_order, reduce, reduce_induced
from .rootsystem import parse_spec
from .simplicial import SimplicialComplex
from .weyl import ResourceBudgetExceeded, vertex_table

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
ENV_PREFIX = "REALTORIC_"


def _int_or_none(text):
    text = str(text).strip().lower()
    return None if text in ("", "none", "off", "unlimited") else int(text)


def _bool(text):
    return str(text).strip().lower() in ("1", "true", "yes", "on")


@dataclass(frozen=True)
class PipelineConfig:
    """Budgets and switches; every field has a ``REALTORIC_<NAME>`` override."""

    max_facets: int | None = DEFAULT_MAX_FACETS  # chambers held in memory at once
    max_faces: int | None = 50_000_000  # faces per dimension for homology
    seed: int | None = 0
    piecewise_rank: int = 6
    threads: int = 1
    cache_dir: str | None = None
    symmetry: bool = True
    symmetry_generators: int = 16
    integral: bool = False

    _parsers = {
        "max_facets": _int_or_none,
        "max_faces": _int_or_none,
        "seed": _int_or_none,
        "piecewise_rank": int,
        "threads": int,
        "cache_dir": lambda s: s or None,
        "symmetry": _bool,
        "symmetry_generators": int,
        "integral": _bool,
    }

    @classmethod
    def from_env(cls, environ=None, **overrides) -> "PipelineConfig":
        """Defaults, then environment variables, then non-``None`` ``overrides``."""
        env = os.environ if environ is None else environ
        values = {}
        for f in fields(cls):
            key = ENV_PREFIX + f.name.upper()
            if key in env:
                values[f.name] = cls._parsers[f.name](env[key])
        values.update({k: v for k, v in overrides.items() if v is not None})
        cfg = cls(**values)
        if cfg.threads < 1:
            raise ValueError("threads must be at least 1")
        return cfg


@dataclass
class OrbitResult:
    representative: str
    size: int
    subset_size: int
    label: str | None
    reduced_vertices: int
    fvector: tuple
    betti: BettiVector
    trace: ReductionTrace | None = None
    seconds: float = 0.0
    cached: bool = False

    def to_dict(self) -> dict:
        return {
            "representative": self.representative,
            "size": self.size,
            "subset_size": self.subset_size,
            "label": self.label,
            "reduced_vertices": self.reduced_vertices,
            "fvector": list(self.fvector),
            "reduced_betti": list(self.betti.values),
            "first_degree": -1,
        }


@dataclass
class BettiReport:
    spec: str
    orbits: list
    betti: list
    euler_characteristic: int
    provenance: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "schema": f"realtoric.report/{SCHEMA_VERSION}",
            "spec": self.spec,
            "coefficients": "Q",
            "orbits": [o.to_dict() for o in self.orbits],
            "betti": list(self.betti),
            "euler_characteristic": self.euler_characteristic,
            "provenance": self.provenance,
        }


def orbit_report(spec) -> dict:
    """Row orbits with their subset sizes, as the orbit JSON document."""
    spec = parse_spec(spec)
    char = characteristic_matrix(spec)
    rows = []
    for o in row_orbits(spec):
        n = int(subset_for_row(o.representative, char).sum())
        rows.append({"representative": o.bits, "size": o.size, "subset_size": n, "label": subset_label(spec, n)})
    return {"schema": f"realtoric.orbits/{SCHEMA_VERSION}", "spec": str(spec), "orbits": rows}


def betti_document(spec, kind: str, key: str, b: BettiVector) -> dict:
    return {
        "schema": f"realtoric.betti/{SCHEMA_VERSION}",
        "complex": f"{spec}/{kind}/{key}",
        "coefficients": "Q",
        "primes": list(b.primes),
        "betti": list(b.values),
        "first_degree": -1,
        "fvector": list(b.fvector),
    }


def trace_document(spec, key: str, trace: ReductionTrace) -> dict:
    return {
        "schema": f"realtoric.trace/{SCHEMA_VERSION}",
        "complex": f"{spec}/K_S/{key}",
        "initial_vertices": trace.initial_vertices,
        "initial_facets": trace.initial_facets,
        "passes": [vars(p) for p in trace.passes],
    }


def _trace_from_document(doc) -> ReductionTrace:
    return ReductionTrace(
        [PassRecord(**p) for p in doc["passes"]], doc["initial_vertices"], doc["initial_facets"]
    )


def _symmetry(spec, u, cfg: PipelineConfig):
    if not cfg.symmetry:
        return None
    table = vertex_table(spec)
    gens = stabilizer_generators(spec, u, limit=cfg.symmetry_generators, seed=cfg.seed or 0)
    return [table.permutation(g) for g in gens] or None


def _order(spec):
    table = vertex_table(spec)
    return orbit_order(table.labels, dict(enumerate(table.orbit_sizes().tolist(), start=1)))


def subset_complex(spec, u, config: PipelineConfig | None = None) -> SimplicialComplex:
    """``K_S`` for the row element ``u``, built whole or from coset pieces."""
    spec = parse_spec(spec)
    cfg = config or PipelineConfig()
    u = as_row(u, spec.rank)
    mask = subset_for_row(u, characteristic_matrix(spec))
    if spec.rank <= cfg.piecewise_rank:
        return build_coxeter_complex(spec, cfg.max_facets).as_simplicial().induced(mask)
    K, stats = induced_complex_piecewise(spec, mask, u=u, max_rows=cfg.max_facets)
    log.info("piecewise K_S for %s: %s", row_string(u), stats)
    return K


def reduced_complex(spec, u, config: PipelineConfig | None = None, cache: ArtifactCache | None = None) -> tuple:
    """``(K_hat, trace)`` for the row element ``u``; reads and fills ``cache``."""
    spec = parse_spec(spec)
    cfg = config or PipelineConfig()
    cache = cache or ArtifactCache(cfg.cache_dir)
    u = as_row(u, spec.rank)
    key = row_string(u)
    K_hat = cache.get_complex(spec, "K_hat", key)
    doc = cache.get_json(spec, "trace", key)
    if K_hat is not None and doc is not None:
        return K_hat, _trace_from_document(doc)
    mask = subset_for_row(u, characteristic_matrix(spec))
    table = vertex_table(spec)
    sym = _symmetry(spec, u, cfg)
    if spec.rank <= cfg.piecewise_rank:
        K_S = build_coxeter_complex(spec, cfg.max_facets).as_simplicial().induced(mask)
        K_hat, trace = reduce(K_S, table.labels, _order(spec), symmetry=sym, integral=cfg.integral, seed=cfg.seed)
    else:
        mask_hat, trace = reduce_induced(spec, mask, _order(spec), symmetry=sym, integral=cfg.integral, seed=cfg.seed)
        K_hat = induced_complex_from_stars(spec, mask_hat)
    cache.put_complex(spec, "K_hat", key, K_hat)
    cache.put_json(spec, "trace", key, trace_document(spec, key, trace))
    return K_hat, trace


def _orbit_result(spec, orbit, cfg: PipelineConfig, cache: ArtifactCache) -> OrbitResult:
    t0 = time.perf_counter()
    key = orbit.bits
    subset_size = int(subset_for_row(orbit.representative, characteristic_matrix(spec)).sum())
    label = subset_label(spec, subset_size)
    doc = cache.get_json(spec, "betti", key)
    if doc is not None:
        b = BettiVector(tuple(doc["betti"]), tuple(doc["primes"]), tuple(doc["fvector"]))
        return OrbitResult(key, orbit.size, subset_size, label, b.fvector[0] if b.fvector else 0, b.fvector, b, cached=True)
    K_hat, trace = reduced_complex(spec, orbit.representative, cfg, cache)
    try:
        b = reduced_betti(K_hat, seed=cfg.seed, max_faces=cfg.max_faces)
    except FaceBudgetExceeded as exc:
        raise ResourceBudgetExceeded(f"{spec} orbit {key}: {exc}") from exc
    cache.put_json(spec, "betti", key, betti_document(spec, "K_hat", key, b))
    dt = time.perf_counter() - t0
    log.info("%s orbit %s (%s): %s in %.1fs", spec, key, label or "-", b.nonzero(), dt)
    return OrbitResult(key, orbit.size, subset_size, label, K_hat.n_vertices, tuple(K_hat.f_vector()), b, trace, dt)


def betti_of_real_toric(spec, config: PipelineConfig | None = None) -> BettiReport:
    """Rational Betti numbers ``beta_0, beta_1, ...`` with per-orbit data.

    Finished orbits are written to the cache as they complete, so a run
    stopped by ``ResourceBudgetExceeded`` resumes where it left off.
    """
    spec = parse_spec(spec)
    cfg = config or PipelineConfig.from_env()
    cache = ArtifactCache(cfg.cache_dir)
    t0 = time.perf_counter()
    orbits = row_orbits(spec)
    if cfg.threads > 1 and len(orbits) > 1:
        with ThreadPoolExecutor(cfg.threads) as pool:
            results = list(pool.map(lambda o: _orbit_result(spec, o, cfg, cache), orbits))
    else:
        results = [_orbit_result(spec, o, cfg, cache) for o in orbits]
    betti = assemble_betti([(r.size, r.betti) for r in results])
    provenance = {
        "primes": sorted({p for r in results for p in r.betti.primes}),
        "seed": cfg.seed,
        "cache_hits": cache.hits,
        "cache_misses": cache.misses,
        "timings": {r.representative: round(r.seconds, 3) for r in results},
        "total_seconds": round(time.perf_counter() - t0, 3),
    }
    return BettiReport(str(spec), results, betti, alternating_sum(betti), provenance)


@dataclass
class Verification:
    report: BettiReport
    expected: list | None
    source: str
    euler_expected: int
    ok: bool

    def messages(self) -> list:
        out = []
        if self.expected is None:
            out.append(f"no reference Betti numbers for {self.report.spec}")
        elif list(self.report.betti) != list(self.expected):
            out.append(f"Betti numbers {self.report.betti} differ from {self.source} {self.expected}")
        if self.report.euler_characteristic != self.euler_expected:
            out.append(
                f"Euler characteristic {self.report.euler_characteristic} differs from face-count value {self.euler_expected}"
            )
        return out


def expected_betti(spec) -> tuple:
    """``(values, source)`` from the closed forms or the reference table."""
    spec = parse_spec(spec)
    if spec.family in "ABCD":
        return closed_form_betti_vector(spec), "closed form"
    if str(spec) in KNOWN_BETTI:
        return list(KNOWN_BETTI[str(spec)]), "reference table"
    return None, "none"


def verify(spec, config: PipelineConfig | None = None) -> Verification:
    spec = parse_spec(spec)
    report = betti_of_real_toric(spec, config)
    expected, source = expected_betti(spec)
    chi = euler_characteristic(spec)
    ok = expected is not None and list(report.betti) == list(expected) and report.euler_characteristic == chi
    return Verification(report, expected, source, chi, ok)


__all__ = [
    "BettiReport",
    "OrbitResult",
    "PipelineConfig",
    "Verification",
    "betti_document",
    "betti_of_real_toric",
    "expected_betti",
    "orbit_report",
    "reduced_complex",
    "subset_complex",
    "trace_document",
    "verify",
]
