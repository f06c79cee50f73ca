"""Command-line entry point: ``realtoric <command> <spec> [options]``.

Exit codes: 0 success, 2 verification mismatch, 3 resource budget exceeded
(rerun with the same ``--cache-dir`` to resume), 4 invalid spec or arguments.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import __version__
from .charrow import as_row, characteristic_matrix, row_string, subset_for_row
from .coxeter import build_coxeter_complex, coxeter_f_vector
from .homology import FaceBudgetExceeded
from .io import format_complex
from .known import KNOWN_BETTI, subset_label
from .oracles import closed_form_betti_vector, euler_characteristic, z2_betti
from .pipeline import (
    PipelineConfig,
    betti_of_real_toric,
    orbit_report,
    reduced_complex,
    subset_complex,
    trace_document,
    verify,
)
from .rootsystem import InvalidSpecError, parse_spec
from .weyl import (
    ResourceBudgetExceeded,
    coset_representatives,
    decomposition_coweight,
    stabilizer_parabolic,
    vertex_table,
    weyl_group_order,
)

EXIT_OK = 0
EXIT_MISMATCH = 2
EXIT_BUDGET = 3
EXIT_INVALID = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _table(rows, header):
    cols = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cols) for i in range(len(header))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cols)


def _emit(args, doc, text):
    print(json.dumps(doc, indent=2) if args.json else text)


def _config(args) -> PipelineConfig:
    return PipelineConfig.from_env(
        max_facets=args.max_facets,
        max_faces=args.max_faces,
        seed=args.seed,
        piecewise_rank=args.piecewise_rank,
        threads=args.threads,
        cache_dir=args.cache_dir,
        symmetry=False if args.no_symmetry else None,
        integral=True if args.integral else None,
    )


def _betti_text(report) -> str:
    lines = [f"{report.spec}: Betti numbers over Q"]
    lines.append(_table([(k, b) for k, b in enumerate(report.betti)], ["k", "beta_k"]))
    lines.append("")
    lines.append(
        _table(
            [
                (o.representative, o.size, o.subset_size, o.label or "-", o.reduced_vertices,
                 " ".join(f"{k}:{v}" for k, v in o.betti.nonzero().items()))
                for o in report.orbits
            ],
            ["row", "orbit", "|S|", "label", "reduced", "reduced betti (degree:value)"],
        )
    )
    lines.append(f"Euler characteristic {report.euler_characteristic}")
    return "\n".join(lines)


def cmd_betti(args):
    report = betti_of_real_toric(args.spec, _config(args))
    _emit(args, report.to_dict(), _betti_text(report))
    return EXIT_OK


def cmd_orbits(args):
    doc = orbit_report(args.spec)
    rows = [(o["representative"], o["size"], o["subset_size"], o["label"] or "-") for o in doc["orbits"]]
    text = _table(rows, ["row", "orbit", "|S|", "label"])
    text += f"\n{sum(o['size'] for o in doc['orbits'])} nonzero rows in {len(rows)} orbits"
    _emit(args, doc, text)
    return EXIT_OK


def _coxeter_stats(spec, cfg) -> dict:
    table = vertex_table(spec)
    order = weyl_group_order(spec)
    cw = decomposition_coweight(spec)
    return {
        "spec": str(spec),
        "vertices": len(table),
        "orbit_sizes": table.orbit_sizes().tolist(),
        "facets": order,
        "fvector": coxeter_f_vector(spec)[1:],
        "decomposition_coweight": cw,
        "cosets": len(coset_representatives(spec, cw)),
        "facets_per_piece": weyl_group_order(spec, stabilizer_parabolic(spec, cw)),
        "materialized": cfg.max_facets is None or order <= cfg.max_facets,
    }


def cmd_complex(args):
    spec = parse_spec(args.spec)
    cfg = _config(args)
    if args.orbit_rep is None:
        if args.dump:
            K = build_coxeter_complex(spec, cfg.max_facets).as_simplicial()
            return _dump(args, K, spec, "K_R", "-")
        doc = _coxeter_stats(spec, cfg)
        _emit(args, doc, "\n".join(f"{k}: {v}" for k, v in doc.items()))
        return EXIT_OK
    u = as_row(args.orbit_rep, spec.rank)
    key = row_string(u)
    if args.reduced:
        K, _ = reduced_complex(spec, u, cfg)
        kind = "K_hat"
    else:
        K = subset_complex(spec, u, cfg)
        kind = "K_S"
    if args.dump:
        return _dump(args, K, spec, kind, key)
    comps = K.connected_components()
    doc = {
        "spec": str(spec),
        "complex": f"{spec}/{kind}/{key}",
        "subset_size": int(subset_for_row(u, characteristic_matrix(spec)).sum()),
        "label": subset_label(spec, int(subset_for_row(u, characteristic_matrix(spec)).sum())),
        "vertices": K.n_vertices,
        "facets": K.n_facets,
        "fvector": K.f_vector(),
        "pure": K.is_pure(),
        "components": [c.f_vector() for c in comps],
    }
    _emit(args, doc, "\n".join(f"{k}: {v}" for k, v in doc.items()))
    return EXIT_OK


def _dump(args, K, spec, kind, key):
    text = format_complex(K, spec, kind, key)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_reduce(args):
    spec = parse_spec(args.spec)
    u = as_row(args.orbit_rep, spec.rank)
    K, trace = reduced_complex(spec, u, _config(args))
    doc = trace_document(spec, row_string(u), trace)
    doc["final_vertices"] = K.n_vertices
    doc["final_facets"] = K.n_facets
    rows = [(p.orbit, p.tested, p.removed, p.vertices, "-" if p.facets is None else p.facets) for p in trace.passes]
    text = f"{spec} row {row_string(u)}: {trace.initial_vertices} vertices\n"
    text += _table(rows, ["orbit", "tested", "removed", "vertices", "facets"])
    text += f"\nreduced complex: {K.n_vertices} vertices, {K.n_facets} facets, f = {K.f_vector()}"
    _emit(args, doc, text)
    return EXIT_OK


def cmd_oracle(args):
    spec = parse_spec(args.spec)
    doc = {"spec": str(spec), "z2_betti": z2_betti(spec), "euler_characteristic": euler_characteristic(spec)}
    if spec.family in "ABCD":
        doc["closed_form_betti"] = closed_form_betti_vector(spec)
    if str(spec) in KNOWN_BETTI:
        doc["reference_betti"] = list(KNOWN_BETTI[str(spec)])
    _emit(args, doc, "\n".join(f"{k}: {v}" for k, v in doc.items()))
    return EXIT_OK


def cmd_verify(args):
    v = verify(args.spec, _config(args))
    msgs = v.messages()
    doc = {
        "spec": v.report.spec,
        "betti": v.report.betti,
        "expected": v.expected,
        "source": v.source,
        "euler_characteristic": v.report.euler_characteristic,
        "euler_expected": v.euler_expected,
        "ok": v.ok,
        "problems": msgs,
    }
    text = _betti_text(v.report) + "\n"
    text += f"expected ({v.source}): {v.expected}\nface-count Euler characteristic: {v.euler_expected}\n"
    text += "OK" if v.ok else "MISMATCH\n" + "\n".join(msgs)
    _emit(args, doc, text)
    return EXIT_OK if v.ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("spec", help="root system type, e.g. E7, A4, b3")
    common.add_argument("--json", action="store_true", help="emit JSON instead of tables")
    common.add_argument("--seed", type=int, help="seed for the random primes and generator sampling")
    common.add_argument("--max-facets", type=int, help="largest chamber count held in memory")
    common.add_argument("--max-faces", type=int, help="largest face count per dimension for homology")
    common.add_argument("--piecewise-rank", type=int, help="ranks above this never build K_S whole")
    common.add_argument("--threads", type=int, help="worker threads across row orbits")
    common.add_argument("--cache-dir", help="directory for resumable intermediate results")
    common.add_argument("--no-symmetry", action="store_true", help="test every vertex instead of one per class")
    common.add_argument("--integral", action="store_true", help="require integrally acyclic links (small inputs)")
    common.add_argument("-v", "--verbose", action="count", default=0)

    p = _Parser(prog="realtoric", description="Betti numbers of real toric varieties of Weyl chambers")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("betti", parents=[common], help="Betti numbers over Q").set_defaults(func=cmd_betti)
    sub.add_parser("orbits", parents=[common], help="orbits of row elements").set_defaults(func=cmd_orbits)
    c = sub.add_parser("complex", parents=[common], help="Coxeter complex or K_S statistics and dumps")
    mode = c.add_mutually_exclusive_group()
    mode.add_argument("--stats", action="store_true", help="print statistics (default)")
    mode.add_argument("--dump", action="store_true", help="write the complex in the cache text format")
    c.add_argument("--orbit-rep", help="row element as a bit string; selects K_S")
    c.add_argument("--reduced", action="store_true", help="with --orbit-rep, use the reduced complex")
    c.add_argument("-o", "--output", help="file for --dump (default stdout)")
    c.set_defaults(func=cmd_complex)
    r = sub.add_parser("reduce", parents=[common], help="reduce K_S and print the trace")
    r.add_argument("--orbit-rep", required=True, help="row element as a bit string")
    r.set_defaults(func=cmd_reduce)
    sub.add_parser("oracle", parents=[common], help="closed forms and face-count invariants").set_defaults(func=cmd_oracle)
    sub.add_parser("verify", parents=[common], help="betti plus reference and Euler checks").set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        parse_spec(args.spec)
        return args.func(args)
    except InvalidSpecError as exc:
        print(f"invalid spec: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ResourceBudgetExceeded, FaceBudgetExceeded) as exc:
        print(f"resource budget exceeded: {exc}", file=sys.stderr)
        if getattr(args, "cache_dir", None):
            print(f"finished orbits are cached in {args.cache_dir}; rerun to resume", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"invalid argument: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
