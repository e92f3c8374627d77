"""Command-line interface.

Exit codes: 0 success, 1 a theorem check came out false, 2 bad input,
3 every theorem verdict was vacuous or had unmet hypotheses, 4 a
computation hit its size budget.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
from dataclasses import asdict
from fractions import Fraction
from pathlib import Path

from . import __version__
from .comparisons import FAILS, HOLDS, TheoremVerdict, full_report
from .curvature import curvature_report, ricci
from .digraph import WeightedDigraph, from_edge_list, gen_complete, gen_cycle, to_edge_list
from .errors import BudgetExceeded, RicciError
from .exactnum import as_rational, format_rational
from .markov import build_markov
from .product import ProductSpec, cartesian_product, check_product_curvature, check_product_identities
from .spectral import cheeger_bound, dirichlet_poincare, spectrum

SCHEMA = 1
EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_VACUOUS, EXIT_BUDGET = 0, 1, 2, 3, 4


def jsonable(obj):
    """Fractions become ``"p/q"``; floats are cut to 15 significant digits."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, float):
        v = float(f"{obj:.15g}")
        return 0.0 if v == 0 else v
    if isinstance(obj, TheoremVerdict):
        return jsonable(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalars
        return jsonable(obj.item())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(doc) -> str:
    return json.dumps(jsonable(doc), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _read(path: str) -> tuple[str, bytes]:
    data = sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
    return data.decode("utf-8"), data


def _load(path: str) -> tuple[WeightedDigraph, str]:
    text, raw = _read(path)
    return from_edge_list(text), "sha256:" + hashlib.sha256(raw).hexdigest()


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    g, digest = _load(args.graph)
    rep = full_report(g, args.scope, args.jobs)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "y", "kappa"])
        for row in rep["curvature"]["pairs"]:
            w.writerow([row["x"], row["y"], format_rational(row["kappa"])])
        _emit(buf.getvalue(), args.out)
    else:
        doc = {"schema": SCHEMA, "tool": "digraph-ricci", "version": __version__, "input_digest": digest, **rep}
        _emit(dumps(doc), args.out)
    statuses = {v.status for v in rep["verdicts"]}
    if FAILS in statuses:
        return EXIT_FALSE
    if HOLDS not in statuses:
        return EXIT_VACUOUS
    return EXIT_OK


def cmd_curvature(args) -> int:
    g, _ = _load(args.graph)
    lab = g.labels
    if args.pair:
        x, y = (g.index(v) for v in args.pair)
        kappa, f = ricci(g, None, x, y)
        doc = {"x": lab[x], "y": lab[y], "kappa": kappa, "witness": {lab[i]: v for i, v in enumerate(f)}}
    else:
        rep = curvature_report(g, args.scope, n_jobs=args.jobs)
        doc = {
            "pairs": [{"x": lab[x], "y": lab[y], "kappa": k} for (x, y), k in sorted(rep.kappa.items())],
            "edge_min": rep.edge_min,
            "global_min": rep.global_min,
        }
    sys.stdout.write(dumps(doc))
    return EXIT_OK


def cmd_spectrum(args) -> int:
    g, _ = _load(args.graph)
    s = spectrum(build_markov(g))
    sys.stdout.write(dumps({"eigenvalues": list(s.eigenvalues), "max_residual": max(s.residuals)}))
    return EXIT_OK


def cmd_dirichlet(args) -> int:
    g, _ = _load(args.graph)
    subset = [g.index(v.strip()) for v in args.subset.split(",") if v.strip()]
    r = dirichlet_poincare(build_markov(g), subset, float(args.p))
    bound = cheeger_bound(r.isoperimetric, r.p)
    doc = {
        "subset": [g.labels[i] for i in r.subset],
        "p": r.p,
        "value": r.value,
        "isoperimetric": r.isoperimetric,
        "isoperimetric_witness": [g.labels[i] for i in r.witness],
        "cheeger_bound": bound,
        "holds": r.value >= bound - 1e-9,
    }
    sys.stdout.write(dumps(doc))
    return EXIT_OK if doc["holds"] else EXIT_FALSE


def cmd_product(args) -> int:
    g1, _ = _load(args.g1)
    g2, _ = _load(args.g2)
    spec = ProductSpec(g1, g2, as_rational(args.alpha), as_rational(args.beta))
    G = cartesian_product(spec)
    if not args.check:
        sys.stdout.write(to_edge_list(G))
        return EXIT_OK
    ident = check_product_identities(spec)
    checks = [check_product_curvature(spec, X, Y) for X in range(G.n) for Y in range(G.n) if X != Y]
    bad = [c for c in checks if not c.holds]
    doc = {
        "identities": {"checked": ident.checked, "holds": ident.holds, "names": ident.names,
                       "failure": None if ident.failure is None else list(ident.failure)},
        "curvature": {"pairs_checked": len(checks), "holds": not bad,
                      "mismatches": [{"x": G.labels[c.pair[0]], "y": G.labels[c.pair[1]],
                                      "direct": c.direct, "predicted": c.predicted} for c in bad]},
    }
    sys.stdout.write(dumps(doc))
    return EXIT_OK if ident.holds and not bad else EXIT_FALSE


def cmd_gen(args) -> int:
    g = gen_complete(args.n) if args.family == "complete" else gen_cycle(args.n)
    sys.stdout.write(to_edge_list(g))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="digraph-ricci", description="Exact Ricci curvature of weighted digraphs.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full report: curvature, spectrum, theorem verdicts")
    p.add_argument("graph", help="edge-list TSV, or - for stdin")
    p.add_argument("--scope", choices=("edges", "all"), default="edges")
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("curvature", help="curvature table or a single pair")
    p.add_argument("graph")
    p.add_argument("--pair", nargs=2, metavar=("X", "Y"))
    p.add_argument("--scope", choices=("edges", "all"), default="edges")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_curvature)

    p = sub.add_parser("spectrum", help="eigenvalues of the Laplacian")
    p.add_argument("graph")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("dirichlet", help="Dirichlet p-Poincare constant of a vertex subset")
    p.add_argument("graph")
    p.add_argument("--subset", required=True, help="comma-separated labels")
    p.add_argument("--p", default="2")
    p.set_defaults(func=cmd_dirichlet)

    p = sub.add_parser("product", help="weighted Cartesian product (TSV), or check its formulas")
    p.add_argument("g1")
    p.add_argument("g2")
    p.add_argument("--alpha", default="1")
    p.add_argument("--beta", default="1")
    p.add_argument("--check", action="store_true")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("gen", help="write a standard example graph as TSV")
    p.add_argument("family", choices=("complete", "cycle"))
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_gen)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (RicciError, ValueError, OSError, UnicodeDecodeError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
