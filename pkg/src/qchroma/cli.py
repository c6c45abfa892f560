"""Command-line interface: compute graph invariants, verify identities,
scan partition ranks, and run the full corpus check.

Exit codes: 0 all assertions passed, 1 an identity/assertion failed,
2 bad input (flags, graph files, config), 3 a size cap was exceeded.
All reports are JSON with sorted keys, so identical configurations yield
byte-identical output; stderr carries plain messages only.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__
from .chromatic import (
    EvalPoint,
    clear_caches,
    q_chromatic,
    q_dichromate,
    rq_chromatic_delcon,
    rq_chromatic_statesum,
    rq_chromatic_subset,
    rq_dichromate,
    rq_dichromate_delcon,
    rq_dichromate_table,
)
from .classic import u_polynomial, xb_truncated
from .errors import GraphFormatError, QchromaError, SizeLimitError
from .graphs import (
    WeightedMultigraph,
    enumerate_multigraphs,
    load_graph,
    random_weighted_multigraphs,
)
from .partitions import (
    find_dependency,
    monomial_matrix,
    partition_count,
    threshold_scan,
)
from .linalg import rank_and_nullspace
from .potts import PottsField, partition_function
from .verify import (
    DEFAULT_GRID,
    SMALL_GRID,
    Grid,
    IDENTITY_SUITES,
    check_chromatic_triple,
    check_dichromate_delcon,
    check_dichromate_potts,
    check_q_dichromate_potts,
    check_u_potts,
    check_u_substitution,
    check_xb_roundtrip,
    run_identity,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_CAP = 3


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _fraction_list(text: str) -> list[Fraction]:
    return [_fraction(part) for part in text.split(",") if part]


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer list: {text!r}") from exc


def _parse_grid(spec: str) -> Grid:
    """Parse 'default', 'small', or 'r=2,3/2;q=0,1;k=2;x=1,2'."""
    if spec == "default":
        return DEFAULT_GRID
    if spec == "small":
        return SMALL_GRID
    fields = {}
    for chunk in spec.split(";"):
        if not chunk:
            continue
        name, _, values = chunk.partition("=")
        name = name.strip()
        if name not in ("r", "q", "k", "x") or not values:
            raise argparse.ArgumentTypeError(f"bad grid chunk {chunk!r}")
        if name in ("q", "k"):
            fields[name + "_values"] = tuple(_int_list(values))
        else:
            fields[name + "_values"] = tuple(_fraction_list(values))
    grid = Grid()
    return Grid(
        r_values=fields.get("r_values", grid.r_values),
        q_values=fields.get("q_values", grid.q_values),
        k_values=fields.get("k_values", grid.k_values),
        x_values=fields.get("x_values", grid.x_values),
    )


def _emit(doc: dict, out: str | None) -> None:
    payload = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(payload)
        print(f"report written to {out}")
    else:
        sys.stdout.write(payload)


def _corpus(args) -> list[WeightedMultigraph]:
    if getattr(args, "graph", None):
        return [load_graph(args.graph)]
    graphs = list(enumerate_multigraphs(args.corpus_vertices, args.corpus_edges))
    if args.random_graphs:
        graphs.extend(
            random_weighted_multigraphs(
                args.random_graphs,
                args.corpus_vertices,
                args.corpus_edges,
                seed=args.seed,
            )
        )
    return graphs


def _value_str(value) -> str:
    return str(value)


def _cmd_compute(args) -> int:
    g = load_graph(args.graph)
    grid = _parse_grid(args.grid)
    results = []
    fn = args.function
    if fn == "u":
        doc = u_polynomial(g, cap_bits=args.cap_subsets).to_json()
    elif fn == "xb":
        doc = xb_truncated(g, args.k, cap_bits=args.cap_states).to_json()
    elif fn == "dichromate-table":
        doc = rq_dichromate_table(g, args.k, cap_bits=args.cap_states).to_json()
    elif fn == "potts-z":
        field = None
        if args.field_json:
            field = {int(v): tuple(h) for v, h in json.loads(args.field_json).items()}
        model = PottsField(k=args.k, coupling=args.coupling, beta=args.beta, field=field)
        doc = {"value": partition_function(g, model, cap_bits=args.cap_states)}
    elif fn in ("chromatic", "chromatic-subset", "chromatic-delcon",
                "dichromate", "dichromate-delcon"):
        routes = {
            "chromatic": rq_chromatic_statesum,
            "chromatic-subset": rq_chromatic_subset,
            "chromatic-delcon": rq_chromatic_delcon,
            "dichromate": rq_dichromate,
            "dichromate-delcon": rq_dichromate_delcon,
        }
        needs_x = fn.startswith("dichromate")
        for q in grid.q_values:
            for k in grid.k_values:
                for r in grid.r_values:
                    if needs_x:
                        for x in grid.x_values:
                            point = EvalPoint(r, q, k, x)
                            value = routes[fn](g, point)
                            results.append({
                                "params": {"r": str(r), "q": q, "k": k, "x": str(x)},
                                "value": _value_str(value),
                            })
                    else:
                        point = EvalPoint(r, q, k)
                        value = routes[fn](g, point)
                        results.append({
                            "params": {"r": str(r), "q": q, "k": k},
                            "value": _value_str(value),
                        })
        doc = {"results": results}
    elif fn == "q-chromatic":
        for q in grid.q_values:
            for k in grid.k_values:
                results.append({
                    "params": {"q": q, "k": k},
                    "value": str(q_chromatic(g, k, q, cap_bits=args.cap_states)),
                })
        doc = {"results": results}
    elif fn == "q-dichromate":
        for q in grid.q_values:
            for k in grid.k_values:
                for x in grid.x_values:
                    results.append({
                        "params": {"q": q, "k": k, "x": str(x), "y": k},
                        "value": str(q_dichromate(g, x, k, q, cap_bits=args.cap_subsets)),
                    })
        doc = {"results": results}
    else:
        raise GraphFormatError(f"unknown function {fn!r}")
    _emit({"command": "compute", "function": fn, "graph": args.graph, **doc}, args.out)
    return EXIT_OK


def _run_suite_chunk(payload):
    """Worker entry: run one identity over a chunk of graphs."""
    name, graphs, grid = payload
    result = run_identity(name, graphs, grid)
    return result.cases, result.failures, result.findings


def _cmd_verify(args) -> int:
    grid = _parse_grid(args.grid)
    graphs = _corpus(args)
    names = list(IDENTITY_SUITES) if args.identity == "all" else [args.identity]
    for name in names:
        if name not in IDENTITY_SUITES:
            print(f"unknown identity {name!r}; choose from "
                  f"{sorted(IDENTITY_SUITES) + ['all']}", file=sys.stderr)
            return EXIT_BAD_INPUT
    suites = []
    exit_code = EXIT_OK
    for name in names:
        if args.workers > 1 and len(graphs) > 4 * args.workers:
            chunk = (len(graphs) + args.workers - 1) // args.workers
            payloads = [
                (name, graphs[i:i + chunk], grid)
                for i in range(0, len(graphs), chunk)
            ]
            cases, failures, findings = 0, [], []
            with ProcessPoolExecutor(max_workers=args.workers) as pool:
                for c, f, extra in pool.map(_run_suite_chunk, payloads):
                    cases += c
                    failures.extend(f)
                    findings.extend(extra)
        else:
            result = run_identity(name, graphs, grid)
            cases, failures, findings = result.cases, result.failures, result.findings
        ok = not failures
        suites.append({
            "identity": name,
            "cases": cases,
            "pass": ok,
            "failures": failures[:args.max_failures],
            "failure_count": len(failures),
            "findings": findings[:args.max_failures],
        })
        print(f"{name}: {'PASS' if ok else 'FAIL'} ({cases} cases)")
        if not ok:
            exit_code = EXIT_FAILED
    _emit(
        {
            "command": "verify",
            "grid": grid.to_json(),
            "graphs": len(graphs),
            "suites": suites,
        },
        args.out,
    )
    return exit_code


def _cmd_partition_rank(args) -> int:
    rank = rank_and_nullspace(
        monomial_matrix(args.n, max_n=args.max_n), mode=args.mode
    )[0]
    doc = {
        "command": "partition-rank",
        "n": args.n,
        "mode": args.mode,
        "rank": rank,
        "partitions": partition_count(args.n),
        "dimension_bound": (args.n ** 3 + args.n + 2) // 2,
        "full_row_rank": rank == partition_count(args.n),
    }
    if args.dependency:
        dep = find_dependency(args.n, mode="modular-then-lift" if args.mode == "modular" else "exact")
        doc["dependency"] = (
            None if dep is None
            else [{"partition": list(t), "alpha": str(a)} for t, a in dep]
        )
    _emit(doc, args.out)
    return EXIT_OK


def _cmd_threshold_scan(args) -> int:
    rows = threshold_scan(args.max)
    first = next((row.n for row in rows if row.exceeds), None)
    if args.csv:
        lines = ["n,partitions,bound,exceeds"]
        lines += [
            f"{row.n},{row.partition_count},{row.bound},{int(row.exceeds)}"
            for row in rows
        ]
        payload = "\n".join(lines) + "\n"
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(payload)
            print(f"report written to {args.out}")
        else:
            sys.stdout.write(payload)
    else:
        _emit(
            {
                "command": "threshold-scan",
                "max": args.max,
                "first_exceedance": first,
                "rows": [row.to_json() for row in rows],
            },
            args.out,
        )
    return EXIT_OK


def _cmd_corpus_check(args) -> int:
    """The full cross-validation battery (the acceptance surface)."""
    if args.quick:
        unit = list(enumerate_multigraphs(3, 4))
        weighted = list(random_weighted_multigraphs(30, 4, 6, seed=args.seed))
        grid = SMALL_GRID
    else:
        unit = list(enumerate_multigraphs(args.corpus_vertices, args.corpus_edges))
        weighted = list(random_weighted_multigraphs(
            args.random_graphs, args.corpus_vertices, args.corpus_edges, seed=args.seed))
        grid = _parse_grid(args.grid)
    mixed = unit + weighted
    report = {"command": "corpus-check", "grid": grid.to_json(),
              "unit_graphs": len(unit), "weighted_graphs": len(weighted), "suites": []}
    exit_code = EXIT_OK

    def run(label, fn):
        nonlocal exit_code
        clear_caches()
        result = fn()
        ok = result.ok
        report["suites"].append({
            "identity": result.identity,
            "label": label,
            "cases": result.cases,
            "pass": ok,
            "failure_count": len(result.failures),
            "failures": result.failures[:args.max_failures],
        })
        print(f"{label}: {'PASS' if ok else 'FAIL'} ({result.cases} cases)")
        if not ok:
            exit_code = EXIT_FAILED

    run("chromatic-triple", lambda: check_chromatic_triple(mixed, grid))
    run("dichromate-delcon", lambda: check_dichromate_delcon(mixed, grid))
    run("dichromate-potts(unit)", lambda: check_dichromate_potts(unit, grid))
    run("q-dichromate-potts", lambda: check_q_dichromate_potts(unit))
    run("xb-roundtrip", lambda: check_xb_roundtrip(unit))
    run("u-substitution", lambda: check_u_substitution(unit, grid))
    run("u-potts", lambda: check_u_potts(unit[: args.u_potts_graphs]))
    survey = check_dichromate_potts(weighted, SMALL_GRID, assert_placement=False)
    report["weighted_placement_survey"] = survey.findings[: args.max_failures]
    print(f"weighted placement survey: {survey.cases} cases recorded")
    _emit(report, args.out)
    return exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qchroma",
        description="Exact chromatic-type graph invariants, their Potts-model "
                    "correspondences, and integer-partition rank scans.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, subsets=True, states=True):
        p.add_argument("--out", help="write the JSON report here instead of stdout")
        p.add_argument("--seed", type=int, default=0, help="seed for random corpora")
        p.add_argument("--workers", type=int, default=1,
                       help="worker processes for corpus suites")
        if states:
            p.add_argument("--cap-states", dest="cap_states", type=int, default=22,
                           help="bit cap for state enumerations (default 22)")
        if subsets:
            p.add_argument("--cap-subsets", dest="cap_subsets", type=int, default=22,
                           help="bit cap for subset enumerations (default 22)")

    p = sub.add_parser("compute", help="evaluate one invariant on one graph")
    p.add_argument("--function", required=True,
                   choices=["chromatic", "chromatic-subset", "chromatic-delcon",
                            "dichromate", "dichromate-delcon", "dichromate-table",
                            "q-chromatic", "q-dichromate", "u", "xb", "potts-z"])
    p.add_argument("--graph", required=True, help="graph file (text or .json)")
    p.add_argument("--grid", default="small", help="'default', 'small', or e.g. 'r=2;q=1,2;k=2;x=1'")
    p.add_argument("--k", type=int, default=2, help="colour count for table/xb/potts-z")
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--coupling", type=float, default=1.0,
                   help="spin-spin coupling J for potts-z")
    p.add_argument("--field-json", dest="field_json",
                   help='per-vertex field lists as JSON, e.g. {"0": [0, 0.5]}')
    common(p)
    p.set_defaults(func=_cmd_compute)

    p = sub.add_parser("verify", help="run an identity suite over a corpus or one graph")
    p.add_argument("--identity", required=True,
                   help=f"one of {sorted(IDENTITY_SUITES)} or 'all'")
    p.add_argument("--graph", help="verify a single graph file instead of the corpus")
    p.add_argument("--grid", default="default")
    p.add_argument("--corpus-vertices", type=int, default=4)
    p.add_argument("--corpus-edges", type=int, default=6)
    p.add_argument("--random-graphs", type=int, default=50)
    p.add_argument("--max-failures", type=int, default=20,
                   help="cap on failure details carried in the report")
    common(p, subsets=False, states=False)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("partition-rank", help="rank of the lifted-row monomial matrix")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=["exact", "modular"], default="exact")
    p.add_argument("--max-n", type=int, default=16, help="safety cap on n")
    p.add_argument("--dependency", action="store_true",
                   help="also extract one verified row dependency if rank deficient")
    p.add_argument("--report", dest="out", help="alias of --out")
    common(p, subsets=False, states=False)
    p.set_defaults(func=_cmd_partition_rank)

    p = sub.add_parser("threshold-scan", help="partition count vs dimension bound")
    p.add_argument("--max", type=int, default=60)
    p.add_argument("--csv", action="store_true", help="emit CSV instead of JSON")
    common(p, subsets=False, states=False)
    p.set_defaults(func=_cmd_threshold_scan)

    p = sub.add_parser("corpus-check", help="full cross-validation battery")
    p.add_argument("--quick", action="store_true", help="small corpus and grid")
    p.add_argument("--grid", default="default")
    p.add_argument("--corpus-vertices", type=int, default=5)
    p.add_argument("--corpus-edges", type=int, default=8)
    p.add_argument("--random-graphs", type=int, default=200)
    p.add_argument("--u-potts-graphs", type=int, default=40)
    p.add_argument("--max-failures", type=int, default=20)
    common(p, subsets=False, states=False)
    p.set_defaults(func=_cmd_corpus_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SizeLimitError as exc:
        print(f"size cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (GraphFormatError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"bad input: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except QchromaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
