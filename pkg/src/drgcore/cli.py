"""Command-line interface.

Subcommands: analyze, triples, enumerate, graph recognize / hom / verify,
and table.  Exit status: 0 = completed (whatever the mathematical verdict),
2 = usage error, 3 = internal invariant violation, 4 = timeout / unknown.
The environment variable DRG_PRECISION_BITS (default 256) sets the working
precision for interval refinement.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .algebra import decimal_str
from .enumeration import FAMILY_NAMES, enumerate_arrays
from .feasibility import run_battery
from .graphs import (
    GraphFormatError,
    geodetic_pairs,
    image_diameter,
    is_homomorphism,
    parse_graph,
    phi_partition,
    recognize_drg,
    search_hom,
    verify_identities,
)
from .homtheory import analyze_array, search_triples
from .params import (
    InternalConsistencyError,
    InvalidArrayError,
    UnsupportedArrayError,
    derive_parameters,
    spectral_data,
)
from .report import emit_table, parse_records

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INTERNAL = 3
EXIT_UNKNOWN = 4


def _spectrum_items(analysis):
    sd = analysis.sd
    return [(decimal_str(t), m) for t, m in zip(sd.theta, sd.m)]


def _analysis_json(analysis) -> dict:
    out = {
        "array": analysis.array_text,
        "report": analysis.report.to_json_dict(),
    }
    if analysis.ps is not None:
        out["n"] = analysis.ps.n
        out["k"] = list(analysis.ps.k)
        out["a"] = list(analysis.ps.a)
    if analysis.sd is not None:
        out["spectrum"] = [
            {"value": v, "multiplicity": m,
             "minpoly": [int(c) for c in t.minpoly.coeffs]}
            for (v, m), t in zip(_spectrum_items(analysis), analysis.sd.theta)]
    if analysis.complete_core is not None:
        cc = {"theta_d_vs_minus2": analysis.complete_core.theta_d_vs_minus2}
        if analysis.complete_core.bound is not None:
            cc["bound"] = str(analysis.complete_core.bound)
        out["complete_core"] = cc
    if analysis.family is not None:
        out["family"] = {"bipartite": analysis.family.bipartite,
                         "antipodal": analysis.family.antipodal,
                         "primitive": analysis.family.primitive}
    if analysis.verdict is not None:
        out["verdict"] = analysis.verdict.to_json_dict()
    if analysis.notes:
        out["notes"] = list(analysis.notes)
    return out


def _analysis_text(analysis) -> list[str]:
    lines = [f"array: {analysis.array_text}"]
    if analysis.ps is not None:
        lines.append("vertices: " + f"n = {analysis.ps.n} = " +
                     " + ".join(str(v) for v in analysis.ps.k))
        lines.append("a-sequence: (" + ", ".join(map(str, analysis.ps.a)) + ")")
    for c in analysis.report.checks:
        detail = f"  [{c.detail}]" if c.detail else ""
        lines.append(f"  {c.check_id} {c.verdict}{detail}")
    lines.append(f"feasible: {'yes' if analysis.report.feasible else 'no'}")
    if analysis.sd is not None:
        lines.append("spectrum: " + " ".join(
            f"{v}^{{{m}}}" for v, m in _spectrum_items(analysis)))
    if analysis.family is not None:
        kinds = [name for name in FAMILY_NAMES
                 if getattr(analysis.family, name)]
        lines.append("family: " + (", ".join(kinds) if kinds else "none"))
    if analysis.complete_core is not None:
        txt = f"least eigenvalue vs -2: {analysis.complete_core.theta_d_vs_minus2}"
        if analysis.complete_core.bound is not None:
            txt += f" (distance-2 colour cap {analysis.complete_core.bound})"
        lines.append(txt)
    if analysis.verdict is not None:
        lines.append(f"verdict: {analysis.verdict.tag}")
        for w in analysis.verdict.witnesses:
            lines.append(f"  witness e={w.e}: ({w.alpha}, {w.beta}, {w.gamma})")
        for note in analysis.verdict.notes:
            lines.append(f"  note: {note}")
    for note in analysis.notes:
        lines.append(f"note: {note}")
    return lines


def _analysis_markdown(analysis) -> list[str]:
    lines = ["| field | value |", "| --- | --- |"]
    obj = _analysis_json(analysis)
    lines.append(f"| array | `{obj['array']}` |")
    if "n" in obj:
        lines.append(f"| vertices | {obj['n']} = " +
                     " + ".join(map(str, obj["k"])) + " |")
    lines.append("| feasible | " +
                 ("yes" if obj["report"]["feasible"] else "no") + " |")
    if "spectrum" in obj:
        spec = " ".join(f"{s['value']}^{{{s['multiplicity']}}}"
                        for s in obj["spectrum"])
        lines.append(f"| spectrum | {spec} |")
    if "family" in obj:
        kinds = [k for k, v in obj["family"].items() if v]
        lines.append("| family | " + (", ".join(kinds) or "none") + " |")
    if "complete_core" in obj:
        lines.append("| least eigenvalue vs -2 | "
                     f"{obj['complete_core']['theta_d_vs_minus2']} |")
    if "verdict" in obj:
        lines.append(f"| verdict | {obj['verdict']['tag']} |")
        if obj["verdict"]["witnesses"]:
            ws = "; ".join("(%d, %d, %d)" % tuple(w)
                           for w in obj["verdict"]["witnesses"])
            lines.append(f"| witnesses | {ws} |")
    return lines


def _cmd_analyze(args) -> int:
    from .params import parse_array
    analysis = analyze_array(parse_array(args.array))
    if args.json:
        print(json.dumps(_analysis_json(analysis), indent=2))
    elif args.markdown:
        print("\n".join(_analysis_markdown(analysis)))
    else:
        print("\n".join(_analysis_text(analysis)))
    return EXIT_OK


def _cmd_triples(args) -> int:
    ps = derive_parameters(args.array)
    sd = spectral_data(ps)
    try:
        witnesses = search_triples(ps, sd, args.e)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for w in witnesses:
        print(f"({w.alpha}, {w.beta}, {w.gamma})")
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    families = None if args.family == "all" else {args.family}
    stream = enumerate_arrays(args.diameter, args.max_k, families=families,
                              jobs=args.jobs)
    if args.format == "json-lines":
        from .report import record_to_json
        for rec in stream:
            print(record_to_json(rec))
        return EXIT_OK
    sys.stdout.write(emit_table(list(stream), args.format))
    return EXIT_OK


def _read_graph(path: str, fmt: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_graph(fh.read(), fmt)
    except OSError as exc:
        raise GraphFormatError(f"cannot read {path}: {exc}") from exc


def _cmd_graph_recognize(args) -> int:
    g = _read_graph(args.file, args.format)
    try:
        arr = recognize_drg(g)
    except UnsupportedArrayError as exc:
        print(f"distance-regular, but out of scope: {exc}")
        return EXIT_OK
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(str(arr) if arr is not None else "not distance-regular")
    return EXIT_OK


def _cmd_graph_hom(args) -> int:
    x = _read_graph(args.fileX, args.format)
    y = _read_graph(args.fileY, args.format)
    fixed = {}
    for item in args.fix or ():
        try:
            u, v = item.split("=")
            fixed[int(u)] = int(v)
        except ValueError:
            print(f"error: bad --fix {item!r}, expected u=v", file=sys.stderr)
            return EXIT_USAGE
    if args.retraction:
        subset = list(range(y.n))
        induced, _ = x.induced(subset)
        if induced != y:
            print("error: --retraction needs fileY to equal the subgraph of "
                  "fileX induced on vertices 0..|Y|-1", file=sys.stderr)
            return EXIT_USAGE
        result = search_hom(x, retraction_onto=subset,
                            fixed=fixed or None, timeout=args.timeout)
    else:
        result = search_hom(x, y, fixed=fixed or None, timeout=args.timeout)
    if result.status == "found":
        print(json.dumps(list(result.map)))
        return EXIT_OK
    if result.status == "none":
        print("NONE")
        return EXIT_OK
    print("UNKNOWN")
    return EXIT_UNKNOWN


def _cmd_graph_verify(args) -> int:
    x = _read_graph(args.fileX, args.format)
    try:
        with open(args.map, "r", encoding="utf-8") as fh:
            image = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read map {args.map}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if not (isinstance(image, list) and len(image) == x.n and
            all(isinstance(v, int) for v in image)):
        print("error: map must be a JSON array image[i] of length n",
              file=sys.stderr)
        return EXIT_USAGE
    if not is_homomorphism(x, x, image):
        print("error: the map is not an endomorphism of fileX", file=sys.stderr)
        return EXIT_USAGE
    report = verify_identities(x, x, image)
    for line in report.lines():
        print(line)
    arr = recognize_drg(x)
    ps = derive_parameters(arr)
    sd = spectral_data(ps)
    row = sd.cosine_floats(ps.d)
    pairs = geodetic_pairs(x, image)
    print(f"image diameter: {image_diameter(x, image)}")
    print(f"geodetic pairs: {len(pairs)} (showing up to {args.max_pairs})")
    for u, v, e in pairs[: args.max_pairs]:
        part = phi_partition(x, image, u, v, cosine_row=row)
        t = part.triple
        print(f"  ({u},{v}) e={e} cells={t} residual={part.residual:.2e}")
    return EXIT_OK


def _cmd_table(args) -> int:
    try:
        with open(args.records, "r", encoding="utf-8") as fh:
            records = parse_records(fh.read())
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: cannot read records: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(emit_table(records, args.format))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="drg",
        description="Exact analysis of distance-regular graph intersection "
                    "arrays and explicit-graph homomorphism checks.",
        epilog="DRG_PRECISION_BITS (default 256) sets the interval-refinement "
               "working precision.")
    sub = p.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="full parameter/feasibility/core report")
    pa.add_argument("array")
    fmt = pa.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--markdown", action="store_true")
    pa.set_defaults(func=_cmd_analyze)

    pt = sub.add_parser("triples", help="smaller-diameter witness triples")
    pt.add_argument("array")
    pt.add_argument("--e", type=int, required=True,
                    help="image diameter to test")
    pt.set_defaults(func=_cmd_triples)

    pe = sub.add_parser("enumerate", help="survey feasible arrays")
    pe.add_argument("--diameter", type=int, default=3)
    pe.add_argument("--max-k", type=int, required=True)
    pe.add_argument("--family", default="all",
                    choices=list(FAMILY_NAMES) + ["all"])
    pe.add_argument("--format", default="json-lines",
                    choices=["json-lines", "markdown", "csv"])
    pe.add_argument("--jobs", type=int, default=None)
    pe.set_defaults(func=_cmd_enumerate)

    pg = sub.add_parser("graph", help="explicit-graph operations")
    gsub = pg.add_subparsers(dest="graph_command", required=True)

    pr = gsub.add_parser("recognize", help="intersection array of a graph")
    pr.add_argument("file")
    pr.add_argument("--format", default="edge-list",
                    choices=["edge-list", "graph6"])
    pr.set_defaults(func=_cmd_graph_recognize)

    ph = gsub.add_parser("hom", help="search for a homomorphism")
    ph.add_argument("fileX")
    ph.add_argument("fileY")
    ph.add_argument("--format", default="edge-list",
                    choices=["edge-list", "graph6"])
    ph.add_argument("--retraction", action="store_true",
                    help="treat fileY as x[0..|Y|-1] and pin it pointwise")
    ph.add_argument("--fix", action="append", metavar="u=v",
                    help="pin vertex u of fileX to vertex v of the target")
    ph.add_argument("--timeout", type=float, default=None, metavar="SECONDS")
    ph.set_defaults(func=_cmd_graph_hom)

    pv = gsub.add_parser("verify", help="identity report for an endomorphism")
    pv.add_argument("fileX")
    pv.add_argument("map", help="JSON array image[i]")
    pv.add_argument("--format", default="edge-list",
                    choices=["edge-list", "graph6"])
    pv.add_argument("--max-pairs", type=int, default=200)
    pv.set_defaults(func=_cmd_graph_verify)

    pt2 = sub.add_parser("table", help="render a JSON-lines record stream")
    pt2.add_argument("records")
    pt2.add_argument("--format", default="markdown",
                     choices=["markdown", "csv", "json-lines"])
    pt2.set_defaults(func=_cmd_table)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (InvalidArrayError, GraphFormatError, UnsupportedArrayError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalConsistencyError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
