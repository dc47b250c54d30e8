"""Command-line surface for batch verification and report generation.

Exit codes: 0 all checks passed, 1 usage error, 2 a majorization
counterexample was found (never expected; it would be a significant
result), 3 malformed or unreadable input.

Each graph-consuming subcommand reads from exactly one source: a
graph6 string, a file of graph6 lines, an edge-list file, or a seeded
random generator spec.  Reports stream one graph at a time in json
(one object per line), csv, or an aligned text layout.
"""

import argparse
import json
import os
import sys

from gmlap import __version__
from gmlap.decompose import (
    MODES,
    census,
    decompose_search,
    eigenfree_census,
    tree_certificate,
    verify_certificate,
)
from gmlap.dirichlet import VertexPair, pair_gm_check, reduction_chain_check
from gmlap.enumeration import all_graphs, random_graph, sweep
from gmlap.gm import DEFAULT_TOL, gm_check
from gmlap.graph6 import FormatError, parse_edge_list, parse_graph6, write_graph6
from gmlap.graphs import Graph, is_tree, threshold_graph
from gmlap.spectra import format_real, laplacian_spectrum

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COUNTEREXAMPLE = 2
EXIT_BAD_INPUT = 3

SIX_VERTEX_REFERENCE = {"total_classes": 156, "eigenfree_covered": 146, "residual": 10}


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; the contract says 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_input_flags(sub):
    sub.add_argument("--graph6", help="one graph as a graph6 string")
    sub.add_argument("--file", help="path to a file of graph6 lines")
    sub.add_argument("--edges", help="path to an edge-list file ('n m' header, 'i j' lines)")
    sub.add_argument("--random", metavar="N,P", help="random graph spec, e.g. 12,0.5")
    sub.add_argument("--seed", type=int, default=0, help="seed for --random (default 0)")


def _add_report_flags(sub):
    sub.add_argument("--format", choices=("json", "csv", "text"), default="json")
    sub.add_argument("--tol", type=float, default=DEFAULT_TOL)
    sub.add_argument("--out", help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gmlap", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"gmlap {__version__}")
    subs = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)

    sub = subs.add_parser("spectrum", help="Laplacian eigenvalues of each input graph")
    _add_input_flags(sub)
    _add_report_flags(sub)

    sub = subs.add_parser("gm", help="spectrum vs conjugate-degree majorization verdict")
    _add_input_flags(sub)
    _add_report_flags(sub)

    sub = subs.add_parser("decompose", help="search for a qualifying cut")
    _add_input_flags(sub)
    _add_report_flags(sub)
    sub.add_argument("--mode", choices=MODES + ("both",), default="both")

    sub = subs.add_parser("tree-cert", help="build and verify a tree certificate")
    _add_input_flags(sub)
    _add_report_flags(sub)

    sub = subs.add_parser("dirichlet", help="deleted-vertex pair checks and reduction chain")
    _add_input_flags(sub)
    _add_report_flags(sub)
    sub.add_argument(
        "--deleted",
        default="0b0",
        help="deleted vertices: 0b/0x bitmask or comma-separated list",
    )

    sub = subs.add_parser("census", help="decomposability census over all classes of one order")
    sub.add_argument("--n", type=int, default=6)
    sub.add_argument("--mode", choices=MODES + ("both",), default="both")
    _add_report_flags(sub)

    sub = subs.add_parser("sweep", help="exhaustive check sweep with persistent reports")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--checks", default="gm,decompose", help="comma list from: gm,decompose")
    sub.add_argument(
        "--workers",
        type=int,
        default=int(os.environ.get("GM_WORKERS", "1")),
        help="worker processes (default: GM_WORKERS env or 1)",
    )
    _add_report_flags(sub)

    sub = subs.add_parser("threshold", help="threshold graphs: build and check equality")
    sub.add_argument("creation", nargs="?", help="creation sequence of 0/1 (0 isolated, 1 dominating)")
    sub.add_argument("--n", type=int, help="check all 2^(n-1) creation sequences of this length")
    _add_report_flags(sub)
    return parser


def _load_graphs(args):
    """Resolve the single input source into a list of graphs."""
    sources = [
        s for s in ("graph6", "file", "edges", "random") if getattr(args, s, None)
    ]
    if len(sources) != 1:
        raise _UsageError("exactly one of --graph6/--file/--edges/--random is required")
    kind = sources[0]
    if kind == "graph6":
        return [parse_graph6(args.graph6)]
    if kind == "file":
        with open(args.file) as fh:
            lines = [ln.strip() for ln in fh if ln.strip()]
        return [parse_graph6(ln) for ln in lines]
    if kind == "edges":
        with open(args.edges) as fh:
            return [parse_edge_list(fh.read())]
    try:
        n_text, p_text = args.random.split(",")
        n, p = int(n_text), float(p_text)
    except ValueError as exc:
        raise FormatError(f"bad --random spec {args.random!r}; expected N,P") from exc
    return [random_graph(n, p, args.seed)]


class _UsageError(Exception):
    pass


def _parse_deleted(text: str, n: int) -> int:
    text = text.strip()
    if text.lower().startswith(("0b", "0x", "0o")):
        mask = int(text, 0)
    else:
        mask = 0
        for part in text.split(","):
            part = part.strip()
            if part == "":
                continue
            v = int(part)
            if not 0 <= v < n:
                raise FormatError(f"deleted vertex {v} out of range for n={n}")
            mask |= 1 << v
    if mask < 0 or mask >> n:
        raise FormatError(f"deleted mask {text!r} out of range for n={n}")
    return mask


def _emit(lines, out):
    text = "\n".join(lines) + "\n" if lines else ""
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _text_block(rows) -> list:
    """Align label: value columns across the rows of one report."""
    widths = {}
    for _label, cells in rows:
        for k, cell in enumerate(cells):
            widths[k] = max(widths.get(k, 0), len(cell))
    lines = []
    label_w = max(len(label) for label, _ in rows)
    for label, cells in rows:
        padded = "  ".join(c.rjust(widths[k]) for k, c in enumerate(cells))
        lines.append(f"{label.ljust(label_w)}  {padded}".rstrip())
    return lines


def _cmd_spectrum(args) -> int:
    graphs = _load_graphs(args)
    lines = []
    if args.format == "csv":
        lines.append("graph6,residual,values")
    for g in graphs:
        spec = laplacian_spectrum(g)
        g6 = write_graph6(g)
        values = [format_real(v) for v in spec.values]
        if args.format == "json":
            lines.append(_json({"graph6": g6, "values": values, "residual": format_real(spec.residual)}))
        elif args.format == "csv":
            lines.append(f"{g6},{format_real(spec.residual)},{';'.join(values)}")
        else:
            lines.append(f"graph6: {g6}")
            lines.extend(_text_block([("lambda", values)]))
            lines.append(f"residual: {format_real(spec.residual)}")
            lines.append("")
    _emit(lines, args.out)
    return EXIT_OK


def _gm_text(report, tol) -> list:
    from gmlap.gm import conjugate_degrees

    g = parse_graph6(report.graph6)
    lam = laplacian_spectrum(g).values
    dt = conjugate_degrees(g)
    lines = [f"graph6: {report.graph6}"]
    lines.extend(
        _text_block(
            [
                ("d^T", [str(x) for x in dt]),
                ("lambda", [format_real(x) for x in lam]),
                ("margin", [format_real(m) for m in report.margins]),
            ]
        )
    )
    verdict = "holds" if report.holds else f"FAILS at prefix {report.first_violation}"
    lines.append(
        f"verdict: {verdict}  equality: {'yes' if report.equality else 'no'}"
        f"  shortcut: {report.shortcut or '-'}  tol: {format_real(tol)}"
    )
    lines.append("")
    return lines


def _cmd_gm(args) -> int:
    graphs = _load_graphs(args)
    lines = []
    if args.format == "csv":
        lines.append("graph6,holds,equality,shortcut,first_violation")
    bad = False
    for g in graphs:
        report = gm_check(g, args.tol)
        bad |= not report.holds
        if args.format == "json":
            lines.append(_json(report.to_json_dict()))
        elif args.format == "csv":
            fv = "" if report.first_violation is None else str(report.first_violation)
            lines.append(
                f"{report.graph6},{report.holds},{report.equality},{report.shortcut or ''},{fv}"
            )
        else:
            lines.extend(_gm_text(report, args.tol))
    _emit(lines, args.out)
    return EXIT_COUNTEREXAMPLE if bad else EXIT_OK


def _decompose_entry(g, mode, tol):
    found = decompose_search(g, mode, tol)
    if found is None:
        return {"decomposable": False, "cut_mask": None}
    cut, report = found
    return {
        "decomposable": True,
        "cut_mask": cut.va_mask,
        "report": {
            "gm_a": report.gm_a,
            "gm_b": report.gm_b,
            "gm_c": report.gm_c,
            "cond_c_le_parts": report.cond_c_le_parts,
            "cond_order": report.cond_order,
            "cond_dt": report.cond_dt,
            "theorem_applies": report.theorem_applies,
        },
    }


def _cmd_decompose(args) -> int:
    graphs = _load_graphs(args)
    modes = MODES if args.mode == "both" else (args.mode,)
    lines = []
    if args.format == "csv":
        lines.append("graph6,mode,decomposable,cut_mask")
    for g in graphs:
        g6 = write_graph6(g)
        entry = {"graph6": g6}
        for mode in modes:
            entry[mode] = _decompose_entry(g, mode, args.tol)
        if args.format == "json":
            lines.append(_json(entry))
        elif args.format == "csv":
            for mode in modes:
                e = entry[mode]
                mask = "" if e["cut_mask"] is None else str(e["cut_mask"])
                lines.append(f"{g6},{mode},{e['decomposable']},{mask}")
        else:
            lines.append(f"graph6: {g6}")
            for mode in modes:
                e = entry[mode]
                state = f"cut mask {e['cut_mask']}" if e["decomposable"] else "no qualifying cut"
                lines.append(f"  {mode}: {state}")
            lines.append("")
    _emit(lines, args.out)
    return EXIT_OK


def _cmd_tree_cert(args) -> int:
    graphs = _load_graphs(args)
    lines = []
    if args.format == "csv":
        lines.append("graph6,verified,leaves")
    for g in graphs:
        if not is_tree(g):
            raise FormatError(f"input {write_graph6(g)} is not a tree")
        cert = tree_certificate(g)
        ok = verify_certificate(cert, args.tol)
        if args.format == "json":
            lines.append(_json({"verified": ok, "certificate": cert.to_json_dict()}))
        elif args.format == "csv":
            lines.append(f"{cert.graph6},{ok},{_count_leaves(cert)}")
        else:
            lines.append(f"graph6: {cert.graph6}  verified: {'yes' if ok else 'NO'}")
            lines.extend(_cert_text(cert, depth=1))
            lines.append("")
    _emit(lines, args.out)
    return EXIT_OK


def _count_leaves(cert) -> int:
    if not cert.children:
        return 1
    return sum(_count_leaves(c) for c in cert.children)


def _cert_text(cert, depth) -> list:
    pad = "  " * depth
    head = f"{pad}{cert.kind} {cert.graph6}"
    if cert.va_mask is not None:
        head += f" cut_mask={cert.va_mask}"
    lines = [head]
    for c in cert.children:
        lines.extend(_cert_text(c, depth + 1))
    return lines


def _cmd_dirichlet(args) -> int:
    graphs = _load_graphs(args)
    lines = []
    any_fail = False
    if args.format == "csv":
        lines.append("graph6,deleted,link1,link2,link3,final,identity_check,pair_holds")
    for g in graphs:
        mask = _parse_deleted(args.deleted, g.n)
        pair = VertexPair(g, mask)
        if not pair.undeleted:
            raise FormatError("deleted set leaves no vertices")
        chain = reduction_chain_check(pair, args.tol)
        verdict = pair_gm_check(pair, args.tol)
        any_fail |= not (chain.final and verdict.holds)
        g6 = write_graph6(g)
        if args.format == "json":
            entry = {"graph6": g6, "deleted": mask}
            entry.update(chain.to_json_dict())
            entry["pair_gm"] = verdict.to_json_dict()
            lines.append(_json(entry))
        elif args.format == "csv":
            lines.append(
                f"{g6},{mask},{chain.link1},{chain.link2},{chain.link3},"
                f"{chain.final},{chain.identity_check},{verdict.holds}"
            )
        else:
            lines.append(f"graph6: {g6}  deleted mask: {bin(mask)}")
            lines.append(
                f"  links: spectrum-split {_yn(chain.link1)}, degree-realizability {_yn(chain.link2)},"
                f" interior {_yn(chain.link3)}, final {_yn(chain.final)},"
                f" identity {_yn(chain.identity_check)}"
            )
            lines.append(f"  pair verdict: {'holds' if verdict.holds else 'FAILS'}")
            lines.append("")
    _emit(lines, args.out)
    return EXIT_COUNTEREXAMPLE if any_fail else EXIT_OK


def _yn(flag) -> str:
    return "ok" if flag else "FAIL"


def _cmd_census(args) -> int:
    modes = MODES if args.mode == "both" else (args.mode,)
    gm_bad = []
    total = 0
    for g in all_graphs(args.n):
        total += 1
        report = gm_check(g, args.tol)
        if not report.holds:
            gm_bad.append(report.graph6)
    summary = {
        "n": args.n,
        "total_classes": total,
        "gm_holds_count": total - len(gm_bad),
        "counterexamples": gm_bad,
        "modes": {},
    }
    for mode in modes:
        result = census(args.n, mode, args.tol)
        summary["modes"][mode] = result.to_json_dict()
    closure = eigenfree_census(args.n, args.tol)
    summary["eigenfree"] = closure.to_json_dict()
    if args.n == 6:
        matches = (
            total == SIX_VERTEX_REFERENCE["total_classes"]
            and closure.covered_count == SIX_VERTEX_REFERENCE["eigenfree_covered"]
            and len(closure.residual_graph6) == SIX_VERTEX_REFERENCE["residual"]
        )
        summary["reference"] = dict(SIX_VERTEX_REFERENCE)
        summary["reference_match"] = matches

    if args.format == "json":
        lines = [json.dumps(summary, indent=2, sort_keys=True)]
    elif args.format == "csv":
        lines = ["graph6,eigenfree_method"]
        lines.extend(f"{g6},{method}" for g6, method in closure.methods)
    else:
        lines = [f"classes on {args.n} vertices: {total}"]
        lines.append(f"majorization holds: {total - len(gm_bad)}/{total}")
        for mode in modes:
            r = summary["modes"][mode]
            lines.append(f"decomposable ({mode} mode, direct): {r['decomposable_count']}")
        lines.append(
            f"settled without eigensolving: {closure.covered_count}"
            f" (residual {len(closure.residual_graph6)})"
        )
        for g6 in closure.residual_graph6:
            lines.append(f"  residual: {g6}")
        if "reference_match" in summary:
            state = "matches" if summary["reference_match"] else "DIFFERS FROM"
            ref = SIX_VERTEX_REFERENCE
            lines.append(
                f"reference comparison: {state} the recorded census"
                f" ({ref['total_classes']} classes, {ref['eigenfree_covered']} settled,"
                f" {ref['residual']} residual)"
            )
    _emit(lines, args.out)
    return EXIT_COUNTEREXAMPLE if gm_bad else EXIT_OK


def _cmd_sweep(args) -> int:
    checks = tuple(c for c in args.checks.split(",") if c)
    report = sweep(
        args.n,
        checks=checks,
        workers=args.workers,
        tolerance=args.tol,
        out_dir=args.out,
    )
    payload = report.to_json_dict()
    if args.format == "json":
        lines = [json.dumps(payload, indent=2, sort_keys=True)]
    elif args.format == "csv":
        lines = [f"{k},{v}" for k, v in sorted(payload.items()) if not isinstance(v, (dict, list))]
    else:
        lines = [
            f"classes on {report.n} vertices: {report.total_classes}",
            f"majorization holds: {report.gm_holds_count}"
            f"  equality: {report.gm_equality_count}",
        ]
        if report.decomposable:
            parts = ", ".join(f"{m}: {c}" for m, c in sorted(report.decomposable.items()))
            lines.append(f"decomposable (direct): {parts}")
        lines.append(f"wall time: {report.wall_time:.2f}s")
    if args.out:
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        _emit(lines, None)
    return EXIT_COUNTEREXAMPLE if report.counterexamples else EXIT_OK


def _cmd_threshold(args) -> int:
    if (args.creation is None) == (args.n is None):
        raise _UsageError("pass a creation sequence or --n, not both")
    lines = []
    worst = 0.0
    bad = []
    if args.creation is not None:
        seqs = [args.creation]
    else:
        if args.n < 1:
            raise _UsageError("--n must be >= 1")
        seqs = [
            "0" + format(bits, f"0{args.n - 1}b") if args.n > 1 else "0"
            for bits in range(1 << (args.n - 1))
        ]
    for text in seqs:
        if any(ch not in "01" for ch in text) or not text:
            raise FormatError(f"creation sequence {text!r} must be nonempty 0/1")
        g = threshold_graph(tuple(int(ch) for ch in text))
        report = gm_check(g, args.tol)
        dev = max((abs(m) for m in report.margins), default=0.0)
        worst = max(worst, dev)
        if not report.equality:
            bad.append(text)
        if args.format == "json":
            lines.append(
                _json(
                    {
                        "creation": text,
                        "graph6": report.graph6,
                        "equality": report.equality,
                        "max_margin": format_real(dev),
                    }
                )
            )
        elif args.format == "csv":
            lines.append(f"{text},{report.graph6},{report.equality},{format_real(dev)}")
        else:
            lines.append(
                f"{text} -> {report.graph6}  equality: {'yes' if report.equality else 'NO'}"
                f"  max margin: {format_real(dev)}"
            )
    if args.format == "csv":
        lines.insert(0, "creation,graph6,equality,max_margin")
    if args.format == "text" and args.n is not None:
        lines.append(f"sequences: {len(seqs)}  worst margin: {format_real(worst)}")
    _emit(lines, args.out)
    return EXIT_COUNTEREXAMPLE if bad else EXIT_OK


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True)


_HANDLERS = {
    "spectrum": _cmd_spectrum,
    "gm": _cmd_gm,
    "decompose": _cmd_decompose,
    "tree-cert": _cmd_tree_cert,
    "dirichlet": _cmd_dirichlet,
    "census": _cmd_census,
    "sweep": _cmd_sweep,
    "threshold": _cmd_threshold,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return _HANDLERS[args.command](args)
    except _UsageError as exc:
        print(f"gmlap: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, OSError) as exc:
        print(f"gmlap: bad input: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except ValueError as exc:
        print(f"gmlap: bad input: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
