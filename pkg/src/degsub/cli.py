"""Command-line front end: edge-list and certificate files, batch commands,
and the probe report with its figure."""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path

from . import __version__
from .engine import MinDegreeError, extract_target
from .graphs import (Graph, PatternGraph, SubdivisionCertificate, VertexPath,
                     verify_certificate)
from .oracle import (BudgetExceeded, SearchBudget, find_subdivision,
                     probe_goodness, random_min_degree_graph)
from .patterns import build_named, enumerate_maximal_3_degenerate

CERT_FORMAT = "subdivision-certificate/1"


class EdgeListError(ValueError):
    pass


def parse_edge_list(text: str) -> Graph:
    """Parse the plain edge-list format: a header line "n m", then m lines
    "u v" with 0 <= u < v < n."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise EdgeListError("malformed header: empty input")
    head = lines[0].split()
    if len(head) != 2 or not all(tok.lstrip("-").isdigit() for tok in head):
        raise EdgeListError(f"malformed header: {lines[0]!r}")
    n, m = int(head[0]), int(head[1])
    if n < 0 or m < 0:
        raise EdgeListError(f"malformed header: {lines[0]!r}")
    if len(lines) - 1 != m:
        raise EdgeListError(f"edge count mismatch: header says {m}, found {len(lines) - 1}")
    edges = []
    seen = set()
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) != 2 or not all(tok.lstrip("-").isdigit() for tok in toks):
            raise EdgeListError(f"malformed edge line: {ln!r}")
        u, v = int(toks[0]), int(toks[1])
        if u == v:
            raise EdgeListError(f"self-loop at vertex {u}")
        if not (0 <= u < v < n):
            raise EdgeListError(f"vertex out of range in edge {u} {v} (need 0 <= u < v < {n})")
        if (u, v) in seen:
            raise EdgeListError(f"duplicate edge {u} {v}")
        seen.add((u, v))
        edges.append((u, v))
    return Graph.from_edges(edges, vertices=range(n))


def format_edge_list(g: Graph) -> str:
    verts = g.sorted_vertices()
    if verts and verts != list(range(len(verts))):
        raise ValueError("edge-list format needs contiguous 0-based vertex ids")
    lines = [f"{g.order} {g.size}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def emit_certificate(cert: SubdivisionCertificate) -> str:
    """Canonical text serialization: stable key order, sorted arrays, LF ends."""
    pat = cert.pattern.graph
    doc = {
        "format": CERT_FORMAT,
        "pattern": {
            "vertices": pat.sorted_vertices(),
            "edges": [list(e) for e in pat.edges()],
            "terminals": list(cert.pattern.terminal_labels)
            if cert.pattern.terminal_labels is not None else None,
        },
        "branch_map": [[pv, cert.branch_map[pv]] for pv in sorted(cert.branch_map)],
        "paths": [
            {"edge": [u, v],
             "vertices": list(cert.edge_paths[(u, v)].oriented_from(cert.branch_map[u]).vertices)}
            for u, v in sorted(cert.edge_paths)
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def parse_certificate(text: str) -> SubdivisionCertificate:
    doc = json.loads(text)
    if doc.get("format") != CERT_FORMAT:
        raise ValueError(f"unsupported certificate format {doc.get('format')!r}")
    pat = Graph.from_edges([tuple(e) for e in doc["pattern"]["edges"]],
                           vertices=doc["pattern"]["vertices"])
    terminals = doc["pattern"]["terminals"]
    pattern = PatternGraph(pat, tuple(terminals) if terminals is not None else None)
    branch = {int(pv): int(hv) for pv, hv in doc["branch_map"]}
    paths = {}
    for item in doc["paths"]:
        u, v = item["edge"]
        paths[(u, v) if u < v else (v, u)] = VertexPath(tuple(item["vertices"]))
    return SubdivisionCertificate(pattern, branch, paths)


_DOT_COLORS = ("red", "blue", "darkgreen", "orange", "purple", "brown",
               "deeppink", "cadetblue", "goldenrod", "darkslategray")


def certificate_dot(g: Graph, cert: SubdivisionCertificate) -> str:
    """Render the host graph with branch vertices boxed and each realized
    pattern edge's path in its own color."""
    color_of: dict[tuple[int, int], str] = {}
    lines = ["graph subdivision {", "  node [shape=circle];"]
    for v in sorted(cert.branch_vertices()):
        lines.append(f"  {v} [shape=doublecircle, style=bold];")
    for i, key in enumerate(sorted(cert.edge_paths)):
        color = _DOT_COLORS[i % len(_DOT_COLORS)]
        for a, b in cert.edge_paths[key].edge_pairs():
            color_of[(a, b) if a < b else (b, a)] = color
    for u, v in g.edges():
        color = color_of.get((u, v))
        style = f' [color={color}, penwidth=2]' if color else ' [color=gray]'
        lines.append(f"  {u} -- {v}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_manifest(output: Path, command: str, params: dict) -> None:
    doc = {"tool": "degsub", "version": __version__, "command": command,
           "parameters": params, "output": output.name}
    path = output.with_name(output.name + ".manifest.json")
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _load_graph(path: str) -> Graph:
    return parse_edge_list(Path(path).read_text())


def _load_pattern(name_or_path: str) -> PatternGraph:
    if os.path.exists(name_or_path):
        return PatternGraph(_load_graph(name_or_path))
    return build_named(name_or_path)


def _cmd_extract(args) -> int:
    g = _load_graph(args.input)
    cert = extract_target(g, args.target, args.d)
    check = verify_certificate(g, cert)
    if not check:
        print(f"self-verification failed: {check.reason} {check.detail}", file=sys.stderr)
        return 4
    out = Path(args.output)
    out.write_text(emit_certificate(cert))
    write_manifest(out, "extract", {"target": args.target, "d": args.d,
                                    "input": args.input})
    if args.dot:
        Path(args.dot).write_text(certificate_dot(g, cert))
    pat = cert.pattern.graph
    print(f"extracted pattern with {pat.order} vertices, {pat.size} edges; verified")
    return 0


def _cmd_verify(args) -> int:
    g = _load_graph(args.input)
    cert = parse_certificate(Path(args.cert).read_text())
    check = verify_certificate(g, cert)
    if check:
        print("certificate valid")
        return 0
    print(f"certificate invalid: {check.reason} {check.detail}", file=sys.stderr)
    return 1


def _cmd_oracle(args) -> int:
    g = _load_graph(args.input)
    h = _load_pattern(args.pattern)
    budget = SearchBudget(max_nodes=args.budget) if args.budget else SearchBudget()
    out = find_subdivision(g, h, budget=budget)
    if out.status == "exhausted":
        print(f"inconclusive: budget exhausted after {out.nodes} nodes", file=sys.stderr)
        return 3
    if out.found:
        print(f"subdivision found ({out.nodes} nodes)")
        if args.output:
            path = Path(args.output)
            path.write_text(emit_certificate(out.certificate))
            write_manifest(path, "oracle", {"pattern": args.pattern,
                                            "input": args.input,
                                            "budget": args.budget})
    else:
        print(f"no subdivision exists (search completed, {out.nodes} nodes)")
    return 0


def _cmd_probe(args) -> int:
    h = _load_pattern(args.pattern)
    budget = SearchBudget(max_nodes=args.budget) if args.budget else SearchBudget()
    workers = max(1, int(os.environ.get("SUBDIV_THREADS", "1")))
    report = probe_goodness(h, args.nmax, args.samples, args.seed,
                            budget=budget, max_workers=workers)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    csv_path = outdir / "probe_report.csv"
    rows = ["order,samples,found,counterexamples,exhausted"]
    rows += [f"{r.order},{r.samples},{r.found},{r.counterexamples},{r.exhausted}"
             for r in report.rows]
    csv_path.write_text("\n".join(rows) + "\n")
    for i, g in enumerate(report.counterexample_graphs):
        (outdir / f"counterexample_{i}.txt").write_text(format_edge_list(g))
    _render_probe_figure(report, outdir / "probe_report.png")
    write_manifest(csv_path, "probe", {"pattern": args.pattern, "nmax": args.nmax,
                                       "samples": args.samples, "seed": args.seed,
                                       "budget": args.budget})
    verdict = "evidence only, not conclusive"
    if report.counterexamples:
        verdict = f"{report.counterexamples} counterexample(s) found"
    elif report.inconclusive_searches:
        verdict += f"; {report.inconclusive_searches} searches inconclusive"
    print(f"probe finished: {verdict}; report in {outdir}")
    return 0


def _render_probe_figure(report, path: Path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    orders = [r.order for r in report.rows]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar(orders, [r.found for r in report.rows], label="subdivision found",
           color="tab:blue")
    ax.bar(orders, [r.counterexamples for r in report.rows],
           bottom=[r.found for r in report.rows], label="counterexample",
           color="tab:red")
    ax.bar(orders, [r.exhausted for r in report.rows],
           bottom=[r.found + r.counterexamples for r in report.rows],
           label="budget exhausted", color="tab:gray")
    ax.set_xlabel("host graph order")
    ax.set_ylabel("samples")
    ax.set_title(f"pattern order {report.pattern_order}, "
                 f"minimum degree {report.min_degree} (evidence only)")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def _cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    g = random_min_degree_graph(args.n, args.d, rng)
    out = Path(args.output)
    out.write_text(format_edge_list(g))
    write_manifest(out, "gen", {"n": args.n, "d": args.d, "seed": args.seed})
    print(f"wrote graph with {g.order} vertices, {g.size} edges")
    return 0


def _cmd_enumerate(args) -> int:
    members = enumerate_maximal_3_degenerate(args.order, planar_only=args.planar)
    print(len(members))
    for i, pat in enumerate(members):
        print(f"# graph {i}")
        print(format_edge_list(pat.graph), end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="degsub",
        description="Extract certified subdivisions from graphs of bounded "
                    "minimum degree, verify them, and probe patterns by "
                    "exhaustive search.")
    parser.add_argument("--version", action="version", version=f"degsub {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="extract a certified subdivision")
    p.add_argument("--target", required=True,
                   choices=["auto3deg", "k4", "k5minus", "p6", "p7", "k2d"])
    p.add_argument("--d", type=int, default=None,
                   help="degree parameter for auto3deg and k2d")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--dot", default=None, help="also write a DOT rendering")
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("verify", help="check a certificate against a graph")
    p.add_argument("--input", required=True)
    p.add_argument("--cert", required=True)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("oracle", help="exhaustive subdivision search")
    p.add_argument("--pattern", required=True, help="pattern name or edge-list file")
    p.add_argument("--input", required=True)
    p.add_argument("--budget", type=int, default=None, help="node budget")
    p.add_argument("--output", default=None, help="write found certificate here")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("probe", help="sampled search for pattern goodness evidence")
    p.add_argument("--pattern", required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--outdir", default="probe_out")
    p.set_defaults(func=_cmd_probe)

    p = sub.add_parser("gen", help="generate a random minimum-degree graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--output", required=True)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("enumerate", help="maximal 3-degenerate graphs of one order")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--planar", action="store_true")
    p.set_defaults(func=_cmd_enumerate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MinDegreeError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except (EdgeListError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
