"""Command-line interface: newline-delimited JSON reports over graph streams.

Each input graph (one graph6 line, or a whole edge-list file) produces one
ReportEnvelope on stdout. Exit codes: 0 success (including negative answers),
1 invalid input, 2 internal cap exceeded. Identical inputs and flags produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from typing import Optional, Sequence

from . import __version__
from .classify import CapExceededError, NotPrimeError, classify_prime, \
    make_augmented_p5, make_bundle, sporadic_catalog
from .graph import Graph, GraphError
from .io import FormatError, decode_graph6, encode_dot, encode_edgelist, \
    encode_graph6, parse_graph
from .modular import decompose, is_prime
from .optimize import WeightedGraph, clique_cover, max_weight_clique, \
    max_weight_stable, multichromatic
from .patterns import FAMILIES, P5_COP5, P5_COP5_BULL
from .recognize import is_sparse
from .smallgraphs import verify_classifier, verify_recognizer, verify_theorem_c5

EXIT_OK = 0
EXIT_BAD_INPUT = 1
EXIT_CAP = 2


def _envelope(command: str, raw: str, payload, status: int = EXIT_OK) -> str:
    doc = {
        "command": command,
        "input_digest": hashlib.sha256(raw.encode()).hexdigest(),
        "version": __version__,
        "status": status,
        "payload": payload,
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def _families(name: str):
    if name == "both":
        return [P5_COP5, P5_COP5_BULL]
    return [FAMILIES[name]]


def _read_graphs(args) -> list[tuple[str, Graph]]:
    """(raw text, graph) pairs from the input path or stdin."""
    text = sys.stdin.read() if args.input in (None, "-") \
        else open(args.input).read()
    fmt = args.format
    if fmt == "edgelist" or (fmt == "auto" and _looks_like_edgelist(text)):
        return [(text, parse_graph(text, fmt="edgelist"))]
    out = []
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.append((line, decode_graph6(line)))
    if not out:
        raise FormatError("no graphs in input")
    return out


def _looks_like_edgelist(text: str) -> bool:
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            parts = line.split()
            return len(parts) == 2 and all(p.isdigit() for p in parts)
    return False


def cmd_recognize(args) -> int:
    for raw, g in _read_graphs(args):
        payload: dict = {"n": g.n, "families": {}}
        prime = is_prime(g)
        for fam in _families(args.family):
            rep = is_sparse(g, fam, force_oracle=args.force_oracle)
            doc = rep.to_json()
            doc["member"] = doc.pop("sparse")
            if not args.certificate:
                doc.pop("witness", None)
            if prime and rep.sparse:
                doc["prime_class"] = classify_prime(g, fam).to_json()
            payload["families"][fam.name] = doc
        print(_envelope("recognize", raw, payload))
    return EXIT_OK


def cmd_classify(args) -> int:
    for raw, g in _read_graphs(args):
        payload = {"n": g.n, "families": {}}
        for fam in _families(args.family):
            payload["families"][fam.name] = classify_prime(g, fam).to_json()
        print(_envelope("classify", raw, payload))
    return EXIT_OK


def cmd_md(args) -> int:
    for raw, g in _read_graphs(args):
        payload = {"n": g.n, "prime": is_prime(g), "tree": decompose(g).to_json()}
        print(_envelope("md", raw, payload))
    return EXIT_OK


def _load_weights(path: Optional[str], n: int) -> tuple[int, ...]:
    if path is None:
        return (1,) * n
    # a literal JSON array is accepted inline; anything else is a file path
    text = path.strip() if path.lstrip().startswith("[") else open(path).read().strip()
    if text.startswith("["):
        vals = json.loads(text)
    else:
        vals = [int(tok) for tok in text.split()]
    return tuple(int(v) for v in vals)


def cmd_solve(args) -> int:
    solvers = {"clique": max_weight_clique, "stable": max_weight_stable,
               "coloring": multichromatic, "cover": clique_cover}
    for raw, g in _read_graphs(args):
        wg = WeightedGraph(g, _load_weights(args.weights, g.n))
        sol = solvers[args.problem](wg)
        payload = {"n": g.n, "problem": args.problem,
                   "weights": list(wg.w), "solution": sol.to_json()}
        print(_envelope("solve", raw, payload))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.theorem == "c5":
        report = verify_theorem_c5(args.max_n)
    elif args.theorem == "classifier":
        fams = _families(args.family)
        if len(fams) != 1:
            raise FormatError("verify --theorem classifier needs one --family")
        report = verify_classifier(args.max_n, fams[0])
    else:
        report = verify_recognizer(args.max_n)
    raw = f"{args.theorem}:{args.max_n}:{args.family}"
    print(_envelope("verify", raw, report.to_json()))
    return EXIT_OK if report.success else EXIT_BAD_INPUT


def cmd_gen(args) -> int:
    if args.cls == "bundle":
        if args.arms is None:
            raise FormatError("gen --class bundle needs --arms")
        graphs = [make_bundle(args.arms, args.short_arm)]
    elif args.cls == "augmented":
        graphs = [make_augmented_p5(args.extra)]
    else:
        cat = sporadic_catalog()
        if args.index is None:
            graphs = list(cat)
        elif 0 <= args.index < len(cat):
            graphs = [cat[args.index]]
        else:
            raise FormatError(
                f"sporadic index out of range 0..{len(cat) - 1}")
    for g in graphs:
        print(encode_graph6(g))
    return EXIT_OK


def cmd_convert(args) -> int:
    encoders = {"graph6": encode_graph6, "edgelist": encode_edgelist,
                "dot": encode_dot}
    for _, g in _read_graphs(args):
        print(encoders[args.to](g))
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="graphsparse",
        description="Recognition, classification and exact optimization for "
                    "(P5,co-P5)-sparse and (P5,co-P5,bull)-sparse graphs.")
    sub = top.add_subparsers(dest="cmd", required=True)

    def add_io(p):
        p.add_argument("input", nargs="?", default=None,
                       help="input file (default: stdin)")
        p.add_argument("--format", choices=["auto", "graph6", "edgelist"],
                       default="auto")

    p = sub.add_parser("recognize", help="sparse-family membership")
    add_io(p)
    p.add_argument("--family", choices=["p5-cop5", "p5-cop5-bull", "both"],
                   default="both")
    p.add_argument("--certificate", action="store_true",
                   help="include the violating 6-window for non-members")
    p.add_argument("--force-oracle", action="store_true",
                   help="run the window oracle on quotients of any size")
    p.set_defaults(run=cmd_recognize)

    p = sub.add_parser("classify", help="structural class of a prime graph")
    add_io(p)
    p.add_argument("--family", choices=["p5-cop5", "p5-cop5-bull", "both"],
                   default="both")
    p.set_defaults(run=cmd_classify)

    p = sub.add_parser("md", help="modular decomposition tree")
    add_io(p)
    p.set_defaults(run=cmd_md)

    p = sub.add_parser("solve", help="exact weighted optimization")
    add_io(p)
    p.add_argument("--problem", choices=["clique", "stable", "coloring", "cover"],
                   required=True)
    p.add_argument("--weights", default=None,
                   help="inline JSON array, or a file of weights "
                        "(JSON array or whitespace-separated)")
    p.set_defaults(run=cmd_solve)

    p = sub.add_parser("verify", help="exhaustive small-order verification")
    p.add_argument("--theorem", choices=["c5", "classifier", "recognizer"],
                   required=True)
    p.add_argument("--max-n", type=int, default=8, dest="max_n")
    p.add_argument("--family", choices=["p5-cop5", "p5-cop5-bull", "both"],
                   default="p5-cop5-bull")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("gen", help="generate class instances as graph6")
    p.add_argument("--class", dest="cls",
                   choices=["bundle", "augmented", "sporadic"], required=True)
    p.add_argument("--arms", type=int, default=None)
    p.add_argument("--short-arm", action="store_true", dest="short_arm")
    p.add_argument("--extra", action="store_true")
    p.add_argument("--index", type=int, default=None)
    p.set_defaults(run=cmd_gen)

    p = sub.add_parser("convert", help="re-encode graphs")
    add_io(p)
    p.add_argument("--to", choices=["graph6", "edgelist", "dot"],
                   required=True)
    p.set_defaults(run=cmd_convert)
    return top


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.run(args)
    except (FormatError, GraphError, NotPrimeError, ValueError, OSError) as e:
        print(json.dumps({"error": str(e), "status": EXIT_BAD_INPUT},
                         sort_keys=True), file=sys.stderr)
        return EXIT_BAD_INPUT
    except CapExceededError as e:
        print(json.dumps({"error": str(e), "status": EXIT_CAP},
                         sort_keys=True), file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    raise SystemExit(main())
