"""Command-line interface.

Exit codes: 0 success / valid, 1 invalid certificate or failed bound,
2 input error, 3 internal defect, 4 oracle limit exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterator, Sequence

from . import generators
from .certificate import OddCertificate
from .errors import (
    GraphParseError,
    InternalDefect,
    OracleLimitExceeded,
    PreconditionError,
)
from .gf2 import gallai_even_even, gallai_odd_even
from .graph import Graph, VertexSet, drop_isolated, format_edge_list, lift, parse_edge_list
from .oracle import fo_exact
from .params import DEFAULT_PARAMS, Params
from .pipeline import extract_odd_traced, format_trace

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INPUT = 2
EXIT_DEFECT = 3
EXIT_LIMIT = 4

CSV_HEADER = ["kind", "n", "m", "seed", "branch", "size", "ratio", "guarantee", "ms"]


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _load_graph(path: str) -> Graph:
    return parse_edge_list(_read_text(path))


def _params(overrides: Sequence[str]) -> Params:
    pairs = {}
    for item in overrides:
        key, sep, value = item.partition("=")
        if not sep:
            raise PreconditionError(f"--param expects key=value, got {item!r}")
        pairs[key.strip()] = value.strip()
    return DEFAULT_PARAMS.with_overrides(pairs)


def extract_on(g: Graph, p: Params, debug: bool = False):
    """Drop isolated vertices, extract, and map back to ``g``'s ids."""
    core, _, labels = drop_isolated(g)
    if core.n == 0:
        raise PreconditionError("graph has no edges; no all-odd subgraph exists")
    cert, trace = extract_odd_traced(core, p, debug)
    lifted = OddCertificate(
        VertexSet(g.n, lift(labels, cert.set.bits)), cert.branch, cert.guarantee, cert.trace_id
    )
    if not lifted.is_valid(g):
        raise InternalDefect("certificate failed verification on the input graph", trace)
    return lifted, trace, core


def cmd_extract(args: argparse.Namespace) -> int:
    try:
        g = _load_graph(args.input)
        p = _params(args.param)
    except (GraphParseError, PreconditionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        cert, trace, _ = extract_on(g, p, args.debug)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InternalDefect as exc:
        text = format_trace(exc.trace)
        if args.trace:
            Path(args.trace).write_text(text, encoding="utf-8")
        else:
            sys.stderr.write(text)
        print(f"internal defect: {exc}", file=sys.stderr)
        return EXIT_DEFECT
    if args.trace:
        Path(args.trace).write_text(format_trace(trace), encoding="utf-8")
    if args.json:
        print(cert.to_json())
    else:
        print(f"size={cert.size} branch={cert.branch.value} guarantee={cert.guarantee}")
        print(" ".join(map(str, cert.set)))
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    try:
        g = _load_graph(args.input)
    except (GraphParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        res = fo_exact(g, args.limit)
    except OracleLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    doc = {"size": res.size, "witness": res.witness.to_list(), "explored": res.explored}
    print(json.dumps(doc, sort_keys=True))
    return EXIT_OK


def cmd_gallai(args: argparse.Namespace) -> int:
    try:
        g = _load_graph(args.input)
    except (GraphParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.mode == "odd-even":
        a, b = gallai_odd_even(g)
        doc = {"mode": "odd-even", "Vo": a.to_list(), "Ve": b.to_list()}
    else:
        a, b = gallai_even_even(g)
        doc = {"mode": "even-even", "V1": a.to_list(), "V2": b.to_list()}
    print(json.dumps(doc, sort_keys=True))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        g = _load_graph(args.graph)
        cert = OddCertificate.from_json(_read_text(args.certificate))
    except (GraphParseError, PreconditionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if cert.is_valid(g):
        print(f"valid size={cert.size}")
        return EXIT_OK
    print("invalid")
    return EXIT_INVALID


def cmd_gen(args: argparse.Namespace) -> int:
    try:
        if args.kind == "union":
            g = _union(args.args[0])
        else:
            g = generators.generate(args.kind, args.args, args.seed)
    except (PreconditionError, IndexError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(format_edge_list(g))
    return EXIT_OK


# --- bench ---------------------------------------------------------------------

@dataclass(frozen=True)
class CorpusItem:
    kind: str
    seed: int
    label: str
    params: tuple


def _range(text: str) -> range:
    m = re.fullmatch(r"(\d+)(?:\.\.(\d+))?(?::(\d+))?", text)
    if not m:
        raise PreconditionError(f"bad range {text!r}; expected A, A..B or A..B:STEP")
    lo = int(m.group(1))
    hi = int(m.group(2) or lo)
    step = int(m.group(3) or 1)
    return range(lo, hi + 1, step)


def _union(text: str) -> Graph:
    parts = []
    for chunk in text.split("+"):
        m = re.fullmatch(r"(\d+)x(\d+)", chunk)
        if not m:
            raise PreconditionError(f"bad union term {chunk!r}; expected SIZExCOUNT")
        parts.extend([generators.complete(int(m.group(1)))] * int(m.group(2)))
    return generators.disjoint_union(parts)


def parse_corpus(spec: str) -> list[CorpusItem]:
    """Corpus grammar, one spec per argument:

    ``path:A..B[:STEP]``, ``cycle:...``, ``complete:...``, ``scott:...``,
    ``gnp:N:P:Kseeds`` (seeds ``0..K-1``), ``union:SxC[+SxC...]`` (``C``
    copies of ``K_S``).
    """
    kind, _, rest = spec.partition(":")
    if kind in ("path", "cycle", "complete", "scott"):
        return [CorpusItem(kind, 0, f"{kind}:{n}", (n,)) for n in _range(rest)]
    if kind == "gnp":
        m = re.fullmatch(r"(\d+):([0-9.eE+-]+):(\d+)seeds?", rest)
        if not m:
            raise PreconditionError(f"bad gnp spec {spec!r}; expected gnp:N:P:Kseeds")
        n, p, k = int(m.group(1)), float(m.group(2)), int(m.group(3))
        return [CorpusItem("gnp", s, f"gnp:{n}:{p}", (n, p)) for s in range(k)]
    if kind == "union":
        _union(rest)
        return [CorpusItem("union", 0, f"union:{rest}", (rest,))]
    raise PreconditionError(f"unknown corpus kind {kind!r}")


def build(item: CorpusItem) -> Graph:
    if item.kind == "union":
        return _union(item.params[0])
    return generators.generate(item.kind, item.params, item.seed)


def bench_rows(items: Sequence[CorpusItem], p: Params, timing: bool = True) -> Iterator[dict]:
    for item in items:
        g = build(item)
        start = time.perf_counter()
        cert, _, core = extract_on(g, p)
        ms = (time.perf_counter() - start) * 1000 if timing else 0.0
        yield {
            "kind": item.label,
            "n": core.n,
            "m": core.m,
            "seed": item.seed,
            "branch": cert.branch.value,
            "size": cert.size,
            "ratio": f"{cert.size / core.n:.6f}",
            "guarantee": str(cert.guarantee),
            "ms": f"{ms:.1f}",
            "_ok": cert.size >= math.ceil(Fraction(core.n, p.T)),
            "_ratio": Fraction(cert.size, core.n),
        }


def cmd_bench(args: argparse.Namespace) -> int:
    try:
        p = _params(args.param)
        items = [it for spec in args.corpus for it in parse_corpus(spec)]
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_HEADER, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    rows = []
    try:
        for row in bench_rows(items, p, timing=not args.no_timing):
            writer.writerow(row)
            rows.append(row)
    except InternalDefect as exc:
        sys.stderr.write(format_trace(exc.trace))
        print(f"internal defect: {exc}", file=sys.stderr)
        return EXIT_DEFECT
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.out:
        Path(args.out).write_text(buf.getvalue(), encoding="utf-8")
    else:
        sys.stdout.write(buf.getvalue())
    if rows:
        worst = min(r["_ratio"] for r in rows)
        ok = all(r["_ok"] for r in rows)
        print(
            f"# graphs={len(rows)} min_ratio={float(worst):.6f} "
            f"bound=1/{p.T} {'ok' if ok else 'FAILED'}"
        )
        if not ok:
            return EXIT_INVALID
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="oddinduced", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="extract a verified all-odd induced subgraph")
    p.add_argument("input", nargs="?", default="-", help="edge-list file or - for stdin")
    p.add_argument("--seed", type=int, default=0,
                   help="accepted for symmetry with bench; extraction is deterministic")
    p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE",
                   help="override a constant, e.g. beta=1/20 or T=10000")
    p.add_argument("--trace", metavar="PATH", help="write the pipeline trace log here")
    p.add_argument("--json", action="store_true", help="print the certificate as JSON")
    p.add_argument("--debug", action="store_true", help="recheck every pipeline invariant")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("oracle", help="exact maximum all-odd subgraph by enumeration")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--limit", type=int, default=20, help="largest component to enumerate")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bench", help="run extraction over a generated corpus, emit CSV")
    p.add_argument("corpus", nargs="+", help="e.g. gnp:1000:0.01:10seeds path:10..100")
    p.add_argument("--out", metavar="PATH", help="CSV destination (default stdout)")
    p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
    p.add_argument("--no-timing", action="store_true", help="write 0 in the ms column")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gallai", help="Gallai partition of a graph")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--mode", choices=["even-even", "odd-even"], default="odd-even")
    p.set_defaults(func=cmd_gallai)

    p = sub.add_parser("verify", help="check a certificate against a graph")
    p.add_argument("graph")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="print a generated graph as an edge list")
    p.add_argument("kind", choices=["path", "cycle", "complete", "gnp", "scott", "union"])
    p.add_argument("args", nargs="+", help="size parameters; gnp takes N P; union takes SxC+...")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
