"""Command-line surface.

Exit codes are a stable contract for scripting: 0 for a positive verdict
(homogeneous / true / all agree), 1 for a negative verdict, 2 for input
errors, 3 for capability limits (size guards, or a bidirectionally
connected input handed to the polynomial classifier).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import census as census_mod
from . import gadget as gadget_mod
from .classifier import (
    C3OneCertificate,
    Classification,
    ClassVerdict,
    DwiCertificate,
    QuasiorderCertificate,
    classify,
)
from .digraph import Digraph
from .errors import CapabilityError, InputError
from .fileio import parse_digraph_record, serialize_digraph
from .generate import from_spec
from .oracle import Verdict, Witness, arrow, is_hh_bruteforce
from .structure import quotient, theta_classes, twin_partition

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_INPUT = 2
EXIT_CAPABILITY = 3


def _read_digraph(path: str, close_reflexive: bool) -> Digraph:
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc}") from None
    record = parse_digraph_record(text)
    d = record.digraph
    if close_reflexive:
        from .digraph import reflexive_closure

        d = reflexive_closure(d)
    return d


def _write_text(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit(pairs: list[tuple[str, object]], fmt: str) -> None:
    if fmt == "machine":
        print(json.dumps(dict(pairs)))
    else:
        for key, value in pairs:
            print(f"{key} {value}")


def _witness_pairs(witness: Optional[Witness]) -> list[tuple[str, object]]:
    if witness is None:
        return []
    mapped = " ".join(f"{u}:{y}" for u, y in witness.hom.pairs)
    return [("witness-map", mapped), ("witness-vertex", witness.vertex)]


def _classification_pairs(result: Classification) -> list[tuple[str, object]]:
    pairs: list[tuple[str, object]] = [
        ("verdict", result.verdict.value),
        ("tag", result.tag.value),
    ]
    cert = result.certificate
    if isinstance(cert, QuasiorderCertificate):
        pairs += [
            ("poset-reason", cert.reason.value),
            ("block-sizes", " ".join(map(str, cert.partition.sizes()))),
            ("retraction", " ".join(map(str, cert.retraction))),
            ("injection", " ".join(map(str, cert.injection))),
        ]
    elif isinstance(cert, C3OneCertificate):
        pairs += [
            ("triangles", cert.cycles),
            ("points", cert.points),
            ("block-sizes", " ".join(map(str, cert.partition.sizes()))),
        ]
    elif isinstance(cert, DwiCertificate):
        family = " ".join(f"{c.tag.value}:{c.pairs}" for c in cert.components)
        pairs += [
            ("involution", " ".join(map(str, cert.pairing))),
            ("family", family),
            ("block-sizes", " ".join(map(str, cert.partition.sizes()))),
        ]
    pairs += _witness_pairs(result.witness)
    return pairs


def _cmd_classify(args) -> int:
    d = _read_digraph(args.digraph, args.reflexive_closure)
    result = classify(d)
    _emit(_classification_pairs(result), args.format)
    if result.verdict is ClassVerdict.HH:
        return EXIT_TRUE
    if result.verdict is ClassVerdict.NOT_HH:
        return EXIT_FALSE
    return EXIT_CAPABILITY


def _cmd_oracle(args) -> int:
    d = _read_digraph(args.digraph, args.reflexive_closure)
    verdict = is_hh_bruteforce(d)
    pairs: list[tuple[str, object]] = [("verdict", verdict.decision.value)]
    if args.witness != "none":
        pairs += _witness_pairs(verdict.witness)
    _emit(pairs, args.format)
    return EXIT_TRUE if verdict.decision is Verdict.HH else EXIT_FALSE


def _cmd_arrow(args) -> int:
    d1 = _read_digraph(args.source, args.reflexive_closure)
    d2 = _read_digraph(args.target, args.reflexive_closure)
    result = arrow(d1, d2)
    _emit([("arrow", "true" if result else "false")], args.format)
    return EXIT_TRUE if result else EXIT_FALSE


def _cmd_gen(args) -> int:
    spec = "".join(args.spec)
    d = from_spec(spec)
    _write_text(args.output, serialize_digraph(d, name=spec))
    return EXIT_TRUE


def _cmd_quotient(args) -> int:
    d = _read_digraph(args.digraph, args.reflexive_closure)
    partition = twin_partition(d) if args.by == "twins" else theta_classes(d)
    result = quotient(d, partition)
    sys.stdout.write(serialize_digraph(result.digraph))
    _emit(
        [
            ("blocks", " ".join("{" + ",".join(map(str, sorted(b))) + "}" for b in partition.blocks)),
            ("retraction", " ".join(map(str, result.retraction))),
            ("injection", " ".join(map(str, result.injection))),
        ],
        args.format,
    )
    return EXIT_TRUE


def _cmd_gadget(args) -> int:
    if args.action == "build":
        if args.graph is None:
            raise InputError("gadget build needs a graph file")
        g = _read_digraph(args.graph, False)
        layout = gadget_mod.build_gk(g, args.k)
        ranges = {
            "V": (0, len(layout.graph_vertices) - 1) if layout.graph_vertices else (0, -1),
            "I": (layout.tournament[0], layout.tournament[-1]),
            "S": (layout.escorts[0], layout.escorts[-1]),
        }
        _write_text(args.output, serialize_digraph(layout.host, name=f"gadget-k{args.k}", ranges=ranges))
        return EXIT_TRUE
    # verify: one graph, or a sweep over every labelled graph on <= N vertices
    if args.graph is not None:
        g = _read_digraph(args.graph, False)
        report = gadget_mod.verify_equivalence(g, args.k)
        _emit(
            [
                ("independent-size", report.independent_size),
                ("has-k-independent", str(report.has_k_independent).lower()),
                ("oracle", report.oracle.decision.value),
                ("agree", str(report.agree).lower()),
            ],
            args.format,
        )
        return EXIT_TRUE if report.agree else EXIT_FALSE
    from .digraph import make_digraph

    all_agree = True
    checked = 0
    for n in range(1, args.sweep + 1):
        slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
        for choice in range(1 << len(slots)):
            edges = []
            for b, (i, j) in enumerate(slots):
                if choice >> b & 1:
                    edges += [(i, j), (j, i)]
            g = make_digraph(n, edges)
            report = gadget_mod.verify_equivalence(g, args.k)
            checked += 1
            if not report.agree:
                all_agree = False
                print(f"disagreement on n={n} edges={g.edges()}", file=sys.stderr)
    _emit([("checked", checked), ("all-agree", str(all_agree).lower())], args.format)
    return EXIT_TRUE if all_agree else EXIT_FALSE


def _cmd_census(args) -> int:
    report = census_mod.crossvalidate(args.n, jobs=args.jobs, keep_all_witnesses=args.witness == "full")
    if args.format == "machine":
        print(json.dumps(report.as_dict()))
    else:
        pairs = [
            ("n", report.n),
            ("classes", report.total),
            ("hh-quasiorder", report.hh_quasiorder),
            ("hh-c3-inflation", report.hh_c3_inflation),
            ("hh-dwi-inflation", report.hh_dwi_inflation),
            ("not-hh", report.not_hh),
            ("connected-checked", report.connected_checked),
            ("connected-skipped", report.connected_skipped),
            ("disagreements", len(report.disagreements)),
        ]
        _emit(pairs, "text")
        for item in report.disagreements:
            print(f"disagreement {item}")
        for wit in report.witnesses:
            print(f"witness {json.dumps(wit)}")
    if args.figure:
        from .plotting import render_census_figure

        render_census_figure(report, args.figure)
    return EXIT_TRUE if not report.disagreements else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="homhom",
        description="Decide homomorphism-homogeneity of finite reflexive digraphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p) -> None:
        p.add_argument("--reflexive-closure", action="store_true",
                       help="add all loops after parsing")
        p.add_argument("--format", choices=("text", "machine"), default="text")

    p = sub.add_parser("classify", help="polynomial classification with certificate")
    p.add_argument("digraph", help="digraph file, or - for stdin")
    add_common(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("oracle", help="exhaustive homogeneity oracle")
    p.add_argument("digraph")
    p.add_argument("--witness", choices=("sample", "full", "none"), default="sample")
    add_common(p)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("arrow", help="does every partial hom extend between two digraphs")
    p.add_argument("source")
    p.add_argument("target")
    add_common(p)
    p.set_defaults(func=_cmd_arrow)

    p = sub.add_parser("gen", help="emit a digraph from a generator expression")
    p.add_argument("spec", nargs="+", help="e.g. 'alpha 3', '2*c3 + one', 'inflate(c3; 2,1,1)'")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("quotient", help="collapse twin or double-edge blocks")
    p.add_argument("digraph")
    p.add_argument("--by", choices=("twins", "theta"), default="twins")
    add_common(p)
    p.set_defaults(func=_cmd_quotient)

    p = sub.add_parser("gadget", help="build or verify the hardness gadget")
    p.add_argument("action", choices=("build", "verify"))
    p.add_argument("graph", nargs="?", default=None, help="irreflexive graph file")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--sweep", type=int, default=3,
                   help="verify: sweep all labelled graphs on up to N vertices")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--format", choices=("text", "machine"), default="text")
    p.set_defaults(func=_cmd_gadget)

    p = sub.add_parser("census", help="enumerate small reflexive digraphs and cross-validate")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--witness", choices=("sample", "full"), default="sample")
    p.add_argument("--figure", default=None, help="render a taxonomy bar chart to this file")
    p.add_argument("--format", choices=("text", "machine"), default="text")
    p.set_defaults(func=_cmd_census)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapabilityError as exc:
        print(f"capability error: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY


if __name__ == "__main__":
    sys.exit(main())
