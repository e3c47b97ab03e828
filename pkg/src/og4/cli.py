"""Command-line front end.

Subcommands: construct | verify | classify | quotient | chain | analyze |
export.  Inputs are JSON documents (construction specs or raw pair files);
reports are deterministic JSON, text, or DOT.  Exit codes: 0 verified or
constructed, 1 refuted, 2 usage / parse / cap error.

Permutations in documents use 1-based cycle notation; vertex numbers in
documents are 1-based.  All internal indices are 0-based.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Optional, Sequence

from . import constructions as cons
from .analysis import (
    DEFAULT_SARC_CAP,
    alternating_structure,
    s_arc_report,
    stabilizer_report,
)
from .graph import (
    ConstructionRefuted,
    OGPair,
    OrientedGraph,
    export_dot,
    orbital_graph,
    verify_og,
)
from .perm import (
    DEFAULT_CAP,
    EnumerationCapExceeded,
    OG4Error,
    ParseError,
    enumerate_group,
    format_cycles,
    parse_permutation,
)
from .quotient import basic_chain, basic_type, classify_all_quotients

FAMILIES = (
    "lex_cycle",
    "simple_cayley",
    "tw_cayley",
    "coset_simple",
    "sym_bigstab",
    "pa",
    "raw_cayley",
    "raw_coset",
)


class UsageError(OG4Error):
    pass


# ---------------------------------------------------------------------------
# documents


def _parse_gens(doc: dict, key: str, degree: Optional[int]) -> list:
    gens = doc.get(key)
    if not isinstance(gens, list) or not gens:
        raise UsageError(f"document needs a nonempty list field {key!r}")
    return [parse_permutation(g, degree) for g in gens]


def _doc_degree(doc: dict) -> Optional[int]:
    d = doc.get("degree")
    if d is not None and (not isinstance(d, int) or d < 1):
        raise UsageError("degree must be a positive integer")
    return d


def _doc_group(doc: dict, cap: int, key: str = "generators"):
    degree = _doc_degree(doc)
    gens = _parse_gens(doc, key, degree)
    degree = degree or max(g.degree for g in gens)
    gens = [parse_permutation(format_cycles(g), degree) for g in gens]
    return enumerate_group(gens, cap)


def _doc_perm(doc: dict, key: str, degree: int):
    text = doc.get(key)
    if not isinstance(text, str):
        raise UsageError(f"document needs a cycle-notation string field {key!r}")
    return parse_permutation(text, degree)


def build_from_document(doc: dict, cap: int = DEFAULT_CAP) -> OGPair:
    family = doc.get("family")
    if family not in FAMILIES:
        raise UsageError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    if family == "lex_cycle":
        r = doc.get("r")
        if not isinstance(r, int):
            raise UsageError("lex_cycle needs an integer field 'r'")
        return cons.lexicographic_cycle(r, cap)
    if family == "sym_bigstab":
        n = doc.get("n")
        if not isinstance(n, int):
            raise UsageError("sym_bigstab needs an integer field 'n'")
        return cons.sym_bigstab(n, cap)
    if family == "simple_cayley":
        group = _doc_group(doc, cap)
        a = _doc_perm(doc, "a", group.degree)
        sigma = _doc_perm(doc, "sigma", group.degree)
        return cons.simple_cayley(group, a, sigma, cap)
    if family == "tw_cayley":
        group = _doc_group(doc, cap)
        a = _doc_perm(doc, "a", group.degree)
        b = _doc_perm(doc, "b", group.degree)
        sup = _doc_group(doc, cap, "aut_supergroup_generators")
        return cons.tw_cayley(group, a, b, cons.conjugation_inventory(sup), cap)
    if family == "coset_simple":
        group = _doc_group(doc, cap)
        h = _doc_perm(doc, "h", group.degree)
        g = _doc_perm(doc, "g", group.degree)
        return cons.coset_simple(group, h, g, cap)
    if family == "pa":
        group = _doc_group(doc, cap)
        a = _doc_perm(doc, "a", group.degree)
        b = _doc_perm(doc, "b", group.degree)
        sup = _doc_group(doc, cap, "centralizer_supergroup_generators")
        return cons.pa_construction(group, a, b, cons.conjugation_inventory(sup), cap)
    if family == "raw_cayley":
        group = _doc_group(doc, cap)
        a = _doc_perm(doc, "a", group.degree)
        b = _doc_perm(doc, "b", group.degree)
        if "h_conjugator" in doc:
            c = _doc_perm(doc, "h_conjugator", group.degree)
            h = cons.GroupAutomorphism.from_conjugation(group, c)
        elif "h_generator_images" in doc:
            images = _parse_gens(doc, "h_generator_images", group.degree)
            h = cons.GroupAutomorphism.from_generator_images(
                group, list(group.generators), images
            )
            if h is None:
                raise ConstructionRefuted(
                    "cayley:h_homomorphic",
                    "generator images do not extend to an automorphism",
                )
        else:
            raise UsageError("raw_cayley needs 'h_conjugator' or 'h_generator_images'")
        return cons.build_cayley(cons.CayleySpec(group, a, b, h), cap)
    # raw_coset
    group = _doc_group(doc, cap, "group_generators")
    sub = _doc_group({**doc, "degree": group.degree}, cap, "subgroup_generators")
    s = _doc_perm(doc, "s", group.degree)
    return cons.build_coset_graph(cons.CosetSpec(group, sub, s), cap)


def parse_pair_document(doc: dict, cap: int = DEFAULT_CAP,
                        seed_arc: Optional[tuple[int, int]] = None
                        ) -> tuple[OrientedGraph, Any, Optional[list[str]]]:
    """Raw pair document -> (graph, group, labels).  Vertices are 1-based in
    the document.  Without an 'arcs' field the graph is the canonical (or
    seeded) orbital graph of the group."""
    group = _doc_group(doc, cap)
    labels = doc.get("labels")
    if labels is not None and (
        not isinstance(labels, list) or len(labels) != group.degree
    ):
        raise UsageError("labels must list one string per vertex")
    arcs = doc.get("arcs")
    if arcs is None:
        graph = orbital_graph(group, seed_arc)
        return graph, group, labels
    n = doc.get("n_vertices", group.degree)
    pairs = []
    for a in arcs:
        if not (isinstance(a, list) and len(a) == 2):
            raise UsageError(f"bad arc entry {a!r}")
        x, y = a
        if x == y:
            raise UsageError(f"diagonal arc {a!r}")
        pairs.append((x - 1, y - 1))
    return OrientedGraph(n, pairs), group, labels


def render_pair_document(pair: OGPair) -> dict:
    doc: dict[str, Any] = {
        "n_vertices": pair.graph.n_vertices,
        "generators": [format_cycles(g) for g in pair.group.generators],
        "arcs": [[int(x) + 1, int(y) + 1] for x, y in pair.graph.arcs.tolist()],
    }
    if pair.labels is not None:
        doc["labels"] = list(pair.labels)
    return doc


# ---------------------------------------------------------------------------
# reports


def _certificate_dict(pair: OGPair) -> dict:
    c = pair.certificate
    return {
        "vertex_transitive": c.vertex_transitive,
        "edge_transitive": c.edge_transitive,
        "orientation_preserved": c.orientation_preserved,
        "connected": c.connected,
        "valency": c.valency,
        "stabilizer_order": c.stabilizer_order,
        "group_order": pair.group.order,
    }


def _quotient_dict(n_sub, outcome) -> dict:
    d: dict[str, Any] = {
        "normal_subgroup_order": n_sub.order,
        "kind": outcome.kind,
    }
    if outcome.partition is not None:
        d["n_blocks"] = outcome.partition.n_blocks
    if outcome.multicover_degree is not None:
        d["multicover_degree"] = outcome.multicover_degree
    if outcome.quotient_valency is not None:
        d["quotient_valency"] = outcome.quotient_valency
    if outcome.cycle_length is not None:
        d["cycle_length"] = outcome.cycle_length
    return d


def _emit(report: dict, fmt: str, out) -> None:
    if fmt == "dot":
        out.write(report["dot"])
    elif fmt == "text":
        for line in _text_lines(report, 0):
            out.write(line + "\n")
    else:
        out.write(json.dumps(report, sort_keys=True, indent=2) + "\n")


def _text_lines(obj: Any, depth: int) -> list[str]:
    pad = "  " * depth
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}{k}:")
                lines.extend(_text_lines(v, depth + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_text_lines(v, depth + 1))
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{obj}")
    return lines


# ---------------------------------------------------------------------------
# commands


def _load_document(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise UsageError("document root must be an object")
    return doc


def _obtain_pair(args) -> OGPair:
    """Construction documents are built; raw pair documents are certified."""
    doc = _load_document(args.input)
    if "family" in doc:
        return build_from_document(doc, args.max_order)
    seed = tuple(v - 1 for v in args.seed_arc) if args.seed_arc else None
    graph, group, labels = parse_pair_document(doc, args.max_order, seed)
    from .graph import certify_og

    return certify_og(graph, group, 4, labels)


def _cmd_construct(args) -> dict:
    pair = _obtain_pair(args)
    return {
        "command": "construct",
        "ok": True,
        "certificate": _certificate_dict(pair),
        "pair": render_pair_document(pair),
    }


def _cmd_verify(args) -> dict:
    doc = _load_document(args.input)
    if "family" in doc:
        pair = build_from_document(doc, args.max_order)
        return {"command": "verify", "ok": True, "certificate": _certificate_dict(pair)}
    seed = tuple(v - 1 for v in args.seed_arc) if args.seed_arc else None
    graph, group, labels = parse_pair_document(doc, args.max_order, seed)
    outcome = verify_og(graph, group, 4)
    report: dict[str, Any] = {"command": "verify", "ok": outcome.ok}
    if outcome.ok:
        pair = OGPair(graph, group, outcome.certificate, tuple(labels) if labels else None)
        report["certificate"] = _certificate_dict(pair)
    else:
        report["clause"] = outcome.failed_clause
        report["detail"] = outcome.detail
    return report


def _cmd_classify(args) -> dict:
    pair = _obtain_pair(args)
    results = classify_all_quotients(pair, args.max_order)
    return {
        "command": "classify",
        "ok": True,
        "basic_type": basic_type(pair, args.max_order),
        "certificate": _certificate_dict(pair),
        "quotients": [_quotient_dict(n, o) for n, o in results],
    }


def _cmd_quotient(args) -> dict:
    pair = _obtain_pair(args)
    results = classify_all_quotients(pair, args.max_order)
    return {
        "command": "quotient",
        "ok": True,
        "quotients": [_quotient_dict(n, o) for n, o in results],
    }


def _cmd_chain(args) -> dict:
    pair = _obtain_pair(args)
    chain, terminal = basic_chain(pair, args.max_order)
    return {
        "command": "chain",
        "ok": True,
        "basic_type_of_terminal": basic_type(terminal, args.max_order),
        "kernel_orders": [n.order for n, _ in chain],
        "terminal": {
            "n_vertices": terminal.graph.n_vertices,
            "group_order": terminal.group.order,
        },
    }


def _cmd_analyze(args) -> dict:
    pair = _obtain_pair(args)
    alt = alternating_structure(pair)
    sarcs = s_arc_report(pair, args.max_sarcs)
    stab = stabilizer_report(pair)
    return {
        "command": "analyze",
        "ok": True,
        "alternating": {
            "n_cycles": len(alt.cycles),
            "common_length": alt.common_length,
            "attachment_number": alt.attachment_number,
            "attachment_kind": alt.attachment_kind,
        },
        "s_arcs": {
            "max_s": sarcs.max_s,
            "counts": list(sarcs.counts),
            "regular_on_max": sarcs.regular_on_max,
            "lower_bound": sarcs.lower_bound,
        },
        "stabilizer": {
            "order": stab.order,
            "is_2group": stab.is_2group,
            "elementary_abelian": stab.elementary_abelian,
            "nilpotency_class": stab.nilpotency_class,
        },
    }


def _cmd_export(args) -> dict:
    pair = _obtain_pair(args)
    return {
        "command": "export",
        "ok": True,
        "dot": export_dot(pair.graph, pair.labels),
    }


_COMMANDS = {
    "construct": _cmd_construct,
    "verify": _cmd_verify,
    "classify": _cmd_classify,
    "quotient": _cmd_quotient,
    "chain": _cmd_chain,
    "analyze": _cmd_analyze,
    "export": _cmd_export,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="og4",
        description="Construct, verify, classify, and analyze oriented "
        "4-valent edge-transitive graph-group pairs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("input", help="JSON construction spec or pair document")
        p.add_argument("--max-order", type=int, default=DEFAULT_CAP,
                       help="group enumeration cap (default 10^6)")
        p.add_argument("--max-sarcs", type=int, default=DEFAULT_SARC_CAP,
                       help="s-arc enumeration cap (default 10^7)")
        p.add_argument("--format", choices=("json", "text", "dot"), default="json")
        p.add_argument("--seed-arc", type=int, nargs=2, metavar=("X", "Y"),
                       help="1-based orbital seed pair for arc-less pair documents")
        p.add_argument("--output", help="write the report here instead of stdout")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.max_order <= 0 or args.max_sarcs <= 0:
        parser.exit(2, "caps must be positive\n")
    if args.command == "export" and args.format == "json":
        args.format = "dot"
    try:
        report = _COMMANDS[args.command](args)
        status = 0 if report.get("ok", True) else 1
    except ConstructionRefuted as exc:
        report = {
            "command": args.command,
            "ok": False,
            "clause": exc.clause,
            "detail": exc.detail,
        }
        status = 1
    except (UsageError, ParseError, EnumerationCapExceeded) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except OG4Error as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    if args.format == "dot" and "dot" not in report:
        sys.stderr.write("error: --format dot is only available for 'export'\n")
        return 2
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                _emit(report, args.format, fh)
        except OSError as exc:
            sys.stderr.write(f"error: cannot write {args.output}: {exc}\n")
            return 2
    else:
        _emit(report, args.format, sys.stdout)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
