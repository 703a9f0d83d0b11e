"""Command line front end.

Verdicts go to standard output as one JSON document (or a bare verdict with
--plain) and identical invocations produce byte-identical output; reported
work counters are deterministic, wall-clock timing is deliberately absent.
Exit codes: 0 once an evaluation ran, whatever its verdict; 2 for usage or
parse problems; 3 for domain errors such as comparing streams over
different alphabets.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import equity, orders, prelinearize as prelin
from .embed import embed_all
from .errors import ParseError, SwoError
from .orders import Comparison, ResidueSelector, sign_profile
from .streams import (
    parse_nested,
    parse_stream,
    render_stream,
)


def _load_document(arg: str):
    """JSON from an inline literal, an @path reference, or a plain path."""
    text = arg
    if arg.startswith("@"):
        text = Path(arg[1:]).read_text()
    elif not arg.lstrip().startswith(("{", "[")):
        path = Path(arg)
        if not path.exists():
            raise ParseError(0, f"no such file: {arg}")
        text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.pos, f"invalid JSON: {exc.msg}")


def _stream_argument(arg: str, kind: str):
    if kind == "nested":
        return parse_nested(_load_document(arg))
    return parse_stream(arg)


def _echo(value, kind: str):
    if kind == "nested":
        from .streams import nested_to_json

        return nested_to_json(value)
    return render_stream(value)


def _emit(args, document: dict, plain: str) -> int:
    if args.plain:
        print(plain)
    else:
        print(json.dumps(document, sort_keys=True))
    return 0


def _write_dot(args, condition, base) -> dict:
    if getattr(args, "dot", None):
        Path(args.dot).write_text(prelin.condition_dot(condition, base))
        return {"dot": args.dot}
    return {}


def _cmd_cmp(args) -> int:
    spec = orders.resolve_order(args.order, args.max_n)
    left = _stream_argument(args.left, spec.kind)
    right = _stream_argument(args.right, spec.kind)
    verdict = spec.compare(left, right)
    doc = {
        "command": "cmp",
        "order": spec.name,
        "left": _echo(left, spec.kind),
        "right": _echo(right, spec.kind),
        "verdict": verdict.label,
    }
    return _emit(args, doc, verdict.label)


def _cmd_profile(args) -> int:
    x = parse_stream(args.left)
    y = parse_stream(args.right)
    profile = sign_profile(x, y, args.max_n)
    doc = {
        "command": "profile",
        "left": render_stream(x),
        "right": render_stream(y),
        "max_n": args.max_n,
        "preperiod": profile.preperiod_length,
        "period": profile.period_length,
        "signs": [s.label for s in profile.signs],
    }
    plain = (
        f"preperiod={profile.preperiod_length} period={profile.period_length} "
        f"signs={','.join(s.label for s in profile.signs)}"
    )
    return _emit(args, doc, plain)


def _cmd_audit(args) -> int:
    report = equity.audit_order(
        args.order,
        mode=args.mode,
        samples=args.samples,
        seed=args.seed,
        alphabet=args.alphabet,
        max_n=args.max_n,
    )
    doc = {"command": "audit", **report.to_json_dict()}
    plain = "PASS" if report.passed else f"FAIL ({len(report.violations)} violations)"
    return _emit(args, doc, plain)


def _cmd_se_witness(args) -> int:
    x = parse_stream(args.stream)
    witness = equity.se_witness(x)
    doc = {
        "command": "se witness",
        "stream": render_stream(x),
        "witness": render_stream(witness),
    }
    return _emit(args, doc, render_stream(witness))


def _cmd_se_reach(args) -> int:
    x = parse_stream(args.left)
    y = parse_stream(args.right)
    cfg = equity.ReachConfig(max_depth=args.depth, window=args.window)
    chain = equity.se_reachable(x, y, cfg)
    if chain is None:
        doc = {
            "command": "se reach",
            "left": render_stream(x),
            "right": render_stream(y),
            "verdict": "NOT_WITHIN_BOUNDS",
        }
        return _emit(args, doc, "NOT_WITHIN_BOUNDS")
    doc = {
        "command": "se reach",
        "left": render_stream(x),
        "right": render_stream(y),
        "verdict": "REACHABLE",
        "chain": [render_stream(s) for s in chain.steps],
    }
    return _emit(args, doc, " -> ".join(render_stream(s) for s in chain.steps))


def _tie_break(args):
    if getattr(args, "tie_break", None):
        return [label for label in args.tie_break.split(",") if label]
    return None


def _cmd_prelin_check(args) -> int:
    base = prelin.base_from_json(_load_document(args.base))
    p = prelin.condition_from_json(_load_document(args.p))
    q = prelin.condition_from_json(_load_document(args.q))
    verdict = prelin.compatible(p, q, base)
    if verdict.compatible:
        doc = {"command": "prelin check", "verdict": "COMPATIBLE"}
        return _emit(args, doc, "COMPATIBLE")
    cycle = [{"from": e.src, "to": e.dst, "via": e.via} for e in verdict.cycle]
    doc = {"command": "prelin check", "verdict": "INCOMPATIBLE", "cycle": cycle}
    walk = " -> ".join([e.src for e in verdict.cycle] + [verdict.cycle[0].src])
    return _emit(args, doc, f"INCOMPATIBLE {walk}")


def _cmd_prelin_join(args) -> int:
    base = prelin.base_from_json(_load_document(args.base))
    p = prelin.condition_from_json(_load_document(args.p))
    q = prelin.condition_from_json(_load_document(args.q))
    joined = prelin.common_extension(p, q, base, tie_break=_tie_break(args))
    doc = {
        "command": "prelin join",
        **prelin.condition_to_json(joined),
        **_write_dot(args, joined, base),
    }
    plain = " < ".join("{" + ",".join(sorted(b)) + "}" for b in joined.blocks)
    return _emit(args, doc, plain)


def _cmd_prelin_extend(args) -> int:
    base = prelin.base_from_json(_load_document(args.base))
    c = prelin.condition_from_json(_load_document(args.condition))
    for element in args.elements:
        c = prelin.insert_element(c, base, element, tie_break=_tie_break(args))
    doc = {
        "command": "prelin extend",
        **prelin.condition_to_json(c),
        **_write_dot(args, c, base),
    }
    plain = " < ".join("{" + ",".join(sorted(b)) + "}" for b in c.blocks)
    return _emit(args, doc, plain)


def _cmd_prelin_linearize(args) -> int:
    base = prelin.base_from_json(_load_document(args.base))
    start = None
    if args.start:
        start = prelin.condition_from_json(_load_document(args.start))
    sequence = None
    if args.insert:
        sequence = [label for label in args.insert.split(",") if label]
    total = prelin.linearize(base, start, sequence)
    doc = {
        "command": "prelin linearize",
        **prelin.condition_to_json(total),
        **_write_dot(args, total, base),
    }
    plain = " < ".join("{" + ",".join(sorted(b)) + "}" for b in total.blocks)
    return _emit(args, doc, plain)


def _cmd_embed(args) -> int:
    doc_in = _load_document(args.order_file)
    if "elements" not in doc_in or "order" not in doc_in:
        raise ParseError(0, "embed document needs 'elements' and 'order'")
    position = {label: i for i, label in enumerate(doc_in["order"])}
    unknown = [l for l in doc_in["elements"] if l not in position]
    if unknown:
        raise ParseError(0, f"elements missing from 'order': {unknown}")

    def comparator(a: str, b: str) -> Comparison:
        if position[a] == position[b]:
            return Comparison.EQUIVALENT
        return Comparison.LESS if position[a] < position[b] else Comparison.GREATER

    state = embed_all(doc_in["elements"], comparator)
    assignment = {label: state.code(label).bits() for label in state.labels()}
    doc = {"command": "embed", "assignment": assignment}
    plain = " ".join(f"{l}=.{w}" for l, w in sorted(assignment.items()))
    return _emit(args, doc, plain)


def _add_output_flags(sub: argparse.ArgumentParser) -> None:
    group = sub.add_mutually_exclusive_group()
    group.add_argument("--json", dest="plain", action="store_false", default=False,
                       help="JSON output (default)")
    group.add_argument("--plain", dest="plain", action="store_true",
                       help="bare verdict output")
    sub.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swo",
        description="Compare utility streams, audit welfare orders, and run "
        "prelinearization sessions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    cmp_p = sub.add_parser("cmp", help="compare two streams under an order")
    cmp_p.add_argument("left")
    cmp_p.add_argument("right")
    cmp_p.add_argument("--order", default="sea",
                       help="sea | sea-nested | prefix:<n> | ultra:<m>,<r>")
    cmp_p.add_argument("--max-n", type=int, default=200, dest="max_n")
    _add_output_flags(cmp_p)
    cmp_p.set_defaults(handler=_cmd_cmp)

    prof_p = sub.add_parser("profile", help="detect the verdict pattern of a pair")
    prof_p.add_argument("left")
    prof_p.add_argument("right")
    prof_p.add_argument("--max-n", type=int, default=200, dest="max_n")
    _add_output_flags(prof_p)
    prof_p.set_defaults(handler=_cmd_profile)

    audit_p = sub.add_parser("audit", help="sample an order against its laws")
    audit_p.add_argument("--order", default="sea")
    audit_p.add_argument("--mode", default="sea_laws",
                         choices=["sea_laws", "weak_prelin"])
    audit_p.add_argument("--samples", type=int, default=200)
    audit_p.add_argument("--alphabet", type=int, default=4)
    audit_p.add_argument("--max-n", type=int, default=200, dest="max_n")
    _add_output_flags(audit_p)
    audit_p.set_defaults(handler=_cmd_audit)

    se_p = sub.add_parser("se", help="strict compression tools")
    se_sub = se_p.add_subparsers(dest="se_command", required=True)
    wit_p = se_sub.add_parser("witness", help="canonical compression witness")
    wit_p.add_argument("stream")
    _add_output_flags(wit_p)
    wit_p.set_defaults(handler=_cmd_se_witness)
    reach_p = se_sub.add_parser("reach", help="bounded compression-chain search")
    reach_p.add_argument("left")
    reach_p.add_argument("right")
    reach_p.add_argument("--depth", type=int, default=4)
    reach_p.add_argument("--window", type=int, default=4)
    _add_output_flags(reach_p)
    reach_p.set_defaults(handler=_cmd_se_reach)

    prelin_p = sub.add_parser("prelin", help="condition algebra over a base preorder")
    prelin_sub = prelin_p.add_subparsers(dest="prelin_command", required=True)
    check_p = prelin_sub.add_parser("check", help="compatibility of two conditions")
    check_p.add_argument("base")
    check_p.add_argument("p")
    check_p.add_argument("q")
    _add_output_flags(check_p)
    check_p.set_defaults(handler=_cmd_prelin_check)
    join_p = prelin_sub.add_parser("join", help="common extension of two conditions")
    join_p.add_argument("base")
    join_p.add_argument("p")
    join_p.add_argument("q")
    join_p.add_argument("--tie-break", dest="tie_break")
    join_p.add_argument("--dot", help="write the result's diagram to a DOT file")
    _add_output_flags(join_p)
    join_p.set_defaults(handler=_cmd_prelin_join)
    ext_p = prelin_sub.add_parser("extend", help="insert elements into a condition")
    ext_p.add_argument("base")
    ext_p.add_argument("condition")
    ext_p.add_argument("elements", nargs="+")
    ext_p.add_argument("--tie-break", dest="tie_break")
    ext_p.add_argument("--dot")
    _add_output_flags(ext_p)
    ext_p.set_defaults(handler=_cmd_prelin_extend)
    lin_p = prelin_sub.add_parser("linearize", help="extend to a total condition")
    lin_p.add_argument("base")
    lin_p.add_argument("--start", help="condition JSON to grow from")
    lin_p.add_argument("--insert", help="comma-separated insertion order")
    lin_p.add_argument("--dot")
    _add_output_flags(lin_p)
    lin_p.set_defaults(handler=_cmd_prelin_linearize)

    embed_p = sub.add_parser("embed", help="assign dyadic codes to an ordered set")
    embed_p.add_argument("order_file",
                         help='JSON {"elements": [...], "order": [sorted labels]}')
    _add_output_flags(embed_p)
    embed_p.set_defaults(handler=_cmd_embed)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ParseError as exc:
        print(f"swo: {exc}", file=sys.stderr)
        return 2
    except SwoError as exc:
        print(f"swo: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run())
