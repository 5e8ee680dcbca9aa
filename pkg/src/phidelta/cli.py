"""Command-line entry point: check, enumerate, verify and hunt."""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from .harness import ConfigError, default_config, load_config, run_all
from .harness.config import CheckConfig
from .harness.hunt import hunt
from .ideals import EMPTY, IdealError, ideal_from_json, proper_ideals
from .localize import MultSetError, multset_from_json, saturation
from .maps import MapError, expansion_from_json, reduction_from_json
from .predicates import MeetsS, NotProper, is_phi_delta_S_primary, witness_set
from .rings import RingError, parse_ring

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION, EXIT_VACUOUS = 0, 1, 2, 3


class InputError(Exception):
    """Bad command-line input; the message is the diagnostic."""


def _load(text: str, what: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        # bare names such as radical or empty
        if text.replace("_", "").isalnum():
            return text
        raise InputError(f"{what} is not valid JSON: {text!r}") from None


def _parse_setting(args: argparse.Namespace, need_ideal: bool):
    try:
        ring = parse_ring(_load(args.ring, "--ring"))
        ideal = ideal_from_json(_load(args.ideal, "--ideal"), ring) if need_ideal else None
        phi = reduction_from_json(_load(args.phi, "--phi"), ring)
        delta = expansion_from_json(_load(args.delta, "--delta"), ring)
        S = multset_from_json(_load(args.s, "--s"), ring)
    except (RingError, IdealError, MapError, MultSetError) as exc:
        raise InputError(str(exc)) from None
    if args.saturate:
        S = saturation(ring, S)
    return ring, ideal, phi, delta, S


def _labels(ring, xs) -> str:
    return "[" + ", ".join(ring.label(x) for x in xs) + "]"


def _emit(args: argparse.Namespace, doc: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        print(text)


def cmd_check(args: argparse.Namespace) -> int:
    ring, I, phi, delta, S = _parse_setting(args, need_ideal=True)
    if not I.is_proper:
        raise InputError(f"ideal not proper: {I!r} is the whole ring")
    if S.meets(I):
        raise InputError(f"ideal meets S: {I!r} and {S!r} share an element")
    try:
        report = is_phi_delta_S_primary(I, phi, delta, S)
    except (NotProper, MeetsS) as exc:
        raise InputError(str(exc)) from None
    doc = {"ring": ring.to_json(), "ideal": I.to_json(), "phi": phi.to_json(), "delta": delta.to_json(),
           "mult_set": S.to_json(), "saturated": bool(args.saturate), **report.to_json()}
    lines = [f"ring {ring.name}  ideal {I!r}  phi {phi}  delta {delta}  S {S!r}",
             f"witnesses: {_labels(ring, report.witnesses) if report.witnesses else 'none'}"]
    cx = report.counterexample
    if cx is not None:
        lab = ring.label
        where = "in phi(I)" if cx.ab_in_phi else "not in phi(I)"
        lines.append(f"counterexample for s={lab(cx.s)}: a={lab(cx.a)} b={lab(cx.b)}")
        lines.append(f"  ab={lab(cx.ab)} in I, {where}")
        lines.append(f"  sa={lab(cx.sa)} not in I")
        lines.append(f"  sb={lab(cx.sb)} not in delta(I) = {delta(I)!r}")
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    ring, _, phi, delta, S = _parse_setting(args, need_ideal=False)
    rows = []
    for I in proper_ideals(ring):
        if S.meets(I):
            continue
        img = phi(I)
        rows.append({"ideal": I.to_json(), "members": list(I.members),
                     "phi_image": None if img is EMPTY else img.to_json(),
                     "witnesses": sorted(witness_set(I, phi, delta, S))})
    doc = {"ring": ring.to_json(), "phi": phi.to_json(), "delta": delta.to_json(), "mult_set": S.to_json(),
           "saturated": bool(args.saturate), "ideals": rows}
    lines = [f"ring {ring.name}  phi {phi}  delta {delta}  S {S!r}"]
    for I, row in zip((J for J in proper_ideals(ring) if not S.meets(J)), rows):
        ws = row["witnesses"]
        lines.append(f"  {I!r:<16} witnesses {_labels(ring, ws) if ws else 'none'}")
    lines.append(f"{len(rows)} proper ideals disjoint from S")
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def _report_exit(args: argparse.Namespace, result) -> int:
    if args.format == "json":
        print(result.dumps())
    else:
        print(result.to_text(timing=True))
    return result.exit_code()


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        cfg = load_config(args.config) if args.config else default_config()
    except ConfigError as exc:
        raise InputError(str(exc)) from None
    return _report_exit(args, run_all(cfg))


def cmd_hunt(args: argparse.Namespace) -> int:
    try:
        cfg = CheckConfig(seed=args.seed, budget=args.budget, max_order=args.max_order)
    except ConfigError as exc:
        raise InputError(str(exc)) from None
    return _report_exit(args, hunt(cfg))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="phidelta", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("text", "json"), default="text")

    def setting(p: argparse.ArgumentParser, ideal: bool) -> None:
        p.add_argument("--ring", required=True, help='ring literal, e.g. {"type":"zmod","n":12}')
        if ideal:
            p.add_argument("--ideal", required=True, help='ideal literal, e.g. {"gens":[4]}')
        p.add_argument("--phi", default="empty", help='reduction literal, e.g. zero or {"power":2}')
        p.add_argument("--delta", default="identity", help="expansion literal, e.g. radical")
        p.add_argument("--s", default='{"gens":[]}', help='mult-set literal, e.g. {"gens":[5]}')
        p.add_argument("--saturate", action="store_true", help="replace S by its saturation first")
        common(p)

    p = sub.add_parser("check", help="witness set of one ideal, with a counterexample trace")
    setting(p, ideal=True)
    p.set_defaults(func=cmd_check)
    p = sub.add_parser("enumerate", help="witness sets of every proper ideal disjoint from S")
    setting(p, ideal=False)
    p.set_defaults(func=cmd_enumerate)
    p = sub.add_parser("verify", help="run the theorem checks from a config file (default config if omitted)")
    p.add_argument("config", nargs="?")
    common(p)
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("hunt", help="seeded random counterexample search")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=100)
    p.add_argument("--max-order", type=int, default=40)
    common(p)
    p.set_defaults(func=cmd_hunt)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, which would read as "violations"
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
