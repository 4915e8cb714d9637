"""Command-line front end.

Exit status: 0 on success, 1 on bad input, 2 when a certificate is refused
(the certificate is still written).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .config import Config, load_config
from .exceptional import (
    EnumerationRefused,
    ReductionError,
    SnewError,
    bound_constants,
    build_report,
    field_summary,
    run_pipeline,
)
from .field import CardError, FieldCard, load_card, save_card
from .gate import certify
from .quaternion import DiscriminantError, find_admissible_q, splits_over_field, validate_disc
from .schemas import validate_certificate_json, validate_report_json
from .weil import enumerate_FR, weil_power_check

EXIT_OK, EXIT_INPUT, EXIT_REFUSED = 0, 1, 2


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _add_field(p, required=True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--quadratic", type=int, metavar="D", help="built-in Q(sqrt D), D squarefree")
    g.add_argument("--card", type=Path, help="field card JSON file")


def _add_common(p):
    p.add_argument("--output", "-o", type=Path, help="write JSON here instead of stdout")
    p.add_argument("--full-values", action="store_true", help="print huge integers in full")
    p.add_argument("--A1", dest="A1", help="constant A1 > 1 of the least-prime bound (default 40)")
    p.add_argument("--delta", dest="delta_k", help="override the card's delta_k")
    p.add_argument("--effort-budget", type=int, help="factoring work units per entry")
    p.add_argument("--precision-cap", type=int, help="maximum interval precision in bits")
    p.add_argument("--list-limit", type=int, help="list N1 up to this bound")
    p.add_argument("--workers", type=int, help="worker processes for the enumeration")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="shimbound", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", type=Path, help="JSON config file (default: $SHIMBOUND_CONFIG)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("invariants", help="field invariants")
    _add_field(p)
    _add_common(p)
    p.add_argument("--emit-card", type=Path, help="also write the field card here")

    p = sub.add_parser("weil", help="quadratic Weil numbers of n and their 12th/24th powers")
    p.add_argument("--n", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("exceptional", help="the exceptional set N1(k)")
    _add_field(p)
    _add_common(p)
    p.add_argument("--test-prime", type=int, action="append", default=[], help="membership query (repeatable)")
    p.add_argument("--mode", choices=["membership", "list_upto", "best_effort"], default="list_upto")

    p = sub.add_parser("bound", help="the constants C1, C2 and C(k, a)")
    _add_field(p)
    _add_common(p)

    p = sub.add_parser("quaternion", help="splitting data for discriminant d")
    p.add_argument("--disc", type=int, required=True)
    _add_field(p, required=False)
    _add_common(p)

    p = sub.add_parser("certify", help="applicability certificate for (k, d)")
    p.add_argument("--disc", type=int, required=True)
    _add_field(p)
    _add_common(p)
    p.add_argument("--test-prime", type=int, action="append", default=[])
    p.add_argument("--text", action="store_true", help="print the human-readable rendering")
    return parser


def _config(args) -> Config:
    try:
        base = load_config(args.config)
        kw = {k: getattr(args, k, None) for k in ("A1", "delta_k", "effort_budget", "list_limit", "workers")}
        kw["precision_cap"] = getattr(args, "precision_cap", None)
        if getattr(args, "full_values", False):
            kw["full_values"] = True
        if getattr(args, "mode", None) == "best_effort":
            kw["factor_mode"] = "best_effort"
        return base.with_overrides(**kw)
    except (ValueError, OSError, TypeError) as exc:
        raise InputError(f"bad configuration: {exc}") from exc


def _card(args) -> FieldCard:
    if args.quadratic is not None:
        from .quadratic import build_card

        try:
            return build_card(args.quadratic)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    try:
        return load_card(args.card)
    except OSError as exc:
        raise InputError(f"cannot read {args.card}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{args.card} is not JSON: {exc}") from exc


def _emit(data: dict, path: Path | None) -> None:
    text = json.dumps(data, indent=2, ensure_ascii=False) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text, encoding="utf-8")


def _invariants(args, cfg):
    card = _card(args)
    out = {"field": field_summary(card), "config": cfg.as_dict()}
    out["field"]["fundamental_units"] = [[str(c) for c in u] for u in card.fundamental_units]
    out["field"]["delta_k"] = card.delta_k
    if card.is_quadratic:
        from .quadratic import class_group

        cg = class_group(card)
        out["field"]["class_group"] = {
            "order": cg.order_h,
            "generators": [{"form": [str(x) for x in f], "order": o} for f, _, o in cg.generators],
        }
    if args.emit_card:
        save_card(card, args.emit_card)
    _emit(out, args.output)
    return EXIT_OK


def _weil(args, cfg):
    if args.n < 1:
        raise InputError("--n must be positive")
    rows = []
    for w in enumerate_FR(args.n):
        chk = weil_power_check(w)
        rows.append(
            {
                "a": str(w.a),
                "n": str(w.n),
                "root": w.root_choice,
                "beta12": None if chk.beta12 is None else str(chk.beta12),
                "beta24": None if chk.beta24 is None else str(chk.beta24),
                "beta12_is_minus_n6": chk.beta12 == -(w.n**6),
            }
        )
    traces = sorted({int(r["a"]) for r in rows})
    flagged = [r for r in rows if r["beta12_is_minus_n6"]]
    _emit({"n": str(args.n), "traces": [str(a) for a in traces], "weil_numbers": rows,
           "flagged": flagged, "config": cfg.as_dict()}, args.output)
    return EXIT_OK


def _exceptional(args, cfg):
    card = _card(args)
    pipe = run_pipeline(card, cfg)
    for p in args.test_prime:
        if p < 2:
            raise InputError(f"test prime {p} is not prime")
    try:
        report = build_report(pipe, args.test_prime)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    validate_report_json(report)
    _emit(report, args.output)
    for m in report["membership"]:
        print(f"p = {m['p']}: member = {str(m['member']).lower()} ({', '.join(m['sources']) or 'none'})", file=sys.stderr)
    return EXIT_OK


def _bound(args, cfg):
    card = _card(args)
    bc = bound_constants(card, cfg.A1_fraction(), cfg.delta_k)
    _emit({"field": field_summary(card), "bounds": bc.as_dict(), "config": cfg.as_dict()}, args.output)
    return EXIT_OK


def _disc(d: int):
    try:
        return validate_disc(d)
    except DiscriminantError as exc:
        raise InputError(f"bad quaternion discriminant: {exc}") from exc


def _quaternion(args, cfg):
    D = _disc(args.disc)
    out = {"d": str(D.d), "ramified_primes": [str(p) for p in D.ramified_primes], "config": cfg.as_dict()}
    if args.quadratic is not None or args.card is not None:
        card = _card(args)
        adm = find_admissible_q(D, card, cfg.q_search_limit)
        out["field"] = field_summary(card)
        out["splits_over_field"] = splits_over_field(D, card)
        out["admissible_q"] = None if not adm.found else str(adm.q)
        out["threshold"] = None if not adm.found else str(adm.threshold)
        out["rejected_smaller"] = [str(p) for p in adm.rejected]
        out["scanned_up_to"] = str(adm.scanned_up_to)
    _emit(out, args.output)
    return EXIT_OK


def _certify(args, cfg):
    D = _disc(args.disc)
    card = _card(args)
    try:
        cert = certify(card, D, cfg, args.test_prime)
        data = cert.to_dict()
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    validate_certificate_json(data)
    _emit(data, args.output)
    if args.text:
        sys.stderr.write(data["text"])
    return EXIT_OK if cert.certified else EXIT_REFUSED


COMMANDS = {
    "invariants": _invariants,
    "weil": _weil,
    "exceptional": _exceptional,
    "bound": _bound,
    "quaternion": _quaternion,
    "certify": _certify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg)
    except (InputError, CardError) as exc:
        print(f"shimbound: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (SnewError, EnumerationRefused, ReductionError) as exc:
        print(f"shimbound: cannot complete: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
