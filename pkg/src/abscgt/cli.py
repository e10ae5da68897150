"""Command-line interface.

Exit codes: 0 success / pass, 1 failed check or negative answer, 2 usage or
notation error, 3 resource exhaustion.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

from .errors import DomainError, GameError, ResourceError
from .forms import Arena
from .notation import NotationError, parse, render
from .order import RefutationWitness, Verdict, closure_base, distinguish, equal_bounded, geq_absolute
from .replication import CHECKS, verify
from .solvers import Convention, Side, outcome, outcome_partial
from .universes import Budget, Membership, classify_form, closure_enumerate, member_bounded, parse_universe

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--convention", choices=["normal", "misere"], default="misere")
    common.add_argument("--universe", default="E", help="D, E, Omega, Sbar:<n>, Zbar:<n> or Hook:<m>")
    common.add_argument("--max-birthday", type=int, default=3)
    common.add_argument("--max-summands", type=int, default=3)
    common.add_argument("--max-forms", type=int, default=100_000)
    common.add_argument("--json", action="store_true", help="emit JSON")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="abscgt", description="Exact engine for short partizan game forms.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("outcome", parents=[common], help="outcome class of a form")
    p.add_argument("form")
    p.add_argument("--first", choices=["Left", "Right"], help="print the partial outcome for one starting player")

    p = sub.add_parser("sum", parents=[common], help="disjunctive sum of forms")
    p.add_argument("forms", nargs="+")

    for name in ("conjugate", "adjoint", "classify", "parse"):
        p = sub.add_parser(name, parents=[common], help=f"{name} of a form")
        p.add_argument("form")

    p = sub.add_parser("compare", parents=[common], help="is G >= H modulo the universe?")
    p.add_argument("g")
    p.add_argument("h")
    p.add_argument("--equal", action="store_true", help="test equality instead of >=")
    p.add_argument("--no-np-filter", action="store_true", help="skip the normal-play shortcut")

    p = sub.add_parser("distinguish", parents=[common], help="search a distinguishing game")
    p.add_argument("g")
    p.add_argument("h")

    p = sub.add_parser("enumerate", parents=[common], help="closure enumeration by days")
    p.add_argument("--days", type=int, default=2)
    p.add_argument("--base", nargs="*", help="hereditary base forms (default: from --universe)")
    p.add_argument("--max-option-set", type=int, default=2, help="0 for no limit")

    p = sub.add_parser("member", parents=[common], help="membership in the universe")
    p.add_argument("form")

    p = sub.add_parser("verify", parents=[common], help="run a named verification check")
    p.add_argument("check", choices=sorted(CHECKS) + ["all"])
    p.add_argument("--param", action="append", default=[], metavar="KEY=JSON", help="override a check parameter")
    p.add_argument("--no-timing", action="store_true", help="report elapsed_ms as 0 for byte-stable output")
    return parser


def _budget(args) -> Budget:
    return Budget(args.max_birthday, args.max_summands, args.max_forms)


def _emit(args, text: str, payload) -> None:
    print(json.dumps(payload, sort_keys=True) if args.json else text)


def _witness_dict(arena: Arena, w: RefutationWitness) -> dict:
    out = {"kind": w.kind, "g": render(w.g, arena), "h": render(w.h, arena)}
    if w.side is not None:
        out["side"] = w.side.value
    if w.x is not None:
        out["x"] = render(w.x, arena)
        out["outcomes"] = [o.name for o in w.outcomes]
    if w.option is not None:
        out["option"] = render(w.option, arena)
        out["alternatives"] = [_witness_dict(arena, a) for a in w.alternatives]
    return out


def _verdict_text(arena: Arena, verdict: Verdict) -> str:
    if not verdict.refuted:
        return str(verdict)
    w = verdict.witness
    if w.kind == "proviso":
        og, oh = w.outcomes
        side = "o_L" if w.side is Side.LEFT else "o_R"
        return (
            f"Refuted (proviso) X={render(w.x, arena)}: "
            f"{side}({render(w.g, arena)}+X)={og.name} < {side}({render(w.h, arena)}+X)={oh.name}"
        )
    if w.kind == "maintenance":
        which = "G^R" if w.side is Side.RIGHT else "H^L"
        return f"Refuted (maintenance) {which}={render(w.option, arena)} has no answer"
    return f"Refuted (normal play): {render(w.g, arena)} is not >= {render(w.h, arena)} in normal play"


def _run(args) -> int:
    arena = Arena()
    conv = Convention(args.convention)
    cmd = args.command
    if cmd == "outcome":
        g = parse(args.form, arena)
        if args.first:
            value = outcome_partial(arena, g, Side(args.first), conv).name
        else:
            value = outcome(arena, g, conv).value
        _emit(args, value, {"form": render(g, arena), "convention": conv.value, "outcome": value})
        return EXIT_OK
    if cmd in ("sum", "conjugate", "adjoint", "parse"):
        if cmd == "sum":
            g = arena.sum_all(parse(t, arena) for t in args.forms)
        else:
            g = parse(args.form, arena)
            if cmd == "conjugate":
                g = arena.conjugate(g)
            elif cmd == "adjoint":
                g = arena.adjoint(g)
        text = render(g, arena)
        _emit(args, text, {"form": text, "birthday": arena.birthday(g)})
        return EXIT_OK
    if cmd == "classify":
        g = parse(args.form, arena)
        flags = asdict(classify_form(arena, g))
        _emit(args, " ".join(k for k, v in flags.items() if v) or "(none)", {"form": render(g, arena), **flags})
        return EXIT_OK

    spec = parse_universe(args.universe)
    budget = _budget(args)
    if cmd == "member":
        g = parse(args.form, arena)
        answer = member_bounded(arena, spec, g, budget)
        _emit(args, answer.value, {"form": render(g, arena), "universe": spec.token, "member": answer.value})
        return EXIT_OK if answer is Membership.YES else EXIT_FAIL
    if cmd == "compare":
        g, h = parse(args.g, arena), parse(args.h, arena)
        np_filter = not args.no_np_filter
        if args.equal:
            verdict = equal_bounded(arena, spec, g, h, budget, np_filter)
        else:
            verdict = geq_absolute(arena, spec, g, h, budget, np_filter)
        payload = {"universe": spec.token, "g": render(g, arena), "h": render(h, arena), "verdict": verdict.kind.value}
        if verdict.witness is not None:
            payload["witness"] = _witness_dict(arena, verdict.witness)
        if verdict.budget is not None:
            payload["budget"] = verdict.budget.as_dict()
        _emit(args, _verdict_text(arena, verdict), payload)
        return EXIT_FAIL if verdict.refuted else EXIT_OK
    if cmd == "distinguish":
        g, h = parse(args.g, arena), parse(args.h, arena)
        found = distinguish(arena, spec, g, h, budget)
        if found is None:
            _emit(args, "no distinguishing game within budget", {"universe": spec.token, "witness": None})
            return EXIT_FAIL
        text = f"X={render(found.x, arena)}: o(G+X)={found.outcome_g.value}, o(H+X)={found.outcome_h.value}"
        payload = {
            "universe": spec.token,
            "witness": render(found.x, arena),
            "outcome_g": found.outcome_g.value,
            "outcome_h": found.outcome_h.value,
        }
        _emit(args, text, payload)
        return EXIT_OK
    if cmd == "enumerate":
        base = [parse(t, arena) for t in args.base] if args.base else sorted(closure_base(arena, spec, budget))
        base_set = set(base)
        for g in base:
            base_set |= arena.followers(g)
        width = args.max_option_set or None
        result = closure_enumerate(arena, base_set, args.days, budget, width)
        texts = sorted((arena.birthday(g), render(g, arena)) for g in result.forms)
        payload = {
            "count": len(texts),
            "truncated": result.truncated,
            "birthday_pruned": result.birthday_pruned,
            "days": result.days,
            "forms": [t for _, t in texts],
        }
        _emit(args, "\n".join(t for _, t in texts), payload)
        return EXIT_OK
    if cmd == "verify":
        params = {}
        for item in args.param:
            key, sep, value = item.partition("=")
            if not sep:
                raise DomainError(f"--param expects KEY=VALUE, got {item!r}")
            params[key] = json.loads(value)
        ids = sorted(CHECKS) if args.check == "all" else [args.check]
        worst = EXIT_OK
        for check_id in ids:
            report = verify(check_id, params if args.check != "all" else None, Arena())
            if args.json:
                print(report.to_json(timing=not args.no_timing))
            else:
                bad = len(report.failures)
                print(f"{check_id}: {report.status} ({len(report.details)} rows, {bad} mismatched, {report.elapsed_ms} ms)")
                for row in report.failures[:10]:
                    print(f"  {row.input}: expected {row.expected}, computed {row.computed}")
            if report.error is not None:
                worst = max(worst, EXIT_RESOURCE)
            elif report.status == "fail":
                worst = max(worst, EXIT_FAIL)
        return worst
    raise AssertionError(cmd)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return _run(args)
    except ResourceError as exc:
        print(f"resource exhausted: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (NotationError, DomainError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GameError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
