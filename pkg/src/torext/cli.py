"""Command-line front end.

Single entry point with subcommands that map one-to-one onto module
operations.  Output is stable text by default or JSON with
``--format json``; exit codes are 0 (success), 1 (property violation
reported by verify), 2 (invalid input or invocation).
"""

from __future__ import annotations

import argparse
import json
import sys

from .duality import dual_extension, dual_group, dual_morphism
from .extcalc import ext_group, ext_t_subgroup, hom_group, pext_group
from .extensions import (
    Extension,
    baer_sum,
    classify,
    is_pure_extension,
    is_t_extension,
    pullback,
    pushout,
    realize,
    splits,
)
from .fgabelian import format_group, parse_group
from .intmat import ExactnessError, TorextError
from .jsonio import (
    ext_element_from_json,
    ext_element_to_json,
    extension_from_json,
    extension_to_json,
    group_to_json,
    morphism_from_json,
    morphism_to_json,
)
from .oracle import DEFAULT_CAP, cocycle_to_extension, enumerate_classes
from .theorems import run_suite, suite_names

__all__ = ["main", "parse_group_expression"]

# The grammar lives in fgabelian; this is the documented entry point.
parse_group_expression = parse_group


def _read_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _arrow(e: Extension) -> str:
    return f"0 -> {format_group(e.A)} -> {format_group(e.B)} -> {format_group(e.C)} -> 0"


def _group_payload(command: str, c, a, result, extra: dict | None = None):
    payload = {
        "command": command,
        "base": group_to_json(c),
        "coefficients": group_to_json(a),
        "group": group_to_json(result),
        "rendered": format_group(result),
    }
    if extra:
        payload.update(extra)
    return 0, payload, format_group(result)


def _cmd_group(args):
    g = parse_group_expression(args.expression)
    payload = {
        "command": "group",
        "input": args.expression,
        "group": group_to_json(g),
        "rendered": format_group(g),
    }
    return 0, payload, format_group(g)


def _cmd_hom(args):
    c = parse_group_expression(args.base)
    a = parse_group_expression(args.coefficients)
    return _group_payload("hom", c, a, hom_group(c, a))


def _cmd_ext(args):
    c = parse_group_expression(args.base)
    a = parse_group_expression(args.coefficients)
    return _group_payload("ext", c, a, ext_group(c, a).structure)


def _cmd_extt(args):
    c = parse_group_expression(args.base)
    a = parse_group_expression(args.coefficients)
    sub = ext_t_subgroup(c, a)
    ambient = format_group(sub.parent.structure)
    return _group_payload("extt", c, a, sub.as_group(), {"ambient_ext": ambient})


def _cmd_pext(args):
    c = parse_group_expression(args.base)
    a = parse_group_expression(args.coefficients)
    note = "pure extensions of finitely generated groups split"
    return _group_payload("pext", c, a, pext_group(c, a).structure, {"note": note})


def _cmd_sequence(args):
    obj = _read_json(args.file)
    try:
        e = extension_from_json(obj)
    except ExactnessError as exc:
        payload = {"command": "sequence", "exact": False, "reason": str(exc)}
        return 0, payload, f"exact: no ({exc})"
    x = classify(e)
    payload = {
        "command": "sequence",
        "exact": True,
        "t_extension": is_t_extension(e),
        "pure": is_pure_extension(e),
        "splits": splits(e),
        "class": list(x.coords),
        "ext": group_to_json(x.parent.structure),
    }
    text = "\n".join(
        [
            "exact: yes",
            f"t-extension: {'yes' if payload['t_extension'] else 'no'}",
            f"pure: {'yes' if payload['pure'] else 'no'}",
            f"splits: {'yes' if payload['splits'] else 'no'}",
            f"class: {payload['class']}",
        ]
    )
    return 0, payload, text


def _cmd_classify(args):
    e = extension_from_json(_read_json(args.file))
    x = classify(e)
    payload = {"command": "classify", "class": ext_element_to_json(x),
               "ext": group_to_json(x.parent.structure)}
    text = f"class: {list(x.coords)}\next: {format_group(x.parent.structure)}"
    return 0, payload, text


def _cmd_realize(args):
    x = ext_element_from_json(_read_json(args.file))
    e = realize(x)
    return 0, {"command": "realize", "extension": extension_to_json(e)}, _arrow(e)


def _cmd_baer_sum(args):
    e1 = extension_from_json(_read_json(args.file1))
    e2 = extension_from_json(_read_json(args.file2))
    e = baer_sum(e1, e2)
    return 0, {"command": "baer-sum", "extension": extension_to_json(e)}, _arrow(e)


def _cmd_pushout(args):
    e = extension_from_json(_read_json(args.file))
    mu = morphism_from_json(_read_json(args.morphism))
    out = pushout(e, mu)
    return 0, {"command": "pushout", "extension": extension_to_json(out)}, _arrow(out)


def _cmd_pullback(args):
    e = extension_from_json(_read_json(args.file))
    gamma = morphism_from_json(_read_json(args.morphism))
    out = pullback(e, gamma)
    return 0, {"command": "pullback", "extension": extension_to_json(out)}, _arrow(out)


def _cmd_oracle(args):
    c = parse_group_expression(args.base)
    a = parse_group_expression(args.coefficients)
    rows = []
    for f, idx in enumerate_classes(c, a, cap=args.caps):
        e = cocycle_to_extension(f)
        rows.append(
            {
                "index": idx,
                "middle": format_group(e.B),
                "is_t": is_t_extension(e),
                "is_pure": is_pure_extension(e),
                "splits": splits(e),
            }
        )
    payload = {
        "command": "oracle",
        "base": group_to_json(c),
        "coefficients": group_to_json(a),
        "classes": rows,
    }
    lines = [f"{len(rows)} classes"]
    for row in rows:
        flags = " ".join(
            f"{k}={'yes' if row[k] else 'no'}" for k in ("is_t", "is_pure", "splits")
        )
        lines.append(f"{row['index']}: {row['middle']} {flags}")
    return 0, payload, "\n".join(lines)


def _cmd_dual(args):
    if args.kind == "group":
        g = parse_group_expression(args.value)
        carrier = dual_group(g).carrier
        payload = {"command": "dual", "kind": "group",
                   "group": group_to_json(carrier), "rendered": format_group(carrier)}
        return 0, payload, format_group(carrier)
    obj = _read_json(args.value)
    if args.kind == "morphism":
        f = dual_morphism(morphism_from_json(obj))
        payload = {"command": "dual", "kind": "morphism", "morphism": morphism_to_json(f)}
        return 0, payload, json.dumps(morphism_to_json(f))
    e = dual_extension(extension_from_json(obj))
    payload = {"command": "dual", "kind": "extension", "extension": extension_to_json(e)}
    return 0, payload, _arrow(e)


def _cmd_verify(args):
    names = suite_names() if args.suite == "all" else [args.suite]
    reports = [
        run_suite(
            n,
            trials=args.trials,
            seed=args.seed,
            max_order=args.max_order,
            mutate=args.mutate,
        )
        for n in names
    ]
    all_passed = all(r.passed for r in reports)
    payload = {
        "command": "verify",
        "all_passed": all_passed,
        "reports": [r.to_json() for r in reports],
    }
    lines = []
    for r in reports:
        status = "PASS" if r.passed else f"FAIL ({len(r.failures)} failures)"
        note = f" [{r.note}]" if r.note else ""
        lines.append(f"{r.name}: {status} trials={r.trials} elapsed={r.elapsed:.2f}s{note}")
        for failure in r.failures[:3]:
            lines.append(f"  counterexample: {json.dumps(failure)}")
    lines.append("all suites passed" if all_passed else "PROPERTY VIOLATIONS FOUND")
    return (0 if all_passed else 1), payload, "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="text")
    common.add_argument("--output", help="write the result to a file instead of stdout")

    parser = argparse.ArgumentParser(
        prog="torext",
        description="Exact computations with t-extensions of finitely generated abelian groups.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("group", parents=[common], help="canonicalize a group expression")
    p.add_argument("expression")
    p.set_defaults(func=_cmd_group)

    for name, func, help_text in [
        ("hom", _cmd_hom, "Hom(C, A) as a canonical group"),
        ("ext", _cmd_ext, "Ext(C, A) as a canonical group"),
        ("extt", _cmd_extt, "the t-extension subgroup of Ext(C, A)"),
        ("pext", _cmd_pext, "Pext(C, A) (always trivial here)"),
    ]:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("base", help="the quotient group C")
        p.add_argument("coefficients", help="the kernel group A")
        p.set_defaults(func=func)

    p = sub.add_parser("sequence", parents=[common], help="check an extension file")
    p.add_argument("action", choices=["check"])
    p.add_argument("file")
    p.set_defaults(func=_cmd_sequence)

    p = sub.add_parser("classify", parents=[common], help="class coordinates of an extension")
    p.add_argument("file")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("realize", parents=[common], help="build an extension from a class")
    p.add_argument("file")
    p.set_defaults(func=_cmd_realize)

    p = sub.add_parser("baer-sum", parents=[common], help="Baer sum of two extensions")
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(func=_cmd_baer_sum)

    p = sub.add_parser("pushout", parents=[common], help="push an extension forward")
    p.add_argument("file")
    p.add_argument("morphism")
    p.set_defaults(func=_cmd_pushout)

    p = sub.add_parser("pullback", parents=[common], help="pull an extension back")
    p.add_argument("file")
    p.add_argument("morphism")
    p.set_defaults(func=_cmd_pullback)

    p = sub.add_parser("oracle", parents=[common], help="brute-force class census")
    p.add_argument("action", choices=["census"])
    p.add_argument("base")
    p.add_argument("coefficients")
    p.add_argument("--caps", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("dual", parents=[common], help="Pontryagin duals of finite objects")
    p.add_argument("kind", choices=["group", "morphism", "extension"])
    p.add_argument("value", help="group expression or JSON file")
    p.set_defaults(func=_cmd_dual)

    p = sub.add_parser("verify", parents=[common], help="run property suites")
    p.add_argument("--suite", default="all")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-order", type=int, default=None, dest="max_order")
    p.add_argument("--mutate", action="store_true", help="negate one predicate per suite (self-test)")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, payload, text = args.func(args)
    except TorextError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    rendered = json.dumps(payload, indent=2) if args.format == "json" else text
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(rendered + "\n")
    else:
        print(rendered)
    return code


if __name__ == "__main__":
    sys.exit(main())
