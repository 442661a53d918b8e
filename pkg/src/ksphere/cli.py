"""Command-line interface: character tables, K-group presentations, verification.

Group specs are JSON, inline or in a file:

    {"family": "S", "n": 3, "lambda": {"convention": "sign"}}
    {"family": "D", "n": 4, "lambda": {"convention": "reflection-sign"}}
    {"family": "product", "factors": [{"family": "C", "n": 2}, {"family": "C", "n": 4}],
     "lambda": {"generator_signs": [-1, 1]}}
    {"generators": [[1, 0, 2], [1, 2, 0]], "lambda": {"convention": "sign"}}

Exit codes: 0 success, 1 verification failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .characters import CharacterTheoryError, character_table
from .groups import (
    GroupSpecError,
    LambdaSpecError,
    ORDER_CAP_ENV,
    build_group,
    build_sign_hom,
    parse_group_document,
)
from .ktheory import S1_LAMBDA, S_LAMBDA, k_group_s1_lambda, k_group_s_lambda
from .verification import reports_to_jsonable, run_verification, verify_group

CHARTAB_SCHEMA = "ksphere-chartab/1"
KGROUP_SCHEMA = "ksphere-kgroup/1"

_EPILOG = f"""\
lambda conventions per family:
  cyclic (even n)     onto-pm1          sign of the exponent
  dihedral            reflection-sign   +1 on rotations, -1 on reflections
  quaternion          onto-pm1          kernel is the cyclic subgroup of order 4
  symmetric / perms   sign              permutation parity
  any family          generator_signs   explicit +-1 per standard generator

environment:
  {ORDER_CAP_ENV}   override the group order cap (default 1024)
  KSPHERE_DISABLE_NUMBA   set to 1 to force the pure-numpy kernel backend
"""


class InputError(Exception):
    """CLI-level invalid input (maps to exit code 2)."""


def _load_document(arg: str) -> dict:
    text = arg
    if not arg.lstrip().startswith("{"):
        path = Path(arg)
        if not path.exists():
            raise InputError(f"group spec file not found: {arg}")
        text = path.read_text(encoding="utf-8")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in group spec: {exc}") from exc
    if not isinstance(obj, dict):
        raise InputError("group spec must be a JSON object")
    return obj


def _resolve(arg: str, need_lambda: bool):
    obj = _load_document(arg)
    try:
        spec, lam_spec = parse_group_document(obj)
        group = build_group(spec)
        lam = None
        if lam_spec is not None:
            lam = build_sign_hom(group, spec, lam_spec)
    except (GroupSpecError, LambdaSpecError) as exc:
        raise InputError(str(exc)) from exc
    if need_lambda and lam is None:
        raise InputError(
            "this command needs a 'lambda' field "
            "({'convention': ...} or {'generator_signs': [...]})"
        )
    return spec, group, lam


def _dump_json(doc: dict, path: str) -> None:
    data = json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=True)
    Path(path).write_text(data + "\n", encoding="utf-8")


def _value_str(value) -> str:
    return str(value)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_chartab(args) -> int:
    spec, group, lam = _resolve(args.groupspec, need_lambda=False)
    table = character_table(group)
    classes = table.classes
    header = ["class", "size", "order"]
    cols = []
    for j, rep in enumerate(classes.representatives):
        cols.append(
            [
                group.element_labels[rep],
                str(classes.class_sizes[j]),
                str(group.element_order(rep)),
            ]
        )
    rows = []
    for c in range(table.count):
        rows.append([table.names[c]] + [_value_str(v) for v in table.irreducibles[c].values])
    print(f"group {group.name}: order {group.order}, exponent {table.modulus}, "
          f"{classes.count} classes")
    widths = [max(len(header[i]) for i in range(3))] * 1
    name_w = max(len(r[0]) for r in rows + [["class"]])
    col_w = [max(len(cols[j][t]) for t in range(3)) for j in range(len(cols))]
    for j in range(len(cols)):
        col_w[j] = max(col_w[j], max(len(rows[c][j + 1]) for c in range(len(rows))))
    for t, label in enumerate(header):
        line = label.ljust(name_w + 2)
        line += "  ".join(cols[j][t].rjust(col_w[j]) for j in range(len(cols)))
        print(line)
    for row in rows:
        line = row[0].ljust(name_w + 2)
        line += "  ".join(row[j + 1].rjust(col_w[j]) for j in range(len(cols)))
        print(line)
    if args.json:
        doc = {
            "schema": CHARTAB_SCHEMA,
            "group": {"name": group.name, "order": group.order},
            "modulus": table.modulus,
            "classes": [
                {
                    "label": group.element_labels[rep],
                    "size": classes.class_sizes[j],
                    "element_order": group.element_order(rep),
                }
                for j, rep in enumerate(classes.representatives)
            ],
            "irreducibles": [
                {
                    "name": table.names[c],
                    "degree": table.degrees[c],
                    "values": [v.to_json() for v in table.irreducibles[c].values],
                }
                for c in range(table.count)
            ],
        }
        _dump_json(doc, args.json)
    return 0


def _cmd_kgroup(args) -> int:
    spec, group, lam = _resolve(args.groupspec, need_lambda=True)
    if args.sphere == S1_LAMBDA:
        pres = k_group_s1_lambda(group, lam)
        table_h = pres.ctx.table_h
        print(f"group {group.name}, lambda {lam.label}, sphere {S1_LAMBDA}")
        print(f"kernel subgroup of order {table_h.group.order} with "
              f"{table_h.count} irreducible characters")
        print(f"rank {pres.rank}")
        for i, b in enumerate(pres.basis):
            print(f"  basis[{i}] {b.label} = chi{b.rep} - chi{b.partner}  "
                  f"coeffs {list(b.character.coeffs)}")
        print("action of the ambient irreducibles:")
        for name, mat in zip(pres.action_names, pres.action):
            print(f"  {name}: {mat.tolist()}")
        print("product rule: zero (alpha*beta = 0 for all elements)")
        doc = pres.to_jsonable()
    else:
        pres = k_group_s_lambda(group, lam)
        table = pres.ctx.table_g
        print(f"group {group.name}, lambda {lam.label}, sphere {S_LAMBDA}")
        print(f"rank {pres.rank} (ideal generated by 1 - lambda, "
              f"lambda = {table.names[pres.lambda_index]})")
        for i, b in enumerate(pres.basis):
            rep, partner = pres.pairs[i]
            print(f"  basis[{i}] chi{rep} - chi{partner}  coeffs {list(b.coeffs)}")
        if pres.fixed:
            fixed = ", ".join(f"chi{c}" for c in pres.fixed)
            print(f"fixed by tensoring with lambda: {fixed}")
        doc = pres.to_jsonable()
    if args.json:
        _dump_json(
            {
                "schema": KGROUP_SCHEMA,
                "group": {"name": group.name, "order": group.order},
                "lambda": lam.label,
                "presentation": doc,
            },
            args.json,
        )
    return 0


def _cmd_verify(args) -> int:
    if args.all_upto is not None:
        reports = run_verification(args.all_upto)
    else:
        if args.groupspec is None:
            raise InputError("verify needs a group spec or --all-upto N")
        spec, group, lam = _resolve(args.groupspec, need_lambda=False)
        reports = verify_group(group, lam)
    reports = sorted(reports, key=lambda r: (r.check, r.group, r.lam))
    fails = 0
    for r in reports:
        tag = r.status.upper()
        if r.status == "fail":
            fails += 1
        detail = f"  ({r.details})" if r.details else ""
        print(f"{tag:4s} {r.check} {r.group} {r.lam}{detail}")
    print(f"{len(reports)} checks, {fails} failures")
    if args.json:
        _dump_json(reports_to_jsonable(reports), args.json)
    return 1 if fails else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ksphere",
        description="Exact reduced equivariant K-groups of involution spheres "
        "for finite groups.",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"ksphere {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chartab", help="print the exact character table")
    p.add_argument("groupspec", help="inline JSON group spec or path to a spec file")
    p.add_argument("--json", metavar="PATH", help="write a machine-readable report")
    p.set_defaults(func=_cmd_chartab)

    p = sub.add_parser("kgroup", help="print a reduced K-group presentation")
    p.add_argument("groupspec", help="inline JSON group spec or path to a spec file")
    p.add_argument(
        "--sphere",
        choices=[S_LAMBDA, S1_LAMBDA],
        default=S1_LAMBDA,
        help="which representation sphere (default: s1-lambda)",
    )
    p.add_argument("--json", metavar="PATH", help="write a machine-readable report")
    p.set_defaults(func=_cmd_kgroup)

    p = sub.add_parser("verify", help="run the brute-force identity checks")
    p.add_argument("groupspec", nargs="?", help="inline JSON group spec or spec file")
    p.add_argument(
        "--all-upto",
        type=int,
        metavar="N",
        help="sweep every builtin group of order <= N with every valid lambda",
    )
    p.add_argument("--json", metavar="PATH", help="write a machine-readable report")
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GroupSpecError, LambdaSpecError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CharacterTheoryError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        raise


if __name__ == "__main__":
    sys.exit(main())
