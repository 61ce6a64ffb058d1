"""Command-line front door: generate instances, compute invariants, run checks
and audits.  Results go to stdout (or -o), diagnostics to stderr, so reports
pipe cleanly.  Exit codes: 0 pass, 1 any check/audit failure, 2 usage or
input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import generators
from .audit import run_suite
from .complexes import complex_from_dict, complex_to_dict, reduced_order_complex
from .errors import PosetLabError
from .homology import classify, is_buchsbaum_star, poset_is_cohen_macaulay, is_cohen_macaulay, reduced_homology
from .hvectors import cubical_h, short_cubical_h, simplicial_h, toric_h
from .linalg import DEFAULT_PRIME, FieldSpec
from .poset import (
    FinitePoset,
    is_cubical_poset,
    is_lower_eulerian,
    is_meet_semilattice,
    is_simplicial_poset,
    mobius,
    poset_from_dict,
    poset_to_dict,
    rank_alternating_sum,
    reduced_euler_char,
)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_instance(path: str):
    """Read a poset or complex JSON file, deciding by its keys."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path}: line {exc.lineno} column {exc.colno}")
    if "covers" in data:
        return poset_from_dict(data)
    if "facets" in data:
        return complex_from_dict(data)
    raise UsageError(f"{path}: expected a 'covers' (poset) or 'facets' (complex) key")


class UsageError(Exception):
    pass


def _field_from(args) -> FieldSpec:
    if args.field is not None:
        return FieldSpec(args.field)
    env = os.environ.get("POSETLAB_FIELD")
    if env:
        try:
            return FieldSpec(int(env))
        except ValueError:
            raise UsageError(f"POSETLAB_FIELD is not an integer: {env!r}")
    return FieldSpec(DEFAULT_PRIME)


def _int_params(values):
    out = []
    for v in values:
        try:
            out.append(int(v))
        except ValueError:
            out.append(v)
    return out


def cmd_generate(args) -> int:
    params = _int_params(args.params)
    try:
        instance = generators.make_family(args.family, *params)
    except (TypeError, ValueError):
        raise UsageError(
            f"wrong parameters for family {args.family!r}: {args.params}"
        )
    if isinstance(instance, FinitePoset):
        payload = poset_to_dict(instance)
    else:
        payload = complex_to_dict(instance)
    _emit(_dump(payload), args.output)
    return 0


_POSET_ONLY = "this invariant needs a poset input (a JSON file with covers)"


def cmd_compute(args) -> int:
    instance = _load_instance(args.input)
    fld = _field_from(args)
    inv = args.invariant
    is_poset = isinstance(instance, FinitePoset)

    if inv == "mobius":
        if not is_poset:
            raise UsageError(_POSET_ONLY)
        table = mobius(instance)
        values = sorted(
            [x, y, v] for (x, y), v in table.items()
        )
        payload = {"name": instance.name, "values": values}
    elif inv == "psi":
        if not is_poset:
            raise UsageError(_POSET_ONLY)
        payload = {"name": instance.name, "psi": rank_alternating_sum(instance)}
    elif inv == "chi":
        value = (
            reduced_euler_char(instance)
            if is_poset
            else instance.reduced_euler_char()
        )
        payload = {"name": instance.name, "chi": value}
    elif inv in ("simplicial-h", "toric-h", "cubical-h", "short-cubical-h"):
        if not is_poset:
            raise UsageError(_POSET_ONLY)
        fn = {
            "simplicial-h": simplicial_h,
            "toric-h": toric_h,
            "cubical-h": cubical_h,
            "short-cubical-h": short_cubical_h,
        }[inv]
        report = fn(instance)
        if args.format == "tsv":
            head = "kind\trank\t" + "\t".join(
                f"h{i}" for i in range(len(report.entries))
            )
            row = f"{report.kind}\t{report.rank}\t" + "\t".join(
                str(e) for e in report.entries
            )
            _emit(head + "\n" + row + "\n", args.output)
            return 0
        payload = report.to_dict()
    elif inv == "homology":
        delta = instance if not is_poset else reduced_order_complex(instance)
        report = reduced_homology(delta, fld)
        payload = {
            "name": instance.name,
            "field": fld.characteristic,
            "betti": {str(k): v for k, v in sorted(report.betti.items())},
        }
    elif inv == "classify":
        delta = instance if not is_poset else reduced_order_complex(instance)
        classes = classify(delta, fld)
        payload = {
            "name": instance.name,
            "field": fld.characteristic,
            "cohen_macaulay": classes.cohen_macaulay,
            "buchsbaum": classes.buchsbaum,
            "doubly_cm": classes.doubly_cm,
            "gorenstein_star": classes.gorenstein_star,
            "buchsbaum_star": classes.buchsbaum_star,
        }
    else:
        raise UsageError(f"unknown invariant: {inv}")
    if args.format == "tsv":
        raise UsageError("tsv output is only available for h-vector invariants")
    _emit(_dump(payload), args.output)
    return 0


def cmd_check(args) -> int:
    instance = _load_instance(args.input)
    fld = _field_from(args)
    pred = args.predicate
    is_poset = isinstance(instance, FinitePoset)
    witness = None

    if pred == "lower-eulerian":
        if not is_poset:
            raise UsageError("lower-eulerian applies to posets")
        verdict = is_lower_eulerian(instance)
        result = bool(verdict)
        witness = verdict.witness if not result else None
    elif pred == "cm":
        if is_poset:
            result, witness = poset_is_cohen_macaulay(instance, fld)
        else:
            result, witness = is_cohen_macaulay(instance, fld)
    elif pred == "buchsbaum-star":
        delta = instance if not is_poset else reduced_order_complex(instance)
        result, witness = is_buchsbaum_star(delta, fld)
    elif pred == "simplicial":
        if not is_poset:
            raise UsageError("simplicial applies to posets")
        result = is_simplicial_poset(instance)
    elif pred == "cubical":
        if not is_poset:
            raise UsageError("cubical applies to posets")
        result = is_cubical_poset(instance)
    elif pred == "meet-semilattice":
        if not is_poset:
            raise UsageError("meet-semilattice applies to posets")
        result = is_meet_semilattice(instance)
    else:
        raise UsageError(f"unknown predicate: {pred}")

    payload = {
        "name": instance.name,
        "predicate": pred,
        "result": bool(result),
    }
    if witness is not None:
        payload["witness"] = json.loads(_dump(_to_plain(witness)))
    _emit(_dump(payload), args.output)
    return 0 if result else 1


def _to_plain(obj):
    if isinstance(obj, (list, tuple)):
        return [_to_plain(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): _to_plain(v) for k, v in obj.items()}
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    return str(obj)


def cmd_audit(args) -> int:
    if args.suite != "all":
        raise UsageError("only the built-in suite 'all' is available")
    fld = _field_from(args)
    reports = run_suite(fld, family=args.family)
    payload = [r.to_dict() for r in reports]
    _emit(_dump(payload), args.output)
    failures = 0
    for r in reports:
        bad = r.failures()
        failures += len(bad)
        status = "ok" if not bad else f"FAIL ({len(bad)} checks)"
        print(f"{r.instance}: {status}", file=sys.stderr)
    return 0 if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="posetlab",
        description="Invariants and identity audits for finite posets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="emit a built-in family instance as JSON")
    gen.add_argument("family")
    gen.add_argument("params", nargs="*")
    gen.add_argument("-o", "--output")
    gen.set_defaults(fn=cmd_generate)

    comp = sub.add_parser("compute", help="compute an invariant of a JSON instance")
    comp.add_argument(
        "invariant",
        choices=[
            "mobius",
            "psi",
            "chi",
            "simplicial-h",
            "toric-h",
            "cubical-h",
            "short-cubical-h",
            "homology",
            "classify",
        ],
    )
    comp.add_argument("input")
    comp.add_argument("--field", type=int)
    comp.add_argument("--format", choices=["json", "tsv"], default="json")
    comp.add_argument("-o", "--output")
    comp.set_defaults(fn=cmd_compute)

    chk = sub.add_parser("check", help="test a structural predicate")
    chk.add_argument(
        "predicate",
        choices=[
            "lower-eulerian",
            "cm",
            "buchsbaum-star",
            "simplicial",
            "cubical",
            "meet-semilattice",
        ],
    )
    chk.add_argument("input")
    chk.add_argument("--field", type=int)
    chk.add_argument("-o", "--output")
    chk.set_defaults(fn=cmd_check)

    aud = sub.add_parser("audit", help="run the identity audit over the built-in suite")
    aud.add_argument("suite")
    aud.add_argument("--family")
    aud.add_argument("--field", type=int)
    aud.add_argument("-o", "--output")
    aud.set_defaults(fn=cmd_audit)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PosetLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
