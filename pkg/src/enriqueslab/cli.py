"""Command-line front end.

Subcommands expose the decision procedures; every run is deterministic
given the same inputs and flags.  JSON reports go to stdout, diagnostics
to stderr.  Exit codes: 0 success (or positive verdict), 1 definitive
negative verdict, 2 input error, 3 budget exhaustion.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .errors import (
    EnriquesLabError,
    EnumerationBudgetExceeded,
    OrderCapExceeded,
)
from .fixtures import fixture_names, run_fixture
from .lattices import (
    determinant,
    discriminant_group,
    is_even,
    restrict_form,
    signature,
)
from .isometry import invariant_sublattice
from .realization import (
    decide_realization,
    dehn_twist_reflection,
    enriques_realizable,
    lift_group,
    lift_isometry,
)
from .serialize import (
    dumps,
    encode_matrix,
    enriques_report_to_json,
    group_from_json,
    isometry_from_json,
    lattice_from_json,
    lattice_to_json,
    report_to_json,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


def _read_json_arg(value: str):
    """Inline JSON, a file path, or a bare registry name."""
    text = value.strip()
    if text.startswith("{") or text.startswith("["):
        return json.loads(text)
    if os.path.exists(value):
        with open(value, "r", encoding="utf-8") as fh:
            return json.load(fh)
    return text


def _load_config(path):
    if not path:
        return {}
    try:
        import tomllib
    except ModuleNotFoundError:
        import tomli as tomllib
    with open(path, "rb") as fh:
        return tomllib.load(fh)


def _emit(obj, fmt):
    if fmt == "table":
        def walk(prefix, value):
            if isinstance(value, dict):
                for k in sorted(value):
                    walk(f"{prefix}{k}.", value[k])
            elif isinstance(value, list) and len(value) > 6:
                print(f"{prefix[:-1]:<42} <{len(value)} entries>")
            else:
                print(f"{prefix[:-1]:<42} {value}")
        walk("", obj)
    else:
        print(dumps(obj))


def _cmd_lattice(args, cfg):
    lat = lattice_from_json(_read_json_arg(args.input))
    out = {
        "lattice": lattice_to_json(lat),
        "signature": list(signature(lat)),
        "determinant": determinant(lat),
        "even": is_even(lat),
        "discriminant_group": discriminant_group(lat) if determinant(lat) else None,
    }
    _emit(out, args.format)
    return EXIT_OK


def _cmd_invariant(args, cfg):
    group = group_from_json(_read_json_arg(args.group))
    sub = invariant_sublattice(group)
    form = restrict_form(sub)
    out = {
        "rank": sub.rank,
        "primitive": sub.primitive,
        "basis": encode_matrix(sub.basis) if sub.rank else [],
        "restricted_gram": encode_matrix(form.gram),
        "signature": list(signature(form)) if sub.rank else [0, 0, 0],
        "determinant": determinant(form),
        "even": is_even(form),
    }
    _emit(out, args.format)
    return EXIT_OK


def _cmd_realize_k3(args, cfg):
    group = group_from_json(_read_json_arg(args.group))
    report = decide_realization(group, method=args.plane_method,
                                budget=args.budget, tol=args.tolerance,
                                seed=args.seed)
    _emit(report_to_json(report), args.format)
    verdict = report.complex_verdict if args.mode == "complex" else report.metric_verdict
    return EXIT_OK if verdict else EXIT_NEGATIVE


def _cmd_realize_enriques(args, cfg):
    group = group_from_json(_read_json_arg(args.group))
    report = enriques_realizable(group, method=args.plane_method,
                                 budget=args.budget, seed=args.seed)
    _emit(enriques_report_to_json(report), args.format)
    verdict = report.complex_verdict if args.mode == "complex" else report.metric_verdict
    return EXIT_OK if verdict else EXIT_NEGATIVE


def _cmd_lift(args, cfg):
    obj = _read_json_arg(args.group)
    if "generators" in obj:
        group = group_from_json(obj)
        lifted = lift_group(group, cap=args.order_cap)
        out = {
            "downstairs_order": group.order,
            "lifted_order": lifted.order,
            "generators": [encode_matrix(g.matrix) for g in lifted.generators],
        }
    else:
        from .covers import enriques_lattice
        phi = isometry_from_json(obj, enriques_lattice())
        lifted_iso = lift_isometry(phi)
        out = {"matrix": encode_matrix(lifted_iso.matrix)}
    _emit(out, args.format)
    return EXIT_OK


def _cmd_twist(args, cfg):
    lat = lattice_from_json(_read_json_arg(args.lattice))
    vec = tuple(json.loads(args.vector))
    refl = dehn_twist_reflection(lat, vec)
    _emit({"matrix": encode_matrix(refl.matrix)}, args.format)
    return EXIT_OK


def _cmd_examples(args, cfg):
    names = fixture_names() if args.all or not args.names else args.names
    results = [run_fixture(n) for n in names]
    for r in results:
        line = f"{'PASS' if r.passed else 'FAIL'} {r.name}"
        print(line, file=sys.stderr)
        for d in r.details:
            print("     " + d, file=sys.stderr)
    _emit({"fixtures": {r.name: r.passed for r in results},
           "all_passed": all(r.passed for r in results)}, args.format)
    return EXIT_OK if all(r.passed for r in results) else EXIT_NEGATIVE


FLAG_DEFAULTS = {
    "config": None,
    "format": "json",
    "budget": None,
    "order_cap": 20160,
    "threads": 1,
    "tolerance": 1e-10,
    "seed": 0,
    "plane_method": "auto",
    "mode": "metric",
}


def _common_flags():
    c = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    c.add_argument("--config", help="optional TOML config; flags win")
    c.add_argument("--format", choices=["json", "table"])
    c.add_argument("--budget", type=int, help="enumeration node cap")
    c.add_argument("--order-cap", type=int, dest="order_cap",
                   help="group closure order cap")
    c.add_argument("--threads", type=int,
                   help="internal parallelism bound (output is identical "
                        "for any value)")
    c.add_argument("--tolerance", type=float,
                   help="invariance residual for the numeric plane fallback")
    c.add_argument("--seed", type=int,
                   help="seed for the numeric plane fallback")
    c.add_argument("--plane-method", choices=["auto", "isotypic", "karcher"],
                   dest="plane_method")
    c.add_argument("--mode", choices=["metric", "complex"],
                   help="which verdict drives the exit code")
    return c


def build_parser():
    common = _common_flags()
    p = argparse.ArgumentParser(
        prog="enriqueslab",
        parents=[common],
        description="Exact lattice computations and Nielsen-realization "
                    "verdicts for covering-lattice models.")
    p.add_argument("--version", action="version", version=__version__)

    sub = p.add_subparsers(dest="command", required=True,
                           parser_class=lambda **kw: argparse.ArgumentParser(
                               parents=[common], **kw))

    sp = sub.add_parser("lattice", help="invariants of a lattice")
    sp.add_argument("input", help="lattice JSON, file path, or registry name")
    sp.set_defaults(func=_cmd_lattice)

    sp = sub.add_parser("invariant", help="fixed sublattice of a finite group")
    sp.add_argument("--group", required=True)
    sp.set_defaults(func=_cmd_invariant)

    sp = sub.add_parser("realize-k3", help="realization verdict on a "
                                           "signature-(3, q) lattice")
    sp.add_argument("--group", required=True)
    sp.set_defaults(func=_cmd_realize_k3)

    sp = sub.add_parser("realize-enriques", help="realization verdict on the "
                                                 "rank-10 quotient lattice")
    sp.add_argument("--group", required=True)
    sp.set_defaults(func=_cmd_realize_enriques)

    sp = sub.add_parser("lift", help="lift an isometry or group through the cover")
    sp.add_argument("--group", required=True,
                    help="isometry or group JSON on the quotient lattice")
    sp.set_defaults(func=_cmd_lift)

    sp = sub.add_parser("twist", help="reflection matrix of a (-2)-vector")
    sp.add_argument("--lattice", required=True)
    sp.add_argument("--vector", required=True, help="JSON list of coordinates")
    sp.set_defaults(func=_cmd_twist)

    sp = sub.add_parser("examples", help="run golden fixtures")
    sp.add_argument("--all", action="store_true")
    sp.add_argument("names", nargs="*")
    sp.set_defaults(func=_cmd_examples)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = {}
    try:
        cfg = _load_config(getattr(args, "config", None))
    except (OSError, ValueError) as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_INPUT
    # precedence: explicit flag > config file > built-in default
    for key, default in FLAG_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, cfg.get(key, default))

    if "ENRIQUESLAB_FIXTURES" in cfg and "ENRIQUESLAB_FIXTURES" not in os.environ:
        os.environ["ENRIQUESLAB_FIXTURES"] = str(cfg["ENRIQUESLAB_FIXTURES"])

    try:
        return args.func(args, cfg)
    except (EnumerationBudgetExceeded, OrderCapExceeded) as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except EnriquesLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, json.JSONDecodeError, ValueError, KeyError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
