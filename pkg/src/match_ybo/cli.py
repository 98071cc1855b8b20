"""Command-line surface.

All machine output is canonical JSON on stdout: sorted keys, compact
separators, ASCII only, rationals as strings.  Exit codes: 0 success,
1 verification or assertion failure, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .classify import classify
from .diagrams import (
    canonical_structure_key,
    configuration_from_json,
    configuration_to_json,
    enumerate_transversal,
    orbit,
)
from .errors import MatchYboError, MalformedInputError, NotASolutionError
from .matchcat import matrix_from_json, matrix_to_json
from .oracle import fibre_report, fibre_summary, parse_fibre_type
from .recipe import Germ, generic_point, germ_from_json, germ_to_json, rec
from .scalars import format_scalar
from .selftest import run_selftest
from .signature import signature_check, signature_formula, signature_notation
from .ybe import constraint_residuals, is_solution_by_subsets, ybe_residual_direct


def emit(obj):
    print(json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True))


def _load(path):
    with open(path, "r", encoding="ascii") as fh:
        return json.load(fh)


def _seed(args):
    if args.seed is not None:
        return args.seed
    env = os.environ.get("MATCH_YBO_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError as exc:
        raise MalformedInputError(f"MATCH_YBO_SEED={env!r} is not an integer") from exc


def _config_text(config):
    bits = []
    for nat in config.nations:
        cs = []
        for county in nat.counties:
            mark = "'" if county.part == "second" else ""
            cs.append("".join(str(v) for v in county.vertices) + mark)
        bits.append(" ".join(cs))
    return " | ".join(bits)


def cmd_enumerate(args):
    configs = list(enumerate_transversal(args.n))
    if args.format == "text":
        for i, c in enumerate(configs, start=1):
            print(f"{i}: {_config_text(c)}")
        print(f"T_{args.n} = {len(configs)}")
    else:
        emit({
            "n": args.n,
            "count": len(configs),
            "elements": [configuration_to_json(c) for c in configs],
        })
    return 0


def _load_germ(path, seed):
    data = _load(path)
    if "alpha" in data:
        return germ_from_json(data)
    config = configuration_from_json(data)
    return Germ(config, generic_point(config, seed=seed))


def cmd_build(args):
    germ = _load_germ(args.germ, _seed(args))
    emit(matrix_to_json(rec(germ)))
    return 0


_METHODS = {
    "direct": ybe_residual_direct,
    "constraints": constraint_residuals,
    "subsets": is_solution_by_subsets,
}


def _witness_json(w, source):
    if source == "constraints":
        letters, perm, relation, value = w
        return {
            "letters": list(letters),
            "perm": list(perm),
            "relation": relation,
            "value": format_scalar(value),
        }
    row, col, value = w
    return {"row": list(row), "col": list(col), "value": format_scalar(value)}


def cmd_verify(args):
    m = matrix_from_json(_load(args.matrix))
    if args.method == "all":
        reports = [fn(m) for fn in _METHODS.values()]
        verdicts = {r.zero for r in reports}
        if len(verdicts) != 1:
            emit({"error": "methods disagree; this is a bug"})
            return 1
        rep = next(r for r in reports if not r.zero) if not verdicts.pop() else reports[0]
        method = "all"
    else:
        rep = _METHODS[args.method](m)
        method = args.method
    emit({
        "solution": rep.zero,
        "method": method,
        "witnesses": [_witness_json(w, rep.source) for w in rep.witnesses],
    })
    return 0 if rep.zero else 1


def cmd_classify(args):
    m = matrix_from_json(_load(args.matrix))
    germ = classify(m)
    emit(germ_to_json(germ))
    return 0


def cmd_signature(args):
    if args.germ:
        germ = germ_from_json(_load(args.germ))
        rep = signature_check(germ)
        emit({
            "formula": list(rep.formula),
            "sampled": list(rep.sampled) if rep.sampled is not None else None,
            "matches": rep.matches,
            "notation": signature_notation(germ.config),
        })
        return 0 if rep.matches else 1
    config = configuration_from_json(_load(args.config))
    emit({
        "formula": list(signature_formula(config)),
        "notation": signature_notation(config),
    })
    return 0


def cmd_orbit(args):
    config = configuration_from_json(_load(args.config))
    elements = sorted(orbit(config, include_flip=args.flip), key=canonical_structure_key)
    emit({
        "size": len(elements),
        "flip": args.flip,
        "elements": [configuration_to_json(c) for c in elements],
    })
    return 0


def cmd_fibre(args):
    if args.type:
        emit(fibre_summary(parse_fibre_type(args.type), args.prime))
    else:
        emit(fibre_report(args.prime, jobs=args.jobs))
    return 0


def cmd_selftest(args):
    results = run_selftest(args.level)
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        print(f"{status} {r.name}: {r.detail} ({r.seconds:.1f}s)")
    return 0 if all(r.ok for r in results) else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="match-ybo",
        description="charge-conserving Yang-Baxter operators from matching data",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list the transversal T_N")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("build", help="matrix of a germ (generic point when params omitted)")
    p.add_argument("--germ", required=True, help="germ or configuration JSON file")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="check the braid relation")
    p.add_argument("--matrix", required=True)
    p.add_argument("--method", choices=("direct", "constraints", "subsets", "all"), default="all")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="recover the germ of a solution")
    p.add_argument("--matrix", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("signature", help="degeneracy partition, formula and sample")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--germ")
    group.add_argument("--config")
    p.set_defaults(func=cmd_signature)

    p = sub.add_parser("orbit", help="relabelling orbit of a configuration")
    p.add_argument("--config", required=True)
    p.add_argument("--flip", action="store_true")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("fibre", help="finite-field fibre census")
    p.add_argument("--type", default=None, help='e.g. "0,+,+" (omit for the full report)')
    p.add_argument("--prime", type=int, default=11)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_fibre)

    p = sub.add_parser("selftest", help="run the acceptance checks")
    p.add_argument("--level", choices=("quick", "full"), default="quick")
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NotASolutionError as exc:
        emit({"error": str(exc)})
        return 1
    except (MalformedInputError, json.JSONDecodeError) as exc:
        emit({"error": str(exc)})
        return 2
    except MatchYboError as exc:
        emit({"error": str(exc)})
        return 1
    except OSError as exc:
        emit({"error": str(exc)})
        return 2


if __name__ == "__main__":
    sys.exit(main())
