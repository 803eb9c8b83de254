"""Command-line interface: ``structramsey <group> <command> ...``.

Exit status is 0 when everything was computed, 2 when a bounded search came
back with NONE-UP-TO-BOUND (or an experiment failed), 1 on errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import io as sio
from .circle import CirclePlacement, Family, format_turn, realize
from .classes import (
    AgeCatalog,
    CatalogIntegrityError,
    Kind,
    OutOfRange,
    age_membership,
    age_subset,
    check_jep,
    explicit_spec,
)
from .expansions import (
    TRANSFORMS,
    TransformError,
    check_expansion_property,
    ep_witness_for_expansion,
    list_expansions,
)
from .flow import FlowError, FlowPoint, Variant, interval_from_basic_open, trace
from .ramsey import ArrowQuery, ResourceLimit, check_arrow, ramsey_degree_report, search_arrow_witness
from .registry import PAIRS, catalog, family_names, standard_pair
from .structures import Structure, StructureError

SCHEMA_VERSION = 1
EXIT_OK, EXIT_ERROR, EXIT_NONE = 0, 1, 2


class Outcome:
    def __init__(self, result: dict, none_found: bool = False):
        self.result = result
        self.none_found = none_found


def _structure_json(s: Structure | None):
    return None if s is None else sio.to_json(s)


def _cert_json(cert) -> dict:
    return {
        "outcome": cert.kind.value,
        "bound": cert.bound,
        "witness": _structure_json(cert.witness),
        "embeddings": [list(m.images) for m in cert.embeddings],
        "refutations": [{"b": sio.to_json(b), "b_star": sio.to_json(bs)} for b, bs in cert.refutations],
    }


def _points(text: str) -> CirclePlacement:
    return CirclePlacement.of(p for p in text.split(",") if p.strip())


def _catalog(args, family: str, bound: int) -> AgeCatalog:
    """A named family, or a catalog file written by ``age generate --out``."""
    if Path(family).is_file():
        name, file_bound, members = sio.loads_catalog(Path(family).read_text())
        spec = explicit_spec(name, members)
        return AgeCatalog(spec, min(bound, file_bound) if bound else file_bound, preloaded=members)
    return catalog(family, bound, args.cache_dir)


# --- command handlers -------------------------------------------------------------

def cmd_age_generate(args) -> Outcome:
    cat = catalog(args.family, args.bound, args.cache_dir)
    members = list(cat.iter_members())
    if args.out:
        Path(args.out).write_text(sio.dumps_catalog(cat.spec.name, args.bound, members))
    counts = {n: len(cat.of_size(n)) for n in range(1, args.bound + 1)}
    return Outcome({"family": args.family, "classes": len(members), "by_size": counts,
                    "members": [sio.to_json(s) for s in members] if args.list else None})


def cmd_age_member(args) -> Outcome:
    cat = _catalog(args, args.family, args.bound)
    return Outcome({"member": age_membership(cat, sio.read_structure(args.inp))})


def cmd_age_jep(args) -> Outcome:
    cat = _catalog(args, args.family, args.bound)
    cert = check_jep(cat, sio.read_structure(args.a), sio.read_structure(args.b), args.bound)
    return Outcome(_cert_json(cert), not cert.found)


def cmd_age_subset(args) -> Outcome:
    res = age_subset(_catalog(args, args.family, args.bound), _catalog(args, args.other, args.bound), args.bound)
    return Outcome({"holds": res.holds, "counterexample": _structure_json(res.counterexample)})


def _arrow_json(cert) -> dict:
    bad = cert.bad_coloring
    return {"holds": cert.holds, "vacuous": cert.vacuous, "explored": cert.explored, "pruned": cert.pruned,
            "bad_coloring": None if bad is None else
            [{"copy": list(c), "color": v} for c, v in zip(bad.domain, bad.values)]}


def cmd_arrow_check(args) -> Outcome:
    q = ArrowQuery(sio.read_structure(args.c), sio.read_structure(args.b), sio.read_structure(args.a), args.k, args.l)
    return Outcome(_arrow_json(check_arrow(q, node_limit=args.node_limit, copy_limit=args.copy_limit)))


def cmd_arrow_search(args) -> Outcome:
    cat = _catalog(args, args.catalog, args.max_size)
    res = search_arrow_witness(cat, sio.read_structure(args.b), sio.read_structure(args.a), args.k, args.l,
                               args.max_size, node_limit=args.node_limit, copy_limit=args.copy_limit)
    return Outcome({"outcome": "FOUND" if res.witness else Kind.NONE.value, "witness": _structure_json(res.witness),
                    "checked": len(res.checked), "skipped": [msg for _, msg in res.skipped]},
                   res.witness is None)


def cmd_degree_report(args) -> Outcome:
    pair = standard_pair(args.pair, args.c_bound, args.cache_dir)
    rep = ramsey_degree_report(pair.base_cat, pair, sio.read_structure(args.a), args.b_bound, args.c_bound)
    return Outcome({"lower": rep.lower, "upper": rep.upper, "exact": rep.exact, "verified": rep.verify(),
                    "b": _structure_json(rep.b), "c_bound": rep.c_bound, "b_bound": rep.b_bound,
                    "instances": len(rep.instances)})


def cmd_expand_count(args) -> Outcome:
    a = sio.read_structure(args.inp)
    pair = standard_pair(args.pair, max(args.bound, a.size), args.cache_dir)
    count = list_expansions(pair, a)
    return Outcome({"t": count.count, "representatives": [sio.to_json(s) for s in count.representatives]})


def cmd_expand_ep(args) -> Outcome:
    pair = standard_pair(args.pair, args.bound, args.cache_dir)
    target = sio.read_structure(args.target)
    if target.signature == pair.star_cat.signature and target.signature != pair.base_cat.signature:
        cert = ep_witness_for_expansion(pair, target, args.bound)
    else:
        cert = check_expansion_property(pair, target, args.bound)
    return Outcome(_cert_json(cert), not cert.found)


def cmd_expand_transform(args) -> Outcome:
    out = TRANSFORMS[args.rule](sio.read_structure(args.inp))
    return Outcome({"rule": args.rule, "result": sio.to_json(out)})


def cmd_circle_build(args) -> Outcome:
    fam = Family(args.family)
    p = _points(args.points)
    s = fam.structure(p)
    return Outcome({"points": [format_turn(x) for x in p.points], "structure": sio.to_json(s)})


def cmd_circle_realize(args) -> Outcome:
    p = realize(Family(args.family), sio.read_structure(args.inp))
    if p is None:
        return Outcome({"outcome": "NONE", "points": None})
    return Outcome({"outcome": "FOUND", "points": [format_turn(x) for x in p.points]})


def cmd_flow_code(args) -> Outcome:
    variant = Variant(args.variant)
    t = FlowPoint.parse(args.point, variant)
    tr = trace(t, _points(args.F))
    return Outcome({"point": str(t), "variant": variant.value, **tr.as_dict(variant)})


def cmd_flow_interval(args) -> Outcome:
    t = FlowPoint.parse(args.point, Variant.HAT)
    iv = interval_from_basic_open(_points(args.F), t)
    return Outcome({"point": str(t), "alpha": format_turn(iv.alpha), "beta": format_turn(iv.beta)})


def cmd_experiment(args) -> Outcome:
    from .experiments import EXPERIMENTS, run_experiment

    names = list(EXPERIMENTS) if args.name == "all" else [args.name]
    reports = [run_experiment(n, args.seed) for n in names]
    lines = [r.line() for r in reports]
    for line in lines:
        logging.getLogger(__name__).info(line)
    return Outcome({"criteria": [r.to_json() for r in reports], "summary": lines},
                   not all(r.passed for r in reports))


# --- parser -----------------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=["json", "text"], default=argparse.SUPPRESS)
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for any randomness (default 0)")
    p.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                   help="worker cap; searches currently run in one thread")
    p.add_argument("--cache-dir", default=argparse.SUPPRESS,
                   help=f"catalog cache directory (default: ${sio.CACHE_ENV})")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="structramsey", parents=[common],
                                     description="Finite Ramsey and expansion computations on circular structures.")
    groups = parser.add_subparsers(dest="group", required=True)

    def command(group, name, handler, help=None):
        p = group.add_parser(name, parents=[common], help=help)
        p.set_defaults(handler=handler)
        return p

    age = groups.add_parser("age", help="catalogs and closure properties").add_subparsers(dest="cmd", required=True)
    p = command(age, "generate", cmd_age_generate)
    p.add_argument("--family", required=True, help=", ".join(family_names()))
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--list", action="store_true", help="include every member in the report")
    p = command(age, "member", cmd_age_member)
    p.add_argument("--family", required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--in", dest="inp", required=True)
    p = command(age, "jep", cmd_age_jep)
    p.add_argument("--family", required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p = command(age, "subset", cmd_age_subset)
    p.add_argument("--family", required=True)
    p.add_argument("--other", required=True)
    p.add_argument("--bound", type=int, required=True)

    arrow = groups.add_parser("arrow", help="arrow relations").add_subparsers(dest="cmd", required=True)
    p = command(arrow, "check", cmd_arrow_check)
    for flag in ("--c", "--b", "--a"):
        p.add_argument(flag, required=True)
    p = command(arrow, "search", cmd_arrow_search)
    p.add_argument("--catalog", required=True, help="family name or catalog file")
    p.add_argument("--b", required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--max-size", type=int, required=True)
    for p in (arrow.choices["check"], arrow.choices["search"]):
        p.add_argument("-k", type=int, required=True)
        p.add_argument("-l", type=int, required=True)
        p.add_argument("--node-limit", type=int, default=10_000_000)
        p.add_argument("--copy-limit", type=int, default=40)

    degree = groups.add_parser("degree", help="Ramsey degree brackets").add_subparsers(dest="cmd", required=True)
    p = command(degree, "report", cmd_degree_report)
    p.add_argument("--pair", required=True, choices=sorted(PAIRS))
    p.add_argument("--a", required=True)
    p.add_argument("--b-bound", type=int, default=3)
    p.add_argument("--c-bound", type=int, default=6)

    expand = groups.add_parser("expand", help="expansions").add_subparsers(dest="cmd", required=True)
    p = command(expand, "count", cmd_expand_count)
    p.add_argument("--pair", required=True, choices=sorted(PAIRS))
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--bound", type=int, default=1)
    p = command(expand, "ep", cmd_expand_ep)
    p.add_argument("--pair", required=True, choices=sorted(PAIRS))
    p.add_argument("--target", required=True)
    p.add_argument("--bound", type=int, required=True)
    p = command(expand, "transform", cmd_expand_transform)
    p.add_argument("--rule", required=True, choices=sorted(TRANSFORMS))
    p.add_argument("--in", dest="inp", required=True)

    circle = groups.add_parser("circle", help="circle placements").add_subparsers(dest="cmd", required=True)
    p = command(circle, "build", cmd_circle_build)
    p.add_argument("--family", required=True, choices=[f.value for f in Family])
    p.add_argument("--points", required=True)
    p = command(circle, "realize", cmd_circle_realize)
    p.add_argument("--family", required=True, choices=[f.value for f in Family])
    p.add_argument("--in", dest="inp", required=True)

    flow = groups.add_parser("flow", help="doubled-circle coding").add_subparsers(dest="cmd", required=True)
    p = command(flow, "code", cmd_flow_code)
    p.add_argument("--variant", choices=[v.value for v in Variant], default="hat")
    p.add_argument("--point", required=True, help="p/q or p/q:label")
    p.add_argument("--F", required=True)
    p = command(flow, "interval", cmd_flow_interval)
    p.add_argument("--point", required=True)
    p.add_argument("--F", required=True)

    p = groups.add_parser("experiment", parents=[common], help="acceptance computations")
    p.add_argument("name", help="experiment name or 'all'")
    p.set_defaults(handler=cmd_experiment)
    return parser


def _params(args) -> dict:
    skip = {"handler", "format", "cache_dir", "threads"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _text(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(value, dict) and set(value) == {"signature", "size", "relations"}:
        return [pad + line for line in sio.dumps(sio.from_json(value)).splitlines()]
    if isinstance(value, dict):
        lines = []
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines += _text(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {v}")
        return lines
    if isinstance(value, list):
        return [line for v in value for line in _text(v, indent)]
    return [f"{pad}{value}"]


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.format = getattr(args, "format", "json")
    args.seed = getattr(args, "seed", 0)
    args.threads = getattr(args, "threads", 1)
    args.cache_dir = getattr(args, "cache_dir", None) or os.environ.get(sio.CACHE_ENV)
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        outcome = args.handler(args)
    except (StructureError, ValueError, KeyError, OSError, ResourceLimit, TransformError,
            FlowError, OutOfRange, CatalogIntegrityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    report = {"schema": SCHEMA_VERSION, "command": f"{args.group} {getattr(args, 'cmd', '') or ''}".strip(),
              "params": _params(args), "result": outcome.result}
    if args.format == "json":
        print(json.dumps(report, indent=2, sort_keys=True, default=str))
    else:
        print("\n".join(_text(outcome.result)))
    return EXIT_NONE if outcome.none_found else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
