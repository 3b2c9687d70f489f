"""Command-line front end.

Subcommands cover every subsystem; output is JSON lines by default so
pipelines compose (``--format pretty`` for humans, ``--format dot`` for the
1-skeleton).  Exit codes: 0 success / empty report, 1 verification failure
(with a JSON report on stdout), 2 usage or resource errors.  Identical
(argv, seed) pairs produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import decompose as dc
from . import homology as hm
from . import kanext as kx
from . import lifting as lf
from . import marked as mk
from . import nucat as nc
from . import ordinal as od
from . import sset as ss
from .errors import BudgetError

DEFAULT_BUDGET = int(os.environ.get("SEMIMARK_BUDGET", "1000000"))


def _emit(args, payload) -> None:
    if args.format == "pretty":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))


def _read_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _standard_object(name: str, n: int, sharp_flag: bool) -> mk.MarkedSSet:
    builders = {
        "standard": ss.standard,
        "boundary": ss.boundary,
        "spine": ss.spine,
    }
    if name not in builders:
        raise ValueError(f"unknown object kind {name!r}; choose from {sorted(builders)}")
    space = builders[name](n)
    return mk.sharp(space) if sharp_flag else mk.flat(space)


# -- subcommand handlers -------------------------------------------------------


def cmd_build(args) -> int:
    if args.kind == "horn":
        space = ss.horn(args.n, args.i if args.i is not None else 0)
        obj = mk.sharp(space) if args.sharp else mk.flat(space)
    else:
        obj = _standard_object(args.kind, args.n, args.sharp)
    if args.format == "dot":
        print(ss.to_dot(obj.space))
        return 0
    _emit(args, mk.to_json(obj))
    return 0


def cmd_tensor(args) -> int:
    x = _standard_object("standard", args.n, args.sharp_left)
    y = _standard_object("standard", args.m, args.sharp_right)
    product = mk.tensor(x, y, budget=args.budget)
    if args.format == "dot":
        print(ss.to_dot(product.space))
        return 0
    _emit(args, mk.to_json(product))
    return 0


def cmd_decompose(args) -> int:
    if args.what == "spread":
        cert = dc.spread_decomposition(args.a, args.b, args.c)
    elif args.what == "shuffle":
        cert = dc.shuffle_filtration(args.a, args.b, args.c)
    else:
        raise ValueError(f"unknown decomposition {args.what!r}")
    _emit(args, dc.certificate_to_json(cert))
    return 0


def cmd_verify(args) -> int:
    cert = dc.certificate_from_json(_read_json(args.file))
    report = dc.verify(cert)
    _emit(args, {"ok": not report, "report": report, "steps": len(cert.steps)})
    return 0 if not report else 1


def cmd_lift(args) -> int:
    left = _read_json(args.left)
    right = _read_json(args.right)

    def load_map(data):
        src = mk.from_json(data["source"])
        tgt = mk.from_json(data["target"])
        return mk.MarkedMap(src, tgt, dict(data["mapping"]))

    g, p = load_map(left), load_map(right)
    result = lf.has_rlp(p, g, budget=args.budget)
    payload = {
        "ok": result.ok,
        "squares": result.squares,
        "lift_counts": list(result.lift_counts),
    }
    if result.counterexample is not None:
        problem = result.counterexample
        payload["counterexample"] = {
            "top": {ss.idkey(k): ss.idkey(v) for k, v in sorted(problem.top.mapping.items(), key=lambda kv: ss.idkey(kv[0]))},
            "bottom": {ss.idkey(k): ss.idkey(v) for k, v in sorted(problem.bottom.mapping.items(), key=lambda kv: ss.idkey(kv[0]))},
        }
    _emit(args, payload)
    return 0 if result.ok else 1


def cmd_cat(args) -> int:
    if args.action == "corpus":
        count = 0
        for cat in nc.enumerate_nucats(args.max_obj, args.max_hom):
            count += 1
            if args.list:
                _emit(args, nc.to_json(cat))
        _emit(args, {"count": count, "max_obj": args.max_obj, "max_hom": args.max_hom})
        return 0
    cat = nc.from_json(_read_json(args.file))
    if args.action == "check":
        report = nc.validate(cat)
        _emit(args, {"ok": not report, "report": report})
        return 0 if not report else 1
    if args.action == "nerve":
        x = nc.marked_nerve(cat, args.depth, args.marking)
        _emit(args, mk.to_json(x))
        return 0
    if args.action == "analyze":
        _emit(
            args,
            {
                "objects": list(cat.objects),
                "invertibles": sorted(nc.invertibles(cat)),
                "quasi_units": sorted(nc.quasi_units(cat)),
                "quasi_unital": nc.is_quasi_unital(cat),
                "qu_inv_report": nc.check_l_qu_inv(cat),
            },
        )
        return 0
    raise ValueError(f"unknown cat action {args.action!r}")


def cmd_kan(args) -> int:
    cat = nc.from_json(_read_json(args.cat))
    if args.action == "counit":
        report = kx.verify_counit_gaunt(cat, args.n, args.mmax)
        _emit(args, {"ok": not report, "report": report, "n": args.n, "mmax": args.mmax})
        return 0 if not report else 1
    if args.action == "rk":
        lazy = kx.LazyNerve(cat, "invertibles")
        level = kx.rk_plus_level(lazy, args.n, args.mmax)
        _emit(
            args,
            {
                "n": args.n,
                "mmax": args.mmax,
                "families": len(level.families),
                "stabilized": level.stabilized,
                "diagnostics": list(level.diagnostics),
            },
        )
        return 0
    raise ValueError(f"unknown kan action {args.action!r}")


def cmd_homology(args) -> int:
    data = _read_json(args.file)
    space = ss.from_json(data)
    profile = hm.homology(space)
    _emit(args, profile.to_json())
    return 0


def cmd_suite(args) -> int:
    from . import suite as suite_mod

    ok = True
    for line in suite_mod.run(quick=not args.full, seed=args.seed, budget=args.budget):
        _emit(args, line)
        ok = ok and line.get("ok", True)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semimark",
        description="finite marked semi-simplicial machinery: tensors, horn decompositions, lifting checks, nerves, homology",
    )
    parser.add_argument("--format", choices=["json", "pretty", "dot"], default="json")
    parser.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="standard complexes, optionally marked")
    p.add_argument("kind", choices=["standard", "boundary", "spine", "horn"])
    p.add_argument("n", type=int)
    p.add_argument("i", type=int, nargs="?", default=None, help="horn vertex")
    flag = p.add_mutually_exclusive_group()
    flag.add_argument("--flat", dest="sharp", action="store_false", default=False)
    flag.add_argument("--sharp", dest="sharp", action="store_true")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("tensor", help="tensor product of two standard simplices")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("--sharp-left", action="store_true")
    p.add_argument("--sharp-right", action="store_true")
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("decompose", help="build a replayable certificate")
    p.add_argument("what", choices=["spread", "shuffle"])
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("c", type=int)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="replay and check a certificate (file or -)")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lift", help="right lifting property of p against g")
    p.add_argument("action", choices=["check"])
    p.add_argument("--left", required=True, help="JSON of the left map g")
    p.add_argument("--right", required=True, help="JSON of the right map p")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("cat", help="finite composition tables")
    p.add_argument("action", choices=["check", "nerve", "analyze", "corpus"])
    p.add_argument("file", nargs="?", help="NuCat JSON")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--marking", default="invertibles")
    p.add_argument("--max-obj", type=int, default=2)
    p.add_argument("--max-hom", type=int, default=2)
    p.add_argument("--list", action="store_true", help="emit each table")
    p.set_defaults(func=cmd_cat)

    p = sub.add_parser("kan", help="relative simplices and the truncated limit")
    p.add_argument("action", choices=["counit", "rk"])
    p.add_argument("--cat", required=True, help="NuCat JSON (a category with identities)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mmax", type=int, required=True)
    p.set_defaults(func=cmd_kan)

    p = sub.add_parser("homology", help="integral homology profile of an object")
    p.add_argument("file")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("suite", help="batch verification driver")
    p.add_argument("--quick", action="store_true", default=True)
    p.add_argument("--full", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_suite)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except BudgetError as exc:
        print(json.dumps({"error": "budget", "stage": exc.stage, "detail": exc.message}))
        return 2
    except (ValueError, KeyError, OSError) as exc:
        print(json.dumps({"error": "input", "detail": str(exc)}))
        return 2


if __name__ == "__main__":
    sys.exit(main())
