"""Command-line front end.

Exit status is 0 on success. Failures print one line to stderr of the form
``error: <category>: <message>`` with categories ``usage`` (2), ``format`` (3),
``value`` (4) and ``certificate`` (5, a verified rank exceeded its guarantee).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import monoid
from .formats import FAMILIES, InstanceFormatError, dump_instance, family_instance, load_instance
from .instances import Instance, random_instance
from .monoid import PrimitiveTuple
from .solver import SOLVERS
from .verify import (MAX_ADVERSARY_M, adversary_membership_run, adversary_run, certify_rank,
                     exhaustive_membership, make_membership_budget_algorithm,
                     make_query_budget_algorithm)

EXIT_CODES = {"usage": 2, "format": 3, "value": 4, "certificate": 5}


class CliError(Exception):
    def __init__(self, category: str, message: str):
        super().__init__(message)
        self.category = category


@dataclass
class RunConfig:
    subcommand: str
    instance: Optional[str] = None
    family: Optional[str] = None
    m: Optional[int] = None
    witness: Optional[int] = None
    tuple: Optional[tuple[int, ...]] = None
    solver: str = "main"
    verify: bool = False
    format: str = "text"
    seed: int = 0

    def __post_init__(self):
        if self.instance and self.family:
            raise CliError("usage", "--instance and --family are mutually exclusive")

    def load(self) -> Instance:
        if self.instance:
            inst = load_instance(self.instance)
        elif self.family:
            if self.m is None:
                raise CliError("usage", "--family requires --m")
            try:
                inst = family_instance(self.family, self.m, self.witness)
            except InstanceFormatError:
                raise
            except ValueError as exc:
                raise CliError("value", str(exc)) from exc
        else:
            raise CliError("usage", "one of --instance or --family is required")
        if self.tuple is not None:
            a = PrimitiveTuple(self.tuple)
            if set(inst.weights.weights) - set(a.entries):
                raise CliError("value", f"tuple {a} does not cover the instance weights")
        return inst


def _fmt_set(values) -> str:
    return "{" + ",".join(map(str, sorted(values))) + "}"


def _emit(args, payload: dict, text_lines: Sequence[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print("\n".join(text_lines))


def cmd_frobenius(args) -> int:
    a = PrimitiveTuple(args.a)
    data = monoid.gap_data(a)
    schur = monoid.schur_bound(a)
    payload = {"tuple": list(a.entries), "frobenius": data.frobenius,
               "genus": data.genus, "gaps": sorted(data.gaps), "schur_bound": schur}
    _emit(args, payload, [
        f"a = {a}",
        f"F = {data.frobenius}",
        f"|G| = {data.genus}",
        f"G = {_fmt_set(data.gaps)}",
        f"schur_bound = {schur if schur is not None else 'n/a'}",
    ])
    return 0


def cmd_gapset(args) -> int:
    a = PrimitiveTuple(args.a)
    data = monoid.gap_data(a, args.bound)
    payload = {"tuple": list(a.entries), "bound": data.bound,
               "reachable": sorted(data.reachable), "gaps": sorted(data.gaps),
               "frobenius": data.frobenius}
    lines = [f"a = {a}", f"bound = {data.bound}", f"M(a) on [0,{data.bound}] = {_fmt_set(data.reachable)}",
             f"G = {_fmt_set(data.gaps)}", f"F = {data.frobenius}"]
    if args.lam is not None:
        lam = tuple(args.lam)
        restricted = monoid.restricted_monoid(a, lam)
        defect = monoid.saturation_defect(a, lam)
        payload.update({"lam": list(lam), "restricted": sorted(restricted),
                        "saturated": not defect, "missing": sorted(defect)})
        lines += [f"lam = {lam}", f"M(a,lam) = {_fmt_set(restricted)}",
                  f"saturated = {not defect}", f"missing = {_fmt_set(defect)}"]
    _emit(args, payload, lines)
    return 0


def _config(args) -> RunConfig:
    return RunConfig(args.command, instance=args.instance, family=args.family, m=args.m,
                     witness=getattr(args, "witness", None),
                     tuple=tuple(args.tuple) if args.tuple else None,
                     solver=args.solver, verify=getattr(args, "verify", False),
                     format=args.format, seed=getattr(args, "seed", 0))


def _solve(config: RunConfig, inst: Instance):
    lin, cmp, _ = inst.oracles()
    a = PrimitiveTuple(config.tuple) if config.tuple else inst.weights.tuple
    return SOLVERS[config.solver](lin, inst.weights, cmp, a)


def cmd_solve(args) -> int:
    config = _config(args)
    inst = config.load()
    report = _solve(config, inst)
    payload = {"instance": inst.name, "report": report.to_dict()}
    lines = [f"instance = {inst.name}", f"solver = {report.solver}",
             f"support = {list(report.solution.support())}", f"weight = {report.weight}",
             f"guarantee = {report.guarantee}"]
    lines += [f"{k} = {v}" for k, v in report.stats.snapshot().items()]
    status = 0
    if config.verify:
        cert = certify_rank(report, inst)
        payload["certificate"] = cert.to_dict()
        lines += [f"rank = {cert.rank}", f"better_weights = {list(cert.better_weights)}",
                  f"certified = {cert.ok}"]
        if not cert.ok and report.solver != "naive":
            status = EXIT_CODES["certificate"]
    _emit(args, payload, lines)
    return status


def cmd_verify(args) -> int:
    config = _config(args)
    if config.instance or config.family:
        instances = [config.load()]
    else:
        if not args.tuple:
            raise CliError("usage", "verify needs --instance, --family, or --tuple for a random sweep")
        rng = np.random.default_rng(config.seed)
        instances = [random_instance(rng, args.tuple, args.n) for _ in range(args.count)]
    certs = []
    for inst in instances:
        certs.append(certify_rank(_solve(config, inst), inst))
    ranks = [c.rank for c in certs]
    failures = [c for c in certs if not c.ok]
    payload = {"solver": config.solver, "count": len(certs), "max_rank": max(ranks),
               "guarantee": certs[0].guarantee, "failures": len(failures),
               "certificates": [c.to_dict() for c in certs]}
    lines = [f"solver = {config.solver}", f"instances = {len(certs)}",
             f"guarantee = {certs[0].guarantee}", f"max_rank = {max(ranks)}",
             f"failures = {len(failures)}"]
    _emit(args, payload, lines)
    if failures and config.solver != "naive":
        return EXIT_CODES["certificate"]
    return 0


def _linear_algorithm(name: str):
    if name.startswith("budget:"):
        return make_query_budget_algorithm(int(name.split(":", 1)[1]))
    if name not in SOLVERS:
        raise CliError("usage", f"unknown solver {name!r} for lower_bound adversary")
    solver = SOLVERS[name]
    return lambda oracle, w, cmp: solver(oracle, w, cmp)


def _membership_algorithm(name: str):
    if name == "exhaustive":
        return exhaustive_membership
    if name.startswith("budget:"):
        return make_membership_budget_algorithm(int(name.split(":", 1)[1]))
    raise CliError("usage", f"unknown solver {name!r} for membership adversary")


def cmd_adversary(args) -> int:
    if args.m > MAX_ADVERSARY_M:
        raise CliError("value", f"m={args.m} exceeds enumeration cap m <= {MAX_ADVERSARY_M}")
    if args.family == "lower_bound":
        if args.m < 2:
            raise CliError("value", "lower_bound family requires m >= 2")
        t = adversary_run(_linear_algorithm(args.solver), args.m)
    else:
        t = adversary_membership_run(_membership_algorithm(args.solver), args.m)
    payload = t.to_dict()
    payload["solver"] = args.solver
    _emit(args, payload, [
        f"family = {t.family}", f"m = {t.m}", f"solver = {args.solver}",
        f"queries = {t.query_count}", f"threshold = {t.threshold}",
        f"witnesses = {t.witnesses}", f"surviving_y = {t.surviving_y}",
        f"fooled = {t.fooled}",
    ])
    return 0


def cmd_gen(args) -> int:
    rng = np.random.default_rng(args.seed)
    inst = random_instance(rng, args.tuple, args.n, args.generators)
    text = dump_instance(inst, args.out)
    if args.out is None:
        print(text)
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("usage", message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="wisopt", description="Nonlinear optimization over weighted independence systems")
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("frobenius", help="Frobenius number and gap set of a tuple")
    p.add_argument("a", type=int, nargs="+")
    fmt(p)
    p.set_defaults(func=cmd_frobenius)

    p = sub.add_parser("gapset", help="monoid membership, optionally restricted by --lam")
    p.add_argument("a", type=int, nargs="+")
    p.add_argument("--bound", type=int)
    p.add_argument("--lam", type=int, nargs="+")
    fmt(p)
    p.set_defaults(func=cmd_gapset)

    def source(p):
        p.add_argument("--instance")
        p.add_argument("--family", choices=FAMILIES)
        p.add_argument("--m", type=int)
        p.add_argument("--witness", type=int, help="load S_y for this witness index")
        p.add_argument("--tuple", type=int, nargs="+")
        p.add_argument("--solver", choices=tuple(SOLVERS), default="main")
        fmt(p)

    p = sub.add_parser("solve", help="run a solver on an instance")
    source(p)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="certify solver ranks by brute force")
    source(p)
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("adversary", help="run an algorithm against a lower-bound adversary")
    p.add_argument("--family", choices=("lower_bound", "membership"), required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--solver", default="main",
                   help="main|naive|quasiconvex|budget:K (lower_bound); exhaustive|budget:K (membership)")
    fmt(p)
    p.set_defaults(func=cmd_adversary)

    p = sub.add_parser("gen", help="emit a random instance file")
    p.add_argument("--tuple", type=int, nargs="+", required=True)
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--generators", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except CliError as exc:
        category, message = exc.category, str(exc)
    except InstanceFormatError as exc:
        category, message = "format", str(exc)
    except (ValueError, IndexError) as exc:
        category, message = "value", str(exc)
    print(f"error: {category}: {message}", file=sys.stderr)
    return EXIT_CODES[category]


if __name__ == "__main__":
    sys.exit(main())
