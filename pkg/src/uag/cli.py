"""Command-line front end: ``uag <command> --algebra FILE ...``.

Exit codes: 0 success, 1 verification failed, 2 usage or input error,
3 enumeration budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import zoo
from .algebra import (AlgebraError, FiniteAlgebra, SizeError, center, direct_power,
                      direct_product, load_algebra, right_annihilator)
from .constructions import TheoremKind, project_to_factor, verify_theorem
from .solver import DEFAULT_BUDGET, counterexample, solve
from .terms import ParseError, parse_equation, parse_system, print_system

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
COMMANDS = ("solve", "entails", "center", "annihilator", "verify", "chain", "project")


@dataclass
class RunConfig:
    command: str
    algebra: str
    width: int | None = None
    prefix: int | None = None
    system: str | None = None
    text: str | None = None
    equation: str | None = None
    kind: str | None = None
    other: str | None = None
    factor: str = "left"
    format: str = "text"
    budget: int = DEFAULT_BUDGET
    workers: int = 1
    trials: int = 100
    seed: int = 0


class UsageError(Exception):
    pass


def _algebra(ref: str) -> FiniteAlgebra:
    if os.path.exists(ref):
        return load_algebra(ref)
    stem = os.path.splitext(os.path.basename(ref))[0].lower()
    if stem in zoo.NAMES:
        return zoo.load(stem)
    raise UsageError(f"no such algebra file: {ref}")


def _system_text(cfg: RunConfig) -> str:
    if cfg.text is not None:
        return cfg.text
    if cfg.system is None:
        raise UsageError(f"{cfg.command} needs --system FILE or --text TEXT")
    try:
        with open(cfg.system, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read system file: {exc}") from None


def _target(cfg, base):
    return direct_power(base, cfg.width) if cfg.width else base


def _emit(cfg, doc: dict, lines: list[str]):
    if cfg.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        print("\n".join(lines))


def _subset_doc(a, subset):
    return {"algebra": a.name, "role": subset.role, "elements": subset.sorted(),
            "names": [a.element_name(x) for x in subset.sorted()]}


def run(cfg: RunConfig) -> int:
    if cfg.width is not None and cfg.width < 1:
        raise UsageError("--width must be at least 1")
    if cfg.budget < 1:
        raise UsageError("--budget must be at least 1")
    base = _algebra(cfg.algebra)
    cmd = cfg.command

    if cmd in ("solve", "entails"):
        a = _target(cfg, base)
        s = parse_system(_system_text(cfg), a.signature, a)
        if cmd == "solve":
            sols = solve(s, a, cfg.budget, cfg.workers)
            _emit(cfg, sols.to_dict(),
                  [f"{len(sols)} solution(s) over {a.name} in ({', '.join(s.variables)})"]
                  + ["  " + ", ".join(a.element_name(v) for v in row) for row in sols.rows])
            return EXIT_OK
        if cfg.equation is None:
            raise UsageError("entails needs --equation")
        e = parse_equation(cfg.equation, a.signature, a, s.variables)
        bad = counterexample(s, e, a, cfg.budget, cfg.workers)
        doc = {"algebra": a.name, "equation": str(e), "entails": bad is None,
               "counterexample": bad}
        _emit(cfg, doc, [f"entails: {bad is None}"] + ([f"counterexample: {bad}"] if bad else []))
        return EXIT_OK

    if cmd in ("center", "annihilator"):
        a = _target(cfg, base)
        sub = center(a) if cmd == "center" else right_annihilator(a)
        doc = _subset_doc(a, sub)
        _emit(cfg, doc, [f"{sub.role} of {a.name}: {{{', '.join(doc['names'])}}}"])
        return EXIT_OK

    if cmd == "chain":
        if cfg.width is None:
            raise UsageError("chain needs --width")
        report = verify_theorem(TheoremKind.SEMILATTICE, base, cfg.width,
                                budget=cfg.budget, workers=cfg.workers)
        _emit(cfg, report.to_dict(), [f"profile: {report.profile}",
                                      f"minimal equivalent prefix: {report.minimal_prefix}",
                                      f"pass: {report.passed}"])
        return EXIT_OK if report.passed else EXIT_FAIL

    if cmd == "verify":
        if cfg.kind is None:
            raise UsageError("verify needs --kind")
        kind = TheoremKind.parse(cfg.kind)
        if kind is TheoremKind.PRODUCT:
            if cfg.other is None:
                raise UsageError("--kind product needs --other SECOND_FACTOR")
            base = direct_product(base, _algebra(cfg.other))
        elif cfg.width is None:
            raise UsageError("verify needs --width")
        report = verify_theorem(kind, base, cfg.width or 2, cfg.prefix, budget=cfg.budget,
                                workers=cfg.workers, trials=cfg.trials, seed=cfg.seed)
        lines = [f"{report.kind} on {report.base}, width {report.width}, prefix {report.prefix}"]
        if report.failed_hypothesis:
            lines.append(f"hypothesis {report.failed_hypothesis} failed")
        for key in ("inclusion", "prefix_entails_target", "profile", "minimal_prefix"):
            if getattr(report, key) is not None:
                lines.append(f"{key}: {getattr(report, key)}")
        if report.witness:
            w = report.witness
            lines.append(f"witness x={w['x']} y={w['y']} violates target: {w['violates_target']}")
        lines.append(f"pass: {report.passed}")
        _emit(cfg, report.to_dict(), lines)
        return EXIT_OK if report.passed else EXIT_FAIL

    if cmd == "project":
        if cfg.other is None:
            raise UsageError("project needs --other SECOND_FACTOR")
        c = direct_product(base, _algebra(cfg.other))
        s = parse_system(_system_text(cfg), c.signature, c)
        p = project_to_factor(s, c, cfg.factor)
        text = print_system(p)
        _emit(cfg, {"algebra": c.components[0 if cfg.factor == "left" else 1].name,
                    "system": text}, [text])
        return EXIT_OK

    raise UsageError(f"unknown command {cmd!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="uag", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--algebra", required=True,
                       help="algebra JSON file, or a bundled name (s3, l2, m3, ...)")
        p.add_argument("--width", type=int)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--budget", type=int)
        p.add_argument("--workers", type=int, default=1)
        if name in ("solve", "entails", "project"):
            p.add_argument("--system", help="system file in the equation DSL")
            p.add_argument("--text", help="inline system text")
        if name == "entails":
            p.add_argument("--equation", required=True)
        if name == "verify":
            p.add_argument("--kind", required=True)
            p.add_argument("--prefix", type=int)
            p.add_argument("--trials", type=int, default=100)
            p.add_argument("--seed", type=int, default=0)
        if name in ("verify", "project"):
            p.add_argument("--other", help="second factor for products")
        if name == "project":
            p.add_argument("--factor", choices=("left", "right"), default="left")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    budget = args.budget
    if budget is None:
        env = os.environ.get("UAG_BUDGET")
        try:
            budget = int(env) if env else DEFAULT_BUDGET
        except ValueError:
            print(f"uag: UAG_BUDGET is not an integer: {env!r}", file=sys.stderr)
            return EXIT_USAGE
    fields = {k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__}
    fields["budget"] = budget
    cfg = RunConfig(**fields)
    try:
        return run(cfg)
    except SizeError as exc:
        print(f"uag: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, ParseError, AlgebraError, ValueError, KeyError) as exc:
        print(f"uag: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
