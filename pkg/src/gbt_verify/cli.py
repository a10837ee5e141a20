"""Command-line entry point: ``gbt-verify <subcommand> [options]``.

Exit status: 0 when every check passes, 1 on a mismatch or discrepancy,
2 on a usage error (including malformed specializations).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import report as rp
from .field import parse_specialization
from .hypersurface import FamilyError
from .render import render

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    family: Optional[str] = None
    group: Optional[str] = None
    specialize: Optional[str] = None
    level: int = 4
    tolerance: float = 1e-9
    det_threshold: float = 1e-6
    seed: int = 0
    triples: int = 20
    taus: list = field(default_factory=list)
    fmt: str = "text"
    mode: str = "both"
    branches: tuple = ("smooth", "singular")
    convention: tuple = (1, 1, 1)

    def validate(self) -> None:
        if self.level != 4:
            raise UsageError("only quarter-torsion (level 4) values are exact")
        if self.specialize:
            try:
                parse_specialization(self.specialize)
            except ValueError as exc:
                raise UsageError(f"bad specialization: {exc}") from None
            if self.family:
                try:
                    rp.make_family(self.family, self.specialize, self.convention)
                except (FamilyError, ValueError) as exc:
                    raise UsageError(str(exc)) from None
        if self.tolerance <= 0 or self.det_threshold <= 0:
            raise UsageError("tolerances must be positive")
        if self.triples < 1:
            raise UsageError("need at least one curve triple")
        if self.taus and len(self.taus) != self.triples:
            raise UsageError("give one --tau triple per requested triple")


def _convention(text: str) -> tuple:
    try:
        signs = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected three signs such as 1,1,-1") from None
    if len(signs) != 3 or any(s not in (1, -1) for s in signs):
        raise argparse.ArgumentTypeError("expected three signs such as 1,1,-1")
    return signs


def _tau_triple(text: str) -> tuple:
    try:
        taus = tuple(complex(x.replace(" ", "")) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot read {text!r} as three complex numbers") from None
    if len(taus) != 3 or any(t.imag <= 0 for t in taus):
        raise argparse.ArgumentTypeError("need three moduli in the upper half plane")
    return taus


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")
    common.add_argument(
        "--convention", type=_convention, default=(1, 1, 1),
        help="per-factor sign choosing L(1/4+tau/4) = +-i*b (default 1,1,1)",
    )
    parser = argparse.ArgumentParser(
        prog="gbt-verify", description="Exact checks on Burniat hypersurfaces and their quotients."
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    sub.add_parser("table1", parents=[common], help="elements of G0 with fixed points on T")
    p = sub.add_parser("fixed-loci", parents=[common], help="fixed loci of group elements on X")
    p.add_argument("--family", choices=("nu", "mu", "b"), required=True)
    p.add_argument("--specialize", help='e.g. "nu=(b1:1)" or "b1*b2*b3=1"')
    p.add_argument("--level", type=int, default=4)
    sub.add_parser("singularities", parents=[common], help="singular members of each family")
    p = sub.add_parser("freeness", parents=[common], help="freeness of a group action")
    p.add_argument("--group", choices=("G1", "G2", "G3", "G4"), required=True)
    sub.add_parser("bad-sets", parents=[common], help="exceptional parameters")
    sub.add_parser("invariants", parents=[common], help="K^2, e, chi and the adjunction genus")
    p = sub.add_parser("bloch", parents=[common], help="involution quotients of a GBT surface")
    p.add_argument("--group", choices=("G1", "G2", "G3", "G4"), required=True)
    p.add_argument("--mode", choices=("strict", "as-claimed", "both"), default="both")
    p.add_argument("--branch", choices=("smooth", "singular", "both"), default="both")
    for name in ("oracle", "verify-all"):
        p = sub.add_parser(name, parents=[common], help="floating-point cross-check" if name == "oracle" else "every check")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--triples", type=int, default=20)
        if name == "oracle":
            p.add_argument("--tolerance", type=float, default=1e-9)
            p.add_argument("--det-threshold", type=float, default=1e-6)
            p.add_argument("--tau", type=_tau_triple, action="append", default=[],
                           help="curve moduli tau1,tau2,tau3 (repeat once per triple)")
        else:
            p.add_argument("--mode", choices=("strict", "as-claimed", "both"), default="both")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(ns.subcommand, fmt=ns.fmt, convention=ns.convention)
    for name in ("family", "group", "specialize", "level", "seed", "triples", "tolerance", "mode"):
        if hasattr(ns, name):
            setattr(cfg, name, getattr(ns, name))
    if hasattr(ns, "det_threshold"):
        cfg.det_threshold = ns.det_threshold
    if getattr(ns, "tau", None):
        cfg.taus = ns.tau
        if ns.triples == 20:
            cfg.triples = len(ns.tau)
    if getattr(ns, "branch", None):
        cfg.branches = ("smooth", "singular") if ns.branch == "both" else (ns.branch,)
    return cfg


def execute(cfg: RunConfig) -> rp.Report:
    cmd = cfg.subcommand
    if cmd == "table1":
        return rp.table1_report()
    if cmd == "fixed-loci":
        return rp.fixed_loci_report(cfg.family, cfg.specialize, cfg.convention)
    if cmd == "singularities":
        return rp.singularities_report(cfg.convention)
    if cmd == "freeness":
        return rp.freeness_report(cfg.group, cfg.convention)
    if cmd == "bad-sets":
        return rp.bad_sets_report(cfg.convention)
    if cmd == "invariants":
        return rp.invariants_report()
    if cmd == "bloch":
        return rp.bloch_report(cfg.group, cfg.mode, cfg.branches, cfg.convention)
    if cmd == "oracle":
        return rp.oracle_report(cfg.seed, cfg.triples, cfg.tolerance, cfg.det_threshold, cfg.taus or None)
    if cmd == "verify-all":
        return rp.verify_all(cfg.seed, cfg.triples, cfg.mode)
    raise UsageError(f"unknown subcommand {cmd!r}")


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    cfg = config_from_args(ns)
    try:
        cfg.validate()
    except UsageError as exc:
        err.write(f"gbt-verify: error: {exc}\n")
        return EXIT_USAGE
    report = execute(cfg)
    out.write(render(report, cfg.fmt))
    return EXIT_OK if report.ok else EXIT_MISMATCH


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
