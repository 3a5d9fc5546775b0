"""Command-line front end.

    lcverify verify hochster --p 2 --e 1
    lcverify verify identity --k 4
    lcverify verify lemmas --k-max 8
    lcverify verify torsion --primes 2,3,5 --k-max 20
    lcverify verify all [--config FILE]

Exit status: 0 when no check failed, 1 when some check failed, 2 on usage or
configuration errors.
"""
from __future__ import annotations

import argparse
import configparser
import json
import os
import sys
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path

from . import __version__
from .binomial import is_prime, verify_certificate, verify_divisibility_family, verify_lemmas
from .hochster import SizeGuard, run_hochster
from .identity import (build_mod_p_decomposition, verify_binom_product, verify_coefficient_cases,
                       verify_decomposition, verify_family_support, verify_identity)
from .report import FAIL, VerificationReport
from .torsion import torsion_witness

OUTPUT_DIR_ENV = "LCVERIFY_OUTPUT_DIR"

REPORT_SCHEMA = {
    "type": "object",
    "required": ["tool_version", "command", "parameters", "results"],
    "additionalProperties": False,
    "properties": {
        "tool_version": {"type": "string"},
        "command": {"type": "string"},
        "parameters": {"type": "object"},
        "results": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["claim", "paper_anchor", "status", "witness", "millis"],
                "additionalProperties": False,
                "properties": {
                    "claim": {"type": "string"},
                    "paper_anchor": {"type": "string"},
                    "status": {"enum": ["pass", "fail", "refuted", "skipped"]},
                    "witness": {},
                    "millis": {"type": "number", "minimum": 0},
                },
            },
        },
    },
}


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    p: int | None = None
    e: int | None = None
    k: int | None = None
    k_max: int | None = None
    primes: list[int] = field(default_factory=list)
    hochster: list[tuple[int, int]] = field(default_factory=list)
    identity_k: list[int] = field(default_factory=list)
    lemmas_k_max: int = 8
    certificate_k_max: int = 6
    torsion_k_max: int = 20
    torsion_oracle_k_max: int = 3
    divisibility_primes: list[int] = field(default_factory=list)
    divisibility_max_q: int = 128
    oracle: bool = True
    max_q: int = 16
    oracle_max_q: int = 9
    torsion_oracle_max_k: int = 20
    force: bool = False
    format: str = "text"
    output: str | None = None

    def validate(self) -> None:
        def prime(p):
            if not is_prime(p):
                raise UsageError(f"{p} is not prime")

        def nonneg(name, val):
            if val is not None and val < 0:
                raise UsageError(f"{name} must be >= 0, got {val}")

        if self.p is not None:
            prime(self.p)
        if self.e is not None and self.e < 1:
            raise UsageError(f"e must be >= 1, got {self.e}")
        for p in self.primes + self.divisibility_primes:
            prime(p)
        for p, e in self.hochster:
            prime(p)
            if e < 1:
                raise UsageError(f"e must be >= 1, got {e}")
        for name in ("k", "k_max", "lemmas_k_max", "certificate_k_max", "torsion_k_max",
                     "torsion_oracle_k_max", "divisibility_max_q", "max_q", "oracle_max_q",
                     "torsion_oracle_max_k"):
            nonneg(name.replace("_", "-"), getattr(self, name))
        for k in self.identity_k:
            nonneg("identity-k", k)
        if self.format not in ("text", "json"):
            raise UsageError(f"unknown format {self.format!r}")
        if not self.force:
            for p, e in self.hochster + ([(self.p, self.e)] if self.p and self.e else []):
                if p ** e > self.max_q:
                    raise UsageError(f"q={p ** e} exceeds the construction guard {self.max_q}; use --force")
            if self.torsion_oracle_k_max > self.torsion_oracle_max_k:
                raise UsageError(f"torsion oracle k exceeds the guard {self.torsion_oracle_max_k}; use --force")

    def parameters(self) -> dict:
        d = asdict(self)
        d.pop("command")
        d.pop("output")
        d["hochster"] = [list(x) for x in self.hochster]
        return d


# config files: one "key = value" per line, keys mirror the long flags


def _int_list(text: str) -> list[int]:
    out = []
    for part in text.replace(",", " ").split():
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def _pe_list(text: str) -> list[tuple[int, int]]:
    out = []
    for part in text.replace(",", " ").split():
        p, _, e = part.partition(":")
        out.append((int(p), int(e or 1)))
    return out


def _bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


_CONFIG_KEYS = {
    "hochster": ("hochster", _pe_list),
    "oracle": ("oracle", _bool),
    "identity-k": ("identity_k", _int_list),
    "lemmas-k-max": ("lemmas_k_max", int),
    "certificate-k-max": ("certificate_k_max", int),
    "primes": ("primes", _int_list),
    "torsion-k-max": ("torsion_k_max", int),
    "torsion-oracle-k-max": ("torsion_oracle_k_max", int),
    "divisibility-primes": ("divisibility_primes", _int_list),
    "divisibility-max-q": ("divisibility_max_q", int),
    "max-q": ("max_q", int),
    "oracle-max-q": ("oracle_max_q", int),
    "torsion-oracle-max-k": ("torsion_oracle_max_k", int),
    "force": ("force", _bool),
    "format": ("format", str),
    "output": ("output", str),
}


def default_config_text() -> str:
    return resources.files("lcverify").joinpath("default.cfg").read_text()


def load_config(text: str, cfg: RunConfig) -> RunConfig:
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#",))
    try:
        parser.read_string("[verify]\n" + text)
    except configparser.Error as exc:
        raise UsageError(f"malformed config: {exc}") from exc
    for key, value in parser["verify"].items():
        if key not in _CONFIG_KEYS:
            raise UsageError(f"unknown config key {key!r}")
        attr, conv = _CONFIG_KEYS[key]
        try:
            setattr(cfg, attr, conv(value))
        except ValueError as exc:
            raise UsageError(f"bad value for {key}: {exc}") from exc
    return cfg


# suites


def suite_hochster(cfg: RunConfig, pairs) -> VerificationReport:
    report = VerificationReport()
    for p, e in pairs:
        report.extend(run_hochster(p, e, oracle=cfg.oracle, max_q=cfg.max_q,
                                   oracle_max_q=cfg.oracle_max_q, force=cfg.force))
    return report


def prime_power(q: int) -> tuple[int, int] | None:
    """(p, e) with q = p^e, or None."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e = 0
    while q % p == 0:
        q //= p
        e += 1
    return (p, e) if q == 1 else None


def suite_identity(k: int) -> VerificationReport:
    report = verify_identity(k)
    report.extend(verify_binom_product(k))
    for m in range(k + 1):
        report.extend(verify_coefficient_cases(k, m))
    pe = prime_power(k + 1)
    if pe is not None:
        dec = build_mod_p_decomposition(*pe)
        report.extend(verify_decomposition(dec))
        report.extend(verify_family_support(dec))
    return report


def suite_lemmas(k_max: int, certificate_k_max: int | None = None) -> VerificationReport:
    report = verify_lemmas(k_max)
    ck = k_max if certificate_k_max is None else certificate_k_max
    for which in (1, 2, 3):
        report.extend(verify_certificate(which, range(0, ck + 1)))
    return report


def suite_torsion(primes, k_max: int, oracle_k_max: int) -> VerificationReport:
    report = VerificationReport()
    for p in primes:
        report.extend(torsion_witness(p, k_max, oracle_k_max))
    return report


def suite_divisibility(primes, max_q: int) -> VerificationReport:
    report = VerificationReport()
    for p in primes:
        e = 1
        while p ** e <= max_q:
            report.extend(verify_divisibility_family(p, e))
            e += 1
    return report


def execute(cfg: RunConfig) -> VerificationReport:
    cfg.validate()
    if cfg.command == "hochster":
        return suite_hochster(cfg, [(cfg.p, cfg.e)])
    if cfg.command == "identity":
        return suite_identity(cfg.k)
    if cfg.command == "lemmas":
        return suite_lemmas(cfg.k_max, min(cfg.k_max, cfg.certificate_k_max))
    if cfg.command == "torsion":
        return suite_torsion(cfg.primes, cfg.k_max, cfg.torsion_oracle_k_max)
    if cfg.command == "all":
        report = VerificationReport()
        report.extend(suite_hochster(cfg, cfg.hochster))
        for k in cfg.identity_k:
            report.extend(suite_identity(k))
        report.extend(suite_lemmas(cfg.lemmas_k_max, cfg.certificate_k_max))
        report.extend(suite_divisibility(cfg.divisibility_primes, cfg.divisibility_max_q))
        report.extend(suite_torsion(cfg.primes, cfg.torsion_k_max, cfg.torsion_oracle_k_max))
        return report
    raise UsageError(f"unknown command {cfg.command!r}")


# output


def emit_report(report: VerificationReport, cfg: RunConfig, fmt: str | None = None) -> str:
    fmt = fmt or cfg.format
    if fmt == "json":
        doc = {
            "tool_version": __version__,
            "command": cfg.command,
            "parameters": cfg.parameters(),
            "results": [r.to_dict() for r in report],
        }
        return json.dumps(doc, indent=2) + "\n"
    lines = [f"lcverify {__version__}  verify {cfg.command}", ""]
    lines.append(f"{'STATUS':<8} {'MILLIS':>10}  CLAIM")
    lines.append("-" * 78)
    for r in report:
        lines.append(f"{r.status:<8} {r.millis:>10.1f}  {r.claim}")
        lines.append(f"{'':<8} {'':>10}    [{r.anchor}]")
    lines.append("-" * 78)
    n_fail = len(report.failures)
    lines.append(f"{len(report)} checks, {n_fail} failed")
    return "\n".join(lines) + "\n"


def _write(text: str, cfg: RunConfig) -> None:
    path = cfg.output
    if path is None and os.environ.get(OUTPUT_DIR_ENV):
        ext = "json" if cfg.format == "json" else "txt"
        path = str(Path(os.environ[OUTPUT_DIR_ENV]) / f"report-{cfg.command}.{ext}")
    if path is None:
        sys.stdout.write(text)
        return
    try:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write report to {path}: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lcverify", description="Exact verification suites")
    parser.add_argument("--version", action="version", version=__version__)
    top = parser.add_subparsers(dest="top", required=True)
    verify = top.add_parser("verify", help="run a verification suite")
    suites = verify.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=None)
    common.add_argument("--output", default=None, help="report path (default: stdout or $%s)" % OUTPUT_DIR_ENV)
    common.add_argument("--force", action="store_true", default=None, help="ignore size guards")
    common.add_argument("--max-q", type=int, default=None)
    common.add_argument("--oracle-max-q", type=int, default=None)
    common.add_argument("--torsion-oracle-max-k", type=int, default=None)

    h = suites.add_parser("hochster", parents=[common], help="certificate for q = p^e")
    h.add_argument("--p", type=int, required=True)
    h.add_argument("--e", type=int, required=True)
    h.add_argument("--no-oracle", dest="oracle", action="store_false", default=None)

    i = suites.add_parser("identity", parents=[common], help="three-part identity at one k")
    i.add_argument("--k", type=int, required=True)

    lm = suites.add_parser("lemmas", parents=[common], help="binomial sums and recurrence certificates")
    lm.add_argument("--k-max", type=int, required=True)
    lm.add_argument("--certificate-k-max", type=int, default=None)

    t = suites.add_parser("torsion", parents=[common], help="p-torsion witnesses on the hypersurface")
    t.add_argument("--primes", required=True, help="comma-separated primes")
    t.add_argument("--k-max", type=int, required=True)
    t.add_argument("--torsion-oracle-k-max", type=int, default=None)

    a = suites.add_parser("all", parents=[common], help="every suite, driven by a config file")
    a.add_argument("--config", default=None, help="key = value file (default: packaged defaults)")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    if args.command == "all":
        if args.config:
            try:
                text = Path(args.config).read_text()
            except OSError as exc:
                raise UsageError(f"cannot read config {args.config}: {exc}") from exc
        else:
            text = default_config_text()
        load_config(text, cfg)
    elif args.command == "hochster":
        cfg.p, cfg.e = args.p, args.e
        if args.oracle is not None:
            cfg.oracle = args.oracle
    elif args.command == "identity":
        cfg.k = args.k
    elif args.command == "lemmas":
        cfg.k_max = args.k_max
        if args.certificate_k_max is not None:
            cfg.certificate_k_max = args.certificate_k_max
    elif args.command == "torsion":
        try:
            cfg.primes = _int_list(args.primes)
        except ValueError as exc:
            raise UsageError(f"bad prime list {args.primes!r}") from exc
        cfg.k_max = args.k_max
        cfg.torsion_k_max = args.k_max
        if args.torsion_oracle_k_max is not None:
            cfg.torsion_oracle_k_max = args.torsion_oracle_k_max
    for name in ("format", "output", "force", "max_q", "oracle_max_q", "torsion_oracle_max_k"):
        val = getattr(args, name, None)
        if val is not None:
            setattr(cfg, name, val)
    return cfg


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = config_from_args(args)
        report = execute(cfg)
        _write(emit_report(report, cfg), cfg)
    except (UsageError, SizeGuard) as exc:
        parser.print_usage(sys.stderr)
        print(f"lcverify: error: {exc}", file=sys.stderr)
        return 2
    return 1 if any(r.status == FAIL for r in report) else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
