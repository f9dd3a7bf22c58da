"""Command-line front end: ``gencs families|verify|tabulate|algebra|kernel``."""
from __future__ import annotations

import argparse
import csv
import io
import math
import sys

import numpy as np

from . import verify
from .core import check_label, kernel, normalization, state_vector
from .errors import DomainError, GencsError, NoConvergence, ParameterError
from .families import FAMILY_SCHEMAS, make_family
from .reporting import ConfigError, RunConfig, config_from_dict, dumps, load_config

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

TABULATE_COLUMNS = ["r", "theta", "N_signed", "N_modulus", "re(K)", "im(K)", "tail_bound"]
KERNEL_COLUMNS = ["r", "theta", "r_prime", "theta_prime", "re(K)", "im(K)", "tail_bound", "M"]
PARAM_FLAGS = ("k", "alpha", "y", "nu")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser():
    p = _Parser(prog="gencs", description="Numerical checks for generalized coherent-state families.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("families", help="list the family catalog and parameter schemas")
    for name, help_ in (
        ("verify", "run the full check suite and write a JSON report"),
        ("tabulate", "tabulate N(r) and K(z, z_ref) on a grid as CSV"),
        ("algebra", "ladder operators, commutators, su(1,1) and the annihilator scan as JSON"),
        ("kernel", "pairwise kernel table as CSV"),
    ):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--family", help="family name (see `gencs families`)")
        s.add_argument("--config", help="JSON run configuration")
        s.add_argument("--k", type=int, help="power family: map exponent")
        s.add_argument("--alpha", type=float, help="laguerre family: alpha")
        s.add_argument("--y", type=float, help="disc family: radius y")
        s.add_argument("--nu", type=float, help="disc family: nu")
        s.add_argument("--M", type=int, help="truncation size (>= 8)")
        s.add_argument("--seed", type=int, help="random seed (default 42)")
        s.add_argument("--out", help="output path (default: stdout)")
        if name in ("tabulate", "kernel"):
            s.add_argument("--r", type=float, nargs="+", help="radial grid")
            s.add_argument("--theta", type=float, nargs="+", help="angular grid")
        if name == "tabulate":
            s.add_argument("--ref", type=float, nargs=2, metavar=("R", "THETA"),
                           help="reference label for K(z_ref, z); default z_ref = z")
            s.add_argument("--coeffs", type=int, default=0, help="append the first n normalized coefficients")
    return p


def resolve_config(args):
    if args.config:
        cfg = load_config(args.config)
        data = cfg.to_dict()
    else:
        data = RunConfig().to_dict()
        if args.family is None:
            raise ConfigError("family: required (use --family or a config file)")
    if args.family is not None:
        if args.config and args.family != data["family"]:
            data["params"] = {}
        data["family"] = args.family
    params = dict(data["params"])
    for key in PARAM_FLAGS:
        v = getattr(args, key)
        if v is not None:
            params[key] = v
    data["params"] = params
    if args.M is not None:
        data["M"] = args.M
    if args.seed is not None:
        data["seed"] = args.seed
    if args.out is not None:
        data["output"] = args.out
    cfg = config_from_dict(data)
    entry = make_family(cfg.family, cfg.params)
    for r in cfg.grids.get("r", []):
        try:
            check_label(entry.spec, r)
        except GencsError as exc:
            raise ConfigError(f"grids.r: {exc}") from exc
    return cfg, entry


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fmt(x):
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def _csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([v if isinstance(v, str) else _fmt(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def cmd_families(args):
    out = {}
    for name, schema in FAMILY_SCHEMAS.items():
        spec = make_family(name).spec
        out[name] = {
            "parameters": schema,
            "labels": spec.label_description(),
            "modes_coincide": spec.modes_coincide,
            "normalization": spec.normalization_rule,
        }
    sys.stdout.write(dumps(out))
    return EXIT_OK


def cmd_verify(args):
    cfg, _ = resolve_config(args)
    report = verify.run_suite(cfg)
    _emit(dumps(report.to_dict()), cfg.output)
    for c in report.checks:
        tag = "info" if c.informational else ("PASS" if c.passed else "FAIL")
        print(f"{tag:4s} {c.name}: residual {c.residual:.3g} (tol {c.tolerance:.3g})", file=sys.stderr)
    return EXIT_OK if report.all_passed else EXIT_FAIL


def _grid(args, cfg, entry, key, default):
    v = getattr(args, key)
    if v is None:
        v = cfg.grids.get(key, default)
    return [float(x) for x in v]


def _safe_norm(spec, r, mode):
    try:
        return normalization(spec, r, mode=mode)
    except NoConvergence:
        return math.nan


def cmd_tabulate(args):
    cfg, entry = resolve_config(args)
    spec = entry.spec
    rs = _grid(args, cfg, entry, "r", verify.default_r_grid(entry))
    thetas = _grid(args, cfg, entry, "theta", [0.0])
    for r in rs:
        try:
            check_label(spec, r)
        except GencsError as exc:
            raise ConfigError(f"r: {exc}") from exc
    mode = verify.primary_mode(entry)
    header = list(TABULATE_COLUMNS)
    for m in range(args.coeffs):
        header += [f"re(c_{m})", f"im(c_{m})"]
    rows = []
    for r in rs:
        ns = _safe_norm(spec, r, "signed")
        nm = _safe_norm(spec, r, "modulus")
        for t in thetas:
            ref = tuple(args.ref) if args.ref else (r, t)
            kv = kernel(spec, ref, (r, t), M=cfg.M, mode=mode)
            row = [r, t, ns, nm, kv.value.real, kv.value.imag, kv.tail_bound]
            if args.coeffs:
                c = state_vector(spec, r, t, max(args.coeffs, 1), mode=mode).normalized()
                for v in c:
                    row += [float(v.real), float(v.imag)]
            rows.append(row)
    _emit(_csv(header, rows), cfg.output)
    return EXIT_OK


def cmd_kernel(args):
    cfg, entry = resolve_config(args)
    spec = entry.spec
    rs = _grid(args, cfg, entry, "r", verify.default_r_grid(entry, n=4)[:4])
    thetas = _grid(args, cfg, entry, "theta", [0.0, math.pi / 2])
    labels = [(r, t) for r in rs for t in thetas]
    for r, _ in labels:
        try:
            check_label(spec, r)
        except GencsError as exc:
            raise ConfigError(f"r: {exc}") from exc
    mode = verify.primary_mode(entry)
    rows = []
    for z1 in labels:
        for z2 in labels:
            kv = kernel(spec, z1, z2, M=cfg.M, mode=mode)
            rows.append([z1[0], z1[1], z2[0], z2[1], kv.value.real, kv.value.imag, kv.tail_bound, kv.M])
    _emit(_csv(KERNEL_COLUMNS, rows), cfg.output)
    return EXIT_OK


def cmd_algebra(args):
    cfg, entry = resolve_config(args)
    spec = entry.spec
    checks = [verify.commutator_record(entry, cfg.algebra_dim, cfg.tol("commutators"))]
    if spec.name == "logdisc":
        checks.append(verify.su11_record(cfg.algebra_dim, cfg.tol("su11")))
        checks.append(verify.eigenstate_record(entry, math.exp(-0.5), 0.0, cfg.M, cfg.tol("eigenstate"), su11=True))
    if spec.name == "disc":
        checks.append(verify.eigenstate_record(entry, 0.7 * spec.param_dict["y"], math.pi / 3, cfg.M, cfg.tol("eigenstate")))
    if spec.name == "disc":
        r, t = 0.3 * spec.param_dict["y"], math.pi / 5
    else:
        r, t = verify.NOGO_LABELS[spec.name]
    checks.append(verify.nogo_record(entry, r, t))
    report = verify.VerificationReport(spec.name, spec.param_dict, cfg.to_dict(), checks)
    _emit(dumps(report.to_dict()), cfg.output)
    return EXIT_OK if report.all_passed else EXIT_FAIL


COMMANDS = {
    "families": cmd_families,
    "verify": cmd_verify,
    "tabulate": cmd_tabulate,
    "algebra": cmd_algebra,
    "kernel": cmd_kernel,
}


def run(argv=None):
    """Run one command; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        with np.errstate(over="ignore", under="ignore"):
            return COMMANDS[args.command](args)
    except (ConfigError, ParameterError, DomainError) as exc:
        print(f"gencs: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GencsError, ArithmeticError, FloatingPointError) as exc:
        print(f"gencs: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def main():
    sys.exit(run())
