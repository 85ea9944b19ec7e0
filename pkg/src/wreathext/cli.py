"""Command-line front end.

Settings resolve as flags > environment (``WREATHEXT_*``) > JSON config file >
built-in defaults.  The config file is ``--config PATH``, else
``$WREATHEXT_CONFIG``, else ``~/.config/wreathext.json`` when it exists.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, fields
from pathlib import Path

from . import __version__
from .characters import nekrasov_factor, nekrasov_via_omega
from .coeff import ExactBackend, InvalidInput, PointBackend, random_eval_point
from .identities import canonical, make_backend, no_modular_product_side, no_modular_sum_side
from .partitions import (arm_leg, color, core_quotient, hook_multiples_count, is_core,
                         parse_partition, size, to_maya, transpose)
from .suites import SUITE_MODES, SUITES, SuiteParams, run_suite
from .symfunc import coeff_to_json
from .wreath import CACHE_ENV, DEFAULT_NORMALIZATION, NORMALIZATIONS, SOLVER_VERSION, load_or_build

TABLE_FORMAT_VERSION = "1"
CONFIG_ENV = "WREATHEXT_CONFIG"


class UsageError(Exception):
    """Bad command-line input; reported with exit status 2."""


@dataclass
class CliConfig:
    cache_dir: str | None = None
    mode: str = "auto"
    qt_cap: int = 10
    p_cap: int = 4
    threads: int = 1
    seed: int = 0


_ENV_KEYS = {
    "cache_dir": CACHE_ENV,
    "mode": "WREATHEXT_MODE",
    "qt_cap": "WREATHEXT_QT_CAP",
    "p_cap": "WREATHEXT_P_CAP",
    "threads": "WREATHEXT_THREADS",
    "seed": "WREATHEXT_SEED",
}


def resolve_config(flags: dict, env=None, config_path: str | None = None) -> CliConfig:
    """Merge the four configuration layers; ``None`` flag values are unset."""
    env = os.environ if env is None else env
    cfg = CliConfig()
    path = config_path or env.get(CONFIG_ENV)
    if path is None:
        default = Path.home() / ".config" / "wreathext.json"
        path = str(default) if default.exists() else None
    layers = []
    if path:
        try:
            layers.append(json.loads(Path(path).read_text()))
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config file {path}: {exc}") from exc
    layers.append({k: env[v] for k, v in _ENV_KEYS.items() if v in env})
    layers.append({k: v for k, v in flags.items() if v is not None})
    types = {f.name: f.type for f in fields(CliConfig)}
    for layer in layers:
        for key, value in layer.items():
            if key not in types:
                continue
            if "int" in str(types[key]) and "str" not in str(types[key]):
                try:
                    value = int(value)
                except (TypeError, ValueError) as exc:
                    raise UsageError(f"{key} must be an integer, got {value!r}") from exc
            setattr(cfg, key, value)
    if cfg.mode not in SUITE_MODES:
        raise UsageError(f"mode must be one of {SUITE_MODES}")
    return cfg


# ---------------------------------------------------------------------------
# helpers


def _partition(text: str) -> tuple:
    try:
        return parse_partition(text)
    except InvalidInput as exc:
        raise UsageError(str(exc)) from exc


def _core(text: str, r: int) -> tuple:
    alpha = _partition(text)
    if not is_core(alpha, r):
        raise UsageError(f"{list(alpha)} is not an {r}-core")
    return alpha


def _emit(data, out: str | None = None):
    text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_csv(header: list, rows: list, out: str | None = None):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    if out:
        Path(out).write_text(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())


# ---------------------------------------------------------------------------
# commands


def partition_report(lam: tuple, r: int) -> dict:
    cq = core_quotient(lam, r)
    rows = []
    for i, length in enumerate(lam):
        rows.append([arm_leg(lam, (j, i))[0] + arm_leg(lam, (j, i))[1] + 1 for j in range(length)])
    colors = [[color((j, i), r) for j in range(length)] for i, length in enumerate(lam)]
    maya = to_maya(lam)
    lo, hi = maya.window()
    return {
        "partition": list(lam),
        "size": size(lam),
        "length": len(lam),
        "transpose": list(transpose(lam)),
        "r": r,
        "hooks": rows,
        "colors": colors,
        "maya": {**maya.to_json(), "window": [lo, hi],
                 "black_in_window": maya.black_positions(lo, hi)},
        "core": list(cq.core),
        "quotient": [list(q) for q in cq.quotient],
        "charges": list(cq.charges),
        "quot_size": cq.quot_size(),
        "hooks_divisible_by_r": hook_multiples_count(lam, r),
    }


def cmd_partition(args, cfg: CliConfig) -> int:
    if args.r < 1:
        raise UsageError("--r must be positive")
    _emit(partition_report(_partition(args.partition), args.r), args.out)
    return 0


def cmd_hpoly(args, cfg: CliConfig) -> int:
    alpha = _core(args.core, args.r)
    if args.quot_size < 0:
        raise UsageError("--quot-size must be non-negative")
    mode = cfg.mode if cfg.mode in ("exact", "points") else "exact"
    backend = ExactBackend() if mode == "exact" else PointBackend(random_eval_point(cfg.seed))
    table = load_or_build(args.r, alpha, args.quot_size, backend, args.normalization,
                          cfg.cache_dir)
    data = {
        "format": TABLE_FORMAT_VERSION,
        "solver": SOLVER_VERSION,
        "r": args.r,
        "core": list(alpha),
        "quot_size": args.quot_size,
        "normalization": args.normalization,
        "backend": backend.describe(),
        "basis": args.basis,
        "polys": [{"lambda": list(lam), "H": table[lam].to_json(args.basis)}
                  for lam in table.partitions],
    }
    _emit(data, args.out)
    return 0


def cmd_nekrasov(args, cfg: CliConfig) -> int:
    lam_text = args.lam_opt if args.lam_opt is not None else args.lam
    mu_text = args.mu_opt if args.mu_opt is not None else args.mu
    if lam_text is None or mu_text is None:
        raise UsageError("nekrasov needs two partitions (positional or --lam/--mu)")
    lam, mu = _partition(lam_text), _partition(mu_text)
    fac = nekrasov_factor(lam, mu, args.r)
    if args.format == "csv":
        rows = [[e, a, b] for e, a, b in fac.factors]
        _emit_csv(["uexp", "qexp", "texp"], rows, args.out)
        return 0
    data = {"lambda": list(lam), "mu": list(mu), "r": args.r, **fac.to_json()}
    if args.check:
        data["omega_route_agrees"] = nekrasov_via_omega(lam, mu, args.r) == fac.to_ratfunc()
    _emit(data, args.out)
    return 0


def cmd_verify(args, cfg: CliConfig) -> int:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(sorted(SUITES))}")
    cores = [_core(c, args.r) for c in args.cores] if args.cores else []
    try:
        params = SuiteParams(
            r=args.r, core=_core(args.core, args.r), max_quot=args.max_quot, orderT=args.orderT,
            qt_cap=cfg.qt_cap, p_cap=cfg.p_cap, mode=cfg.mode, seed=cfg.seed, k=args.k,
            pochhammer=args.pochhammer, normalization=args.normalization,
            cache_dir=cfg.cache_dir, degree_cap=args.degree_cap, cores=cores)
        report = run_suite(args.suite, params)
    except InvalidInput as exc:
        raise UsageError(str(exc)) from exc
    for case in report.failures():
        print(f"FAIL {case.key}: {json.dumps(case.witness, sort_keys=True)}")
    print(report.summary())
    if args.report:
        _emit(report.to_json(), args.report)
    return 0 if report.passed else 1


def cmd_no_series(args, cfg: CliConfig) -> int:
    alpha = _core(args.core, args.r)
    mode = "exact" if cfg.mode == "auto" else cfg.mode
    try:
        backend = make_backend(mode, cfg.qt_cap, cfg.seed)
    except InvalidInput as exc:
        raise UsageError(str(exc)) from exc
    rows = []
    if args.side in ("sum", "both"):
        for n, c in enumerate(no_modular_sum_side(alpha, args.r, args.orderT, backend)):
            rows.append(("sum", n, c))
    if args.side in ("product", "both"):
        for n, c in enumerate(no_modular_product_side(args.r, args.orderT, backend,
                                                      reading=args.pochhammer)):
            rows.append(("product", n, c))
    if args.format == "csv":
        _emit_csv(["side", "n", "value"], [[s, n, canonical(c)] for s, n, c in rows], args.out)
    else:
        _emit({"r": args.r, "core": list(alpha), "orderT": args.orderT, "mode": mode,
               "backend": backend.describe(),
               "coefficients": [{"side": s, "n": n, "value": coeff_to_json(c)}
                                for s, n, c in rows]}, args.out)
    return 0


# ---------------------------------------------------------------------------
# parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wreathext", description="Wreath Macdonald polynomials and identity checks.")
    p.add_argument("--version", action="version",
                   version=f"wreathext {__version__} (solver {SOLVER_VERSION}, "
                           f"table format {TABLE_FORMAT_VERSION})")
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--cache-dir", dest="cache_dir", help=f"table cache directory (env {CACHE_ENV})")
    p.add_argument("--mode", choices=SUITE_MODES)
    p.add_argument("--seed", type=int)
    p.add_argument("--qt-cap", dest="qt_cap", type=int)
    p.add_argument("--p-cap", dest="p_cap", type=int)
    p.add_argument("--threads", type=int)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp):
        # the global options are also accepted after the subcommand
        sp.add_argument("--mode", choices=SUITE_MODES, default=argparse.SUPPRESS)
        sp.add_argument("--seed", type=int, default=argparse.SUPPRESS)
        sp.add_argument("--qt-cap", dest="qt_cap", type=int, default=argparse.SUPPRESS)
        sp.add_argument("--p-cap", dest="p_cap", type=int, default=argparse.SUPPRESS)
        sp.add_argument("--cache-dir", dest="cache_dir", default=argparse.SUPPRESS)
        sp.add_argument("--out", help="write output to a file instead of stdout")

    part = sub.add_parser("partition", help="partition inspection")
    psub = part.add_subparsers(dest="action", parser_class=_Parser)
    info = psub.add_parser("info", help="hooks, colors, Maya diagram, core and quotient")
    info.add_argument("partition", help="comma-separated parts; empty string for the empty partition")
    info.add_argument("--r", type=int, default=1)
    common(info)
    info.set_defaults(func=cmd_partition)

    hp = sub.add_parser("hpoly", help="table of wreath Macdonald polynomials")
    hp.add_argument("--r", type=int, required=True)
    hp.add_argument("--core", default="")
    hp.add_argument("--quot-size", dest="quot_size", type=int, required=True)
    hp.add_argument("--basis", choices=("schur", "powersum"), default="schur")
    hp.add_argument("--normalization", choices=NORMALIZATIONS, default=DEFAULT_NORMALIZATION)
    common(hp)
    hp.set_defaults(func=cmd_hpoly)

    nk = sub.add_parser("nekrasov", help="factorized Nekrasov factor of two partitions")
    nk.add_argument("lam", nargs="?")
    nk.add_argument("mu", nargs="?")
    nk.add_argument("--lam", dest="lam_opt")
    nk.add_argument("--mu", dest="mu_opt")
    nk.add_argument("--r", type=int, default=1)
    nk.add_argument("--format", choices=("json", "csv"), default="json")
    nk.add_argument("--check", action="store_true", help="also compare with the plethystic route")
    common(nk)
    nk.set_defaults(func=cmd_nekrasov)

    vf = sub.add_parser("verify", help="run a verification suite")
    vf.add_argument("suite", help=", ".join(sorted(SUITES)))
    vf.add_argument("--r", type=int, default=3)
    vf.add_argument("--core", default="")
    vf.add_argument("--cores", nargs="*", help="several cores (no-modular, elliptic)")
    vf.add_argument("--max-quot", dest="max_quot", type=int, default=2)
    vf.add_argument("--orderT", type=int, default=2)
    vf.add_argument("--degree-cap", dest="degree_cap", type=int, default=3)
    vf.add_argument("--k", type=int, default=3, help="number of evaluation points")
    vf.add_argument("--pochhammer", choices=("multi-index", "per-base"), default="multi-index")
    vf.add_argument("--normalization", choices=NORMALIZATIONS, default=DEFAULT_NORMALIZATION)
    vf.add_argument("--report", help="write the JSON report here")
    common(vf)
    vf.set_defaults(func=cmd_verify)

    ns = sub.add_parser("no-series", help="T-coefficients of the modular Nekrasov-Okounkov sides")
    ns.add_argument("--r", type=int, default=3)
    ns.add_argument("--core", default="")
    ns.add_argument("--orderT", type=int, default=2)
    ns.add_argument("--side", choices=("sum", "product", "both"), default="both")
    ns.add_argument("--pochhammer", choices=("multi-index", "per-base"), default="multi-index")
    ns.add_argument("--format", choices=("json", "csv"), default="json")
    common(ns)
    ns.set_defaults(func=cmd_no_series)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "func", None):
            raise UsageError("a subcommand is required (partition, hpoly, nekrasov, verify, no-series)")
        flags = {k: getattr(args, k, None) for k in ("cache_dir", "mode", "seed", "qt_cap",
                                                     "p_cap", "threads")}
        cfg = resolve_config(flags, config_path=args.config)
        return args.func(args, cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
