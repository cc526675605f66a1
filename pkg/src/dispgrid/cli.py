"""Command-line surface: reproducible runs of every library capability.

Every output starts with a metadata header (package version, command,
canonical config echo, RNG scheme where randomness is involved) sufficient
to reproduce the run byte-for-byte. Exit codes: 0 success, 2 usage error,
3 certificate or audit failure, 4 enumeration guard exceeded, 5 I/O or
parse error.
"""

import argparse
import csv
import io
import itertools
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import bounds_table
from .construct import (
    RNG_SCHEME,
    CertificationError,
    certify_dispersion,
    empirical_min_n,
    generate_certified,
    monte_carlo_success,
)
from .empty_box import largest_empty_box
from .grid import GRID_REPR, k_from_epsilon
from .guards import GuardExceeded
from .partition import count_audit
from .pointset_io import PointSetParseError, read_point_set, write_point_set
from .probability import audit_hit_probabilities, check_hit_factor_inequality

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CHECK_FAIL = 3
EXIT_GUARD = 4
EXIT_IO = 5

FORMATS = ("csv", "jsonl")


@dataclass(frozen=True)
class RunConfig:
    """Validated arguments of one CLI invocation."""

    command: str
    k: int | None = None
    eps: Fraction | None = None
    d: int | None = None
    n: int | None = None
    seed: int | None = None
    trials: int | None = None
    threads: int = 1
    target: float | None = None
    max_attempts: int = 64
    max_n: int | None = None
    k_list: tuple[int, ...] | None = None
    d_list: tuple[int, ...] | None = None
    eps_list: tuple[Fraction, ...] | None = None
    k_max: int | None = None
    in_path: str | None = None
    out_path: str | None = None
    fmt: str = "csv"
    enum_limit: int | None = None
    confirm_exact: bool = False


def _eps_value(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not (0 < value < Fraction(1, 2)):
        raise argparse.ArgumentTypeError(f"eps must lie in (0, 1/2), got {text}")
    return value


def _k_value(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 2:
        raise argparse.ArgumentTypeError(f"k must be >= 2, got {text}")
    return value


def _positive_int(name: str, minimum: int = 1):
    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
        if value < minimum:
            raise argparse.ArgumentTypeError(f"{name} must be >= {minimum}, got {text}")
        return value

    return parse


def _seed_value(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"seed must be >= 0, got {text}")
    return value


def _target_value(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not (0.0 < value < 1.0):
        raise argparse.ArgumentTypeError(f"target rate must lie in (0, 1), got {text}")
    return value


def _int_list(name: str, minimum: int):
    inner = _positive_int(name, minimum)

    def parse(text: str) -> tuple[int, ...]:
        return tuple(inner(part) for part in text.split(","))

    return parse


def _eps_list(text: str) -> tuple[Fraction, ...]:
    return tuple(_eps_value(part) for part in text.split(","))


def _add_resolution_group(sub, *, required: bool = True):
    group = sub.add_mutually_exclusive_group(required=required)
    group.add_argument("--k", type=_k_value, help="grid resolution exponent (>= 2)")
    group.add_argument("--eps", type=_eps_value, help="target dispersion in (0, 1/2)")


def _add_output(sub):
    sub.add_argument("--out", dest="out_path", help="output path (default: stdout)")
    sub.add_argument("--format", dest="fmt", choices=FORMATS, default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dispgrid",
        description="dispersion-certified point sets on dyadic grids",
    )
    parser.add_argument("--version", action="version", version=f"dispgrid {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    gen = subs.add_parser("gen", help="emit a certified point set file")
    _add_resolution_group(gen)
    gen.add_argument("--d", type=_positive_int("d"), required=True)
    gen.add_argument("--n", type=_positive_int("n"), required=True)
    gen.add_argument("--seed", type=_seed_value, required=True)
    gen.add_argument("--max-attempts", type=_positive_int("max-attempts"), default=64)
    gen.add_argument("--out", dest="out_path", required=True)
    gen.add_argument("--enum-limit", type=_positive_int("enum-limit"))

    cert = subs.add_parser("certify", help="check a point-set file against the certificate")
    cert.add_argument("--in", dest="in_path", required=True)
    cert.add_argument("--k", type=_k_value, help="resolution (default: from file header)")
    cert.add_argument("--confirm-exact", action="store_true",
                      help="on any outcome also run the exact empty-box oracle")
    cert.add_argument("--enum-limit", type=_positive_int("enum-limit"))

    disp = subs.add_parser("disp", help="exact dispersion of a point-set file")
    disp.add_argument("--in", dest="in_path", required=True)
    disp.add_argument("--enum-limit", type=_positive_int("enum-limit"))

    mc = subs.add_parser("mc", help="Monte Carlo certificate success rate")
    _add_resolution_group(mc)
    mc.add_argument("--d", type=_positive_int("d"), required=True)
    mc.add_argument("--n", type=_positive_int("n"), required=True)
    mc.add_argument("--trials", type=_positive_int("trials"), required=True)
    mc.add_argument("--seed", type=_seed_value, required=True)
    mc.add_argument("--threads", type=_positive_int("threads"), default=1)
    mc.add_argument("--enum-limit", type=_positive_int("enum-limit"))
    _add_output(mc)

    minn = subs.add_parser("min-n", help="empirical smallest n reaching a success target")
    _add_resolution_group(minn)
    minn.add_argument("--d", type=_positive_int("d"), required=True)
    minn.add_argument("--target", type=_target_value, required=True)
    minn.add_argument("--trials", type=_positive_int("trials"), required=True)
    minn.add_argument("--seed", type=_seed_value, required=True)
    minn.add_argument("--max-n", type=_positive_int("max-n"), default=1 << 20)
    minn.add_argument("--enum-limit", type=_positive_int("enum-limit"))
    _add_output(minn)

    bounds = subs.add_parser("bounds", help="sample-size bound table")
    bounds.add_argument("--eps-list", type=_eps_list, required=True)
    bounds.add_argument("--d-list", type=_int_list("d", 2), required=True)
    _add_output(bounds)

    prob = subs.add_parser("prob-audit", help="hit-probability audit over feasible classes")
    prob.add_argument("--k-list", type=_int_list("k", 2), required=True)
    prob.add_argument("--d-list", type=_int_list("d", 1), required=True)
    prob.add_argument("--enum-limit", type=_positive_int("enum-limit"))
    _add_output(prob)

    count = subs.add_parser("count-audit", help="exact class counts vs. counting formulas")
    count.add_argument("--k-list", type=_int_list("k", 2), required=True)
    count.add_argument("--d-list", type=_int_list("d", 1), required=True)
    count.add_argument("--enum-limit", type=_positive_int("enum-limit"))
    _add_output(count)

    ineq = subs.add_parser("ineq-check", help="per-axis factor inequality across resolutions")
    ineq.add_argument("--k-max", type=_k_value, default=20)
    _add_output(ineq)

    return parser


def parse_cli(argv) -> RunConfig:
    """Parse and validate argv into a RunConfig; eps is converted to k and both kept."""
    args = build_parser().parse_args(argv)
    values = vars(args)
    eps = values.get("eps")
    k = values.get("k")
    if eps is not None and k is None:
        k = k_from_epsilon(eps).k
    known = set(RunConfig.__dataclass_fields__)
    payload = {key: val for key, val in values.items() if key in known and val is not None}
    payload["k"] = k
    payload["eps"] = eps
    return RunConfig(**payload)


_ECHO_KEYS = {
    "gen": ("k", "eps", "d", "n", "seed", "max_attempts"),
    "certify": ("k", "in_path"),
    "disp": ("in_path",),
    "mc": ("k", "eps", "d", "n", "trials", "seed", "fmt"),
    "min-n": ("k", "eps", "d", "target", "trials", "seed", "max_n", "fmt"),
    "bounds": ("eps_list", "d_list", "fmt"),
    "prob-audit": ("k_list", "d_list", "fmt"),
    "count-audit": ("k_list", "d_list", "fmt"),
    "ineq-check": ("k_max", "fmt"),
}


def _config_echo(config: RunConfig) -> str:
    """Canonical parameter echo; excludes execution details such as thread count."""
    parts = {}
    for key in _ECHO_KEYS[config.command]:
        value = getattr(config, key)
        if value is None:
            continue
        if isinstance(value, tuple):
            parts[key] = ",".join(str(v) for v in value)
        else:
            parts[key] = str(value)
    return " ".join(f"{key}={parts[key]}" for key in sorted(parts))


def _meta_lines(config: RunConfig, *, seeded: bool) -> list[str]:
    lines = [
        f"dispgrid {__version__}",
        f"command: {config.command}",
        f"config: {_config_echo(config)}",
    ]
    if seeded:
        lines.append(f"rng: {RNG_SCHEME}")
    return lines


def _cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _json_cell(value):
    if isinstance(value, Fraction):
        return str(value)
    return value


def _write_table(rows, columns, config: RunConfig, *, seeded: bool) -> None:
    meta = _meta_lines(config, seeded=seeded)
    buffer = io.StringIO()
    if config.fmt == "csv":
        for line in meta:
            buffer.write(f"# {line}\n")
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row[col]) for col in columns])
    else:
        buffer.write(json.dumps({"meta": meta}, sort_keys=True) + "\n")
        for row in rows:
            record = {col: _json_cell(row[col]) for col in columns}
            buffer.write(json.dumps(record, sort_keys=True) + "\n")
    text = buffer.getvalue()
    if config.out_path:
        Path(config.out_path).write_text(text)
    else:
        sys.stdout.write(text)


def _run_gen(config: RunConfig) -> int:
    try:
        result = generate_certified(
            config.k, config.d, config.n, config.seed,
            config.max_attempts, limit=config.enum_limit,
        )
    except CertificationError as exc:
        print(f"gen: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAIL
    points = result.points
    metadata = {
        "version": __version__,
        "config": _config_echo(config),
        "rng": RNG_SCHEME,
        "attempts": result.attempts,
        "distinct": points.distinct_count,
        "certified_dispersion_at_most": Fraction(1, 2**config.k),
    }
    write_point_set(points, config.out_path, metadata=metadata)
    print(
        f"certified {points.n} points (distinct {points.distinct_count}) with "
        f"dispersion <= 1/{2**config.k} after {result.attempts} attempt(s): {config.out_path}"
    )
    return EXIT_OK


def _run_certify(config: RunConfig) -> int:
    points = read_point_set(config.in_path)
    if points.repr != GRID_REPR:
        print("certify: certificate requires a grid-valued point set", file=sys.stderr)
        return EXIT_IO
    k = config.k if config.k is not None else points.k
    cert = certify_dispersion(points, k, limit=config.enum_limit)
    if cert.passed:
        print(f"pass: all {cert.classes_checked} core boxes hit; dispersion <= 1/{2**k}")
    else:
        witness = cert.witness
        print(
            f"fail: core box of class anchor={witness.anchor} span={witness.span} "
            f"missed after {cert.classes_checked} classes"
        )
    if config.confirm_exact:
        exact = largest_empty_box(points, limit=config.enum_limit)
        print(f"exact dispersion: {exact.volume} witness: {exact.witness.format_text()}")
    return EXIT_OK if cert.passed else EXIT_CHECK_FAIL


def _run_disp(config: RunConfig) -> int:
    points = read_point_set(config.in_path)
    result = largest_empty_box(points, limit=config.enum_limit)
    print(f"dispersion: {result.volume}")
    print(f"witness: {result.witness.format_text()}")
    return EXIT_OK


def _run_mc(config: RunConfig) -> int:
    summary = monte_carlo_success(
        config.k, config.d, config.n, config.trials, config.seed,
        threads=config.threads, limit=config.enum_limit,
    )
    columns = [
        "k", "d", "n", "trials", "successes", "success_rate",
        "ci_low", "ci_high", "master_seed",
    ]
    row = {col: getattr(summary, col) for col in columns}
    _write_table([row], columns, config, seeded=True)
    return EXIT_OK


def _run_min_n(config: RunConfig) -> int:
    result = empirical_min_n(
        config.k, config.d, config.target, config.trials, config.seed,
        max_n=config.max_n, limit=config.enum_limit,
    )
    columns = [
        "k", "d", "target", "trials",
        "n_star", "rate_at_n_star", "rate_below", "n_required", "within_required",
    ]
    row = {
        "k": config.k,
        "d": config.d,
        "target": config.target,
        "trials": config.trials,
        "n_star": result.n_star,
        "rate_at_n_star": result.rate_at_n_star,
        "rate_below": result.rate_below if result.rate_below is not None else "",
        "n_required": result.n_required,
        "within_required": result.within_required,
    }
    _write_table([row], columns, config, seeded=True)
    return EXIT_OK


def _run_bounds(config: RunConfig) -> int:
    columns = [
        "eps", "d", "k", "n_required", "n_logdim", "n_coarse", "n_lineardim",
        "better", "threshold_exceeds_d",
    ]
    rows = [
        {col: getattr(row, col) for col in columns}
        for row in bounds_table(config.eps_list, config.d_list)
    ]
    _write_table(rows, columns, config, seeded=False)
    return EXIT_OK


def _run_prob_audit(config: RunConfig) -> int:
    columns = ["k", "d", "min_hit_probability", "lower_bound", "pass"]
    rows = []
    all_passed = True
    for k, d in itertools.product(config.k_list, config.d_list):
        audit = audit_hit_probabilities(k, d, limit=config.enum_limit)
        all_passed &= audit.passed
        rows.append(
            {
                "k": k,
                "d": d,
                "min_hit_probability": audit.min_hit_probability,
                "lower_bound": audit.lower_bound,
                "pass": audit.passed,
            }
        )
    _write_table(rows, columns, config, seeded=False)
    return EXIT_OK if all_passed else EXIT_CHECK_FAIL


def _run_count_audit(config: RunConfig) -> int:
    columns = ["k", "d", "exact_feasible_count", "anchor_formula_count", "ln_class_count_bound"]
    rows = []
    for k, d in itertools.product(config.k_list, config.d_list):
        audit = count_audit(k, d, limit=config.enum_limit)
        rows.append({col: getattr(audit, col) for col in columns})
    _write_table(rows, columns, config, seeded=False)
    return EXIT_OK


def _run_ineq_check(config: RunConfig) -> int:
    columns = ["k", "lhs_min", "rhs", "margin", "min_j", "pass"]
    rows = []
    all_passed = True
    for k in range(2, config.k_max + 1):
        check = check_hit_factor_inequality(k)
        all_passed &= check.holds
        rows.append(
            {
                "k": k,
                "lhs_min": check.lhs_min,
                "rhs": check.rhs,
                "margin": check.margin,
                "min_j": check.min_j,
                "pass": check.holds,
            }
        )
    _write_table(rows, columns, config, seeded=False)
    return EXIT_OK if all_passed else EXIT_CHECK_FAIL


_HANDLERS = {
    "gen": _run_gen,
    "certify": _run_certify,
    "disp": _run_disp,
    "mc": _run_mc,
    "min-n": _run_min_n,
    "bounds": _run_bounds,
    "prob-audit": _run_prob_audit,
    "count-audit": _run_count_audit,
    "ineq-check": _run_ineq_check,
}


def run(config: RunConfig) -> int:
    """Dispatch a validated config; exceptions map to the documented exit codes."""
    try:
        return _HANDLERS[config.command](config)
    except GuardExceeded as exc:
        print(f"{config.command}: guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except PointSetParseError as exc:
        print(f"{config.command}: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"{config.command}: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"{config.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None) -> int:
    try:
        config = parse_cli(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    return run(config)


def console() -> None:
    sys.exit(main(sys.argv[1:]))
