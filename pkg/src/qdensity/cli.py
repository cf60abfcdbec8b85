"""Command-line interface.

Five subcommands tie the library into reproducible batch runs:

- ``estimate``: radial-limit density report (JSON or per-point CSV)
- ``coeffs``: coefficient vectors as ``index,coefficient`` CSV
- ``check``: zero-free-disk certificates at one or more radii
- ``oracle``: three-way agreement between enumeration and series routes
- ``variant``: unsigned composition counts and blow-up radius

Outputs are deterministic for identical inputs: floats print with 17
significant digits in CSV and shortest-round-trip repr in JSON, and rows
always keep path order.  Exit codes: 0 success, 1 usage or input errors,
2 when an estimate's verdict signals a hypothesis problem (the report is
still emitted).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from . import __version__
from .density import (
    RadialPath,
    VERDICT_HYPOTHESIS_VIOLATED,
    VERDICT_INCONSISTENT,
    estimate_density_reciprocal,
    zero_check,
)
from .oracle import (
    BudgetExceededError,
    DEFAULT_BUDGET,
    composition_profile,
    signed_partition_profile,
)
from .series import indicator_series, partial_sum_transform, reciprocal
from .subsets import (
    SetSpecError,
    SubsetSpec,
    TruncationInsufficientError,
    indicator_prefix,
    parse_set_spec,
)
from .variant import analyze_variant, composition_count_series, cplus_series

BUDGET_ENV_VAR = "QDENSITY_BUDGET"


class UsageError(ValueError):
    """Bad flag values discovered after argparse (e.g. a malformed path)."""


@dataclass
class RunConfig:
    """Everything one invocation needs, assembled from flags."""

    command: str
    set_spec: str
    n_max: int = 4096
    path: str = "geometric:1:20"
    mode: str = "series"
    out_format: str = "json"
    output_path: str = "-"
    radii: list[float] = field(default_factory=lambda: [0.9])
    samples: int = 256
    budget: int = DEFAULT_BUDGET
    which: str = "reciprocal"
    precision: int = 128
    head: int = 10
    coeffs_out: str | None = None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdensity",
        description="Arithmetic density of integer sets via signed composition counts "
        "and radial q-series limits.",
    )
    parser.add_argument("--version", action="version", version=f"qdensity {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    fmt = argparse.ArgumentDefaultsHelpFormatter

    p = sub.add_parser("estimate", help="estimate density from the radial limit", formatter_class=fmt)
    p.add_argument("--set", required=True, dest="set_spec", help="set spec, e.g. multiples:3")
    p.add_argument("--path", default="geometric:1:20", help="radial path, geometric:<scale>:<count>")
    p.add_argument("--nmax", type=int, default=4096, help="series truncation order")
    p.add_argument("--mode", choices=["series", "closed-form"], default="series")
    p.add_argument("--precision", type=int, default=128, help="evaluation precision in bits")
    p.add_argument("--out", choices=["json", "csv"], default="json", help="output format")
    p.add_argument("--output", default="-", help="output file, - for stdout")

    p = sub.add_parser("coeffs", help="emit coefficient vectors as CSV", formatter_class=fmt)
    p.add_argument("--set", required=True, dest="set_spec")
    p.add_argument("--nmax", type=int, default=64)
    p.add_argument(
        "--which",
        choices=["reciprocal", "indicator", "cumulative", "compositions", "cplus"],
        default="reciprocal",
        help="reciprocal coefficients, raw indicator, cumulative signed sums, "
        "composition counts, or cumulative composition counts",
    )
    p.add_argument("--output", default="-")

    p = sub.add_parser("check", help="zero-free-disk certificates", formatter_class=fmt)
    p.add_argument("--set", required=True, dest="set_spec")
    p.add_argument("--radius", type=float, action="append", help="circle radius; repeatable (default 0.9)")
    p.add_argument("--nmax", type=int, default=1024)
    p.add_argument("--samples", type=int, default=256)
    p.add_argument("--out", choices=["csv", "json"], default="csv")
    p.add_argument("--output", default="-")

    p = sub.add_parser("oracle", help="cross-check enumeration against the series route", formatter_class=fmt)
    p.add_argument("--set", required=True, dest="set_spec")
    p.add_argument("--nmax", type=int, default=12)
    p.add_argument("--budget", type=int, default=None,
                   help=f"enumeration node budget (default {DEFAULT_BUDGET}, "
                   f"overridable via {BUDGET_ENV_VAR})")

    p = sub.add_parser("variant", help="unsigned composition counts and blow-up radius", formatter_class=fmt)
    p.add_argument("--set", required=True, dest="set_spec")
    p.add_argument("--nmax", type=int, default=64)
    p.add_argument("--head", type=int, default=10, help="how many leading coefficients to report")
    p.add_argument("--coeffs-out", default=None, help="optional CSV path for the full coefficient table")
    p.add_argument("--output", default="-")

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command, set_spec=args.set_spec)
    for name in ("n_max", "path", "mode", "precision", "samples", "which", "head"):
        flag = {"n_max": "nmax"}.get(name, name)
        if hasattr(args, flag):
            setattr(cfg, name, getattr(args, flag))
    if hasattr(args, "out"):
        cfg.out_format = args.out
    if hasattr(args, "output"):
        cfg.output_path = args.output
    if hasattr(args, "radius"):
        cfg.radii = args.radius if args.radius else [0.9]
    if hasattr(args, "coeffs_out"):
        cfg.coeffs_out = args.coeffs_out
    if hasattr(args, "budget"):
        cfg.budget = _resolve_budget(args.budget)
    return cfg


def _resolve_budget(flag_value: int | None) -> int:
    if flag_value is not None:
        return flag_value
    env = os.environ.get(BUDGET_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{BUDGET_ENV_VAR} must be an integer, got {env!r}") from None
    return DEFAULT_BUDGET


def _parse_path(text: str) -> RadialPath:
    head, _, rest = text.partition(":")
    if head != "geometric":
        raise UsageError(f"unknown path kind {text!r}; expected geometric:<scale>:<count>")
    scale_text, sep, count_text = rest.partition(":")
    if not sep:
        raise UsageError("path needs two arguments: geometric:<scale>:<count>")
    try:
        scale = float(scale_text)
        count = int(count_text)
    except ValueError:
        raise UsageError(f"bad path arguments in {text!r}") from None
    try:
        return RadialPath.geometric(scale=scale, count=count)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _emit(text: str, output_path: str) -> None:
    if output_path == "-":
        sys.stdout.write(text)
    else:
        with open(output_path, "w", encoding="ascii", newline="") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# subcommands

def _run_estimate(cfg: RunConfig, spec: SubsetSpec) -> int:
    path = _parse_path(cfg.path)
    report = estimate_density_reciprocal(
        spec, path, n_max=cfg.n_max, mode=cfg.mode, precision=cfg.precision
    )
    if cfg.out_format == "json":
        text = json.dumps(report.to_dict()) + "\n"
    else:
        lines = ["q,F,tail_bound"]
        for p in report.per_point:
            lines.append(f"{_fmt(p.q)},{_fmt(p.value)},{_fmt(p.tail_bound)}")
        text = "\n".join(lines) + "\n"
    _emit(text, cfg.output_path)
    if report.verdict in (VERDICT_HYPOTHESIS_VIOLATED, VERDICT_INCONSISTENT):
        return 2
    return 0


def _run_coeffs(cfg: RunConfig, spec: SubsetSpec) -> int:
    if cfg.which == "indicator":
        coeffs = indicator_prefix(spec, cfg.n_max).coeffs
    elif cfg.which == "reciprocal":
        coeffs = reciprocal(indicator_series(indicator_prefix(spec, cfg.n_max))).coeffs
    elif cfg.which == "cumulative":
        c = reciprocal(indicator_series(indicator_prefix(spec, cfg.n_max)))
        coeffs = partial_sum_transform(c).coeffs
    elif cfg.which == "compositions":
        coeffs = composition_count_series(spec, cfg.n_max).coeffs
    else:
        coeffs = cplus_series(spec, cfg.n_max).coeffs
    lines = ["index,coefficient"]
    lines.extend(f"{i},{v}" for i, v in enumerate(coeffs))
    _emit("\n".join(lines) + "\n", cfg.output_path)
    return 0


def _run_check(cfg: RunConfig, spec: SubsetSpec) -> int:
    results = [
        zero_check(spec, radius, n_max=cfg.n_max, samples=cfg.samples)
        for radius in cfg.radii
    ]
    if cfg.out_format == "json":
        text = json.dumps([r.to_dict() for r in results]) + "\n"
    else:
        lines = ["radius,winding_number,min_modulus_on_circle,tail_bound_on_circle,conclusive"]
        for r in results:
            lines.append(
                ",".join(
                    _fmt(v)
                    for v in (
                        r.radius,
                        r.winding_number,
                        r.min_modulus_on_circle,
                        r.tail_bound_on_circle,
                        r.conclusive,
                    )
                )
            )
        text = "\n".join(lines) + "\n"
    _emit(text, cfg.output_path)
    return 0


def _run_oracle(cfg: RunConfig, spec: SubsetSpec) -> int:
    n = cfg.n_max
    by_partitions = signed_partition_profile(spec, n, budget=cfg.budget)
    signed, _ = composition_profile(spec, n, budget=cfg.budget)
    by_compositions = []
    acc = 0
    for v in signed:
        acc += v
        by_compositions.append(acc)
    c = reciprocal(indicator_series(indicator_prefix(spec, n)))
    by_series = list(partial_sum_transform(c).coeffs)

    mismatches = [
        i
        for i in range(n + 1)
        if not (by_partitions[i] == by_compositions[i] == by_series[i])
    ]
    print(f"set {spec.name}, n <= {n}")
    print("partition sums:   ", by_partitions)
    print("composition sums: ", by_compositions)
    print("series route:     ", by_series)
    if mismatches:
        print(f"3-way agreement: FAIL at n in {mismatches}")
        return 1
    print("3-way agreement: PASS")
    return 0


def _run_variant(cfg: RunConfig, spec: SubsetSpec) -> int:
    report = analyze_variant(spec, cfg.n_max)
    counts = composition_count_series(spec, cfg.n_max)
    head = min(cfg.head, cfg.n_max + 1)
    payload = {
        "set": spec.name,
        "n_max": cfg.n_max,
        "radius": report.radius_estimate,
        "diverges_at_1": report.diverges_at_1,
        "smallest_real_singularity": report.smallest_real_singularity,
        "c_head": list(counts.coeffs[:head]),
        "cplus_head": list(report.cplus.coeffs[:head]),
    }
    _emit(json.dumps(payload) + "\n", cfg.output_path)
    if cfg.coeffs_out:
        lines = ["index,compositions,cumulative"]
        lines.extend(
            f"{i},{counts.coeffs[i]},{report.cplus.coeffs[i]}"
            for i in range(cfg.n_max + 1)
        )
        _emit("\n".join(lines) + "\n", cfg.coeffs_out)
    return 0


_RUNNERS = {
    "estimate": _run_estimate,
    "coeffs": _run_coeffs,
    "check": _run_check,
    "oracle": _run_oracle,
    "variant": _run_variant,
}


def run(cfg: RunConfig) -> int:
    """Execute one configured invocation; returns the process exit code."""
    try:
        spec = parse_set_spec(cfg.set_spec)
        return _RUNNERS[cfg.command](cfg, spec)
    except SetSpecError as exc:
        print(f"error: invalid set spec: {exc}", file=sys.stderr)
        return 1
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except TruncationInsufficientError as exc:
        print(f"error: truncation insufficient: {exc}", file=sys.stderr)
        return 1
    except BudgetExceededError as exc:
        print(f"error: {exc}; raise --budget or {BUDGET_ENV_VAR}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return 1


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
