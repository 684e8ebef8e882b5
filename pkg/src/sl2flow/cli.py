"""Command-line interface.

Subcommands::

    geodesic   sample a geodesic through the identity
    magnetic   sample a contact magnetic trajectory
    deform     sample a trajectory of a deformed structure (c < -3)
    iwasawa    print the (x, y, theta) factorization of a matrix
    exp        print the group exponential of an algebra vector
    classify   classify a one-parameter subgroup and its projected locus
    verify     run every runtime check suite

Trajectory commands emit one row per sample as CSV (default) or JSON, to a
file or standard output.  Numeric fields are printed with 17 significant
digits, so identical configurations produce byte-identical output and JSON
parses back to the exact sample values.

Exit status: 0 on success; 1 when ``verify`` finds a residual above its
tolerance; 2 on invalid arguments (with a one-line diagnostic on stderr).
The environment variable ``SL2FLOW_TOL_SCALE`` multiplies every ``verify``
tolerance (default 1.0).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional, Sequence, TextIO

from . import flows, group, special, verify
from .algebra import AlgebraVector
from .group import GroupMatrix

__all__ = ["RunConfig", "run", "main"]

#: CSV column order (JSON sample objects use the same field names)
COLUMNS = ("s", "x", "y", "theta_unwrapped", "p11", "p12", "p21", "p22", "A", "B", "C")

_DEFAULT_STEP = 1e-3

TOL_SCALE_ENV = "SL2FLOW_TOL_SCALE"


@dataclass(frozen=True)
class RunConfig:
    """One resolved invocation: the command plus everything it consumes."""

    command: str
    velocity: Optional[tuple[float, float, float]] = None
    charge: float = 0.0
    s_min: float = 0.0
    s_max: float = 1.0
    samples: Optional[int] = None
    holomorphic_c: Optional[float] = None
    format: str = "csv"
    output: Optional[str] = None
    matrix: Optional[tuple[float, float, float, float]] = None
    s: float = 1.0
    seed: int = 0
    tol_scale: float = 1.0

    @property
    def n_samples(self) -> int:
        """Explicit sample count, or one per default step of the range."""
        if self.samples is not None:
            return self.samples
        return round((self.s_max - self.s_min) / _DEFAULT_STEP) + 1


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _floats(text: str, n: int, what: str) -> tuple[float, ...]:
    parts = text.split(",")
    try:
        values = tuple(float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"{what} must be {n} comma-separated numbers, got {text!r}"
        ) from None
    if len(values) != n:
        raise argparse.ArgumentTypeError(
            f"{what} must have {n} components, got {len(values)}"
        )
    return values


def _triple(text: str) -> tuple[float, ...]:
    return _floats(text, 3, "a velocity")


def _pair(text: str) -> tuple[float, ...]:
    return _floats(text, 2, "a range")


def _quad(text: str) -> tuple[float, ...]:
    return _floats(text, 4, "a matrix")


def _add_trajectory_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--X",
        type=_triple,
        required=True,
        metavar="A,B,C",
        help="initial velocity components in the orthonormal frame",
    )
    sub.add_argument(
        "--range",
        type=_pair,
        default=(0.0, 1.0),
        metavar="SMIN,SMAX",
        help="parameter interval (default 0,1); spell --range=-1,2 when "
        "s_min is negative",
    )
    sub.add_argument(
        "--samples",
        type=int,
        default=None,
        metavar="N",
        help="number of samples (default: one per parameter step of 1e-3)",
    )
    sub.add_argument(
        "--format", choices=("csv", "json"), default="csv", help="output format"
    )
    sub.add_argument(
        "--output",
        default=None,
        metavar="PATH",
        help="write to this file instead of standard output",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sl2flow",
        description="Trajectories, factorizations, and checks on SL(2,R).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("geodesic", help="sample a geodesic through the identity")
    _add_trajectory_options(p)

    p = sub.add_parser("magnetic", help="sample a contact magnetic trajectory")
    _add_trajectory_options(p)
    p.add_argument("--q", type=float, default=0.0, help="charge (default 0)")

    p = sub.add_parser(
        "deform", help="sample a trajectory of a deformed structure (c < -3)"
    )
    _add_trajectory_options(p)
    p.add_argument("--q", type=float, default=0.0, help="charge (default 0)")
    p.add_argument(
        "--c",
        type=float,
        required=True,
        metavar="C",
        help="holomorphic sectional curvature, below -3",
    )

    p = sub.add_parser("iwasawa", help="factor a matrix into (x, y, theta)")
    p.add_argument(
        "--matrix",
        type=_quad,
        required=True,
        metavar="P11,P12,P21,P22",
        help="row-major entries of a determinant-one matrix",
    )

    p = sub.add_parser("exp", help="print the group exponential exp(s X)")
    p.add_argument("--X", type=_triple, required=True, metavar="A,B,C")
    p.add_argument("--s", type=float, default=1.0, help="parameter (default 1)")

    p = sub.add_parser(
        "classify", help="classify exp(sX) and its projected base locus"
    )
    p.add_argument("--X", type=_triple, required=True, metavar="A,B,C")

    p = sub.add_parser("verify", help="run every runtime check suite")
    p.add_argument("--seed", type=int, default=0, help="draw seed (default 0)")

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    kwargs = {"command": args.command}
    if args.command in ("geodesic", "magnetic", "deform"):
        kwargs.update(
            velocity=args.X,
            s_min=args.range[0],
            s_max=args.range[1],
            samples=args.samples,
            format=args.format,
            output=args.output,
        )
        if args.command in ("magnetic", "deform"):
            kwargs["charge"] = args.q
        if args.command == "deform":
            kwargs["holomorphic_c"] = args.c
    elif args.command == "iwasawa":
        kwargs["matrix"] = args.matrix
    elif args.command == "exp":
        kwargs.update(velocity=args.X, s=args.s)
    elif args.command == "classify":
        kwargs["velocity"] = args.X
    elif args.command == "verify":
        kwargs["seed"] = args.seed
        kwargs["tol_scale"] = _tol_scale_from_env()
    return RunConfig(**kwargs)


def _tol_scale_from_env() -> float:
    raw = os.environ.get(TOL_SCALE_ENV)
    if raw is None:
        return 1.0
    try:
        value = float(raw)
    except ValueError:
        raise ValueError(f"{TOL_SCALE_ENV} must be a number, got {raw!r}") from None
    if not value > 0.0:
        raise ValueError(f"{TOL_SCALE_ENV} must be positive, got {value}")
    return value


# ---------------------------------------------------------------------------
# emission
# ---------------------------------------------------------------------------


def _g17(value: float) -> str:
    # value + 0.0 canonicalizes -0.0 so zeros print without a sign
    return "%.17g" % (value + 0.0)


def _rows(path: flows.SampledPath):
    for k in range(len(path.s)):
        yield (
            path.s[k],
            path.x[k],
            path.y[k],
            path.theta[k],
            path.entries[k, 0],
            path.entries[k, 1],
            path.entries[k, 2],
            path.entries[k, 3],
            path.omega[k, 0],
            path.omega[k, 1],
            path.omega[k, 2],
        )


def _emit_csv(path: flows.SampledPath, stream: TextIO) -> None:
    stream.write(",".join(COLUMNS) + "\n")
    for row in _rows(path):
        stream.write(",".join(_g17(v) for v in row) + "\n")


def _emit_json(path: flows.SampledPath, config: RunConfig, stream: TextIO) -> None:
    doc = {
        "command": config.command,
        "config": {
            "velocity": list(config.velocity),
            "charge": config.charge,
            "range": [config.s_min, config.s_max],
            "samples": config.n_samples,
            "holomorphic_c": config.holomorphic_c,
            "format": config.format,
            "output": config.output,
        },
        "samples": [
            {name: float(v) for name, v in zip(COLUMNS, row)} for row in _rows(path)
        ],
    }
    json.dump(doc, stream, indent=2)
    stream.write("\n")


def _emit(path: flows.SampledPath, config: RunConfig, stream: TextIO) -> None:
    if config.format == "json":
        _emit_json(path, config, stream)
    else:
        _emit_csv(path, stream)


# ---------------------------------------------------------------------------
# command bodies
# ---------------------------------------------------------------------------


def _run_trajectory(config: RunConfig, stream: TextIO) -> int:
    x0 = AlgebraVector(*config.velocity)
    flows.TrajectorySpec(
        x0=x0,
        q=config.charge,
        s_min=config.s_min,
        s_max=config.s_max,
        n_samples=config.n_samples,
    )
    if config.command == "geodesic":
        path = flows.sample_geodesic(x0, config.s_min, config.s_max, config.n_samples)
    elif config.command == "magnetic":
        path = flows.sample_magnetic(
            x0, config.charge, config.s_min, config.s_max, config.n_samples
        )
    else:
        path = special.sample_deformed_magnetic(
            config.holomorphic_c,
            x0,
            config.charge,
            config.s_min,
            config.s_max,
            config.n_samples,
        )
    _emit(path, config, stream)
    return 0


def _run_iwasawa(config: RunConfig, stream: TextIO) -> int:
    coords = group.iwasawa(GroupMatrix(*config.matrix))
    stream.write(f"x={_g17(coords.x)} y={_g17(coords.y)} theta={_g17(coords.theta)}\n")
    return 0


def _run_exp(config: RunConfig, stream: TextIO) -> int:
    p = group.exp_algebra(AlgebraVector(*config.velocity), config.s)
    stream.write(
        f"p11={_g17(p.p11)} p12={_g17(p.p12)} p21={_g17(p.p21)} p22={_g17(p.p22)}\n"
    )
    return 0


def _run_classify(config: RunConfig, stream: TextIO) -> int:
    x = AlgebraVector(*config.velocity)
    cls = special.classify_one_param(x)
    a, b, c = cls.abc
    stream.write(
        f"kind={cls.kind.value} a={_g17(a)} b={_g17(b)} c={_g17(c)} "
        f"delta={_g17(cls.delta)}\n"
    )
    if cls.kind is special.GeodesicKind.NOT_GEODESIC:
        stream.write("locus=none\n")
        return 0
    locus = special.projected_locus(x)
    if isinstance(locus, special.Circle):
        stream.write(
            f"locus=circle center_x={_g17(locus.center_x)} "
            f"radius={_g17(locus.radius)}\n"
        )
    elif isinstance(locus, special.VerticalLine):
        stream.write("locus=vertical-line\n")
    else:
        stream.write(f"locus=fiber-point x={_g17(locus.x)} y={_g17(locus.y)}\n")
    return 0


def _run_verify(config: RunConfig, stream: TextIO) -> int:
    results = verify.run_all(tol_scale=config.tol_scale, seed=config.seed)
    for r in results:
        flag = "ok  " if r.passed else "FAIL"
        stream.write(
            f"{flag} {r.suite}.{r.name}: residual {r.residual:.3e} "
            f"tolerance {r.tolerance:.3e}\n"
        )
    failures = 0
    for suite in verify.SUITES:
        in_suite = [r for r in results if r.suite == suite]
        worst = max(in_suite, key=lambda r: r.residual)
        bad = sum(not r.passed for r in in_suite)
        failures += bad
        status = "all passed" if bad == 0 else f"{bad} FAILED"
        stream.write(
            f"suite {suite}: max residual {worst.residual:.3e} ({worst.name}), "
            f"{len(in_suite)} checks, {status}\n"
        )
    stream.write(f"verify: {len(results)} checks, {failures} failures\n")
    return 0 if failures == 0 else 1


_RUNNERS = {
    "geodesic": _run_trajectory,
    "magnetic": _run_trajectory,
    "deform": _run_trajectory,
    "iwasawa": _run_iwasawa,
    "exp": _run_exp,
    "classify": _run_classify,
    "verify": _run_verify,
}


def run(config: RunConfig) -> int:
    """Execute a resolved configuration; returns the process exit status."""
    runner = _RUNNERS[config.command]
    if config.output:
        with open(config.output, "w", encoding="utf-8") as fh:
            return runner(config, fh)
    return runner(config, sys.stdout)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else int(exc.code)
    try:
        config = _config_from_args(args)
        return run(config)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0


if __name__ == "__main__":
    sys.exit(main())
