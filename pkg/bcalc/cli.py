"""Command line interface of the belief calculator.

Commands::

    bcalc eval EXPR [--check] [--mc N]
    bcalc convert --to {opinion,beta,pv} VALUE
    bcalc coarsen FRAME.json --target SUBSET [--method {smooth,stable}]
    bcalc plot EXPR [--samples N] [--out FILE.csv]

Exit status is 0 on success, 1 on domain or I/O errors and 2 on usage
errors.
"""

import io
import sys
import json
import logging
import argparse
import warnings
import dataclasses
from contextlib import redirect_stderr, redirect_stdout
from typing import Any, Optional
from collections.abc import Mapping, Sequence

from . import __version__
from .beta import AugmentedBeta, to_shape, pdf_grid, opinion_to_beta
from .expr import parse, evaluate, format_opinion
from .enums import ECommand, ECoarsening, EOutputFormat, ERepresentation
from .utils import EPS_DOGMATIC, format_number, json_number
from .codecs import BbaCodec, PvCodec, BetaCodec, OpinionCodec, load_env
from .frames import coarsen
from .oracle import mc_check_beta, check_homomorphism
from .opinion import Opinion, to_pv, expectation
from .errors import ClippingWarning
from .operators import NO_LIMITS, LimitParams

__all__ = ["CliConfig", "run", "main"]

logger = logging.getLogger(__name__)

EXIT_SUCCESS = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

#: independent random streams of the Monte-Carlo check
MC_STREAMS = 8

DEFAULT_SAMPLES = 101


@dataclasses.dataclass(frozen=True)
class CliConfig:
    """Validated command line configuration."""

    command: ECommand
    value: Optional[str] = None
    frame: Optional[str] = None
    target: Optional[str] = None
    method: ECoarsening = ECoarsening.SMOOTH
    to: ERepresentation = ERepresentation.OPINION
    samples: int = DEFAULT_SAMPLES
    env: Optional[str] = None
    out: Optional[str] = None
    output: EOutputFormat = EOutputFormat.JSON
    limits: LimitParams = NO_LIMITS
    seed: Optional[int] = None
    check: bool = False
    mc: int = 0
    workers: int = 1
    verbose: int = 0

    def __post_init__(self):
        for name, enum_type in (
            ("command", ECommand),
            ("method", ECoarsening),
            ("to", ERepresentation),
            ("output", EOutputFormat),
        ):
            object.__setattr__(self, name, enum_type(getattr(self, name)))
        if self.command is ECommand.COARSEN:
            if self.frame is None or self.target is None:
                raise ValueError("coarsen requires a frame and a target")
        elif self.value is None:
            raise ValueError(f"{self.command.value} requires an input value")
        if self.samples < 2:
            raise ValueError(
                f"invalid number of samples: {self.samples!r} "
                f"(must be at least 2)"
            )
        if self.mc < 0:
            raise ValueError(f"invalid number of draws: {self.mc!r}")
        if self.workers < 1:
            raise ValueError(f"invalid number of workers: {self.workers!r}")

    @classmethod
    def from_namespace(cls, args: argparse.Namespace) -> "CliConfig":
        limits = LimitParams(
            eta=args.eta, zeta=args.zeta, gamma=args.gamma, delta=args.delta
        )
        return cls(
            command=args.command,
            value=getattr(args, "value", None),
            frame=getattr(args, "frame", None),
            target=getattr(args, "target", None),
            method=getattr(args, "method", ECoarsening.SMOOTH.value),
            to=getattr(args, "to", ERepresentation.OPINION.value),
            samples=getattr(args, "samples", DEFAULT_SAMPLES),
            env=args.env,
            out=args.out,
            output=args.output,
            limits=limits,
            seed=args.seed,
            check=getattr(args, "check", False),
            mc=getattr(args, "mc", 0),
            workers=getattr(args, "workers", 1),
            verbose=args.verbose,
        )


def get_parser() -> argparse.ArgumentParser:
    """Build the argument parser."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--env", metavar="FILE", help="JSON file of named opinions"
    )
    for name in ("eta", "zeta", "gamma", "delta"):
        common.add_argument(
            f"--{name}",
            type=float,
            metavar="X",
            help=f"{name} limit parameter of the operators",
        )
    common.add_argument("--seed", type=int, help="random seed")
    common.add_argument(
        "--output",
        choices=[item.value for item in EOutputFormat],
        default=EOutputFormat.JSON.value,
        help="output format (default: %(default)s)",
    )
    common.add_argument("--out", metavar="FILE", help="output file")
    common.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="increase the logging verbosity",
    )

    parser = argparse.ArgumentParser(
        prog="bcalc", description="Belief calculus with opinions."
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    sub = subparsers.add_parser(
        ECommand.EVAL.value, parents=[common], help="evaluate an expression"
    )
    sub.add_argument("value", metavar="EXPR")
    sub.add_argument(
        "--check",
        action="store_true",
        help="compare against the probability level evaluation",
    )
    sub.add_argument(
        "--mc",
        type=int,
        default=0,
        metavar="N",
        help="Monte-Carlo check of the result with N draws",
    )
    sub.add_argument(
        "--workers", type=int, default=1, help="Monte-Carlo worker threads"
    )

    sub = subparsers.add_parser(
        ECommand.CONVERT.value,
        parents=[common],
        help="convert between representations",
    )
    sub.add_argument("value", metavar="VALUE")
    sub.add_argument(
        "--to",
        choices=[item.value for item in ERepresentation],
        required=True,
    )

    sub = subparsers.add_parser(
        ECommand.COARSEN.value,
        parents=[common],
        help="coarsen a bba onto a binary frame",
    )
    sub.add_argument("frame", metavar="FRAME")
    sub.add_argument(
        "--target", required=True, help="comma separated atom labels"
    )
    sub.add_argument(
        "--method",
        choices=[item.value for item in ECoarsening],
        default=ECoarsening.SMOOTH.value,
    )

    sub = subparsers.add_parser(
        ECommand.PLOT.value,
        parents=[common],
        help="sample the Beta PDF of an opinion",
    )
    sub.add_argument("value", metavar="EXPR")
    sub.add_argument(
        "--samples",
        type=int,
        default=DEFAULT_SAMPLES,
        help="number of grid points (default: %(default)s)",
    )

    return parser


# --- rendering ---------------------------------------------------------------
def _dumps(obj: Any) -> str:
    return json.dumps(obj, separators=(",", ":")) + "\n"


def _result_record(w: Opinion, caught: Sequence) -> dict:
    if w.u > EPS_DOGMATIC:
        beta = BetaCodec().encode(w)
        beta.pop("a")
    else:
        beta = None
    return {
        "opinion": OpinionCodec().encode(w),
        "expectation": json_number(expectation(w)),
        "beta": beta,
        "pv": PvCodec().encode(w),
        "diagnostics": [
            str(item.message)
            for item in caught
            if issubclass(item.category, ClippingWarning)
        ],
    }


def _result_text(w: Opinion) -> str:
    return f"{format_opinion(w)}\nE={format_number(expectation(w))}\n"


def _report_text(name: str, report: Mapping) -> str:
    fields = " ".join(
        f"{key}={format_number(value)}"
        for key, value in report.items()
        if isinstance(value, float)
    )
    status = "passed" if report["passed"] else "FAILED"
    return f"{name}: {status} {fields}\n"


def _representation_text(value) -> str:
    if isinstance(value, Opinion):
        return format_opinion(value) + "\n"
    if isinstance(value, AugmentedBeta):
        prefix, items = "beta", (value.r, value.s, value.a)
    else:
        prefix, items = "pv", (value.e, value.u, value.a)
    return f"{prefix}({','.join(format_number(v) for v in items)})\n"


# --- commands ----------------------------------------------------------------
def _evaluate(cfg: CliConfig, env: Mapping[str, Opinion]) -> Opinion:
    return evaluate(parse(cfg.value), env, cfg.limits)


def _cmd_eval(cfg, env, caught) -> str:
    node = parse(cfg.value)
    w = evaluate(node, env, cfg.limits)
    reports = {}
    if cfg.check:
        report = check_homomorphism(node, env, cfg.limits, result=w)
        reports["homomorphism"] = report.asdict()
    if cfg.mc:
        report = mc_check_beta(
            w, cfg.mc, cfg.seed, streams=MC_STREAMS, workers=cfg.workers
        )
        reports["monte_carlo"] = report.asdict()

    if cfg.output is EOutputFormat.TEXT:
        text = _result_text(w)
        for name, report in reports.items():
            text += _report_text(name, report)
        return text
    record = _result_record(w, caught)
    record.update(reports)
    return _dumps(record)


def _cmd_convert(cfg, env, caught) -> str:  # noqa: ARG001
    w = _evaluate(cfg, env)
    if cfg.to is ERepresentation.BETA:
        value = opinion_to_beta(w)
        codec = BetaCodec()
    elif cfg.to is ERepresentation.PV:
        value = to_pv(w)
        codec = PvCodec()
    else:
        value = w
        codec = OpinionCodec()
    if cfg.output is EOutputFormat.TEXT:
        return _representation_text(value)
    return _dumps(codec.encode(value))


def _cmd_coarsen(cfg, env, caught) -> str:  # noqa: ARG001
    bba = BbaCodec().load(cfg.frame)
    w = coarsen(bba, bba.frame.subset(cfg.target), cfg.method)
    if cfg.output is EOutputFormat.TEXT:
        return _result_text(w)
    return _dumps(_result_record(w, caught))


def _cmd_plot(cfg, env, caught) -> str:  # noqa: ARG001
    w = _evaluate(cfg, env)
    grid = pdf_grid(to_shape(opinion_to_beta(w)), cfg.samples)
    lines = ["p,density"]
    lines.extend(
        f"{format_number(point.p)},{format_number(point.density)}"
        for point in grid
    )
    return "\n".join(lines) + "\n"


_COMMANDS = {
    ECommand.EVAL: _cmd_eval,
    ECommand.CONVERT: _cmd_convert,
    ECommand.COARSEN: _cmd_coarsen,
    ECommand.PLOT: _cmd_plot,
}


def _setup_logging(verbose: int, stream):
    if verbose <= 0:
        return
    level = logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(
        stream=stream,
        level=level,
        format="%(levelname)s:%(name)s:%(message)s",
    )


def _execute(cfg: CliConfig, stdout, stderr) -> None:
    env = {}
    if cfg.env is not None:
        loaded = load_env(cfg.env)
        env = loaded.bindings
        logger.info(
            "environment %r: %s (observers %r)",
            cfg.env,
            sorted(env),
            dict(loaded.observers),
        )

    logger.debug("running %s with %r", cfg.command.value, cfg)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        output = _COMMANDS[cfg.command](cfg, env, caught)
    for item in caught:
        stderr.write(f"warning: {item.message}\n")

    if cfg.out is not None:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fd:
            fd.write(output)
        logger.info("output written to %r", cfg.out)
    else:
        stdout.write(output)


def run(
    argv: Optional[Sequence[str]] = None,
    *,
    stdout: Optional[io.TextIOBase] = None,
    stderr: Optional[io.TextIOBase] = None,
) -> int:
    """Run the command line interface and return the exit status."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    argv = sys.argv[1:] if argv is None else list(argv)

    parser = get_parser()
    try:
        with redirect_stdout(stdout), redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        cfg = CliConfig.from_namespace(args)
    except ValueError as exc:
        stderr.write(f"{parser.prog}: error: {exc}\n")
        return EXIT_USAGE

    _setup_logging(cfg.verbose, stderr)
    try:
        _execute(cfg, stdout, stderr)
    except (ValueError, OSError) as exc:
        logger.debug("command failed", exc_info=True)
        stderr.write(f"error: {exc}\n")
        return EXIT_FAILURE
    return EXIT_SUCCESS


def main():
    """Console script entry point."""
    sys.exit(run())
