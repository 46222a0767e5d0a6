"""
Command-line front end.

    python Backend/app.py generate --params p.json
    python Backend/app.py verify --suite all --n 1 --seed 7 --out report.json
    python Backend/app.py conventions --n 2
    python Backend/app.py tables --n 2 --sig 1,1
    python Backend/app.py invariant --direction theta
    python Backend/app.py invariant --probe --n 2

Exit codes: 0 pass, 1 identity failure or convention error, 2 input error, 3 size limit.
JSON goes to stdout or `--out`; logs go to stderr.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Any, Dict, Optional, Sequence, Tuple

from pydantic import ValidationError

from lctspin.clifford import comm_table_check, generators_dump, label_lct_generators
from lctspin.config import EXPLORATORY_SUITES, SUITE_NAMES, RunConfig
from lctspin.conventions import build_ledger
from lctspin.errors import DimensionMismatch, InputError, LabError
from lctspin.invariant_lab import build_U, invariant_commutator, nd_invariant_probe
from lctspin.lct_core import params_from_file
from lctspin.logger import logger
from lctspin.phase_ops import convention_oracle_1d
from lctspin.spin_rep import bundle_export, resolve_spin_convention, rho
from lctspin.utils.sampling import make_rng
from lctspin.utils.serialize import ParamsFile, write_json
from lctspin.weyl import CommutationConvention

INVARIANT_DIRECTIONS = ("theta", "phi", "mu")
PROBE_DIRECTIONS = ("theta", "phi", "mu", "lambda")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lctspin",
        description="Exact checks for the spinor representation of linear canonical transformations.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=1, help="dimension N of the LCT")
    common.add_argument("--sig", default=None, help="metric signature as P,M (default N,0)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=None, help="replace every numeric residual threshold")
    common.add_argument("--out", default=None, help="write the JSON artifact here instead of stdout")
    common.add_argument("--unsafe-size", action="store_true", help="lift the default N caps")
    common.add_argument("--quiet", action="store_true", help="only warnings and errors on stderr")

    sub = parser.add_subparsers(dest="subcommand", required=True)

    gen = sub.add_parser("generate", parents=[common], help="export A, g, X, O, theta and S for a params file")
    gen.add_argument("--params", required=True, help="JSON params file")

    ver = sub.add_parser("verify", parents=[common], help="run verification suites")
    ver.add_argument(
        "--suite",
        action="append",
        default=None,
        help=f"NAME[,NAME...]; one of {', '.join(SUITE_NAMES + EXPLORATORY_SUITES)} or all",
    )

    sub.add_parser("conventions", parents=[common], help="run every convention oracle and print the ledger")
    sub.add_parser("tables", parents=[common], help="dump generators and the commutator tables")

    inv = sub.add_parser("invariant", parents=[common], help="the quartic invariant at N=1, or the N-D probe")
    inv.add_argument("--direction", choices=PROBE_DIRECTIONS + ("all",), default="all")
    inv.add_argument("--probe", action="store_true", help="exploratory N >= 2 search")

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """Validation errors surface here, before any computation."""
    return RunConfig(
        subcommand=args.subcommand,
        params_file=getattr(args, "params", None),
        n=args.n,
        sig=args.sig,
        suites=getattr(args, "suite", None) or [],
        seed=args.seed,
        tol=args.tol,
        out=args.out,
        unsafe_size=args.unsafe_size,
        quiet=args.quiet,
        direction=getattr(args, "direction", "all"),
        probe=getattr(args, "probe", False),
    )


# ──────────────── Subcommands ──────────────── #


def cmd_generate(config: RunConfig) -> Tuple[Dict[str, Any], int]:
    if config.params_file is None:
        raise InputError("generate needs --params")
    try:
        pf = ParamsFile.load(config.params_file)
    except OSError as e:
        raise InputError(f"cannot read params file: {e}") from e
    params = params_from_file(pf)
    if config.sig is not None and config.sig != params.sig:
        raise DimensionMismatch(f"params file has signature {params.sig.tag}, --sig is {config.sig.tag}")
    lg = label_lct_generators(params.n, params.sig, unsafe_size=config.unsafe_size)
    bundle = rho(params, lg, resolve_spin_convention(params.sig, config.seed, unsafe_size=config.unsafe_size))
    return bundle_export(bundle), 0


def cmd_verify(config: RunConfig) -> Tuple[Dict[str, Any], int]:
    if not config.suites:
        raise InputError("verify needs at least one --suite")
    # langgraph is only needed here
    from lctspin.pipeline import run

    aggregate = run(config)
    logger.log_system(aggregate.summary())
    return aggregate.to_json_dict(), 0 if aggregate.passed else 1


def cmd_conventions(config: RunConfig) -> Tuple[Dict[str, Any], int]:
    ledger = build_ledger(config.n, config.signature, config.seed)
    logger.log_system(ledger.summary())
    return ledger.to_json_dict(), 0


def cmd_tables(config: RunConfig) -> Tuple[Dict[str, Any], int]:
    sig = config.signature
    lg = label_lct_generators(sig.n, sig, unsafe_size=config.unsafe_size)
    tables = [comm_table_check(lg, "nd")]
    if sig.n == 1:
        tables.insert(0, comm_table_check(lg, "1d"))
    payload: Dict[str, Any] = {
        "signature": sig.tag,
        "basis": lg.basis_labels(),
        "generators": generators_dump(lg.as_generator_set()),
        "tables": [t.to_json_dict() for t in tables],
    }
    if sig.n == 1:
        payload["u_table"] = dict(build_U(1, sig).table)
    return payload, 0 if all(t.passed for t in tables) else 1


def cmd_invariant(config: RunConfig) -> Tuple[Dict[str, Any], int]:
    sig = config.signature
    conv = CommutationConvention.from_tag(convention_oracle_1d().winner, sig.eta)
    if config.probe:
        directions = PROBE_DIRECTIONS if config.direction == "all" else (config.direction,)
        report = nd_invariant_probe(
            sig.n,
            sig,
            conv,
            directions,
            unsafe_size=config.unsafe_size,
            spin_conv=resolve_spin_convention(sig, config.seed, unsafe_size=config.unsafe_size),
        )
        return report.to_json_dict(), 0
    if config.direction == "lambda":
        raise InputError("lambda vanishes at N = 1; use --probe with --n 2")
    directions = INVARIANT_DIRECTIONS if config.direction == "all" else (config.direction,)
    report = invariant_commutator(conv, directions, rng=make_rng(config.seed))
    return report.to_json_dict(), 0 if report.passed else 1


COMMANDS = {
    "generate": cmd_generate,
    "verify": cmd_verify,
    "conventions": cmd_conventions,
    "tables": cmd_tables,
    "invariant": cmd_invariant,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        config = config_from_args(args)
    except ValidationError as e:
        logger.log_error(f"invalid arguments: {e}")
        return InputError.exit_code

    logger.set_level(logging.WARNING if config.quiet else logging.INFO)

    try:
        payload, code = COMMANDS[config.subcommand](config)
    except ValidationError as e:
        logger.log_error(f"invalid input: {e}")
        return InputError.exit_code
    except LabError as e:
        logger.log_error(f"{type(e).__name__}: {e}")
        return e.exit_code

    text = write_json(payload, config.out)
    if config.out is None:
        sys.stdout.write(text)
    return code
