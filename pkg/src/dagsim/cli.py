"""Command-line front end.

Subcommands mirror the batch experiments: `run` executes one
simulation and appends its row to a CSV; `exp1`/`exp2` sweep the number
of rational miners (profit and collision views of the same sweep);
`exp1b` sweeps adversarial power with two miners; `exp3` sweeps the
block creation time with an all-honest or all-rational population.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .config import ConfigError, SimConfig, load_config, table1_config
from .experiments import (
    ALL_HONEST,
    ALL_MALICIOUS,
    DEFAULT_ALPHAS,
    DEFAULT_LAMBDA_GRID,
    DEFAULT_MALICIOUS_COUNTS,
    DEFAULT_SEEDS,
    alpha_sweep,
    append_csv_row,
    lambda_sweep,
    malicious_count_sweep,
    run_single,
    write_csv,
)


def _parse_int_list(text: str) -> tuple[int, ...]:
    return tuple(int(v) for v in text.split(",") if v.strip())


def _parse_float_list(text: str) -> tuple[float, ...]:
    return tuple(float(v) for v in text.split(",") if v.strip())


def _add_common(parser: argparse.ArgumentParser, with_seeds: bool = True) -> None:
    parser.add_argument("--config", help="base config file (flat key = value)")
    parser.add_argument("--out", required=True, help="output CSV path")
    parser.add_argument(
        "--blocks", type=int, help="override total_blocks (e.g. 1000 for quick runs)"
    )
    parser.add_argument(
        "--workers", type=int, default=1, help="concurrent runs for sweeps"
    )
    if with_seeds:
        parser.add_argument(
            "--seeds",
            type=_parse_int_list,
            default=DEFAULT_SEEDS,
            help="comma-separated seed list",
        )


def _base_config(args) -> SimConfig:
    cfg = load_config(args.config) if args.config else table1_config()
    if args.blocks is not None:
        cfg = replace(cfg, total_blocks=args.blocks)
    if getattr(args, "seed", None) is not None:
        cfg = replace(cfg, seed=args.seed)
    cfg.validate()
    return cfg


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dagsim",
        description="Block-DAG proof-of-work mining simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="one simulation, one CSV row")
    _add_common(p_run, with_seeds=False)
    p_run.add_argument("--seed", type=int, help="override the config seed")
    p_run.add_argument("--dump-dag", help="also write the block DAG, one line per block")

    p1 = sub.add_parser("exp1", help="profit vs number of rational miners")
    _add_common(p1)
    p1.add_argument(
        "--malicious",
        type=_parse_int_list,
        default=DEFAULT_MALICIOUS_COUNTS,
        help="comma-separated rational-miner counts",
    )

    p1b = sub.add_parser("exp1b", help="two-miner profit vs adversarial power")
    _add_common(p1b)
    p1b.add_argument(
        "--alphas",
        type=_parse_float_list,
        default=DEFAULT_ALPHAS,
        help="comma-separated adversarial power fractions in (0, 0.49]",
    )

    p2 = sub.add_parser("exp2", help="collision/throughput vs rational miners")
    _add_common(p2)
    p2.add_argument(
        "--malicious",
        type=_parse_int_list,
        default=DEFAULT_MALICIOUS_COUNTS,
        help="comma-separated rational-miner counts",
    )

    p3 = sub.add_parser("exp3", help="collision vs block creation time")
    _add_common(p3)
    p3.add_argument(
        "--lambdas",
        type=_parse_float_list,
        default=DEFAULT_LAMBDA_GRID,
        help="comma-separated block creation times in [10, 600] seconds",
    )
    p3.add_argument(
        "--mode",
        choices=(ALL_HONEST, ALL_MALICIOUS),
        default=ALL_HONEST,
        help="strategy assigned to every miner",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        base = _base_config(args)
        if args.command == "run":
            row = run_single(base, dump_dag_path=args.dump_dag)
            append_csv_row(row, args.out)
        elif args.command in ("exp1", "exp2"):
            rows = malicious_count_sweep(
                base,
                malicious_counts=args.malicious,
                seeds=args.seeds,
                workers=args.workers,
                experiment=args.command,
            )
            write_csv(rows, args.out)
        elif args.command == "exp1b":
            rows = alpha_sweep(
                base, alphas=args.alphas, seeds=args.seeds, workers=args.workers
            )
            write_csv(rows, args.out)
        else:  # exp3
            rows = lambda_sweep(
                base,
                lambdas=args.lambdas,
                mode=args.mode,
                seeds=args.seeds,
                workers=args.workers,
            )
            write_csv(rows, args.out)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConfigError as exc:
        print(f"error: invalid config: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
