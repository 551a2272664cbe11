import argparse
import json
import os
import sys
from dataclasses import asdict, replace

import pandas as pd
from loguru import logger

from fso_linksim.channel.fso_channel import link_loss
from fso_linksim.config import (
    DEFAULT_DB_URL,
    EXIT_CONFIG_ERROR,
    EXIT_OK,
    EXIT_RUNTIME_ERROR,
    NO_COLOR_ENV,
    REFERENCE_RECEIVED_POWER_DBM,
    REFERENCE_TRANSMITTANCE,
    SWEEP_PARAMS,
    WEATHER_PRESETS,
)
from fso_linksim.errors import ConfigError, FsoLinkSimError
from fso_linksim.metrics.link_budget import link_margin_db, paper_link_margin
from fso_linksim.metrics.max_range import max_range_for_q
from fso_linksim.service.compare import compare_presets
from fso_linksim.service.history import RunHistory
from fso_linksim.service.report_io import (
    format_table,
    report_summary,
    write_eye_csv,
    write_report_json,
    write_sweep_csv,
)
from fso_linksim.service.scenario import ScenarioConfig, resolve_config, save_config
from fso_linksim.service.simulate_link import run_link
from fso_linksim.service.sweep import run_sweep_reports, sweep_table


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(f"{self.prog}: {message}")


def setup_logging(verbose: bool = False) -> None:
    colorize = not os.getenv(NO_COLOR_ENV) and sys.stderr.isatty()
    logger.remove()
    logger.add(
        sys.stderr,
        level="DEBUG" if verbose else "INFO",
        colorize=colorize,
        format="<green>{time:HH:mm:ss.SSS}</green> | <level>{level: <7}</level> | {message}",
    )


def scenario_from_args(args) -> ScenarioConfig:
    return resolve_config(
        config_path=args.config,
        preset_name=args.preset,
        seed=args.seed,
        no_noise=args.no_noise,
    )


def record_history(args, command: str, reports) -> None:
    if args.db:
        if RunHistory(db_url=args.db).record(command, reports):
            logger.info(f"Stored {len(reports)} run(s) in {args.db}")


def cmd_simulate(args) -> int:
    config = scenario_from_args(args)
    report = run_link(config)
    if args.json:
        write_report_json(report, args.json, include_timing=args.with_timing)
        logger.info(f"Report written to {args.json}")
    if args.eye_csv:
        write_eye_csv(report.eye_diagram, args.eye_csv)
        logger.info(f"Eye traces written to {args.eye_csv}")
    print(report_summary(report).to_string(index=False))
    record_history(args, "simulate", [report])
    return EXIT_OK


def cmd_sweep(args) -> int:
    config = scenario_from_args(args)
    results = run_sweep_reports(
        config,
        param=args.param,
        start=args.start,
        stop=args.stop,
        steps=args.steps,
        workers=args.workers,
        independent_noise=args.independent_noise,
    )
    table = sweep_table(results)
    if args.csv:
        write_sweep_csv(table, args.csv)
        logger.info(f"Sweep table written to {args.csv}")
    print(format_table(table))
    record_history(args, "sweep", [report for _, report in results])
    return EXIT_OK


def budget_data(config: ScenarioConfig, show_reference: bool) -> dict:
    report = run_link(config.without_noise())
    data = asdict(link_loss(config.channel))
    data.update(
        received_power_dbm=report.received_power_dbm,
        modulation_penalty_db=report.modulation_penalty_db,
        sensitivity_dbm=config.sensitivity_dbm,
        link_margin_db=report.budget.link_margin_db,
        paper_link_margin=report.budget.paper_link_margin,
    )
    if show_reference and config.preset in REFERENCE_RECEIVED_POWER_DBM:
        reference_dbm = REFERENCE_RECEIVED_POWER_DBM[config.preset]
        data.update(
            reference_received_power_dbm=reference_dbm,
            reference_link_margin_db=link_margin_db(reference_dbm, config.sensitivity_dbm),
            reference_paper_link_margin=paper_link_margin(reference_dbm, config.sensitivity_dbm),
            reference_transmittance=REFERENCE_TRANSMITTANCE[config.preset],
        )
    return data


def cmd_budget(args) -> int:
    config = scenario_from_args(args)
    if args.no_geometric:
        config = replace(config, channel=config.channel.without_geometric_loss())
    data = budget_data(config, show_reference=args.paper)
    if args.format == "json":
        print(json.dumps(data, indent=2))
    else:
        table = pd.DataFrame(
            [(k, "undefined" if v is None else f"{v:.4g}") for k, v in data.items()],
            columns=["quantity", "value"],
        )
        print(table.to_string(index=False))
        print("paper_link_margin: paper-compat, non-physical units")
    return EXIT_OK


def cmd_max_range(args) -> int:
    config = scenario_from_args(args)
    range_km = max_range_for_q(config, args.q_target)
    print(f"max_range_km = {range_km:.6f}")
    return EXIT_OK


def cmd_compare(args) -> int:
    config = scenario_from_args(args)
    table, reports = compare_presets(config, args.presets)
    print(format_table(table))
    record_history(args, "compare", reports)
    return EXIT_OK


def cmd_write_config(args) -> int:
    save_config(scenario_from_args(args), args.path)
    logger.info(f"Config written to {args.path}")
    return EXIT_OK


def cmd_history(args) -> int:
    history_df = RunHistory(db_url=args.db or DEFAULT_DB_URL).prepare_history(limit=args.limit)
    print(format_table(history_df) if not history_df.empty else "no stored runs")
    return EXIT_OK


def parse_args(argv=None):
    scenario = ArgumentParser(add_help=False)
    scenario.add_argument("--preset", choices=list(WEATHER_PRESETS), help="weather preset")
    scenario.add_argument("--config", type=str, help="TOML scenario file")
    scenario.add_argument("--seed", type=int, help="noise seed")
    scenario.add_argument("--no-noise", action="store_true", help="disable receiver noise")
    scenario.add_argument("-v", "--verbose", action="store_true")

    storage = ArgumentParser(add_help=False)
    storage.add_argument(
        "--db", nargs="?", const=DEFAULT_DB_URL, default=None, help=f"store results (default {DEFAULT_DB_URL})"
    )

    parser = ArgumentParser(prog="fso-linksim", description="Desk-scale free-space optical link simulator")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    p = sub.add_parser("simulate", parents=[scenario, storage], help="run the end-to-end link")
    p.add_argument("--json", type=str, help="write the report as JSON")
    p.add_argument("--eye-csv", type=str, help="write eye traces as CSV")
    p.add_argument("--with-timing", action="store_true", help="include wall-clock time in the JSON")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", parents=[scenario, storage], help="sweep one parameter")
    p.add_argument("--param", choices=SWEEP_PARAMS, required=True)
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--csv", type=str, help="write the sweep table as CSV")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--independent-noise", action="store_true", help="per-point seeds from (seed, index)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("budget", parents=[scenario], help="loss breakdown and link margins")
    p.add_argument("--no-geometric", action="store_true", help="exclude beam-spread loss")
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.add_argument("--paper", action="store_true", help="also show the published reference values")
    p.set_defaults(func=cmd_budget)

    p = sub.add_parser("max-range", parents=[scenario], help="longest range meeting a Q target")
    p.add_argument("--q-target", type=float, required=True)
    p.set_defaults(func=cmd_max_range)

    p = sub.add_parser("compare", parents=[scenario, storage], help="run several weather presets")
    p.add_argument("--presets", nargs="+", choices=list(WEATHER_PRESETS), default=["rain", "fog"])
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("write-config", parents=[scenario], help="write the resolved config as TOML")
    p.add_argument("path", type=str)
    p.set_defaults(func=cmd_write_config)

    p = sub.add_parser("history", parents=[storage], help="list stored runs")
    p.add_argument("--limit", type=int, default=20)
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_history)

    return parser.parse_args(argv)


def main(argv=None) -> int:
    try:
        args = parse_args(argv)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    setup_logging(args.verbose)
    try:
        return args.func(args)
    except ConfigError as e:
        logger.error(str(e))
        return EXIT_CONFIG_ERROR
    except (FsoLinkSimError, ValueError) as e:
        logger.error(str(e))
        return EXIT_RUNTIME_ERROR
    except OSError as e:
        logger.error(f"cannot write output: {e}")
        return EXIT_RUNTIME_ERROR


if __name__ == "__main__":
    sys.exit(main())
