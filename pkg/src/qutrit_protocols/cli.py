"""Command-line entry point: ``qutrit-protocols <subcommand>``."""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import analysis, classical, physical, protocols
from .config import PROTOCOLS, ConfigError, RunConfig

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_CONFIG = 2
EXIT_IO = 3


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    Path(out).write_text(text, encoding="utf-8")


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_ideal(args) -> int:
    chosen = PROTOCOLS if args.protocol == "all" else (args.protocol,)
    ok = True
    for name in chosen:
        result = protocols.VERIFIERS[name]()
        status = "PASS" if result.passed else "FAIL"
        extra = ", ".join(f"{k}={v}" for k, v in result.details.items())
        print(f"{name}: {result.cases} cases checked, {len(result.failures)} failures [{status}]"
              + (f" ({extra})" if extra else ""))
        ok &= result.passed
    return EXIT_OK if ok else EXIT_VERIFICATION


def build_config(args) -> RunConfig:
    data = {}
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{args.config}: invalid JSON ({exc})") from exc
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
    for key in ("protocol", "seed", "format", "out", "settings"):
        value = getattr(args, key, None)
        if value is not None:
            data[key] = value
    if args.triggers is not None:
        data.setdefault("noise", {})["triggers"] = args.triggers
    return RunConfig.from_dict(data)


def run_simulation(cfg: RunConfig) -> tuple[list[analysis.SettingReport], str]:
    """Run a campaign and return its reports plus the rendered output text."""
    settings = cfg.resolved_settings()
    noise = cfg.noise_config()
    counts = physical.run_campaign(settings, noise, cfg.seed)
    reports = []
    for setting, c in zip(settings, counts):
        if c.total == 0:
            raise ValueError(f"setting {setting.flat()} produced no detections")
        reports.append(analysis.report_setting(c.counts, setting.expected, cfg.protocol, setting.flat()))
    if cfg.format == "csv":
        return reports, analysis.to_csv(reports)
    doc = {
        "protocol": cfg.protocol,
        "seed": cfg.seed,
        "config_echo": cfg.echo(),
        "settings": [analysis.report_to_dict(r) for r in reports],
        "summary": analysis.campaign_summary(reports),
    }
    return reports, _dump_json(doc)


def cmd_simulate(args) -> int:
    cfg = build_config(args)
    reports, text = run_simulation(cfg)
    _emit(text, cfg.out)
    if cfg.out is not None:
        summary = analysis.campaign_summary(reports)[cfg.protocol]
        print(f"wrote {len(reports)} rows to {cfg.out}; mean {summary['metric']} "
              f"{analysis.pct(summary.get('mean', float('nan')))}%", file=sys.stderr)
    return EXIT_OK


def cmd_classical_bound(args) -> int:
    bound, argmax = classical.exhaustive_bound_reduced_class()
    print(f"reduced-class optimum: {bound.numerator}/{bound.denominator} = {float(bound):.4f}"
          f" ({len(argmax)} maximizers, e.g. r={argmax[0][0]} q={argmax[0][1]})")
    ok = bound == classical.CLASSICAL_BOUND
    if args.verify_paper_strategy:
        score = classical.evaluate_strategy(classical.paper_optimal_strategy())
        print(f"paper strategy: {score} = {float(score):.4f}")
        ok &= score.fraction == classical.CLASSICAL_BOUND
    if args.trials:
        best = classical.random_strategy_search(args.trials, np.random.default_rng(args.seed or 0))
        print(f"random search ({args.trials} trials, seed {args.seed or 0}): best {best} = {float(best):.4f}")
        ok &= best.fraction <= classical.CLASSICAL_BOUND
    return EXIT_OK if ok else EXIT_VERIFICATION


def cmd_settings_table(args) -> int:
    protocol = args.protocol or "ss"
    distributor = protocols.encoding_table(protocol, "distributor", args.convention)
    relay = protocols.encoding_table(protocol, "relay", args.convention)
    rows = []
    for key in distributor:
        setting = list(key) if isinstance(key, tuple) else [key]
        rows.append((setting, distributor[key], relay[key]))
    if args.format == "json":
        doc = {
            "protocol": protocol,
            "convention": args.convention,
            "unit": "rad",
            "rows": [{"setting": s, "distributor": list(d), "relay": list(r)} for s, d, r in rows],
        }
        _emit(_dump_json(doc), args.out)
        return EXIT_OK
    keys = ["S"] if protocol == "ccp" else ["x0", "x1"]
    lines = [",".join(keys + [f"{who}_{k}" for who in ("distributor", "relay") for k in ("0", "1", "2")])]
    for s, d, r in rows:
        lines.append(",".join([*map(str, s), *(f"{a:.6f}" for a in (*d, *r))]))
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_calibrate_drift(args) -> int:
    sigma = physical.calibrate_drift_sigma(args.target)
    print(f"target {args.target:g} -> drift sigma {sigma:.10f} rad "
          f"({math.degrees(sigma):.4f} deg)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qutrit-protocols",
        description="Simulate three-party single-qutrit communication protocols.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ideal", help="exhaustive noiseless verification")
    p.add_argument("--protocol", choices=[*PROTOCOLS, "all"], default="all")
    p.set_defaults(func=cmd_ideal)

    p = sub.add_parser("simulate", help="noisy Monte Carlo campaign")
    p.add_argument("--config", help="JSON campaign definition")
    p.add_argument("--protocol", choices=PROTOCOLS)
    p.add_argument("--seed", type=int)
    p.add_argument("--format", choices=["csv", "json"])
    p.add_argument("--out")
    p.add_argument("--settings", choices=["table", "exhaustive"])
    p.add_argument("--triggers", type=int)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("classical-bound", help="exact classical CCP bound")
    p.add_argument("--trials", type=int, default=0, help="random full-table strategies to sample")
    p.add_argument("--seed", type=int)
    p.add_argument("--verify-paper-strategy", action="store_true")
    p.set_defaults(func=cmd_classical_bound)

    p = sub.add_parser("settings-table", help="phase-shift encoding settings")
    p.add_argument("--protocol", choices=PROTOCOLS)
    p.add_argument("--convention", choices=list(protocols.CONVENTIONS), default="main-text")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_settings_table)

    p = sub.add_parser("calibrate-drift", help="solve for the phase-drift spread")
    p.add_argument("--target", type=float, default=physical.DEFAULT_DRIFT_TARGET,
                   help="expected wrong-detector probability from drift alone")
    p.set_defaults(func=cmd_calibrate_drift)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
