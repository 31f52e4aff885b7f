"""Command-line entry point: ``lorentz-heom {simulate,sweep,compare,presets}``.

Exit codes: 0 success, 2 configuration error, 3 numerical instability or
a hierarchy that would not converge.
"""

import argparse
import logging
import os
import sys
from dataclasses import replace

from . import config, csvio, experiments, heom

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3

_FLAG_KEYS = {
    "lam": "lambda", "gamma": "gamma", "t_end": "t_end", "dt": "dt",
    "depth": "depth", "initial": "initial", "mode": "mode", "out": "out",
    "gammas": "gammas",
}


def _add_run_flags(p):
    p.add_argument("--config", metavar="PATH")
    p.add_argument("--lambda", dest="lam", metavar="LAMBDA")
    p.add_argument("--gamma")
    p.add_argument("--t-end", dest="t_end")
    p.add_argument("--dt")
    p.add_argument("--depth")
    p.add_argument("--initial", help="ground-pair, fig2, phi-minus, phi-plus or 'c1,c2'")
    p.add_argument("--mode", choices=config.MODES)
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--gammas", metavar="v1,v2,...")
    p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                   help="any other config key")


def build_parser():
    parser = argparse.ArgumentParser(prog="lorentz-heom", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (("simulate", "evolve one configuration and write a time series"),
                       ("sweep", "steady-state concurrence over a list of gammas"),
                       ("compare", "hierarchy vs RWA (and oracle when gamma = 0)")):
        _add_run_flags(sub.add_parser(name, help=text))
    pre = sub.add_parser("presets", help="list, show or run the bundled presets")
    pre.add_argument("action", choices=("list", "show", "run"), nargs="?", default="list")
    pre.add_argument("name", nargs="?")
    pre.add_argument("--out-dir", default=".")
    return parser


def resolve_config(args):
    overrides = {}
    for attr, key in _FLAG_KEYS.items():
        value = getattr(args, attr, None)
        if value is not None:
            overrides[key] = value
    for item in args.set:
        key, sep, value = item.partition("=")
        if not sep:
            raise config.ConfigError(f"--set expects KEY=VALUE, got {item!r}")
        overrides.update(config.parse_pairs(f"{key}={value}"))
    return config.load(args.config, overrides)


def _out_path(cfg, default):
    return cfg.out or default


def cmd_simulate(cfg, out=None):
    out = out or sys.stdout
    result = experiments.run_simulation(cfg)
    path = _out_path(cfg, f"simulate_{cfg.mode}.csv")
    csvio.write_series(path, result.series)
    if result.depth is not None:
        print(f"depth: {result.depth}", file=out)
    print(f"max trace error: {result.max_trace_error:.3e}", file=out)
    print(f"wrote {path}", file=out)
    return EXIT_OK


def cmd_sweep(cfg, gammas=None, out=None):
    out = out or sys.stdout
    gammas = gammas or cfg.gammas or cfg.sweep_gammas
    if not gammas:
        raise config.ConfigError("sweep needs --gammas")
    if any(g <= 0 for g in gammas):
        raise config.ConfigError("sweep gammas must be positive")
    rows = experiments.run_sweep(cfg, gammas)
    path = _out_path(cfg, "sweep.csv")
    csvio.write_table(path, csvio.SWEEP_HEADER, (r.as_csv() for r in rows))
    for r in rows:
        flag = "" if r.converged else f"  [not converged] {r.message}"
        print(f"gamma={r.gamma:g}  C_ss={r.steady_concurrence:.6g}  depth={r.depth}{flag}",
              file=out)
    print(f"wrote {path}", file=out)
    return EXIT_NUMERIC if any(r.unstable for r in rows) else EXIT_OK


def cmd_compare(cfg, out=None):
    out = out or sys.stdout
    header, rows, run = experiments.run_compare(cfg)
    path = _out_path(cfg, "compare.csv")
    csvio.write_table(path, header, rows)
    print(f"depth: {run.depth}", file=out)
    print(f"max trace error: {run.max_trace_error:.3e}", file=out)
    for i, name in enumerate(header):
        if name.startswith("abs_diff"):
            print(f"max {name}: {max(r[i] for r in rows):.3e}", file=out)
    print(f"wrote {path}", file=out)
    return EXIT_OK


def cmd_presets(action, name, out_dir, out=None):
    out = out or sys.stdout
    if action == "list":
        for preset in config.PRESETS:
            print(preset, file=out)
        return EXIT_OK
    if name is None:
        raise config.ConfigError(f"presets {action} needs a preset name")
    if action == "show":
        out.write(config.preset_text(name))
        return EXIT_OK
    cfg = config.load_preset(name)
    os.makedirs(out_dir, exist_ok=True)
    status = EXIT_OK
    for gamma in cfg.gammas or (cfg.gamma,):
        run = replace(cfg.with_gamma(gamma), out=os.path.join(out_dir, f"{name}_gamma{gamma:g}.csv"))
        try:
            cmd_simulate(run, out)
        except (heom.InstabilityError, heom.ConvergenceError) as exc:
            print(f"gamma={gamma:g}: {exc}", file=out)
            status = EXIT_NUMERIC
    if cfg.sweep_gammas:
        sweep_cfg = replace(cfg, out=os.path.join(out_dir, f"{name}_sweep.csv"))
        status = max(status, cmd_sweep(sweep_cfg, cfg.sweep_gammas, out))
    return status


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "presets":
            return cmd_presets(args.action, args.name, args.out_dir)
        cfg = resolve_config(args)
        if args.command == "simulate":
            if cfg.mode == "sweep":
                return cmd_sweep(cfg)
            return cmd_simulate(cfg)
        if args.command == "sweep":
            return cmd_sweep(cfg)
        return cmd_compare(cfg)
    except config.ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (heom.InstabilityError, heom.ConvergenceError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
