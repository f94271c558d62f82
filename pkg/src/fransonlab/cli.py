"""``fransonlab`` command line: run, oracle, validate, fit.

Exit status: 0 success, 2 configuration error (nothing written), 3 runtime error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import platform
import sys
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import FitError, fit_fringe, read_records, write_plot_data, write_records
from .circuit import CircuitError, evaluate, path_table
from .config import PRESETS, ConfigError, ExperimentConfig, load_config
from .runner import physical_checks, preset_circuit, run_scan

EXIT_CONFIG, EXIT_RUNTIME = 2, 3


@dataclass
class RunManifest:
    config_path: str
    config_hash: str
    seed: int | None
    output_dir: str
    engines: list
    started: str
    finished: str
    files: list

    def write(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(asdict(self), fh, indent=2)


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _load(path: str, seed=None, engine=None) -> ExperimentConfig:
    overrides = {}
    if seed is not None:
        overrides["seed"] = seed
    if engine is not None:
        overrides["engine"] = engine
    if not Path(path).exists() and path in PRESETS:
        return ExperimentConfig.preset(path, **overrides)
    cfg = load_config(path)
    return cfg.with_overrides(**overrides) if overrides else cfg


def versions() -> dict:
    return {"fransonlab": __version__, "numpy": np.__version__, "python": platform.python_version()}


def cmd_run(args) -> int:
    started = _now()
    cfg = _load(args.config, args.seed, args.engine)
    results = run_scan(cfg)

    # everything is computed before the first file is written
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    files = []
    fits = {}
    for engine, records in results.items():
        name = f"fringe_{engine}.csv"
        write_records(out / name, records)
        files.append(name)
        if args.fit:
            fit = fit_fringe(records)
            fits[engine] = fit
            fit.write_json(out / f"fit_{engine}.json")
            write_plot_data(out / f"plot_{engine}.csv", records, fit)
            files += [f"fit_{engine}.json", f"plot_{engine}.csv"]
    meta = {
        "config": cfg.resolved,
        "config_hash": cfg.hash,
        "seed": cfg.seed,
        "engine": cfg.engine,
        "versions": versions(),
    }
    (out / "metadata.json").write_text(json.dumps(meta, indent=2, sort_keys=True))
    files.append("metadata.json")
    RunManifest(str(args.config), cfg.hash, cfg.seed, str(out), list(results), started, _now(),
                files + ["manifest.json"]).write(out / "manifest.json")

    for engine, fit in fits.items():
        print(f"{engine}: V = {fit.visibility:.4f} +/- {fit.sigma_visibility:.4f} "
              f"(chi2_red {fit.chi2_reduced:.2f})")
    print(f"wrote {len(files) + 1} files to {out}")
    return 0


def oracle_rows(cfg: ExperimentConfig) -> list[list[str]]:
    circuit = preset_circuit(cfg)
    rows = [["path", "delay_ps", "port", "re", "im", "prob"]]
    for r in path_table(circuit):
        rows.append([r["path"], ";".join(f"{d:.3f}" for d in r["delay_ps"]), r["port"],
                     f"{r['re']:.12e}", f"{r['im']:.12e}", f"{r['prob']:.12e}"])
    state = evaluate(circuit)
    rows.append(["sum_analyzed", "", "", "", "", f"{state.analyzed_probability:.12f}"])
    rows.append(["lost", "", "", "", "", f"{state.lost_probability:.12f}"])
    rows.append(["total", "", "", "", "", f"{state.total_probability:.12f}"])
    return rows


def cmd_oracle(args) -> int:
    rows = oracle_rows(_load(args.config))
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    if args.out:
        Path(args.out).write_text(buf.getvalue())
    sys.stdout.write(buf.getvalue())
    return 0


def cmd_validate(args) -> int:
    cfg = _load(args.config)
    checks = physical_checks(cfg)
    for c in checks:
        print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}: {c.detail}")
    print(f"{sum(c.passed for c in checks)}/{len(checks)} checks passed")
    return 0


def cmd_fit(args) -> int:
    try:
        records = read_records(args.records)
    except FileNotFoundError:
        raise ConfigError(f"record file not found: {args.records}") from None
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"malformed record file: {exc}") from None
    fit = fit_fringe(records)
    text = json.dumps(fit.to_json(), indent=2)
    if args.out:
        Path(args.out).write_text(text)
    print(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fransonlab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="simulate a phase scan")
    r.add_argument("config", help="config JSON (or a preset name)")
    r.add_argument("--seed", type=int)
    r.add_argument("--engine", choices=["analytic", "montecarlo", "both"])
    r.add_argument("--out", default="fransonlab_out")
    r.add_argument("--fit", action="store_true", help="also fit each fringe")
    r.set_defaults(func=cmd_run)

    o = sub.add_parser("oracle", help="print the path-sum table")
    o.add_argument("config")
    o.add_argument("--out")
    o.set_defaults(func=cmd_oracle)

    v = sub.add_parser("validate", help="check physical criteria")
    v.add_argument("config")
    v.set_defaults(func=cmd_validate)

    f = sub.add_parser("fit", help="fit a fringe record CSV")
    f.add_argument("records")
    f.add_argument("--out")
    f.set_defaults(func=cmd_fit)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "seed", None) is not None and not 0 <= args.seed < 2**64:
        print("error: --seed must be an unsigned 64-bit integer", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (FitError, CircuitError, RuntimeError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
