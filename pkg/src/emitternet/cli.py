"""Command line surface: reproducible runs over the analysis modules.

Each subcommand writes a ``<command>_summary.json`` document plus
plot-ready CSV tables into the output directory. Summaries embed the tool
version, the SHA-256 hash of the fully resolved configuration, and the
seeds, so identical config and seed reproduce byte-identical output
except for the single ``generated_at`` timestamp field.

Exit codes: 0 success, 1 usage error, 2 data or validation error,
3 fit non-convergence. Errors are printed as single-line JSON on stderr.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import __version__
from .config import RunConfig, default_config
from .errors import ConfigError, EmitterNetError, LineListError, UsageError
from .lineio import (
    read_line_list,
    read_spectrum,
    records_to_emitters,
    write_line_list,
    write_spectrum,
    write_table,
)
from .overlap import (
    birthday_threshold,
    bootstrap_std_error,
    fit_slope_through_origin,
    histogram,
    monte_carlo_threshold,
    overlap_curve,
)
from .ple import LorentzianPeak, classify_pair_spectrum, fit_multi_lorentzian, synthesize
from .register import (
    LossModel,
    fidelity_vs_eta_sweep,
    published_model_fidelity,
    run_ghz_chain,
    run_ghz_chain_with_loss,
)
from .seeding import SeedSpec
from .spatial import ConfocalPsf, occupancy_stats, sample_scene, spectral_arrangement_rate
from .spectral import lifetime_limited_linewidth, sample_ensemble, summarize_ensemble

SEED_ENV_VAR = "EMITTERNET_SEED"

PROVENANCE_NOTE = (
    "Overlap statistics are computed from constructed fixtures or parametric "
    "ensemble resampling; the measured per-emitter line list is not published "
    "and is represented only by its distribution parameters."
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: A003 - argparse API
        raise UsageError(message)


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat()


def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="path to a JSON run configuration")
    common.add_argument("--out", type=Path, help="output directory")
    common.add_argument("--seed", type=int, help="base seed (overrides config and environment)")
    common.add_argument("--stream-index", type=int, help="seed stream index")
    common.add_argument("--threads", type=int, help="cap on worker threads")

    parser = _Parser(prog="emitternet", description=__doc__)
    parser.add_argument("--version", action="version", version=f"emitternet {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", parents=[common], help="sample an emitter ensemble to CSV")
    p.add_argument("--n", type=int, help="number of emitters")

    p = sub.add_parser("overlap", parents=[common], help="pair-overlap probability curve")
    p.add_argument("--input", type=Path, help="line-list CSV (default: sample from the model)")
    p.add_argument("--n", type=int, help="emitters to sample when no input file is given")
    p.add_argument(
        "--window-mhz", type=float, action="append", help="overlap window (repeatable)"
    )
    p.add_argument("--bootstrap", type=int, help="bootstrap resamples for error bars")

    p = sub.add_parser("birthday", parents=[common], help="collision threshold analysis")
    p.add_argument("--q", type=float, help="pairwise overlap probability")
    p.add_argument("--target", type=float, help="target collision probability")
    p.add_argument("--mc", action="store_true", help="add a sequential Monte Carlo cross-check")
    p.add_argument("--trials", type=int, help="Monte Carlo trials")
    p.add_argument("--window-mhz", type=float, help="overlap window for the Monte Carlo run")

    p = sub.add_parser("fit-ple", parents=[common], help="multi-Lorentzian spectrum fit")
    p.add_argument("--input", type=Path, help="spectrum CSV (frequency_ghz,counts)")
    p.add_argument("--synthetic", action="store_true", help="fit a synthesized demo spectrum")
    p.add_argument("--k", type=int, help="number of peaks")
    p.add_argument("--classify", action="store_true", help="classify a 3-peak pair spectrum")
    p.add_argument("--max-iterations", type=int, default=None, help=argparse.SUPPRESS)

    p = sub.add_parser("protocol", parents=[common], help="heralded GHZ chain simulation")
    p.add_argument("--n", type=int, help="number of spin qubits")
    p.add_argument("--eta", type=float, help="photon detection efficiency")
    p.add_argument("--sweep", action="store_true", help="also sweep fidelity over eta")

    p = sub.add_parser("spatial", parents=[common], help="confocal spot occupancy statistics")
    p.add_argument("--density", type=float, help="emitter density per cubic micron")
    p.add_argument("--lateral-fwhm-um", type=float, help="lateral PSF FWHM (required)")
    p.add_argument("--axial-fwhm-um", type=float, help="axial PSF FWHM")
    p.add_argument("--trials", type=int, help="Monte Carlo trials")
    p.add_argument("--chain-k", type=int, help="spectral chain length to evaluate")
    p.add_argument("--chain-window-mhz", type=float, help="chain overlap window")
    p.add_argument("--export-scene", action="store_true", help="also export a sampled 3D scene")

    sub.add_parser("report", parents=[common], help="aggregate summaries in the output directory")
    return parser


def _load_config(args) -> RunConfig:
    if args.config is not None:
        try:
            text = Path(args.config).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        cfg = RunConfig.from_json(text)
    else:
        cfg = RunConfig.from_mapping({})
    overrides: dict[str, Any] = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if getattr(args, "stream_index", None) is not None:
        overrides["stream_index"] = args.stream_index
    if args.threads is not None:
        overrides["threads"] = args.threads
    if args.out is not None:
        overrides["output_dir"] = str(args.out)

    command_overrides: dict[str, Any] = {}
    if args.command == "sample" and args.n is not None:
        command_overrides = {"sample": {"n_emitters": args.n}}
    elif args.command == "overlap":
        section: dict[str, Any] = {}
        if args.bootstrap is not None:
            section["bootstrap_resamples"] = args.bootstrap
        if section:
            command_overrides["overlap"] = section
        if args.n is not None:
            command_overrides["sample"] = {"n_emitters": args.n}
        if args.window_mhz:
            overrides["windows_mhz"] = [float(w) for w in args.window_mhz]
    elif args.command == "birthday":
        section = {}
        if args.q is not None:
            section["q"] = args.q
        if args.target is not None:
            section["target"] = args.target
        if args.mc:
            section["monte_carlo"] = True
        if args.trials is not None:
            section["trials"] = args.trials
        if args.window_mhz is not None:
            section["window_mhz"] = args.window_mhz
        if section:
            command_overrides["birthday"] = section
    elif args.command == "fit-ple":
        section = {}
        if args.k is not None:
            section["n_peaks"] = args.k
        if args.classify:
            section["classify"] = True
        if section:
            command_overrides["fit_ple"] = section
    elif args.command == "protocol":
        section = {}
        if args.n is not None:
            section["n_qubits"] = args.n
        if args.eta is not None:
            section["eta"] = args.eta
        if section:
            command_overrides["protocol"] = section
    elif args.command == "spatial":
        section = {}
        if args.density is not None:
            section["density_per_um3"] = args.density
        if args.lateral_fwhm_um is not None:
            section["lateral_fwhm_um"] = args.lateral_fwhm_um
        if args.axial_fwhm_um is not None:
            section["axial_fwhm_um"] = args.axial_fwhm_um
        if args.trials is not None:
            section["trials"] = args.trials
        if args.chain_k is not None:
            section["chain_length"] = args.chain_k
        if args.chain_window_mhz is not None:
            section["chain_window_mhz"] = args.chain_window_mhz
        if section:
            command_overrides["spatial"] = section
    overrides.update(command_overrides)
    return cfg.with_overrides(overrides)


def _resolve_seed(cfg: RunConfig) -> SeedSpec:
    if cfg.data["seed"] is not None:
        return cfg.seed_spec()
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return SeedSpec(seed=int(env), stream_index=int(cfg.data["stream_index"]))
        except ValueError:
            raise ConfigError(f"{SEED_ENV_VAR} must be an integer, got {env!r}") from None
    return cfg.seed_spec(fallback=0)


def _out_dir(cfg: RunConfig) -> Path:
    out = cfg.data["output_dir"] or "emitternet_out"
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _summary_slug(command: str) -> str:
    return command.replace("-", "_")


def _write_summary(
    out_dir: Path, command: str, cfg: RunConfig, seed: SeedSpec, results: dict[str, Any]
) -> Path:
    doc = {
        "tool": "emitternet",
        "version": __version__,
        "command": command,
        "config_hash": cfg.config_hash(),
        "config": cfg.data,
        "seed": {"seed": seed.seed, "stream_index": seed.stream_index},
        "threads": cfg.data["threads"] if cfg.data["threads"] is not None else os.cpu_count(),
        "generated_at": _utc_now(),
        "results": results,
    }
    path = out_dir / f"{_summary_slug(command)}_summary.json"
    path.write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    return path


def _csv_comments(cfg: RunConfig, seed: SeedSpec) -> list[str]:
    return [
        f"emitternet {__version__}",
        f"config_hash={cfg.config_hash()}",
        f"seed={seed.seed} stream_index={seed.stream_index}",
    ]


def _cmd_sample(cfg: RunConfig, seed: SeedSpec, out_dir: Path) -> int:
    model = cfg.ensemble_model()
    n = cfg.data["sample"]["n_emitters"]
    emitters = sample_ensemble(model, n, seed)
    write_line_list(out_dir / "line_list.csv", emitters, comments=_csv_comments(cfg, seed))
    summary = summarize_ensemble(emitters) if n >= 2 else None

    def _write_histogram(name: str, values, bin_width: float) -> str:
        hist = histogram(values, bin_width)
        rows = [
            [hist.bin_edges[i], hist.bin_edges[i + 1], count]
            for i, count in enumerate(hist.counts)
        ]
        write_table(
            out_dir / name,
            ["bin_low", "bin_high", "count"],
            rows,
            comments=_csv_comments(cfg, seed),
        )
        return name

    zfs_csv = _write_histogram("zfs_histogram.csv", [e.zfs_ghz for e in emitters], 0.025)
    line_values = [e.a1_ghz for e in emitters] + [e.a2_ghz for e in emitters]
    lines_csv = _write_histogram("line_histogram.csv", line_values, 1.0)
    results = {
        "n_emitters": n,
        "zfs_ghz": vars(summary.zfs_ghz) if summary else None,
        "center_ghz": vars(summary.center_ghz) if summary else None,
        "fwhm_mhz": vars(summary.fwhm_mhz) if summary else None,
        "detuning_min_ghz": summary.detuning_min_ghz if summary else None,
        "detuning_max_ghz": summary.detuning_max_ghz if summary else None,
        "lifetime_limited_linewidth_mhz": model.gamma_mhz,
        "line_list": "line_list.csv",
        "zfs_histogram_csv": zfs_csv,
        "line_histogram_csv": lines_csv,
        "provenance_note": PROVENANCE_NOTE,
    }
    _write_summary(out_dir, "sample", cfg, seed, results)
    return 0


def _cmd_overlap(cfg: RunConfig, seed: SeedSpec, out_dir: Path, args) -> int:
    model = cfg.ensemble_model()
    combos = cfg.combos()
    if args.input is not None:
        records = read_line_list(args.input)
        fill = cfg.data["overlap"]["fill_fwhm_mhz"]
        emitters: Sequence = (
            records_to_emitters(records, fill_fwhm_mhz=fill)
            if fill is not None
            else records
        )
        source = str(args.input)
    else:
        emitters = sample_ensemble(model, cfg.data["sample"]["n_emitters"], seed)
        source = "sampled"
    gamma = model.gamma_mhz
    windows = cfg.data["windows_mhz"]
    if windows is None:
        windows = [gamma * f for f in (0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0)]
    resamples = cfg.data["overlap"]["bootstrap_resamples"]
    curve = overlap_curve(emitters, windows, combos)
    errors = [bootstrap_std_error(emitters, w, combos, resamples, seed) for w in windows]
    slope = fit_slope_through_origin(curve, gamma)
    write_table(
        out_dir / "overlap_curve.csv",
        ["window_mhz", "probability", "std_error"],
        list(zip(curve.windows_mhz, curve.probabilities, errors)),
        comments=_csv_comments(cfg, seed),
    )
    results = {
        "source": source,
        "n_emitters": curve.n_emitters,
        "n_pairs": curve.n_pairs,
        "combos": sorted(c.label for c in combos),
        "windows_mhz": list(curve.windows_mhz),
        "probabilities": list(curve.probabilities),
        "std_errors": errors,
        "gamma_mhz": gamma,
        "slope_per_gamma": slope,
        "bootstrap_resamples": resamples,
        "curve_csv": "overlap_curve.csv",
        "provenance_note": PROVENANCE_NOTE,
    }
    _write_summary(out_dir, "overlap", cfg, seed, results)
    return 0


def _cmd_birthday(cfg: RunConfig, seed: SeedSpec, out_dir: Path) -> int:
    section = cfg.data["birthday"]
    target = section["target"]
    results: dict[str, Any] = {"target_probability": target}
    if section["q"] is not None:
        threshold = birthday_threshold(section["q"], target)
        results.update(
            {
                "n_star": threshold.n_star,
                "pairwise_q": threshold.pairwise_q,
                "curve": [[n, p] for n, p in threshold.curve],
            }
        )
        write_table(
            out_dir / "birthday_curve.csv",
            ["n_emitters", "collision_probability"],
            [list(point) for point in threshold.curve],
            comments=_csv_comments(cfg, seed),
        )
        results["curve_csv"] = "birthday_curve.csv"
    elif not section["monte_carlo"]:
        raise ConfigError("birthday requires --q (or birthday.q) unless --mc is given")
    if section["monte_carlo"]:
        window = section["window_mhz"]
        if window is None:
            window = lifetime_limited_linewidth(cfg.data["ensemble"]["lifetime_ns"])
        mc = monte_carlo_threshold(
            cfg.ensemble_model(), window, target, section["trials"], seed, cfg.combos()
        )
        results["monte_carlo"] = {
            "n_star": mc.n_star,
            "pairwise_q": mc.pairwise_q,
            "window_mhz": window,
            "trials": mc.trials,
            "median_stop": mc.median_stop,
            "quantiles": mc.quantiles,
            "ci95_at_n_star": list(mc.ci95_at_n_star) if mc.ci95_at_n_star else None,
            "n_censored": mc.n_censored,
        }
        write_table(
            out_dir / "birthday_mc_curve.csv",
            ["n_emitters", "empirical_collision_probability"],
            [list(point) for point in mc.curve],
            comments=_csv_comments(cfg, seed),
        )
        results["monte_carlo"]["curve_csv"] = "birthday_mc_curve.csv"
    _write_summary(out_dir, "birthday", cfg, seed, results)
    return 0


def _cmd_fit_ple(cfg: RunConfig, seed: SeedSpec, out_dir: Path, args) -> int:
    section = cfg.data["fit_ple"]
    k = section["n_peaks"]
    if args.input is not None:
        spectrum = read_spectrum(args.input)
        source = str(args.input)
    elif args.synthetic:
        model = cfg.ensemble_model()
        zfs = cfg.data["ensemble"]["zfs_mean_ghz"]
        peaks = [
            LorentzianPeak(
                center_ghz=(i - (k - 1) / 2.0) * zfs,
                fwhm_mhz=model.fwhm_mean_mhz,
                amplitude=100.0,
            )
            for i in range(k)
        ]
        span = (k + 1) * zfs
        grid = np.linspace(-span, span, max(60 * k, 240))
        spectrum = synthesize(peaks, background=5.0, grid_ghz=grid, shot_noise=True, seed=seed)
        write_spectrum(out_dir / "ple_spectrum.csv", spectrum, comments=_csv_comments(cfg, seed))
        source = "synthetic"
    else:
        raise ConfigError("fit-ple requires --input or --synthetic")

    kwargs = {}
    if args.max_iterations is not None:
        kwargs["max_iterations"] = args.max_iterations
    fit = fit_multi_lorentzian(spectrum, k, **kwargs)
    results: dict[str, Any] = {
        "source": source,
        "n_peaks": k,
        "background": fit.background,
        "residual_rms": fit.residual_rms,
        "converged": fit.converged,
        "iterations": fit.iterations,
        "peaks": [
            {"center_ghz": p.center_ghz, "fwhm_mhz": p.fwhm_mhz, "amplitude": p.amplitude}
            for p in fit.peaks
        ],
    }
    if section["classify"]:
        assignment = classify_pair_spectrum(
            fit,
            prior_mean_ghz=section["prior_mean_ghz"],
            prior_sigma_ghz=section["prior_sigma_ghz"],
            n_sigma=section["n_sigma"],
        )
        results["pair_assignment"] = {
            "emitter1_peaks": list(assignment.emitter1),
            "emitter2_peaks": list(assignment.emitter2),
            "shared_peak": assignment.shared_peak,
            "zfs1_ghz": assignment.zfs1_ghz,
            "zfs2_ghz": assignment.zfs2_ghz,
        }
    _write_summary(out_dir, "fit-ple", cfg, seed, results)
    if not fit.converged:
        _print_error(EmitterNetError("fit did not converge within the iteration cap"), 3)
        return 3
    return 0


def _cmd_protocol(cfg: RunConfig, seed: SeedSpec, out_dir: Path, args) -> int:
    section = cfg.data["protocol"]
    n = section["n_qubits"]
    eta = section["eta"]
    chain = run_ghz_chain(n)
    lossy = run_ghz_chain_with_loss(n, LossModel(eta))
    results: dict[str, Any] = {
        "n_qubits": n,
        "eta": eta,
        "success_probability": chain.success_probability,
        "herald_probabilities": list(chain.herald_probabilities),
        "amplitudes": [[float(a.real), float(a.imag)] for a in chain.state.amplitudes],
        "fidelity_published": published_model_fidelity(n, eta),
        "fidelity_enumeration": lossy.fidelity,
        "fidelity_model_note": (
            "fidelity_published uses the published p = 1/(3 - 2*eta) per herald; "
            "fidelity_enumeration tracks every loss branch exactly. The two "
            "agree at eta = 1 and differ below it; the gap is reported, not "
            "reconciled."
        ),
        "branches": [
            {
                "weight": b.weight,
                "amplitudes": [[float(a.real), float(a.imag)] for a in b.state.amplitudes],
            }
            for b in lossy.mixture.branches
        ],
    }
    if args.sweep:
        rows = fidelity_vs_eta_sweep(n, cfg.data["protocol"]["eta_sweep"])
        write_table(
            out_dir / "fidelity_sweep.csv",
            ["eta", "fidelity_published", "fidelity_enumeration", "discrepancy"],
            [[r.eta, r.fidelity_published, r.fidelity_enumeration, r.discrepancy] for r in rows],
            comments=_csv_comments(cfg, seed),
        )
        results["sweep_csv"] = "fidelity_sweep.csv"
        results["sweep"] = [
            {
                "eta": r.eta,
                "fidelity_published": r.fidelity_published,
                "fidelity_enumeration": r.fidelity_enumeration,
                "discrepancy": r.discrepancy,
            }
            for r in rows
        ]
    _write_summary(out_dir, "protocol", cfg, seed, results)
    return 0


def _cmd_spatial(cfg: RunConfig, seed: SeedSpec, out_dir: Path, args) -> int:
    section = cfg.data["spatial"]
    if section["lateral_fwhm_um"] is None:
        raise ConfigError(
            "spatial.lateral_fwhm_um is required (set --lateral-fwhm-um); "
            "it is a configured assumption with no measured default"
        )
    psf = ConfocalPsf(
        lateral_fwhm_um=section["lateral_fwhm_um"], axial_fwhm_um=section["axial_fwhm_um"]
    )
    density = section["density_per_um3"]
    stats = occupancy_stats(density, psf, section["trials"], seed)
    results: dict[str, Any] = {
        "density_per_um3": density,
        "lateral_fwhm_um": psf.lateral_fwhm_um,
        "axial_fwhm_um": psf.axial_fwhm_um,
        "spot_mean_occupancy": stats.mean_per_spot,
        "spot_mean_occupancy_poisson": stats.occupancy_mean_poisson,
        "occupancy_distribution": list(stats.distribution),
        "multi_emitter_fraction": stats.multi_emitter_fraction,
        "multi_emitter_fraction_poisson": stats.multi_emitter_fraction_poisson,
        "trials": stats.trials,
    }
    if args.export_scene:
        scene = sample_scene(density, section["box_um"], seed)
        write_table(
            out_dir / "scene.csv",
            ["x_um", "y_um", "z_um"],
            [list(map(float, row)) for row in scene.positions],
            comments=_csv_comments(cfg, seed),
        )
        results["scene"] = {
            "box_um": list(scene.box_um),
            "count": scene.count,
            "csv": "scene.csv",
        }
    if section["chain_length"] is not None:
        window = section["chain_window_mhz"]
        if window is None:
            window = lifetime_limited_linewidth(cfg.data["ensemble"]["lifetime_ns"])
        rate = spectral_arrangement_rate(
            cfg.ensemble_model(),
            section["chain_length"],
            window,
            max(section["trials"], 10_000),
            seed,
        )
        results["spectral_chain"] = {
            "k": section["chain_length"],
            "window_mhz": window,
            "probability": rate,
        }
    _write_summary(out_dir, "spatial", cfg, seed, results)
    return 0


def _cmd_report(cfg: RunConfig, out_dir: Path) -> int:
    summaries = sorted(
        p for p in out_dir.glob("*_summary.json") if p.name != "report_summary.json"
    )
    if not summaries:
        raise LineListError(f"no command summaries found in {out_dir}")
    sections = {}
    for path in summaries:
        doc = json.loads(path.read_text(encoding="utf-8"))
        sections[doc["command"]] = {
            "file": path.name,
            "config_hash": doc["config_hash"],
            "seed": doc["seed"],
            "version": doc["version"],
            "results": doc["results"],
        }
    report = {
        "tool": "emitternet",
        "version": __version__,
        "config_hash": cfg.config_hash(),
        "generated_at": _utc_now(),
        "provenance_note": PROVENANCE_NOTE,
        "sections": sections,
    }
    (out_dir / "report.json").write_text(
        json.dumps(report, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )

    lines = [
        f"emitternet {__version__} run report",
        f"config hash: {cfg.config_hash()}",
        "",
        f"note: {PROVENANCE_NOTE}",
        "",
    ]
    for command, info in sections.items():
        lines.append(f"[{command}] (from {info['file']}, seed {info['seed']['seed']})")
        for key, value in info["results"].items():
            if isinstance(value, (int, float, str, bool)) or value is None:
                lines.append(f"  {key}: {value}")
        lines.append("")
    (out_dir / "report.txt").write_text("\n".join(lines), encoding="utf-8")
    return 0


def _print_error(exc: BaseException, code: int) -> None:
    payload = {"error": str(exc), "type": type(exc).__name__, "exit_code": code}
    print(json.dumps(payload), file=sys.stderr)


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        _print_error(exc, 1)
        return 1
    try:
        cfg = _load_config(args)
        seed = _resolve_seed(cfg)
        out_dir = _out_dir(cfg)
        if args.command == "sample":
            return _cmd_sample(cfg, seed, out_dir)
        if args.command == "overlap":
            return _cmd_overlap(cfg, seed, out_dir, args)
        if args.command == "birthday":
            return _cmd_birthday(cfg, seed, out_dir)
        if args.command == "fit-ple":
            return _cmd_fit_ple(cfg, seed, out_dir, args)
        if args.command == "protocol":
            return _cmd_protocol(cfg, seed, out_dir, args)
        if args.command == "spatial":
            return _cmd_spatial(cfg, seed, out_dir, args)
        if args.command == "report":
            return _cmd_report(cfg, out_dir)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        _print_error(exc, 1)
        return 1
    except EmitterNetError as exc:
        _print_error(exc, 2)
        return 2
    except OSError as exc:
        _print_error(exc, 2)
        return 2


def entrypoint() -> None:
    sys.exit(main())


__all__ = ["main", "entrypoint", "default_config", "SEED_ENV_VAR", "PROVENANCE_NOTE"]
