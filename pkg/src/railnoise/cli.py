"""Command-line front end.

Exit status: 0 on success, 1 for invalid configuration or data, 2 for I/O errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import noise
from .beam import bending_resonances, support_resonances
from .config import ConfigError, load_config
from .visibility import (
    VisibilityDataError,
    fit_visibility,
    load_visibility,
    variance_to_visibility_report,
    visibility_curve,
)

TWO_PI = 2 * np.pi

# reference values of the lithium interferometer, for side-by-side comparison
REFERENCE_VARIANCE_TOTAL = 0.16
REFERENCE_VARIANCE_SAGNAC = 0.13
REFERENCE_FIT_PHI1_SQ = 0.286
REFERENCE_FIT_V_MAX = 0.98
BENDING_LIMIT_M = 3e-9

EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 1, 2


def prepare_spectrum(path, pipeline):
    spec = noise.load_spectrum(path)
    if pipeline.smooth_octaves > 0:
        spec = noise.smooth_envelope(spec, pipeline.smooth_octaves)
    if pipeline.extend_to > spec.band[1]:
        spec = noise.extend_constant(spec, pipeline.extend_to)
    return spec


def _pipeline_overrides(cfg, args):
    pl = cfg.pipeline
    if getattr(args, "fmin", None) is not None:
        pl.f_min = args.fmin
    if getattr(args, "fmax", None) is not None:
        pl.f_max = args.fmax
    if getattr(args, "grid", None) is not None:
        pl.grid = args.grid
    return pl


def compute_psd(cfg, psd_path, order=None):
    beam, support, ifm = cfg.build(order)
    pl = cfg.pipeline
    spectrum = prepare_spectrum(psd_path, pl)
    grid = noise.model_grid(beam, support, pl.f_min, pl.f_max, pl.grid)
    psd = noise.phase_noise_psd(spectrum, beam, support, ifm, grid, f_cut=min(pl.f_min, noise.DEFAULT_F_MIN))
    return spectrum, psd, (beam, support, ifm)


def cmd_resonances(args, out):
    cfg = load_config(args.config)
    beam, support, _ = cfg.build()
    n = args.n if args.n is not None else cfg.pipeline.n_bending
    w_osc, w_rot = support_resonances(beam, support)
    bends = bending_resonances(beam, n)
    print("mode,frequency_hz,ratio_to_first", file=out)
    print(f"pendular,{w_osc / TWO_PI:.6g},", file=out)
    print(f"rotational,{w_rot / TWO_PI:.6g},{w_rot / w_osc:.6g}", file=out)
    for k, w in enumerate(bends, start=1):
        print(f"bending_{k},{w / TWO_PI:.6g},{w / bends[0]:.6g}", file=out)


def cmd_phase_spectrum(args, out):
    cfg = load_config(args.config)
    _pipeline_overrides(cfg, args)
    spectrum, psd, _ = compute_psd(cfg, args.psd)
    Path(args.out).write_text(psd.to_csv(), encoding="utf-8")
    if args.svg:
        from .plotting import plot_phase_spectrum

        plot_phase_spectrum(psd, spectrum, args.svg)
    print(f"wrote {len(psd.frequency)} rows to {args.out}", file=out)


def integrate_report(cfg, psd_path, order, v_max=REFERENCE_FIT_V_MAX, max_order=5):
    pl = cfg.pipeline
    spectrum, psd, (beam, support, _) = compute_psd(cfg, psd_path)
    var = noise.integrate_phase_variance(psd, pl.f_min, pl.f_max)
    bend = noise.rms_bending(spectrum, beam, support, pl.f_min, pl.f_max, grid=psd.frequency)
    lines = [
        f"# phase-noise variance per p^2 over {pl.f_min:g}-{pl.f_max:g} Hz (rad^2)",
        f"grid_points = {len(psd.frequency)}",
    ]
    lines += [f"variance_{name} = {var[name]:.6e}" for name in psd.COMPONENTS]
    frac = var["sagnac"] / var["total"] if var["total"] > 0 else float("nan")
    lines += [
        f"sagnac_fraction = {frac:.6f}",
        f"reference_variance_total = {REFERENCE_VARIANCE_TOTAL}",
        f"reference_variance_sagnac = {REFERENCE_VARIANCE_SAGNAC}",
        f"reference_fit_phi1_sq = {REFERENCE_FIT_PHI1_SQ}",
        f"order = {order}",
        f"variance_at_order = {order**2 * var['total']:.6e}",
        f"rms_bending_m = {bend:.6e}",
        f"bending_limit_m = {BENDING_LIMIT_M:.1e}",
        f"bending_within_limit = {'pass' if bend < BENDING_LIMIT_M else 'fail'}",
        f"# predicted visibility with V_max = {v_max}",
        "p,visibility",
    ]
    lines += [f"{p},{v:.6f}" for p, v in variance_to_visibility_report(var["total"], v_max, max_order)]
    return "\n".join(lines) + "\n"


def cmd_integrate(args, out):
    cfg = load_config(args.config)
    _pipeline_overrides(cfg, args)
    order = args.order if args.order is not None else cfg.interferometer.order
    report = integrate_report(cfg, args.psd, order, v_max=args.vmax)
    if args.out:
        Path(args.out).write_text(report, encoding="utf-8")
    out.write(report)


def fit_report(points, fit):
    lines = [
        f"V_max = {fit.v_max:.6f}",
        f"V_max_err = {fit.v_max_err:.6f}",
        f"phi1_sq = {fit.phi1_sq:.6f}",
        f"phi1_sq_err = {fit.phi1_sq_err:.6f}",
        "p,visibility,fitted,residual",
    ]
    model = visibility_curve(fit, [pt.order for pt in points])
    for pt, m in zip(points, model):
        lines.append(f"{pt.order},{pt.visibility:.6f},{m:.6f},{pt.visibility - m:.6f}")
    return "\n".join(lines) + "\n"


def cmd_fit_visibility(args, out):
    points = load_visibility(args.data)
    fit = fit_visibility(points)
    report = fit_report(points, fit)
    if args.out:
        Path(args.out).write_text(report, encoding="utf-8")
    if args.svg:
        from .plotting import plot_visibility_fit

        plot_visibility_fit(points, fit, args.svg)
    out.write(report)


def cmd_predict_visibility(args, out):
    if args.variance is not None:
        variance = args.variance
    elif args.config and args.psd:
        cfg = load_config(args.config)
        _pipeline_overrides(cfg, args)
        _, psd, _ = compute_psd(cfg, args.psd)
        variance = noise.integrate_phase_variance(psd, cfg.pipeline.f_min, cfg.pipeline.f_max)["total"]
    else:
        raise ConfigError("predict-visibility needs --variance or both --config and --psd")
    print(f"variance_per_p2 = {variance:.6e}", file=out)
    print("p,visibility", file=out)
    for p, v in variance_to_visibility_report(variance, args.vmax, args.order):
        print(f"{p},{v:.6f}", file=out)


def build_parser():
    parser = argparse.ArgumentParser(prog="railnoise", description="Vibration-induced phase noise of a three-grating atom interferometer.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_band(p):
        p.add_argument("--fmin", type=float, help="lower band edge (Hz)")
        p.add_argument("--fmax", type=float, help="upper band edge (Hz)")
        p.add_argument("--grid", type=int, help="base number of log-spaced grid points")

    p = sub.add_parser("resonances", help="pendular, rotational and bending resonances")
    p.add_argument("--config", required=True)
    p.add_argument("--n", type=int, help="number of bending modes")
    p.set_defaults(func=cmd_resonances)

    p = sub.add_parser("phase-spectrum", help="phase-noise PSD to CSV (and SVG)")
    p.add_argument("--config", required=True)
    p.add_argument("--psd", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--svg")
    add_band(p)
    p.set_defaults(func=cmd_phase_spectrum)

    p = sub.add_parser("integrate", help="integrated phase variance and rms bending")
    p.add_argument("--config", required=True)
    p.add_argument("--psd", required=True)
    p.add_argument("--out")
    p.add_argument("--order", type=int)
    p.add_argument("--vmax", type=float, default=REFERENCE_FIT_V_MAX)
    add_band(p)
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("fit-visibility", help="fit visibility versus diffraction order")
    p.add_argument("data")
    p.add_argument("--out")
    p.add_argument("--svg")
    p.set_defaults(func=cmd_fit_visibility)

    p = sub.add_parser("predict-visibility", help="visibility table from a phase variance")
    p.add_argument("--variance", type=float, help="phase variance per p^2 (rad^2)")
    p.add_argument("--config")
    p.add_argument("--psd")
    p.add_argument("--vmax", type=float, default=REFERENCE_FIT_V_MAX)
    p.add_argument("--order", type=int, default=5, help="highest diffraction order")
    add_band(p)
    p.set_defaults(func=cmd_predict_visibility)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        args.func(args, out)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ConfigError, noise.SpectrumFormatError, VisibilityDataError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
