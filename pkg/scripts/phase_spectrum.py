"""Phase-noise PSD of the example configuration on the shipped seismic fixture.

Writes a CSV and an SVG next to each other and prints the integrated variances.
"""

import argparse
from pathlib import Path

from railnoise import EXAMPLE_CONFIG, FIXTURE_SPECTRUM
from railnoise.cli import compute_psd
from railnoise.config import load_config
from railnoise.noise import integrate_phase_variance
from railnoise.plotting import plot_phase_spectrum


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--config", default=EXAMPLE_CONFIG)
    parser.add_argument("--psd", default=FIXTURE_SPECTRUM)
    parser.add_argument("--outdir", type=Path, default=Path("out"))
    args = parser.parse_args()

    args.outdir.mkdir(parents=True, exist_ok=True)
    cfg = load_config(args.config)
    spectrum, psd, _ = compute_psd(cfg, args.psd)
    (args.outdir / "phase_psd.csv").write_text(psd.to_csv(), encoding="utf-8")
    plot_phase_spectrum(psd, spectrum, args.outdir / "phase_psd.svg")

    var = integrate_phase_variance(psd, cfg.pipeline.f_min, cfg.pipeline.f_max)
    for name, value in var.items():
        print(f"{name:>12s}: {value:.4f} rad^2 per p^2")
    print(f"Sagnac fraction: {var['sagnac'] / var['total']:.1%}")


if __name__ == "__main__":
    main()
