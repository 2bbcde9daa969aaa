"""Regenerate the synthetic seismic spectrum shipped in railnoise/data.

The measured laboratory spectrum is not available, so the fixture is a smooth
low-pass power law: S(nu) = S0 / nu / (1 + (nu / nu_c)**6), sampled on
0.5-100 Hz. Above 100 Hz the pipeline holds it constant.
"""

import argparse
from pathlib import Path

import numpy as np

from railnoise.noise import NoiseSpectrum, format_spectrum

DATA = Path(__file__).resolve().parents[1] / "src" / "railnoise" / "data"


def fixture_spectrum(s0=1.3e-13, nu_c=15.0, order=6, n=120):
    nu = np.geomspace(0.5, 100.0, n)
    psd = s0 / nu / (1 + (nu / nu_c) ** order)
    # round-trip through the text format so the file is the single source
    psd = np.array([float(f"{v:.6e}") for v in psd])
    nu = np.array([float(f"{v:.6g}") for v in nu])
    src = f"synthetic: {s0:g}/nu/(1+(nu/{nu_c:g})^{order}) m^2/Hz, 0.5-100 Hz"
    return NoiseSpectrum(nu, psd, source=src)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=DATA / "seismic_fixture.psd")
    args = parser.parse_args()
    args.out.write_text(format_spectrum(fixture_spectrum()), encoding="utf-8")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
