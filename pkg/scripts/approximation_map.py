"""Where does the low-frequency closed form track the full transfer function?

Prints |approx| / |full| - 1 on a log grid for one-sided excitation, for the
example configuration and for a stiff rail with L12 = L.
"""

import argparse

import numpy as np

from railnoise import EXAMPLE_CONFIG
from railnoise.beam import BeamSpec, SupportSpec, modal_amplitudes, omega0, support_resonances
from railnoise.config import load_config
from railnoise.phase import InterferometerSpec, phase_transfer_approx, phase_transfer_full

TWO_PI = 2 * np.pi


def error_table(beam, support, ifm, nu):
    w = TWO_PI * nu
    full = phase_transfer_full(w, modal_amplitudes(w, 1.0, 0.0, beam, support), beam, ifm)
    approx = phase_transfer_approx(w, 1.0, 0.0, beam, support, ifm)
    return np.abs(approx.total) / np.abs(full.total) - 1


def show(title, beam, support, ifm, n):
    _, w_rot = support_resonances(beam, support)
    hi = 0.05 * min(omega0(beam), 1 / ifm.time_of_flight)
    empty = " (empty)" if hi <= 2 * w_rot else ""
    print(f"# {title}: nominal window {2 * w_rot / TWO_PI:.2f}-{hi / TWO_PI:.2f} Hz{empty}")
    nu = np.geomspace(0.5, 1000, n)
    for f, e in zip(nu, error_table(beam, support, ifm, nu)):
        inside = 2 * w_rot <= TWO_PI * f <= hi
        print(f"{f:10.3f} Hz  {e:+.3e}{'  *' if inside else ''}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("-n", type=int, default=25, help="frequencies per table")
    args = parser.parse_args()

    beam, support, ifm = load_config(EXAMPLE_CONFIG).build()
    show("example configuration (L12 < L)", beam, support, ifm, args.n)

    stiff = BeamSpec.from_omega0(TWO_PI * 2000.0, 0.6, 0.6, 5.0)
    show("stiff rail, L12 = L",
         stiff, SupportSpec.from_resonance(TWO_PI * 2.0, 16.0, stiff),
         InterferometerSpec.from_speed(1.8727e7, 0.6, 1065.0), args.n)


if __name__ == "__main__":
    main()
