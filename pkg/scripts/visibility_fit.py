"""Fit visibility versus diffraction order and draw the fitted curve."""

import argparse
from pathlib import Path

from railnoise import DATA_DIR
from railnoise.cli import fit_report
from railnoise.plotting import plot_visibility_fit
from railnoise.visibility import fit_visibility, load_visibility


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("data", nargs="?", default=DATA_DIR / "visibility_synthetic.dat")
    parser.add_argument("--svg", type=Path, default=Path("out") / "visibility_fit.svg")
    args = parser.parse_args()

    points = load_visibility(args.data)
    fit = fit_visibility(points)
    args.svg.parent.mkdir(parents=True, exist_ok=True)
    plot_visibility_fit(points, fit, args.svg)
    print(fit_report(points, fit), end="")


if __name__ == "__main__":
    main()
