"""Static SVG figures: phase-noise spectra and visibility versus order."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

# fixed ids and no timestamp so identical inputs give identical files
_SVG_META = {"Date": None, "Creator": None}
plt.rcParams["svg.hashsalt"] = "railnoise"


def _save(fig, path):
    fig.savefig(path, format="svg", metadata=_SVG_META)
    plt.close(fig)


def plot_phase_spectrum(psd, spectrum, path, seismic_scale=1e10):
    """Total and Sagnac phase PSD with the scaled seismic input, log-log."""
    fig, ax = plt.subplots(figsize=(6.4, 4.4))
    nu = psd.frequency
    ax.loglog(nu, psd.total, "k-", lw=1.2, label=r"$|\Phi(\nu)/p|^2$")
    ax.loglog(nu, psd.sagnac, "k:", lw=1.2, label=r"$|\Phi_{Sagnac}(\nu)/p|^2$")
    ax.loglog(nu, spectrum(nu) * seismic_scale, "k--", lw=1.0,
              label=rf"$|x_\epsilon(\nu)|^2 \times 10^{{{int(np.log10(seismic_scale))}}}$")
    ax.set_xlabel(r"frequency $\nu$ (Hz)")
    ax.set_ylabel(r"rad$^2$/Hz  (seismic: m$^2$/Hz, scaled)")
    ax.set_xlim(nu[0], nu[-1])
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    _save(fig, path)


def plot_visibility_fit(points, fit, path):
    fig, ax = plt.subplots(figsize=(5.2, 4.0))
    p = np.array([pt.order for pt in points], dtype=float)
    v = np.array([pt.visibility for pt in points])
    err = [pt.sigma or 0.0 for pt in points]
    ax.errorbar(p, 100 * v, yerr=100 * np.asarray(err), fmt="ko", ms=4, capsize=2, label="data")
    pp = np.linspace(0, max(p.max(), 1) + 0.5, 200)
    ax.plot(pp, 100 * fit.v_max * np.exp(-pp**2 * fit.phi1_sq / 2), "k-", lw=1,
            label=rf"$V_{{max}}$={100 * fit.v_max:.1f}%, $\langle\Phi_1^2\rangle$={fit.phi1_sq:.3f}")
    ax.set_xlabel("diffraction order p")
    ax.set_ylabel("fringe visibility (%)")
    ax.set_ylim(0, 100)
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    _save(fig, path)
