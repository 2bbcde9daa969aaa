"""Seismic spectrum ingestion and the phase-noise pipeline.

All spectral densities are one-sided: a variance is the integral of the PSD
over positive frequencies. Phase-noise densities are stored per unit p**2.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .beam import modal_amplitudes, omega0, rail_shape, support_resonances
from .phase import phase_transfer_full

TWO_PI = 2 * np.pi
DEFAULT_F_MIN = 2.0
DEFAULT_F_MAX = 1000.0
DEFAULT_GRID = 2000
CSV_HEADER = "nu_hz,total,bending,sagnac,acceleration"


class SpectrumFormatError(ValueError):
    """Malformed PSD file or invalid spectrum samples."""


@dataclass(frozen=True)
class NoiseSpectrum:
    frequency: np.ndarray
    psd: np.ndarray
    source: str = ""

    def __post_init__(self):
        f = np.asarray(self.frequency, dtype=float)
        s = np.asarray(self.psd, dtype=float)
        if f.ndim != 1 or f.shape != s.shape or f.size == 0:
            raise SpectrumFormatError("frequency and psd must be equal-length 1-D arrays")
        if np.any(f <= 0):
            raise SpectrumFormatError("frequencies must be > 0")
        if np.any(np.diff(f) <= 0):
            i = int(np.argmax(np.diff(f) <= 0))
            raise SpectrumFormatError(
                f"frequencies must be strictly increasing (sample {i + 1}: {f[i]} -> {f[i + 1]})"
            )
        if np.any(s < 0) or not np.all(np.isfinite(s)):
            raise SpectrumFormatError("psd values must be finite and >= 0")
        object.__setattr__(self, "frequency", f)
        object.__setattr__(self, "psd", s)

    @property
    def band(self):
        return float(self.frequency[0]), float(self.frequency[-1])

    def scaled(self, factor):
        return NoiseSpectrum(self.frequency, self.psd * factor, self.source)

    def __call__(self, nu):
        """Interpolate the PSD, log-log between nonzero samples, linear otherwise."""
        nu = np.asarray(nu, dtype=float)
        lo, hi = self.band
        if np.any(nu < lo * (1 - 1e-12)) or np.any(nu > hi * (1 + 1e-12)):
            raise ValueError(f"frequency outside spectrum support [{lo}, {hi}] Hz")
        nu = np.clip(nu, lo, hi)
        if self.frequency.size == 1:
            return np.full_like(nu, self.psd[0])
        linear = np.interp(nu, self.frequency, self.psd)
        idx = np.clip(np.searchsorted(self.frequency, nu) - 1, 0, self.frequency.size - 2)
        s0, s1 = self.psd[idx], self.psd[idx + 1]
        positive = (s0 > 0) & (s1 > 0)
        f0, f1 = self.frequency[idx], self.frequency[idx + 1]
        with np.errstate(divide="ignore", invalid="ignore"):
            slope = np.log(s1 / s0) / np.log(f1 / f0)
            loglog = s0 * (nu / f0) ** slope
        return np.where(positive, loglog, linear)


def parse_spectrum(text, source="<string>"):
    freqs, values = [], []
    for lineno, raw in enumerate(io.StringIO(text), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise SpectrumFormatError(f"{source}:{lineno}: expected 'nu psd', got {line!r}")
        try:
            nu, s = float(parts[0]), float(parts[1])
        except ValueError:
            raise SpectrumFormatError(f"{source}:{lineno}: not a number in {line!r}") from None
        if s < 0:
            raise SpectrumFormatError(f"{source}:{lineno}: negative psd {s}")
        if freqs and nu <= freqs[-1]:
            raise SpectrumFormatError(
                f"{source}:{lineno}: frequency {nu} not above previous {freqs[-1]}"
            )
        freqs.append(nu)
        values.append(s)
    if not freqs:
        raise SpectrumFormatError(f"{source}: no data lines")
    return NoiseSpectrum(np.array(freqs), np.array(values), source=str(source))


def load_spectrum(path):
    """Read a two-column ``nu psd`` file (Hz, m^2/Hz); '#' starts a comment."""
    path = Path(path)
    return parse_spectrum(path.read_text(encoding="utf-8"), source=str(path))


def format_spectrum(spec):
    lines = [f"# {spec.source}" if spec.source else "# seismic displacement PSD"]
    lines.append("# nu_hz psd_m2_per_hz")
    lines += [f"{f:.10g} {s:.10g}" for f, s in zip(spec.frequency, spec.psd)]
    return "\n".join(lines) + "\n"


def smooth_envelope(spec, window_octaves):
    """Running maximum over a centred window ``window_octaves`` wide in log2(nu).

    The result never dips below the input and flattens any peak narrower
    than the window into a plateau.
    """
    if not window_octaves > 0:
        raise ValueError(f"window_octaves must be > 0, got {window_octaves!r}")
    logf = np.log2(spec.frequency)
    half = window_octaves / 2
    lo = np.searchsorted(logf, logf - half, side="left")
    hi = np.searchsorted(logf, logf + half, side="right")
    out = np.array([spec.psd[i:j].max() for i, j in zip(lo, hi)])
    return NoiseSpectrum(spec.frequency, out, spec.source)


def extend_constant(spec, f_hi):
    """Continue the spectrum at its last value up to ``f_hi``.

    New samples are log-spaced at the median spacing of the existing grid.
    """
    f_max = spec.frequency[-1]
    if not f_hi > f_max:
        raise ValueError(f"f_hi={f_hi} must exceed the spectrum's top frequency {f_max}")
    if spec.frequency.size > 1:
        step = float(np.median(np.diff(np.log(spec.frequency))))
    else:
        step = np.log(f_hi / f_max)
    n_new = max(1, int(np.ceil(np.log(f_hi / f_max) / step)))
    new_f = f_max * np.exp(np.log(f_hi / f_max) * np.arange(1, n_new + 1) / n_new)
    new_f[-1] = f_hi
    return NoiseSpectrum(
        np.concatenate([spec.frequency, new_f]),
        np.concatenate([spec.psd, np.full(n_new, spec.psd[-1])]),
        spec.source,
    )


def frequency_grid(f_min, f_max, n=DEFAULT_GRID, resonances=(), refine=10, width=0.1):
    """Log-spaced grid of ``n`` points, refined ``refine``-fold within ``+-width``
    (relative) of each resonance frequency in Hz."""
    if not 0 < f_min < f_max:
        raise ValueError(f"need 0 < f_min < f_max, got {f_min}, {f_max}")
    if n < 2:
        raise ValueError("grid needs at least 2 points")
    base = np.geomspace(f_min, f_max, n)
    pieces = [base]
    step = np.log(f_max / f_min) / (n - 1)
    for f_res in resonances:
        lo, hi = max(f_min, f_res * (1 - width)), min(f_max, f_res * (1 + width))
        if lo >= hi:
            continue
        m = int(np.ceil(np.log(hi / lo) / step * refine)) + 1
        pieces.append(np.geomspace(lo, hi, m))
    grid = np.unique(np.concatenate(pieces))
    grid[0], grid[-1] = f_min, f_max
    return grid


def model_grid(beam, support, f_min=DEFAULT_F_MIN, f_max=DEFAULT_F_MAX, n=DEFAULT_GRID):
    """Grid refined around the pendular, rotational and first bending resonances."""
    w_osc, w_rot = support_resonances(beam, support)
    marks = np.array([w_osc, w_rot, omega0(beam)]) / TWO_PI
    return frequency_grid(f_min, f_max, n, resonances=marks)


@dataclass(frozen=True)
class PhaseNoisePsd:
    """Phase-noise densities per unit p**2 (rad^2/Hz) on a frequency grid.

    ``total`` is the squared modulus of the full response for each end,
    summed over the two independently driven ends; each component is the
    squared modulus of that term alone. Components therefore need not add
    up to ``total``.
    """

    frequency: np.ndarray
    total: np.ndarray
    bending: np.ndarray
    sagnac: np.ndarray
    acceleration: np.ndarray
    meta: dict = field(default_factory=dict, compare=False)

    COMPONENTS = ("total", "bending", "sagnac", "acceleration")

    def component(self, name):
        if name not in self.COMPONENTS:
            raise KeyError(name)
        return getattr(self, name)

    def scaled(self, factor):
        return PhaseNoisePsd(
            self.frequency, *(self.component(c) * factor for c in self.COMPONENTS), meta=self.meta
        )

    def to_csv(self):
        rows = [CSV_HEADER]
        for row in zip(self.frequency, self.total, self.bending, self.sagnac, self.acceleration):
            rows.append(",".join(f"{v:.9e}" for v in row))
        return "\n".join(rows) + "\n"


def _end_responses(nu, amplitude, beam, support, ifm):
    omega = TWO_PI * nu
    for x_plus, x_minus in ((amplitude, 0.0), (0.0, amplitude)):
        amps = modal_amplitudes(omega, x_plus, x_minus, beam, support)
        yield amps, phase_transfer_full(omega, amps, beam, ifm)


def phase_noise_psd(spec, beam, support, ifm, grid=None, f_cut=DEFAULT_F_MIN):
    """Phase-noise PSD per unit p**2 driven by the seismic spectrum at both supports.

    The two supports see the same spectrum with no phase relation, so the
    responses to each end are computed separately and added in power.
    """
    if grid is None:
        grid = model_grid(beam, support, max(f_cut, spec.band[0]), min(DEFAULT_F_MAX, spec.band[1]))
    nu = np.asarray(grid, dtype=float)
    if np.any(nu < f_cut):
        raise ValueError(f"grid extends below the low-frequency cutoff {f_cut} Hz")
    amplitude = np.sqrt(spec(nu))
    parts = {c: np.zeros_like(nu) for c in PhaseNoisePsd.COMPONENTS}
    for _, value in _end_responses(nu, amplitude, beam, support, ifm):
        parts["total"] += np.abs(value.total) ** 2
        parts["bending"] += np.abs(value.bending) ** 2
        parts["sagnac"] += np.abs(value.sagnac) ** 2
        parts["acceleration"] += np.abs(value.acceleration) ** 2
    return PhaseNoisePsd(nu, **parts, meta={"source": spec.source})


def _band_integral(nu, density, f_min, f_max):
    if not f_max > f_min:
        raise ValueError(f"empty integration range [{f_min}, {f_max}]")
    lo, hi = nu[0], nu[-1]
    if f_min < lo * (1 - 1e-12) or f_max > hi * (1 + 1e-12):
        raise ValueError(f"[{f_min}, {f_max}] Hz not inside grid [{lo}, {hi}] Hz")
    inside = (nu > f_min) & (nu < f_max)
    x = np.concatenate([[f_min], nu[inside], [f_max]])
    y = np.concatenate(
        [[np.interp(f_min, nu, density)], density[inside], [np.interp(f_max, nu, density)]]
    )
    return float(np.trapezoid(y, x))


def integrate_phase_variance(psd, f_min=DEFAULT_F_MIN, f_max=DEFAULT_F_MAX):
    """Trapezoidal band variance per unit p**2 for the total and each component.

    Multiply by p**2 for the variance at diffraction order p.
    """
    return {c: _band_integral(psd.frequency, psd.component(c), f_min, f_max) for c in psd.COMPONENTS}


def bending_psd(spec, beam, support, grid):
    """PSD of the rail bending ``2 X(0) - X(L12) - X(-L12)`` in m^2/Hz."""
    nu = np.asarray(grid, dtype=float)
    amplitude = np.sqrt(spec(nu))
    L12 = beam.grating_half_span
    out = np.zeros_like(nu)
    for x_plus, x_minus in ((amplitude, 0.0), (0.0, amplitude)):
        amps = modal_amplitudes(TWO_PI * nu, x_plus, x_minus, beam, support)
        bend = 2 * rail_shape(0.0, amps) - rail_shape(L12, amps) - rail_shape(-L12, amps)
        out += np.abs(bend) ** 2
    return out


def rms_bending(spec, beam, support, f_min=DEFAULT_F_MIN, f_max=DEFAULT_F_MAX, grid=None):
    """RMS rail bending (m) over ``[f_min, f_max]``."""
    if grid is None:
        grid = model_grid(beam, support, f_min, f_max)
    grid = np.asarray(grid, dtype=float)
    return float(np.sqrt(_band_integral(grid, bending_psd(spec, beam, support, grid), f_min, f_max)))
