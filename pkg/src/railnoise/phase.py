"""Interferometer phase produced by grating motion.

Gratings G1, G2, G3 sit on the neutral line at ``z = -L12, 0, +L12`` and the
atoms cross them at ``t - T``, ``t``, ``t + T``. Frequency-domain results use
the ``exp(-i omega t)`` convention of :mod:`railnoise.beam` and are returned
per unit diffraction order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .beam import cosh_ratio, omega0, sinh_ratio

# bending coefficient of the low-frequency expansion, (5/24) * 5.593**2 * 2
APPROX_BENDING_COEFFICIENT = 13.0


@dataclass(frozen=True)
class InterferometerSpec:
    k_grating: float
    order: int = 1
    time_of_flight: float = 0.0
    atom_speed: float | None = None

    def __post_init__(self):
        if not self.k_grating > 0:
            raise ValueError(f"k_grating must be > 0, got {self.k_grating!r}")
        if int(self.order) != self.order or self.order < 1:
            raise ValueError(f"order must be a positive integer, got {self.order!r}")
        if not self.time_of_flight >= 0:
            raise ValueError(f"time_of_flight must be >= 0, got {self.time_of_flight!r}")

    @classmethod
    def from_speed(cls, k_grating, grating_spacing, atom_speed, order=1):
        """Derive ``T = L12 / u`` from the grating spacing and the atom speed."""
        if not atom_speed > 0:
            raise ValueError(f"atom_speed must be > 0, got {atom_speed!r}")
        return cls(
            k_grating=k_grating,
            order=order,
            time_of_flight=grating_spacing / atom_speed,
            atom_speed=atom_speed,
        )

    def with_order(self, order):
        return InterferometerSpec(self.k_grating, order, self.time_of_flight, self.atom_speed)


@dataclass(frozen=True)
class PhaseTransferValue:
    """Phase per unit order split into its bending, Sagnac and acceleration parts."""

    bending: complex
    sagnac: complex
    acceleration: complex

    @property
    def total(self):
        return self.bending + self.sagnac + self.acceleration


def phase_time_domain(x1, x2, x3, spec):
    """Phase from the three grating positions at their crossing times."""
    return spec.order * spec.k_grating * (2 * np.asarray(x2) - np.asarray(x1) - np.asarray(x3))


def phase_second_order(bend, v1x, v3x, a1x, a3x, spec):
    """Phase expanded to second order in the time of flight.

    ``bend`` is the instantaneous rail bending ``2 x2 - x1 - x3``; velocities
    and accelerations are those of gratings 1 and 3 in an inertial frame.
    """
    T = spec.time_of_flight
    return spec.order * spec.k_grating * (bend - (v3x - v1x) * T - (a1x + a3x) * T**2 / 2)


def suspension_response(omega, omega_osc, q_osc):
    """Dimensionless suspension factor ``R`` of the pendular mode."""
    omega = np.asarray(omega, dtype=float)
    return omega**2 / (omega_osc**2 - 1j * omega_osc * omega / q_osc)


def phase_transfer_full(omega, amps, beam, spec):
    """Exact frequency-domain phase per unit order for given modal amplitudes.

    Lines: bending from ``b``, Sagnac from ``a``, acceleration from ``b``.
    With ``T = 0`` this is ``k_G`` times the geometric bending of the rail.
    """
    omega = np.asarray(omega, dtype=float)
    k = amps.wavenumber
    kl, k12 = k * beam.half_length, k * beam.grating_half_span
    wT = omega * spec.time_of_flight
    kg2 = 2 * spec.k_grating

    # cosh(k L12) cos(kL)/cosh(kL) and sinh(k L12) sin(kL)/sinh(kL), bounded
    even_hyper = np.cos(kl) * cosh_ratio(k12, kl)
    odd_hyper = np.sin(kl) * sinh_ratio(k12, kl)
    # (1 - cos) + (1 - cosh) cos(kL)/cosh(kL) nearly cancels at small k: use
    # half-angle squares there and the scaled ratios once cosh could overflow
    small = kl < 20
    kh = np.where(small, k12 / 2, 0.0)
    one_minus_cosh = np.where(
        small,
        -2 * np.sinh(kh) ** 2 * np.cos(kl) / np.cosh(np.where(small, kl, 0.0)),
        np.cos(kl) * cosh_ratio(0.0, kl) - even_hyper,
    )

    bending = kg2 * amps.b * (2 * np.sin(k12 / 2) ** 2 + one_minus_cosh)
    sagnac = kg2 * 1j * amps.a * (np.sin(k12) + odd_hyper) * np.sin(wT)
    acceleration = kg2 * amps.b * (np.cos(k12) + even_hyper) * 2 * np.sin(wT / 2) ** 2
    return PhaseTransferValue(bending=bending, sagnac=sagnac, acceleration=acceleration)


def phase_transfer_approx(omega, x_plus, x_minus, beam, support, spec):
    """Low-frequency closed form of the phase transfer (assumes ``L12 = L``).

    Valid for ``omega << omega0`` and ``omega T << 1``; not enforced so that
    callers can map where it breaks down.
    """
    omega = np.asarray(omega, dtype=float)
    x_plus = np.asarray(x_plus, dtype=complex)
    x_minus = np.asarray(x_minus, dtype=complex)
    R = suspension_response(omega, support.omega_osc(beam), support.q_osc(beam))
    wT = omega * spec.time_of_flight
    kg = spec.k_grating
    common = kg * (x_plus + x_minus) / (2 * (1 - R))
    return PhaseTransferValue(
        bending=common * APPROX_BENDING_COEFFICIENT * (omega / omega0(beam)) ** 2,
        sagnac=kg * (x_plus - x_minus) * 3j * wT / (3 - R),
        acceleration=common * wT**2,
    )


def optical_phase(bend, order, k_g_opt):
    """Phase of the optical monitor interferometer (light time of flight neglected)."""
    return order * k_g_opt * bend
