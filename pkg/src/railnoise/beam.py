"""Frequency-domain dynamics of a free-free Euler-Bernoulli rail on damped springs.

The rail occupies ``-L <= z <= L`` and is held at both ends by supports with
stiffness ``K`` and viscous damping ``mu``. Harmonic quantities follow the
``exp(-i omega t)`` convention, so a time derivative becomes ``-i omega`` and
the support impedance is ``K - i mu omega``.

Hyperbolic terms are only ever used through bounded ratios such as
``sinh(k z) / sinh(k L)`` which are evaluated in exponentially scaled form,
so nothing overflows for large ``k L``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

# (x1 / 2)**2 rounded as printed for the first free-free bending mode
OMEGA0_COEFFICIENT = 5.593

# boundary solve is refused beyond this condition number
SINGULARITY_THRESHOLD = 1e12


class ResonanceSingularity(ArithmeticError):
    """Boundary problem is singular (undamped supports driven on a resonance)."""


@dataclass(frozen=True)
class BeamSpec:
    """Geometry and material of the rail (SI units)."""

    young_modulus: float
    density: float
    area: float
    moment: float
    half_length: float
    grating_half_span: float

    def __post_init__(self):
        for name in ("young_modulus", "density", "area", "moment", "half_length"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)!r}")
        if not 0 < self.grating_half_span <= self.half_length:
            raise ValueError(
                "grating_half_span must satisfy 0 < L12 <= L, got "
                f"L12={self.grating_half_span!r}, L={self.half_length!r}"
            )

    @classmethod
    def from_omega0(cls, omega0, half_length, grating_half_span, mass_per_length=1.0):
        """Build a beam whose stiffness reproduces a given ``omega0`` (rad/s).

        Only ``E I / (rho A)`` and ``rho A`` matter to the dynamics, so the
        cross-section is normalised to unit area and unit moment.
        """
        if not omega0 > 0:
            raise ValueError(f"omega0 must be > 0, got {omega0!r}")
        if not mass_per_length > 0:
            raise ValueError(f"mass_per_length must be > 0, got {mass_per_length!r}")
        flexural = (omega0 * half_length**2 / OMEGA0_COEFFICIENT) ** 2
        return cls(
            young_modulus=flexural * mass_per_length,
            density=mass_per_length,
            area=1.0,
            moment=1.0,
            half_length=half_length,
            grating_half_span=grating_half_span,
        )

    @property
    def mass_per_length(self):
        return self.density * self.area

    @property
    def flexural_ratio(self):
        """``E I / (rho A)`` in m^4/s^2."""
        return self.young_modulus * self.moment / self.mass_per_length

    @property
    def half_mass(self):
        """Mass carried by one support, ``rho A L``."""
        return self.mass_per_length * self.half_length


@dataclass(frozen=True)
class SupportSpec:
    stiffness: float
    damping: float = 0.0

    def __post_init__(self):
        if not self.stiffness > 0:
            raise ValueError(f"stiffness must be > 0, got {self.stiffness!r}")
        if not self.damping >= 0:
            raise ValueError(f"damping must be >= 0, got {self.damping!r}")

    @classmethod
    def from_resonance(cls, omega_osc, q_osc, beam):
        """Suspension giving pendular resonance ``omega_osc`` with quality ``q_osc``.

        ``q_osc = inf`` gives an undamped suspension.
        """
        if not omega_osc > 0:
            raise ValueError(f"omega_osc must be > 0, got {omega_osc!r}")
        if not q_osc > 0:
            raise ValueError(f"q_osc must be > 0, got {q_osc!r}")
        stiffness = beam.half_mass * omega_osc**2
        damping = 0.0 if np.isinf(q_osc) else beam.half_mass * omega_osc / q_osc
        return cls(stiffness=stiffness, damping=damping)

    def omega_osc(self, beam):
        return float(np.sqrt(self.stiffness / beam.half_mass))

    def q_osc(self, beam):
        if self.damping == 0:
            return float("inf")
        return beam.half_mass * self.omega_osc(beam) / self.damping

    def impedance(self, omega):
        return self.stiffness - 1j * self.damping * np.asarray(omega)


@dataclass(frozen=True)
class ModalAmplitudes:
    """Coefficients of ``X(z) = a sin kz + b cos kz + c sinh kz + d cosh kz``.

    Fields may be scalars or equally shaped arrays (one entry per frequency).
    """

    a: complex
    b: complex
    c: complex
    d: complex
    wavenumber: float
    half_length: float


def dispersion(omega, beam):
    """Wavenumber ``kappa`` with ``rho A omega**2 = E I kappa**4``."""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega < 0):
        raise ValueError("omega must be >= 0")
    kappa = np.sqrt(omega) / beam.flexural_ratio**0.25
    return kappa if kappa.ndim else float(kappa)


def omega0(beam):
    """Closed-form first bending resonance of the free rail (rad/s)."""
    return OMEGA0_COEFFICIENT * np.sqrt(beam.flexural_ratio / beam.half_length**4)


def _free_free(x):
    # same roots as cos(x) cosh(x) - 1, but bounded for large x
    return np.cos(x) - 1.0 / np.cosh(x)


def free_free_roots(n):
    """First ``n`` positive roots of ``cos(x) cosh(x) = 1`` (x = 2 kappa L)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n!r}")
    roots = []
    for k in range(1, n + 1):
        if k == 1:
            lo, hi = 3.0, 5.0
        else:
            centre = (2 * k + 1) * np.pi / 2
            lo, hi = centre - 0.6, centre + 0.6
        f_lo, f_hi = _free_free(lo), _free_free(hi)
        if np.sign(f_lo) == np.sign(f_hi):
            raise RuntimeError(f"cannot bracket free-free root #{k} in [{lo}, {hi}]")
        roots.append(brentq(_free_free, lo, hi, xtol=1e-13, rtol=4 * np.finfo(float).eps))
    return np.array(roots)


def bending_resonances(beam, n=1):
    """Angular frequencies of the first ``n`` bending modes (rad/s), increasing."""
    kappa = free_free_roots(n) / (2 * beam.half_length)
    return np.sqrt(beam.flexural_ratio) * kappa**2


def support_resonances(beam, support):
    """Pendular (in-phase) and rotational resonances of the rigid rail (rad/s)."""
    w_osc = support.omega_osc(beam)
    return w_osc, w_osc * np.sqrt(3.0)


def sinh_ratio(u, v):
    """``sinh(u) / sinh(v)`` for ``0 < v`` and ``|u| <= v`` without overflow."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    au = np.abs(u)
    return np.sign(u) * np.exp(au - v) * np.expm1(-2 * au) / np.expm1(-2 * v)


def cosh_ratio(u, v):
    """``cosh(u) / cosh(v)`` for ``|u| <= v`` without overflow."""
    au = np.abs(np.asarray(u, dtype=float))
    v = np.asarray(v, dtype=float)
    return np.exp(au - v) * (1 + np.exp(-2 * au)) / (1 + np.exp(-2 * v))


def _end_stiffness_terms(x):
    """Third-derivative shape factors at ``z = L`` for odd and even parts.

    odd:  -cos x + sin x coth x   (series below x = 1e-3, where it cancels)
    even:  sin x + cos x tanh x
    """
    x = np.asarray(x, dtype=float)
    small = x < 1e-3
    xs = np.where(small, 1.0, x)
    odd = np.where(small, 2 * x**2 / 3 - x**4 / 9, -np.cos(xs) + np.sin(xs) / np.tanh(xs))
    even = np.sin(x) + np.cos(x) * np.tanh(x)
    return odd, even


def modal_amplitudes(omega, x_plus, x_minus, beam, support):
    """Rail response to support displacements ``x_plus`` (z = +L) and ``x_minus``.

    Solves the torque-free, spring-and-damper end conditions. Accepts scalar or
    array ``omega`` (broadcast against the displacements).

    Raises :class:`ResonanceSingularity` when the boundary system is singular
    to within ``SINGULARITY_THRESHOLD``, which only happens for undamped
    supports driven exactly on a resonance.
    """
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise ValueError("omega must be > 0")
    x_plus = np.asarray(x_plus, dtype=complex)
    x_minus = np.asarray(x_minus, dtype=complex)

    L = beam.half_length
    kappa = np.sqrt(omega) / beam.flexural_ratio**0.25
    kl = kappa * L
    z_end = support.impedance(omega)
    ei_k3 = beam.young_modulus * beam.moment * kappa**3
    s_odd, s_even = _end_stiffness_terms(kl)

    # boundary rows: eps*EI*X'''(eps L) - Z X(eps L) = -Z x_eps
    # with X(eps L) = 2 (eps a sin kL + b cos kL), giving [[P, Q], [-P, Q]]
    p_elastic, p_spring = ei_k3 * s_odd, 2 * z_end * np.sin(kl)
    q_elastic, q_spring = ei_k3 * s_even, 2 * z_end * np.cos(kl)
    p_coef = p_elastic - p_spring
    q_coef = q_elastic - q_spring

    with np.errstate(divide="ignore", invalid="ignore"):
        cond_p = (np.abs(p_elastic) + np.abs(p_spring)) / np.abs(p_coef)
        cond_q = (np.abs(q_elastic) + np.abs(q_spring)) / np.abs(q_coef)
    worst = np.nanmax(np.where(np.isnan(cond_p), np.inf, np.maximum(cond_p, cond_q)))
    if not worst <= SINGULARITY_THRESHOLD:
        raise ResonanceSingularity(
            f"boundary system singular (condition {worst:.3g}); add support damping "
            "or move off the resonance"
        )

    a = -z_end * (x_plus - x_minus) / (2 * p_coef)
    b = -z_end * (x_plus + x_minus) / (2 * q_coef)
    c = a * np.sin(kl) * _inv_sinh(kl)
    d = b * np.cos(kl) * cosh_ratio(0.0, kl)
    return ModalAmplitudes(a=a, b=b, c=c, d=d, wavenumber=kappa, half_length=L)


def _inv_sinh(x):
    x = np.asarray(x, dtype=float)
    return 2 * np.exp(-x) / -np.expm1(-2 * x)


def rail_shape(z, amps):
    """Complex neutral-line displacement ``X(z)`` for ``|z| <= L``."""
    z = np.asarray(z, dtype=float)
    L = amps.half_length
    if np.any(np.abs(z) > L * (1 + 1e-12)):
        raise ValueError("rail_shape needs |z| <= L")
    k = amps.wavenumber
    kz, kl = k * z, k * L
    # c sinh(kz) = a sin(kL) sinh(kz)/sinh(kL), and likewise for d
    hyper_odd = amps.a * np.sin(kl) * sinh_ratio(kz, kl)
    hyper_even = amps.b * np.cos(kl) * cosh_ratio(kz, kl)
    return amps.a * np.sin(kz) + amps.b * np.cos(kz) + hyper_odd + hyper_even
