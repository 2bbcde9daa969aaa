"""Model configuration in a line-oriented ``section.key = value`` format.

Example::

    beam.omega0_hz = 460.4
    beam.half_length = 0.7
    beam.grating_half_span = 0.605
    beam.mass_per_length = 10.0
    support.omega_osc_hz = 40
    support.q_osc = 16
    interferometer.k_grating = 1.8727e7
    interferometer.atom_speed = 1065
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields
from pathlib import Path

from .beam import BeamSpec, SupportSpec
from .phase import InterferometerSpec

TWO_PI = 2 * math.pi


class ConfigError(ValueError):
    pass


@dataclass
class BeamConfig:
    half_length: float | None = None
    grating_half_span: float | None = None
    omega0_hz: float | None = None
    mass_per_length: float | None = None
    young_modulus: float | None = None
    density: float | None = None
    area: float | None = None
    moment: float | None = None


@dataclass
class SupportConfig:
    omega_osc_hz: float | None = None
    q_osc: float | None = None
    stiffness: float | None = None
    damping: float | None = None


@dataclass
class InterferometerConfig:
    k_grating: float | None = None
    order: int = 1
    time_of_flight: float | None = None
    atom_speed: float | None = None


@dataclass
class PipelineConfig:
    f_min: float = 2.0
    f_max: float = 1000.0
    grid: int = 2000
    smooth_octaves: float = 0.0
    extend_to: float = 1000.0
    n_bending: int = 3


@dataclass
class ModelConfig:
    beam: BeamConfig = field(default_factory=BeamConfig)
    support: SupportConfig = field(default_factory=SupportConfig)
    interferometer: InterferometerConfig = field(default_factory=InterferometerConfig)
    pipeline: PipelineConfig = field(default_factory=PipelineConfig)

    def validate(self):
        b, s, i = self.beam, self.support, self.interferometer
        problems = []
        for name in ("half_length", "grating_half_span"):
            if getattr(b, name) is None:
                problems.append(f"beam.{name} is required")
        material = [b.young_modulus, b.density, b.area, b.moment]
        by_omega0 = b.omega0_hz is not None or b.mass_per_length is not None
        if by_omega0 and any(v is not None for v in material):
            problems.append("beam: give either omega0_hz + mass_per_length or young_modulus/density/area/moment, not both")
        elif by_omega0 and (b.omega0_hz is None or b.mass_per_length is None):
            problems.append("beam: omega0_hz and mass_per_length must be given together")
        elif not by_omega0 and any(v is None for v in material):
            problems.append("beam: young_modulus, density, area and moment are all required")

        resonance = s.omega_osc_hz is not None or s.q_osc is not None
        springs = s.stiffness is not None or s.damping is not None
        if resonance == springs:
            problems.append("support: give exactly one of (omega_osc_hz, q_osc) or (stiffness, damping)")
        elif resonance and (s.omega_osc_hz is None or s.q_osc is None):
            problems.append("support: omega_osc_hz and q_osc must be given together")
        elif springs and s.stiffness is None:
            problems.append("support.stiffness is required")

        if i.k_grating is None:
            problems.append("interferometer.k_grating is required")
        if (i.time_of_flight is None) == (i.atom_speed is None):
            problems.append("interferometer: give exactly one of time_of_flight or atom_speed")
        if problems:
            raise ConfigError("; ".join(problems))

    def build_beam(self):
        self.validate()
        b = self.beam
        try:
            if b.omega0_hz is not None:
                return BeamSpec.from_omega0(TWO_PI * b.omega0_hz, b.half_length, b.grating_half_span, b.mass_per_length)
            return BeamSpec(b.young_modulus, b.density, b.area, b.moment, b.half_length, b.grating_half_span)
        except ValueError as exc:
            raise ConfigError(f"beam: {exc}") from None

    def build_support(self, beam=None):
        beam = beam or self.build_beam()
        s = self.support
        try:
            if s.omega_osc_hz is not None:
                return SupportSpec.from_resonance(TWO_PI * s.omega_osc_hz, s.q_osc, beam)
            return SupportSpec(s.stiffness, s.damping or 0.0)
        except ValueError as exc:
            raise ConfigError(f"support: {exc}") from None

    def build_interferometer(self, order=None):
        self.validate()
        i = self.interferometer
        order = i.order if order is None else order
        try:
            if i.atom_speed is not None:
                return InterferometerSpec.from_speed(i.k_grating, self.beam.grating_half_span, i.atom_speed, order)
            return InterferometerSpec(i.k_grating, order, i.time_of_flight)
        except ValueError as exc:
            raise ConfigError(f"interferometer: {exc}") from None

    def build(self, order=None):
        beam = self.build_beam()
        return beam, self.build_support(beam), self.build_interferometer(order)


_SECTIONS = {f.name: f.default_factory for f in fields(ModelConfig)}


def _coerce(section, key, text, lineno):
    target = {f.name: f for f in fields(_SECTIONS[section])}
    if key not in target:
        raise ConfigError(f"line {lineno}: unknown key {section}.{key}")
    kind = target[key].type
    try:
        if "int" in kind:
            value = float(text)
            if not value.is_integer():
                raise ValueError
            return int(value)
        return float(text)
    except ValueError:
        raise ConfigError(f"line {lineno}: {section}.{key} expects a number, got {text!r}") from None


def parse_config(text):
    cfg = ModelConfig()
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'section.key = value', got {line!r}")
        lhs, rhs = (s.strip() for s in line.split("=", 1))
        if lhs.count(".") != 1:
            raise ConfigError(f"line {lineno}: key {lhs!r} must look like section.key")
        section, key = lhs.split(".")
        if section not in _SECTIONS:
            raise ConfigError(f"line {lineno}: unknown section {section!r}")
        if lhs in seen:
            raise ConfigError(f"line {lineno}: duplicate key {lhs}")
        seen.add(lhs)
        setattr(getattr(cfg, section), key, _coerce(section, key, rhs, lineno))
    cfg.validate()
    return cfg


def load_config(path):
    return parse_config(Path(path).read_text(encoding="utf-8"))


def format_config(cfg):
    lines = []
    for section in _SECTIONS:
        sub = getattr(cfg, section)
        for f in fields(sub):
            value = getattr(sub, f.name)
            if value is not None:
                lines.append(f"{section}.{f.name} = {value!r}")
    return "\n".join(lines) + "\n"
