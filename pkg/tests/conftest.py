import numpy as np
import pytest

from railnoise import EXAMPLE_CONFIG, FIXTURE_SPECTRUM
from railnoise.beam import BeamSpec, SupportSpec
from railnoise.config import load_config
from railnoise.noise import extend_constant, load_spectrum
from railnoise.phase import InterferometerSpec

TWO_PI = 2 * np.pi

# lithium interferometer values quoted with the phase-noise estimate
REF_OMEGA0_HZ = 460.4
REF_OMEGA0_DESIGN_HZ = 437.0
REF_OMEGA_OSC_HZ = 40.0
REF_OMEGA_OSC_ESTIMATE_HZ = 20.0
REF_Q_OSC = 16.0
REF_L12 = 0.605
REF_ATOM_SPEED = 1065.0
REF_T = 5.7e-4
REF_K_OPT = 3.14e5
REF_BENDING_LIMIT = 3e-9
REF_VARIANCE_TOTAL = 0.16
REF_VARIANCE_SAGNAC = 0.13
REF_FIT_OURS = (0.98, 0.286)
REF_FIT_GILTNER = (0.85, 0.650)

# first roots of cos(x) cosh(x) = 1 from a plain bisection (tests/oracles.py)
FREE_FREE_ROOTS = (4.730040744862691, 7.8532046240958095, 10.995607838001689)


@pytest.fixture
def ref_config():
    return load_config(EXAMPLE_CONFIG)


@pytest.fixture
def ref_model(ref_config):
    return ref_config.build()


@pytest.fixture
def fixture_spectrum():
    return extend_constant(load_spectrum(FIXTURE_SPECTRUM), 1000.0)


@pytest.fixture
def unit_beam():
    # E I / (rho A) = 1, rho A = 1
    return BeamSpec(1.0, 1.0, 1.0, 1.0, half_length=1.0, grating_half_span=0.8)


@pytest.fixture
def stiff_beam():
    """Rail with L12 = L whose window for the closed-form approximation is wide."""
    return BeamSpec.from_omega0(TWO_PI * 2000.0, 0.6, 0.6, mass_per_length=5.0)


@pytest.fixture
def stiff_support(stiff_beam):
    return SupportSpec.from_resonance(TWO_PI * 2.0, 16.0, stiff_beam)


@pytest.fixture
def lithium_ifm():
    return InterferometerSpec.from_speed(1.8727e7, REF_L12, REF_ATOM_SPEED)


ACCEPTANCE_LINES = []


def record_criterion(number, title, ok, detail):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title} -- {detail}")
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
