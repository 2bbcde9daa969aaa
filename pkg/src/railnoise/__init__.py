"""Vibration-induced phase noise of three-grating Mach-Zehnder atom interferometers."""

from pathlib import Path

from .beam import (
    BeamSpec,
    ModalAmplitudes,
    ResonanceSingularity,
    SupportSpec,
    bending_resonances,
    dispersion,
    modal_amplitudes,
    omega0,
    rail_shape,
    support_resonances,
)
from .noise import (
    NoiseSpectrum,
    PhaseNoisePsd,
    extend_constant,
    integrate_phase_variance,
    load_spectrum,
    phase_noise_psd,
    rms_bending,
    smooth_envelope,
)
from .phase import (
    InterferometerSpec,
    PhaseTransferValue,
    optical_phase,
    phase_second_order,
    phase_time_domain,
    phase_transfer_approx,
    phase_transfer_full,
    suspension_response,
)
from .visibility import (
    VisibilityFit,
    VisibilityPoint,
    fit_visibility,
    variance_to_visibility_report,
    visibility_curve,
    visibility_from_variance,
)

DATA_DIR = Path(__file__).parent / "data"
EXAMPLE_CONFIG = DATA_DIR / "example.cfg"
FIXTURE_SPECTRUM = DATA_DIR / "seismic_fixture.psd"
