"""Floquet spectra, PT phases and entanglement transitions of a periodically
quenched non-Hermitian SSH chain with balanced gain and loss."""

__version__ = "0.1.0"

from .bloch import (
    ModelParams,
    QuasienergyPair,
    bloch_floquet,
    bloch_h1,
    bloch_h2,
    check_pt_symmetry,
    cos_quasienergy,
    quasienergy,
    symmetric_frame_floquet,
)
from .dynamics import (
    LatticeSpec,
    correlation,
    evolve_one_period,
    initial_isometry,
    iter_frames,
    real_space_floquet,
    stroboscopic_run,
)
from .entanglement import (
    EntanglementPhase,
    EntanglementTrace,
    ProfileFit,
    ScalingFit,
    SubsystemSpec,
    classify_entanglement,
    ee_vs_subsystem,
    ee_vs_system_size,
    entanglement_entropy,
    entanglement_trace,
    fit_subsystem_profile,
    fit_volume_law,
    steady_state_ee,
    sweep_entanglement_diagram,
)
from .errors import (
    ConfigError,
    DegenerateStateError,
    FitDegenerateError,
    InvalidArgumentError,
    NHFloquetError,
    NonHermitianInputError,
    NumericalError,
    SpectrumRangeError,
    WindowError,
)
from .spectral import (
    Axis,
    KGrid,
    PtDiagnostics,
    PtPhase,
    classify_pt,
    dissipation_gap,
    gap_functions,
    real_ratio,
    sweep_pt_diagram,
)
