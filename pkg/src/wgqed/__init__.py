"""Single-photon scattering off a cavity and a Lambda-type emitter side-coupled
to a waveguide: closed-form amplitudes, a direct-solve cross-check,
exceptional-point search and parameter sweeps."""

__version__ = "0.1.0"

from .params import (  # noqa: E402
    DegenerateDriveError,
    FrequencySpec,
    InvalidParameterError,
    SingularPointError,
    SystemParams,
    derive_detunings,
    validate,
)
from .amplitudes import (  # noqa: E402
    AmplitudeSet,
    Auxiliaries,
    auxiliaries,
    eval_three_level,
    eval_two_level,
    evaluate,
    observables,
)
from .oracle import OracleSolution, residuals, solve_backward, solve_forward  # noqa: E402
from .spectral import (  # noqa: E402
    EPRecord,
    EPTolerances,
    InvalidSliceError,
    Link,
    PhaseDiagnostics,
    SMatrixSpectrum,
    SweepSlice,
    UndefinedContrastError,
    contrast_ratio,
    find_eps,
    phase_diagnostics,
    s_eigenvalues,
)
from .sweep import Axis, SweepGrid, SweepResult, export, run_sweep  # noqa: E402
from .presets import preset  # noqa: E402
