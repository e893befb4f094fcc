"""sturmkit: forward and inverse spectral toolkit for the Dirichlet
operator -y'' + v(x) y on [0, 1].

Compute spectra and norming/normalizing constants from a potential,
reconstruct potentials from admissible spectral data by fixed-point
iteration, and move individual spectral data by explicit transforms.
"""

import os as _os

# Optional cap on internal parallelism (BLAS pools, JIT threading).
# Must run before numpy-backed submodules are imported.
_threads = _os.environ.get("STURMKIT_THREADS")
if _threads and _threads.isdigit():
    for _var in (
        "OMP_NUM_THREADS",
        "OPENBLAS_NUM_THREADS",
        "MKL_NUM_THREADS",
        "NUMBA_NUM_THREADS",
    ):
        _os.environ.setdefault(_var, _threads)

from .errors import (  # noqa: E402
    AdmissibilityError,
    BracketingError,
    ConsistencyError,
    CrossingError,
    DarbouxError,
    DomainError,
    InputError,
    PositivityError,
    ResolutionError,
    SturmkitError,
)
from .potential import (  # noqa: E402
    GridFunction,
    TrigSeries,
    fourier_analyze,
    fourier_synthesize,
    lp_norm,
    parity_split,
)
from .forward import (  # noqa: E402
    CauchySolution,
    Eigenpair,
    char_w,
    find_eigenvalues,
    integrate_cauchy,
    series_phi,
    spectral_data,
)
from .darboux import ShiftRequest, retarget_head, shift_eigenvalue, shift_norming  # noqa: E402
from .inverse import (  # noqa: E402
    ReconstructionOptions,
    RunReport,
    SpectralTarget,
    alpha_to_nu,
    forward_target,
    global_reconstruct,
    nu_to_alpha,
    reconstruct,
    reconstruct_even,
    reconstruct_general,
    wdot_magnitude,
)
from .validate import (  # noqa: E402
    ValidationReport,
    asymptotic_decay_check,
    check_admissible,
    marchenko_tail_identity,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityError",
    "BracketingError",
    "CauchySolution",
    "ConsistencyError",
    "CrossingError",
    "DarbouxError",
    "DomainError",
    "Eigenpair",
    "GridFunction",
    "InputError",
    "PositivityError",
    "ReconstructionOptions",
    "ResolutionError",
    "RunReport",
    "ShiftRequest",
    "SpectralTarget",
    "SturmkitError",
    "TrigSeries",
    "ValidationReport",
    "alpha_to_nu",
    "asymptotic_decay_check",
    "char_w",
    "check_admissible",
    "find_eigenvalues",
    "forward_target",
    "fourier_analyze",
    "fourier_synthesize",
    "global_reconstruct",
    "integrate_cauchy",
    "lp_norm",
    "marchenko_tail_identity",
    "nu_to_alpha",
    "parity_split",
    "reconstruct",
    "reconstruct_even",
    "reconstruct_general",
    "retarget_head",
    "series_phi",
    "shift_eigenvalue",
    "shift_norming",
    "spectral_data",
    "wdot_magnitude",
]
