"""Spectral solver for the ill-posed Cauchy problem in a cylinder.

The problem u_tt + L_x u = f on Omega x (0,1) with zero Cauchy data at
t = 0 separates into one reflection-coupled eigenproblem per transverse
eigenvalue mu_k:

    v''(t) - mu v(t) = lambda v(1 - t),  v(0) = v'(0) = 0.

Module layout:

- ``operator_model``: the transverse spectrum mu_k (built-in Dirichlet
  Laplacian on an interval or box, or user-supplied files).
- ``deviating``: the axis eigenproblem — characteristic function, root
  scans, the log-scaled ground-branch route, closed-form asymptotics,
  normalized eigenfunctions.
- ``oracle``: independent cross-check; Nystrom discretization of the
  equivalent integral operator with a self-contained Jacobi eigensolver.
- ``solver``: mode projection, the strong-solvability criterion, the
  spectral solution, the stable-subspace split, and the Hadamard
  instability table.
- ``io`` / ``cli``: file formats and the command-line front end.
"""

from .deviating import (
    AsymptoticLambda,
    DeviatingMode,
    asymptotic_lambda1,
    char_fn,
    cosh_like,
    eigenfunction,
    eigenvalues,
    modes_up_to,
    sinh_like,
    smallest_eigenvalue,
    varpi,
)
from .errors import (
    AmplificationOverflowError,
    CylcauchyError,
    FriedrichsViolationError,
    IllPosedError,
    InsufficientDataWarning,
    JacobiConvergenceError,
    OracleRangeError,
    RangeOverflowError,
    ResolutionError,
    RootNotFoundError,
    ScanBudgetError,
    SpectrumFormatError,
    SpectrumOrderingError,
    TruncatedResultWarning,
    UnderflowRangeError,
    UnsupportedSpectrumError,
)
from .operator_model import (
    OperatorSpectrum,
    SpectrumEntry,
    dirichlet_spectrum_1d,
    eval_basis_1d,
    load_spectrum,
    tensor_spectrum,
)
from .oracle import (
    EigenDecomposition,
    KernelMatrix,
    build_matrix,
    composed_kernel,
    jacobi_eigen,
    kernel_hs_norm_sq,
    kernel_trace,
    oracle_lambdas,
)
from .solver import (
    HadamardRow,
    ModeCoefficients,
    SolutionField,
    SolvabilityReport,
    SubspaceSplit,
    compute_modes,
    criterion,
    hadamard_amplification,
    project_f,
    residual,
    solve,
    split_subspace,
    synthesize,
    synthesize_data,
)

__version__ = "0.1.0"

__all__ = [
    "AsymptoticLambda",
    "DeviatingMode",
    "asymptotic_lambda1",
    "char_fn",
    "cosh_like",
    "eigenfunction",
    "eigenvalues",
    "modes_up_to",
    "sinh_like",
    "smallest_eigenvalue",
    "varpi",
    "AmplificationOverflowError",
    "CylcauchyError",
    "FriedrichsViolationError",
    "IllPosedError",
    "InsufficientDataWarning",
    "JacobiConvergenceError",
    "OracleRangeError",
    "RangeOverflowError",
    "ResolutionError",
    "RootNotFoundError",
    "ScanBudgetError",
    "SpectrumFormatError",
    "SpectrumOrderingError",
    "TruncatedResultWarning",
    "UnderflowRangeError",
    "UnsupportedSpectrumError",
    "OperatorSpectrum",
    "SpectrumEntry",
    "dirichlet_spectrum_1d",
    "eval_basis_1d",
    "load_spectrum",
    "tensor_spectrum",
    "EigenDecomposition",
    "KernelMatrix",
    "build_matrix",
    "composed_kernel",
    "jacobi_eigen",
    "kernel_hs_norm_sq",
    "kernel_trace",
    "oracle_lambdas",
    "HadamardRow",
    "ModeCoefficients",
    "SolutionField",
    "SolvabilityReport",
    "SubspaceSplit",
    "compute_modes",
    "criterion",
    "hadamard_amplification",
    "project_f",
    "residual",
    "solve",
    "split_subspace",
    "synthesize",
    "synthesize_data",
    "__version__",
]
