"""Spectra, resolvent traces and spectral zeta functions of the first-order
operator with a regular singular coefficient on (0, 1) and its self-adjoint
extensions."""

from .errors import (
    AccuracyLossError,
    ConfigError,
    DExtensionError,
    DomainError,
    OutOfStripError,
    PoleError,
    SingZetaError,
    StructuralError,
    ToleranceError,
)
from .operator import (
    D_EXTENSION,
    N_EXTENSION,
    Extension,
    negative_eigenvalues,
    phase,
    positive_eigenvalues,
    rho,
    secular_F,
    spectrum,
)
from .resolvent import kernel, tau, trace_dGD, trace_diff, trace_G, trace_G2, trace_GD, trace_GN
from .special import bessel_j, bessel_zero, bessel_zeros, log_derivative_ratio
from .zeta import (
    ZetaContinuation,
    eta,
    pole_table_eta_full,
    pole_table_plus,
    pole_table_zeta,
    scaling_covariance,
    zeta_full,
    zeta_plus_continued,
    zeta_plus_sum,
)

__version__ = "0.1.0"
