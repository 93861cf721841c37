"""Discrete Laguerre-Sobolev orthogonal polynomials with exact and float backends."""

from .connect import (
    ConnectionResult,
    FormulaViolationError,
    ModifiedFamily,
    ZetaLadder,
    build_zeta,
    connect_laguerre,
    connect_shifted,
    connect_zeta,
    modified_family,
    zeta_adjoint_check,
)
from .kernels import (
    KernelMatrix,
    kernel_cd,
    kernel_matrix,
    kernel_partial,
    kernel_partial_cd,
    kernel_partial_cd_poly,
    kernel_sum,
    kernel_vector,
    telescoping_identity_check,
)
from .laguerre import (
    DegenerateParameterError,
    LaguerreFamily,
    MomentFunctional,
    gauss_laguerre,
)
from .poly import DivisionRemainderError, Poly, hyp1f1_truncated, pochhammer, taylor_truncate
from .scalar import EXACT, FLOAT, BackendMismatchError, format_scalar, parse_rational
from .sobolev import (
    MassPoint,
    SobolevExistenceError,
    SobolevFamily,
    SobolevSpec,
    dvec,
    gram_schmidt_oracle,
    sobolev_inner,
)

__version__ = "0.1.0"

__all__ = [
    "BackendMismatchError",
    "ConnectionResult",
    "DegenerateParameterError",
    "DivisionRemainderError",
    "EXACT",
    "FLOAT",
    "FormulaViolationError",
    "KernelMatrix",
    "LaguerreFamily",
    "MassPoint",
    "ModifiedFamily",
    "MomentFunctional",
    "Poly",
    "SobolevExistenceError",
    "SobolevFamily",
    "SobolevSpec",
    "ZetaLadder",
    "build_zeta",
    "connect_laguerre",
    "connect_shifted",
    "connect_zeta",
    "dvec",
    "format_scalar",
    "gauss_laguerre",
    "gram_schmidt_oracle",
    "hyp1f1_truncated",
    "kernel_cd",
    "kernel_matrix",
    "kernel_partial",
    "kernel_partial_cd",
    "kernel_partial_cd_poly",
    "kernel_sum",
    "kernel_vector",
    "modified_family",
    "parse_rational",
    "pochhammer",
    "sobolev_inner",
    "taylor_truncate",
    "telescoping_identity_check",
    "zeta_adjoint_check",
]
