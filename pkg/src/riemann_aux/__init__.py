"""Riemann's auxiliary function R(s).

``R(s)`` is the contour integral over the line ``0 ↙ 1`` of
``x**-s exp(pi i x**2) / (exp(pi i x) - exp(-pi i x))`` and satisfies
``zeta(s) = R(s) + chi(s) * conj(R(1 - conj(s)))``.

Submodules
----------
special     log-gamma, chi, zeta references and Dirichlet tails
contour     direct quadrature of R along slanted lines
expansion   saddle-point expansion around eta = sqrt((s-1)/(2 pi i))
regions     region predicates and explicit bounds for the remainder and U
audit       numerical re-derivation of the constants behind the bounds
zeros       argument-principle counting and Newton refinement
cli         the ``riemann-aux`` command
"""

from .audit import AuditItem, run_audit
from .contour import DOWN_LEFT, DOWN_RIGHT, LinePath, QuadratureResult, line_quadrature, r_defining, r_reflected
from .errors import (
    BoundaryZeroError,
    BranchError,
    ConvergenceError,
    DomainError,
    PoleError,
    PreconditionError,
    RiemannAuxError,
)
from .expansion import EtaFrame, ExpansionBreakdown, assemble, eta_frame, leading_term, remainder_R, trig_term, w_factor
from .extcomplex import ExtComplex
from .regions import BoundCertificate, RegionParams, bound_remainder, bound_U, classify, zero_free_verdict
from .special import chi, log_chi, log_gamma, zeta_dirichlet, zeta_reference
from .zeros import Rectangle, ZeroRecord, refine_zero, scan_region, winding_count

__version__ = "0.1.0"

__all__ = [
    "AuditItem",
    "BoundCertificate",
    "BoundaryZeroError",
    "BranchError",
    "ConvergenceError",
    "DOWN_LEFT",
    "DOWN_RIGHT",
    "DomainError",
    "EtaFrame",
    "ExpansionBreakdown",
    "ExtComplex",
    "LinePath",
    "PoleError",
    "PreconditionError",
    "QuadratureResult",
    "Rectangle",
    "RegionParams",
    "RiemannAuxError",
    "ZeroRecord",
    "assemble",
    "bound_U",
    "bound_remainder",
    "chi",
    "classify",
    "eta_frame",
    "leading_term",
    "line_quadrature",
    "log_chi",
    "log_gamma",
    "r_defining",
    "r_reflected",
    "refine_zero",
    "remainder_R",
    "run_audit",
    "scan_region",
    "trig_term",
    "w_factor",
    "winding_count",
    "zero_free_verdict",
    "zeta_dirichlet",
    "zeta_reference",
]
