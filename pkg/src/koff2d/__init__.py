"""koff2d: average lifetime of the bound state for a reversibly binding,
diffusing particle pair in two dimensions.

Three mutually validating routes to the inverse off-rate:

* closed form               1/k_off = 1/kd + (ln2 - gamma) ka/(2 pi D kd)
* regularized quadrature    split finite-part integral of f(x)/x
* Stieltjes extrapolation   compensated K-Bessel resolvent, x -> 0

plus numeric verification of the transform identities that connect them.
"""

from ._backend import backend_name
from .errors import DomainError, ParameterError
from .identities import (IdentityReport, master_lhs, verify_double_laplace,
                         verify_ismail, verify_master)
from .integrand import (IntegrandContext, alpha_beta, f, f_small_x, f_sub,
                        f_zero, p_squared)
from .model import (DimensionlessParams, PhysicalParams, nondimensionalize,
                    physical_scale_factor)
from .offrate import (ExtrapolationTable, RouteResult, finite_part_closed,
                      finite_part_quadrature, finite_part_route,
                      finite_part_stieltjes, koff_inverse, koff_inverse_closed)
from .quadrature import (FinitePartProblem, IntegralEstimate, QuadratureConfig,
                         finite_part, integrate_adaptive, integrate_tail,
                         integrate_tail_truncated)
from .specfun import BesselKind, bessel, bessel_i, bessel_j, bessel_k, bessel_y

__version__ = "0.1.0"

__all__ = [
    "BesselKind", "DimensionlessParams", "DomainError", "ExtrapolationTable",
    "FinitePartProblem", "IdentityReport", "IntegralEstimate",
    "IntegrandContext", "ParameterError", "PhysicalParams", "QuadratureConfig",
    "RouteResult", "alpha_beta", "backend_name", "bessel", "bessel_i",
    "bessel_j", "bessel_k", "bessel_y", "f", "f_small_x", "f_sub", "f_zero",
    "finite_part", "finite_part_closed", "finite_part_quadrature",
    "finite_part_route", "finite_part_stieltjes", "integrate_adaptive",
    "integrate_tail", "integrate_tail_truncated", "koff_inverse",
    "koff_inverse_closed", "master_lhs", "nondimensionalize", "p_squared",
    "physical_scale_factor", "verify_double_laplace", "verify_ismail",
    "verify_master",
]
