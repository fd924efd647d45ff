"""Three routes to the average bound-state lifetime, and their dispatch.

Dimensionless finite part:
    F(h, kappa) = (h^2/kappa^2)(ln 2 - gamma) + h/kappa^2
computed (1) in closed form, (2) as the regularized split integral of
f(x)/x, (3) as the x -> 0 limit of the compensated K-Bessel resolvent.
Routes (2) and (3) are the certificates of route (1); `koff_inverse`
restores physical units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import DomainError, ParameterError
from .identities import master_lhs
from .integrand import (IntegrandContext, f as f_eval, f_sub, f_zero,
                        resonance_breakpoints)
from .model import (DimensionlessParams, PhysicalParams, nondimensionalize,
                    physical_scale_factor)
from .quadrature import FinitePartProblem, QuadratureConfig, finite_part

LN2_MINUS_GAMMA = 0.11593151565841245

ROUTE_CLOSED = "closed_form"
ROUTE_QUADRATURE = "quadrature"
ROUTE_STIELTJES = "stieltjes_extrapolation"

QUADRATURE_ROUTE_RTOL = 1e-8
STIELTJES_ROUTE_RTOL = 1e-6

DEFAULT_X_SEQUENCE = tuple(10.0 ** -k for k in range(1, 9))
X_FLOOR = 1e-12


@dataclass(frozen=True)
class RouteResult:
    route: str
    value: float
    error_estimate: float
    diagnostics: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ExtrapolationTable:
    x_values: tuple
    compensated_values: tuple
    extrapolated: float


def finite_part_closed(params: DimensionlessParams) -> float:
    """F = (h^2/kappa^2)(ln2 - gamma) + h/kappa^2."""
    h = params.h_tilde
    kap2 = params.kappa_D_tilde * params.kappa_D_tilde
    return (h * h / kap2) * LN2_MINUS_GAMMA + h / kap2


def koff_inverse_closed(p: PhysicalParams) -> RouteResult:
    """1/k_off = 1/kappa_d + (ln2 - gamma) kappa_a / (2 pi D kappa_d)."""
    value = 1.0 / p.kappa_d + LN2_MINUS_GAMMA / (2.0 * math.pi * p.D) * p.kappa_a / p.kappa_d
    return RouteResult(ROUTE_CLOSED, value, 4.0 * 2.2e-16 * value,
                       {"physical": True})


def finite_part_quadrature(params: DimensionlessParams,
                           cfg: QuadratureConfig = QuadratureConfig()) -> RouteResult:
    """F by the regularized split integral of f(x)/x at cfg.split_point."""
    if params.h_tilde == 0.0:
        return RouteResult(ROUTE_QUADRATURE, 0.0, 0.0,
                           {"short_circuit": "h_tilde = 0 makes f vanish"})
    ctx = IntegrandContext(params)
    problem = FinitePartProblem(
        f=lambda x: f_eval(ctx, x),
        f0=f_zero(params),
        split=cfg.split_point,
        sub=lambda x: f_sub(ctx, x),
        breakpoints=resonance_breakpoints(params),
    )
    est = finite_part(problem, cfg)
    return RouteResult(ROUTE_QUADRATURE, est.value, est.error_estimate, {
        "split": cfg.split_point,
        "subdivisions": est.subdivisions_used,
        "converged": est.converged,
    })


def finite_part_stieltjes(params: DimensionlessParams,
                          x_sequence: Optional[Sequence[float]] = None,
                          cfg: QuadratureConfig = QuadratureConfig()) -> RouteResult:
    """F as the limit of lhs(x) + f(0) ln(sqrt x) along x_sequence -> 0."""
    xs = tuple(float(x) for x in (x_sequence if x_sequence is not None
                                  else DEFAULT_X_SEQUENCE))
    if not xs or any(not math.isfinite(x) or x < X_FLOOR for x in xs):
        raise DomainError("x_sequence must stay within [%g, inf), got %r" % (X_FLOOR, xs))
    if any(b >= a for a, b in zip(xs, xs[1:])):
        raise DomainError("x_sequence must be strictly decreasing")
    f0 = f_zero(params)
    comp = tuple(master_lhs(params, x) + f0 * math.log(math.sqrt(x)) for x in xs)
    table = ExtrapolationTable(xs, comp, comp[-1])
    diffs = tuple(b - a for a, b in zip(comp, comp[1:]))
    err = abs(diffs[-1]) if diffs else float("nan")
    # non-monotone shrinkage is flagged but is not by itself a failure
    # (early decades are pre-asymptotic; the floor is rounding noise)
    monotone = all(abs(b) <= abs(a) for a, b in zip(diffs, diffs[1:]))
    converged = bool(diffs) and err <= STIELTJES_ROUTE_RTOL * max(abs(comp[-1]), 1e-300)
    return RouteResult(ROUTE_STIELTJES, comp[-1], err, {
        "table": table,
        "diffs": diffs,
        "monotone": monotone,
        "converged": converged,
    })


_ROUTE_ALIASES = {
    "closed": ROUTE_CLOSED, ROUTE_CLOSED: ROUTE_CLOSED,
    "quadrature": ROUTE_QUADRATURE, ROUTE_QUADRATURE: ROUTE_QUADRATURE,
    "stieltjes": ROUTE_STIELTJES, ROUTE_STIELTJES: ROUTE_STIELTJES,
}


def finite_part_route(params: DimensionlessParams, route: str,
                      cfg: QuadratureConfig = QuadratureConfig()) -> RouteResult:
    """Dimensionless F by the named route."""
    canonical = _ROUTE_ALIASES.get(route)
    if canonical is None:
        raise ParameterError("unknown route %r" % (route,))
    if canonical == ROUTE_CLOSED:
        value = finite_part_closed(params)
        return RouteResult(ROUTE_CLOSED, value, 4.0 * 2.2e-16 * abs(value), {})
    if canonical == ROUTE_QUADRATURE:
        return finite_part_quadrature(params, cfg)
    return finite_part_stieltjes(params, None, cfg)


def koff_inverse(p: PhysicalParams, route: str = "closed",
                 cfg: QuadratureConfig = QuadratureConfig()) -> RouteResult:
    """Physical 1/k_off by the named route."""
    canonical = _ROUTE_ALIASES.get(route)
    if canonical is None:
        raise ParameterError("unknown route %r" % (route,))
    if p.kappa_a == 0.0:
        return RouteResult(canonical, 1.0 / p.kappa_d, 0.0,
                           {"short_circuit": "kappa_a = 0: intrinsic lifetime 1/kappa_d"})
    if canonical == ROUTE_CLOSED:
        return koff_inverse_closed(p)
    params = nondimensionalize(p)
    c = physical_scale_factor(p)
    r = finite_part_route(params, canonical, cfg)
    diag = dict(r.diagnostics)
    diag["scale_factor"] = c
    diag["dimensionless_value"] = r.value
    return RouteResult(r.route, c * r.value, c * r.error_estimate, diag)
