"""Numeric verification of the three transform identities at finite x.

Every quantity here is a convergent integral; this is the module that
certifies the mathematics before any x -> 0 limit is taken downstream.

Probe-point defaults sit away from both the x -> 0 divergence and the
underflow regime of K(sqrt(x)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from . import _backend
from .errors import DomainError, ParameterError
from .integrand import resonance_breakpoints
from .model import DimensionlessParams
from .quadrature import QuadratureConfig, integrate_adaptive, integrate_tail

_GAMMA = 0.5772156649015329
_LN2 = 0.6931471805599453

DOUBLE_LAPLACE_PROBES = (0.5, 1.0, 10.0)
ISMAIL_PROBES = (0.5, 1.0, 4.0, 10.0)
MASTER_PROBES = (0.5, 1.0, 2.0, 5.0)

DOUBLE_LAPLACE_TOL = 1e-9
ISMAIL_TOL = 1e-8
MASTER_TOL = 1e-8


@dataclass(frozen=True)
class IdentityReport:
    identity_name: str
    probe_points: tuple
    lhs_values: tuple
    rhs_values: tuple
    max_rel_residual: float
    tolerance: float
    passed: bool
    converged: bool = True


def _residual(l, r):
    scale = max(abs(l), abs(r))
    if scale == 0.0:
        return 0.0
    return abs(l - r) / scale


def _make_report(name, probes, lhs, rhs, tol, converged, abs_floor):
    worst = max((_residual(l, r) for l, r in zip(lhs, rhs)), default=0.0)
    # a probe passes relatively, or absolutely once both sides are tiny
    # (the h -> 0 degenerations live below the floor)
    ok = all(abs(l - r) <= max(abs_floor, tol * max(abs(l), abs(r)))
             for l, r in zip(lhs, rhs))
    return IdentityReport(name, tuple(probes), tuple(lhs), tuple(rhs),
                          worst, tol, converged and ok, converged)


def _check_probes(probes):
    probes = tuple(float(p) for p in probes)
    if not probes or any(not math.isfinite(p) or p <= 0 for p in probes):
        raise DomainError("probe points must be finite positive reals, got %r" % (probes,))
    return probes


def verify_double_laplace(x_probes: Sequence[float] = DOUBLE_LAPLACE_PROBES,
                          cfg: QuadratureConfig = QuadratureConfig(),
                          tolerance: float = DOUBLE_LAPLACE_TOL) -> IdentityReport:
    """Twofold Laplace transform of g(s) = e^-s versus its Stieltjes transform.

    lhs(x) = int_0^inf e^{-xu} [int_0^inf e^{-us} g(s) ds] du, both layers by
    quadrature; rhs(x) = int_0^inf g(s)/(x+s) ds.
    """
    probes = _check_probes(x_probes)
    inner_cfg = QuadratureConfig(max(1e-13, 0.01 * cfg.rel_tol), cfg.abs_tol,
                                 cfg.max_subdivisions, cfg.tail_cutoff, cfg.split_point)

    def inner(u):
        gl = lambda s: math.exp(-u * s) * math.exp(-s)
        return (integrate_adaptive(gl, 0.0, 1.0, inner_cfg)
                + integrate_tail(gl, 1.0, inner_cfg)).value

    lhs = []
    rhs = []
    ok = True
    for x in probes:
        outer = lambda u: math.exp(-x * u) * inner(u)
        le = integrate_adaptive(outer, 0.0, 1.0, cfg) + integrate_tail(outer, 1.0, cfg)
        re_ = integrate_adaptive(lambda s: math.exp(-s) / (x + s), 0.0, 1.0, cfg) \
            + integrate_tail(lambda s: math.exp(-s) / (x + s), 1.0, cfg)
        ok = ok and le.converged and re_.converged
        lhs.append(le.value)
        rhs.append(re_.value)
    return _make_report("double-laplace", probes, lhs, rhs, tolerance, ok,
                        cfg.abs_tol)


def _m0_sq_logspace(s):
    """J0^2 + Y0^2 at exp(-s), via the small-argument forms once exp(-s)
    would lose all structure to underflow."""
    if s <= 33.0:
        a0, _, b0, _ = _backend.kernels.jy_all(math.exp(-s))
        return a0 * a0 + b0 * b0
    t = (2.0 / math.pi) * (s + _LN2 - _GAMMA)
    return 1.0 + t * t


def verify_ismail(nu: int, x_probes: Sequence[float] = ISMAIL_PROBES,
                  cfg: QuadratureConfig = QuadratureConfig(),
                  tolerance: float = ISMAIL_TOL) -> IdentityReport:
    """K_nu(sqrt x)/(sqrt x K_{nu+1}(sqrt x)) as a Stieltjes transform.

    rhs integrates (4/pi^2) / (phi (x+phi^2) [J_m^2+Y_m^2](phi)) over
    phi in (0, inf), m = nu+1.  For m = 0 the integrand behaves like
    1/(phi ln^2 phi) near zero, so that endpoint is taken in s = -ln(phi)
    space where it decays like 1/s^2.
    """
    if nu not in (-1, 0):
        raise DomainError("nu must be -1 or 0, got %r" % (nu,))
    probes = _check_probes(x_probes)
    k = _backend.kernels
    m = nu + 1
    four_over_pi2 = 4.0 / (math.pi * math.pi)
    lhs = []
    rhs = []
    ok = True
    for x in probes:
        u = math.sqrt(x)
        if nu == 0:
            lv = k.k0(u) / (u * k.k1(u))
        else:
            lv = k.k1(u) / (u * k.k0(u))  # K_{-1} = K_1
        cutoff = cfg.tail_cutoff

        if m == 1:
            def g(phi):
                _, a1, _, b1 = k.jy_all(phi)
                return four_over_pi2 / (phi * (x + phi * phi) * (a1 * a1 + b1 * b1))
            est = integrate_adaptive(g, 0.0, cutoff, cfg) + integrate_tail(g, cutoff, cfg)
        else:
            def g(phi):
                a0, _, b0, _ = k.jy_all(phi)
                return four_over_pi2 / (phi * (x + phi * phi) * (a0 * a0 + b0 * b0))

            def g_log(s):
                e2 = math.exp(-2.0 * s) if s < 350.0 else 0.0
                return four_over_pi2 / ((x + e2) * _m0_sq_logspace(s))

            phi_lo = 0.5
            s_lo = -math.log(phi_lo)
            est = (integrate_tail(g_log, s_lo, cfg)
                   + integrate_adaptive(g, phi_lo, cutoff, cfg)
                   + integrate_tail(g, cutoff, cfg))
        ok = ok and est.converged
        lhs.append(lv)
        rhs.append(est.value)
    return _make_report("ismail(nu=%d)" % nu, probes, lhs, rhs, tolerance, ok,
                        cfg.abs_tol)


def master_lhs(params: DimensionlessParams, x: float) -> float:
    """K-Bessel side of the master identity, in a cancellation-free form.

    With u = sqrt(x), m0 = K0(u), m1 = u K1(u):
        lhs = (h/kappa) (m1 + h m0) / ((u^2+kappa) m1 + h u^2 m0),
    algebraically equal to (h/kappa)/x - h K1(u)/(x[(x+kappa)K1(u)+h u K0(u)])
    but free of the 1/x blow-up of the two written terms.
    """
    if not (x > 0 and math.isfinite(x)):
        raise DomainError("x must be finite and > 0, got %r" % (x,))
    h = params.h_tilde
    kap = params.kappa_D_tilde
    if h == 0.0:
        return 0.0
    k = _backend.kernels
    u = math.sqrt(x)
    m0 = k.k0(u)
    m1 = u * k.k1(u)
    return (h / kap) * (m1 + h * m0) / ((x + kap) * m1 + h * x * m0)


def verify_master(params: DimensionlessParams,
                  x_probes: Sequence[float] = MASTER_PROBES,
                  cfg: QuadratureConfig = QuadratureConfig(),
                  tolerance: float = MASTER_TOL) -> IdentityReport:
    """Master identity: the K-Bessel resolvent form equals the Stieltjes
    integral (4/pi^2) h^2 int_0^inf dphi / (phi (phi^2+x) (alpha^2+beta^2))."""
    probes = _check_probes(x_probes)
    h = params.h_tilde
    kap = params.kappa_D_tilde
    k = _backend.kernels
    four_over_pi2 = 4.0 / (math.pi * math.pi)
    bp = resonance_breakpoints(params)
    lhs = []
    rhs = []
    ok = True
    for x in probes:
        lv = master_lhs(params, x)
        if h == 0.0:
            lhs.append(0.0)
            rhs.append(0.0)
            continue

        def g(phi):
            return four_over_pi2 * h * h / (phi * (phi * phi + x) * k.ab_sq(h, kap, phi))

        cutoff = cfg.tail_cutoff
        est = (integrate_adaptive(g, 0.0, cutoff, cfg,
                                  tuple(b for b in bp if b < cutoff))
               + integrate_tail(g, cutoff, cfg,
                                breakpoints=tuple(b for b in bp if b > cutoff)))
        ok = ok and est.converged
        lhs.append(lv)
        rhs.append(est.value)
    return _make_report("master", probes, lhs, rhs, tolerance, ok, cfg.abs_tol)
