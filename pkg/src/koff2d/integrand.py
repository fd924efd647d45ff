"""The spectral-weight integrand family: alpha, beta, P(x,1)^2, and f.

f(x) = P(x,1)^2/x^2 tends to h^2/kappa^2 as x -> 0 and decays like x^-5.
The regularized integral needs (f(x) - f(0))/x near zero, where the naive
subtraction is catastrophic; `f_sub` assembles that difference from series
in which the constant term has already cancelled analytically:

    with S(x) = x*beta(x) - 2*kappa/pi  (computed term by term)
    and  D(x) = x^2 (alpha^2 + beta^2) = D0 + dD,  D0 = (2*kappa/pi)^2,
    dD = (x*alpha)^2 + S*(S + 4*kappa/pi),
    (f - f0)/x = -N*dD / (x*(D0+dD)*D0),  N = (2*h/pi)^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import _backend
from .errors import DomainError, ParameterError
from .model import DimensionlessParams

_TWO_OVER_PI = 0.6366197723675814
_GAMMA = 0.5772156649015329


@dataclass(frozen=True)
class IntegrandContext:
    params: DimensionlessParams
    x_switch_low: float = 1e-3
    x_switch_high: float = 50.0

    def __post_init__(self):
        if not (0.0 < self.x_switch_low < 1.0 < self.x_switch_high):
            raise ParameterError(
                "x_switch_low/high must satisfy 0 < low < 1 < high, got %g, %g"
                % (self.x_switch_low, self.x_switch_high))


def _check_x(x):
    if not isinstance(x, (int, float)) or not math.isfinite(x) or x <= 0.0:
        raise DomainError("x must be a finite positive real, got %r" % (x,))
    return float(x)


def alpha_beta(ctx: IntegrandContext, x: float):
    """(alpha(x), beta(x)) = ((x^2-k)J1 + hxJ0, (x^2-k)Y1 + hxY0)."""
    x = _check_x(x)
    h = ctx.params.h_tilde
    kap = ctx.params.kappa_D_tilde
    a0, a1, b0, b1 = _backend.kernels.jy_all(x)
    d = x * x - kap
    return d * a1 + h * x * a0, d * b1 + h * x * b0


def p_squared(ctx: IntegrandContext, x: float) -> float:
    """P(x,1)^2 = (2h/pi)^2 / (alpha^2 + beta^2)."""
    x = _check_x(x)
    h = ctx.params.h_tilde
    if h == 0.0:
        return 0.0
    num = _TWO_OVER_PI * h
    return num * num / _backend.kernels.ab_sq(h, ctx.params.kappa_D_tilde, x)


def f(ctx: IntegrandContext, x: float) -> float:
    """f(x) = P(x,1)^2 / x^2; series form below x_switch_low."""
    x = _check_x(x)
    if ctx.params.h_tilde == 0.0:
        return 0.0
    if x < ctx.x_switch_low:
        return f_small_x(ctx, x)
    return _backend.kernels.f_value(ctx.params.h_tilde, ctx.params.kappa_D_tilde, x)


def f_zero(params: DimensionlessParams) -> float:
    """f(0) = (h/kappa)^2, the x -> 0 limit of f."""
    r = params.h_tilde / params.kappa_D_tilde
    return r * r


def _g1_g2(q):
    # G1 = sum (-q)^k/(k!(k+1)!), G2 = sum (H_k+H_{k+1})(-q)^k/(k!(k+1)!)
    t = 1.0
    g1 = 1.0
    g2 = 1.0
    hk = 0.0
    hk1 = 1.0
    sign = -1.0
    for k in range(1, 8):
        t *= q / (k * (k + 1.0))
        hk += 1.0 / k
        hk1 += 1.0 / (k + 1.0)
        g1 += sign * t
        g2 += sign * t * (hk + hk1)
        if t < 1e-18:
            break
        sign = -sign
    return g1, g2


def _delta_d(ctx: IntegrandContext, x: float):
    """dD = x^2(alpha^2+beta^2) - (2 kappa/pi)^2 without cancellation."""
    h = ctx.params.h_tilde
    kap = ctx.params.kappa_D_tilde
    k = _backend.kernels
    ell = math.log(0.5 * x) + _GAMMA
    g1, g2 = _g1_g2(0.25 * x * x)
    w = (ell / math.pi) * g1 - g2 / (2.0 * math.pi)
    y0v = k.y0(x)
    x2 = x * x
    s = x2 * (-_TWO_OVER_PI - kap * w + h * y0v + x2 * w)
    xalpha = x * ((x2 - kap) * k.j1(x) + h * x * k.j0(x))
    return xalpha * xalpha + s * (s + 4.0 * kap / math.pi)


def f_small_x(ctx: IntegrandContext, x: float) -> float:
    """f by the small-x series assembly; valid on (0, x_switch_low]."""
    x = _check_x(x)
    if not x <= ctx.x_switch_low:
        raise DomainError("f_small_x valid only for 0 < x <= x_switch_low=%g, got %g"
                          % (ctx.x_switch_low, x))
    h = ctx.params.h_tilde
    if h == 0.0:
        return 0.0
    kap = ctx.params.kappa_D_tilde
    num = _TWO_OVER_PI * h
    d0 = _TWO_OVER_PI * kap
    return num * num / (d0 * d0 + _delta_d(ctx, x))


def resonance_breakpoints(params: DimensionlessParams) -> tuple:
    """Geometric bracket around the spectral resonance at x = sqrt(kappa).

    alpha and beta share a near-zero at x* = sqrt(kappa) whose width
    shrinks like h; for small h the weight there is a near-Lorentzian
    carrying the O(h) part of the finite part.  Seeding these points
    keeps adaptive rules from stepping over it.
    """
    h = params.h_tilde
    if h == 0.0:
        return ()
    star = math.sqrt(params.kappa_D_tilde)
    ratio = 1.0 + abs(math.log(star)) if star < 1.0 else 1.0
    rel_w = max(0.5 * h * ratio / max(star, 1.0) ** 2, 4e-16)
    pts = [star]
    d = 0.25
    while d > 0.3 * rel_w and len(pts) < 41:
        pts.append(star * (1.0 - d))
        pts.append(star * (1.0 + d))
        d *= 0.1
    return tuple(sorted(p for p in pts if p > 0.0))


def f_sub(ctx: IntegrandContext, x: float) -> float:
    """(f(x) - f(0))/x, cancellation-safe for arbitrarily small x."""
    x = _check_x(x)
    h = ctx.params.h_tilde
    if h == 0.0:
        return 0.0
    kap = ctx.params.kappa_D_tilde
    if x < ctx.x_switch_low:
        num = _TWO_OVER_PI * h
        d0 = _TWO_OVER_PI * kap
        dd = _delta_d(ctx, x)
        return -num * num * dd / (x * (d0 * d0 + dd) * (d0 * d0))
    f0 = f_zero(ctx.params)
    return (_backend.kernels.f_value(h, kap, x) - f0) / x
