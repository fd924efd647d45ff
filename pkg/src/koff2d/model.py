"""Physical parameters and their nondimensionalization.

The only place physical units appear.  Everything downstream works with
(h_tilde, kappa_D_tilde); `physical_scale_factor` restores time units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ParameterError


@dataclass(frozen=True)
class PhysicalParams:
    """Intrinsic rates and geometry: kappa_a [area/time], kappa_d [1/time],
    D [area/time], a [length]."""
    kappa_a: float
    kappa_d: float
    D: float
    a: float

    def __post_init__(self):
        for name, lo_ok in (("kappa_a", True), ("kappa_d", False),
                            ("D", False), ("a", False)):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or not math.isfinite(v):
                raise ParameterError("%s must be a finite real, got %r" % (name, v))
            if v < 0 or (v == 0 and not lo_ok):
                bound = ">= 0" if lo_ok else "> 0"
                raise ParameterError("%s must be %s, got %g" % (name, bound, v))


@dataclass(frozen=True)
class DimensionlessParams:
    """h_tilde = kappa_a/(2 pi D), kappa_D_tilde = kappa_d a^2 / D."""
    h_tilde: float
    kappa_D_tilde: float

    def __post_init__(self):
        if not isinstance(self.h_tilde, (int, float)) or not math.isfinite(self.h_tilde) \
                or self.h_tilde < 0:
            raise ParameterError("h_tilde must be >= 0 and finite, got %r" % (self.h_tilde,))
        if not isinstance(self.kappa_D_tilde, (int, float)) \
                or not math.isfinite(self.kappa_D_tilde) or self.kappa_D_tilde <= 0:
            raise ParameterError("kappa_D_tilde must be > 0 and finite, got %r"
                                 % (self.kappa_D_tilde,))


def nondimensionalize(p: PhysicalParams) -> DimensionlessParams:
    """Map physical parameters onto the two dimensionless constants."""
    return DimensionlessParams(
        h_tilde=p.kappa_a / (2.0 * math.pi * p.D),
        kappa_D_tilde=p.kappa_d * p.a * p.a / p.D,
    )


def physical_scale_factor(p: PhysicalParams) -> float:
    """Constant c with c * F(h, kappa) = 1/k_off in physical time units.

    c = kappa_D_tilde^2 / (h_tilde * kappa_d) = 2 pi kappa_d a^4 / (D kappa_a);
    matching the h/kappa^2 term of the dimensionless finite part to the
    1/kappa_d term of the closed form fixes it.  Undefined at kappa_a = 0,
    where every route short-circuits to 1/kappa_d anyway.
    """
    if p.kappa_a == 0:
        raise ParameterError(
            "kappa_a: scale factor undefined at kappa_a = 0; use closed form limit 1/kappa_d")
    d = nondimensionalize(p)
    return d.kappa_D_tilde * d.kappa_D_tilde / (d.h_tilde * p.kappa_d)
