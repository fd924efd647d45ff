"""Bessel functions J, Y, I, K of orders 0 and 1, with validated domains.

Evaluation strategy (per function): ascending power series for small
arguments, asymptotic expansion for large arguments, and in between the
series carried in double-double arithmetic where plain doubles would lose
the cancellation fight.  Crossover points are module constants
(`_constants`) and the test suite asserts branch agreement at each seam.

Y and K near zero are computed from their logarithmic series forms
directly, never by subtracting two large terms; the finite-part extraction
downstream leans on those log terms being accurate to full precision.
"""

import math
from enum import Enum

from . import _backend
from ._constants import (  # noqa: F401  (re-exported for tests/docs)
    JY_SMALL_CUT, JY_ASYM_CUT, K_SMALL_CUT, K_ASYM_CUT, I_ASYM_CUT,
    GAMMA, LN2_MINUS_GAMMA,
)
from .errors import DomainError


class BesselKind(Enum):
    """The eight supported functions: four families, orders 0 and 1."""
    FIRST_KIND_0 = ("J", 0)
    FIRST_KIND_1 = ("J", 1)
    SECOND_KIND_0 = ("Y", 0)
    SECOND_KIND_1 = ("Y", 1)
    MODIFIED_FIRST_0 = ("I", 0)
    MODIFIED_FIRST_1 = ("I", 1)
    MODIFIED_SECOND_0 = ("K", 0)
    MODIFIED_SECOND_1 = ("K", 1)

    @property
    def family(self):
        return self.value[0]

    @property
    def order(self):
        return self.value[1]


def _check_order(order):
    if order not in (0, 1):
        raise DomainError("order must be 0 or 1, got %r" % (order,))


def _check_finite(x):
    if not isinstance(x, (int, float)) or not math.isfinite(x):
        raise DomainError("argument must be a finite real, got %r" % (x,))
    return float(x)


def bessel_j(order, x):
    """J0 or J1 at x >= 0."""
    _check_order(order)
    x = _check_finite(x)
    if x < 0.0:
        raise DomainError("bessel_j requires x >= 0, got %g" % x)
    k = _backend.kernels
    return k.j0(x) if order == 0 else k.j1(x)


def bessel_y(order, x):
    """Y0 or Y1 at x > 0."""
    _check_order(order)
    x = _check_finite(x)
    if x <= 0.0:
        raise DomainError("bessel_y requires x > 0, got %g" % x)
    k = _backend.kernels
    return k.y0(x) if order == 0 else k.y1(x)


def bessel_i(order, x):
    """I0 or I1 at x >= 0; raises OverflowError past the double range."""
    _check_order(order)
    x = _check_finite(x)
    if x < 0.0:
        raise DomainError("bessel_i requires x >= 0, got %g" % x)
    k = _backend.kernels
    return k.i0(x) if order == 0 else k.i1(x)


def bessel_k(order, x):
    """K0 or K1 at x > 0."""
    _check_order(order)
    x = _check_finite(x)
    if x <= 0.0:
        raise DomainError("bessel_k requires x > 0, got %g" % x)
    k = _backend.kernels
    return k.k0(x) if order == 0 else k.k1(x)


def bessel(kind: BesselKind, x):
    """Dispatch by BesselKind."""
    fam, order = kind.family, kind.order
    if fam == "J":
        return bessel_j(order, x)
    if fam == "Y":
        return bessel_y(order, x)
    if fam == "I":
        return bessel_i(order, x)
    return bessel_k(order, x)
