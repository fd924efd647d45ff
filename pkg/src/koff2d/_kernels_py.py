"""Scalar special-function kernels, pure-Python backend.

Mirrors the compiled backend (`_kernels`): ascending power series for small
arguments, Hankel-type asymptotic expansions for large ones.  In the middle
range the alternating series cancel catastrophically in plain doubles, so
the sums there run in double-double (compensated) arithmetic and are rounded
once at the end.  Branch crossovers live in `_constants` and are asserted by
the seam tests.

Functions assume arguments already validated (see `specfun` for the checked
public surface).
"""

import math

from ._constants import (
    JY_SMALL_CUT, JY_ASYM_CUT, K_SMALL_CUT, K_ASYM_CUT, I_ASYM_CUT,
    I_OVERFLOW_X, _LN2, _GAMMA, _TWO_OVER_PI, _PI_OVER_4, _THREE_PI_OVER_4,
    GAMMA,
)

BACKEND = "python"

_TWO_OVER_PI_D = _TWO_OVER_PI[0]
_SPLITTER = 134217729.0  # 2**27 + 1, Dekker split constant


# ----------------------------------------------------------------------
# double-double primitives (Dekker/Knuth; exact error-free transforms)
# ----------------------------------------------------------------------

def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _two_prod(a, b):
    p = a * b
    ta = _SPLITTER * a
    ahi = ta - (ta - a)
    alo = a - ahi
    tb = _SPLITTER * b
    bhi = tb - (tb - b)
    blo = b - bhi
    return p, ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo


def _dd_add(ah, al, bh, bl):
    sh = ah + bh
    bb = sh - ah
    sl = ((ah - (sh - bb)) + (bh - bb)) + al + bl
    s = sh + sl
    return s, sl - (s - sh)


def _dd_mul(ah, al, bh, bl):
    ph, pl = _two_prod(ah, bh)
    pl += ah * bl + al * bh
    s = ph + pl
    return s, pl - (s - ph)


def _dd_mul_d(ah, al, b):
    ph, pl = _two_prod(ah, b)
    pl += al * b
    s = ph + pl
    return s, pl - (s - ph)


def _dd_div_d(ah, al, b):
    q0 = ah / b
    ph, pl = _two_prod(q0, b)
    rh, rl = _two_sum(ah, -ph)
    q1 = (rh + (rl + al - pl)) / b
    s = q0 + q1
    return s, q1 - (s - q0)


def _dd_div(ah, al, bh, bl):
    q0 = ah / bh
    th, tl = _dd_mul_d(bh, bl, q0)
    rh, rl = _dd_add(ah, al, -th, -tl)
    q1 = rh / bh
    th, tl = _dd_mul_d(bh, bl, q1)
    rh, rl = _dd_add(rh, rl, -th, -tl)
    q2 = rh / bh
    sh, sl = _two_sum(q0, q1)
    return _dd_add(sh, sl, q2, 0.0)


def _dd_log_half_x(x):
    """ln(x/2) as a double-double, for x > 0.

    x/2 = m * 2^e with m in [sqrt(1/2), sqrt(2)); ln = e*ln2 + 2*atanh(u),
    u = (m-1)/(m+1), |u| <= 0.1716, so the atanh series needs ~22 dd terms.
    """
    m, e = math.frexp(0.5 * x)
    if m < 0.7071067811865476:
        m *= 2.0
        e -= 1
    numh = m - 1.0                       # exact: m in [0.70, 1.42]
    denh, denl = _two_sum(m, 1.0)
    uh, ul = _dd_div(numh, 0.0, denh, denl)
    u2h, u2l = _dd_mul(uh, ul, uh, ul)
    sh, sl = uh, ul
    th, tl = uh, ul
    k = 3
    while k < 99:
        th, tl = _dd_mul(th, tl, u2h, u2l)
        dh, dl = _dd_div_d(th, tl, float(k))
        sh, sl = _dd_add(sh, sl, dh, dl)
        if abs(dh) < 1e-35 * abs(sh):
            break
        k += 2
    sh, sl = _dd_mul_d(sh, sl, 2.0)
    if e:
        eh, el = _dd_mul_d(_LN2[0], _LN2[1], float(e))
        sh, sl = _dd_add(sh, sl, eh, el)
    return sh, sl


# ----------------------------------------------------------------------
# J0/Y0 and J1/Y1: ascending series (plain and double-double)
# ----------------------------------------------------------------------

def _jy0_small(x, want_y):
    q = 0.25 * x * x
    t = 1.0
    j = 1.0
    h = 0.0
    hk = 0.0
    sign = -1.0
    k = 1
    while k < 60:
        t *= q / (k * k)
        if want_y:
            hk += 1.0 / k
            h -= sign * t * hk
        j += sign * t
        if t < 1e-18 * abs(j) + 1e-305:
            break
        sign = -sign
        k += 1
    if not want_y:
        return j, 0.0
    mu = math.log(0.5 * x) + GAMMA
    return j, _TWO_OVER_PI_D * (mu * j + h)


def _jy0_dd(x, want_y):
    qh, ql = _two_prod(0.5 * x, 0.5 * x)
    th, tl = 1.0, 0.0
    jh, jl = 1.0, 0.0
    sh_, sl_ = 0.0, 0.0    # sum of (-1)^(k+1) H_k t_k
    hh, hl = 0.0, 0.0      # harmonic number H_k
    sign = -1.0
    k = 1
    kmin = 0.5 * x + 2.0
    while k < 99:
        th, tl = _dd_mul(th, tl, qh, ql)
        th, tl = _dd_div_d(th, tl, float(k) * float(k))
        jh, jl = _dd_add(jh, jl, sign * th, sign * tl)
        if want_y:
            rh, rl = _dd_div_d(1.0, 0.0, float(k))
            hh, hl = _dd_add(hh, hl, rh, rl)
            ph, pl = _dd_mul(th, tl, hh, hl)
            sh_, sl_ = _dd_add(sh_, sl_, -sign * ph, -sign * pl)
        if k > kmin and th < 1e-34 * abs(jh):
            break
        sign = -sign
        k += 1
    j = jh + jl
    if not want_y:
        return j, 0.0
    muh, mul_ = _dd_add(*_dd_log_half_x(x), *_GAMMA)
    yh, yl = _dd_mul(muh, mul_, jh, jl)
    yh, yl = _dd_add(yh, yl, sh_, sl_)
    yh, yl = _dd_mul(yh, yl, *_TWO_OVER_PI)
    return j, yh + yl


def _jy1_small(x, want_y):
    q = 0.25 * x * x
    t = 1.0
    s = 1.0        # sum of (-1)^k q^k / (k!(k+1)!)
    g = 1.0        # sum of (-1)^k (H_k + H_{k+1}) q^k / (k!(k+1)!)
    hk = 0.0
    hk1 = 1.0
    sign = -1.0
    k = 1
    while k < 60:
        t *= q / (k * (k + 1.0))
        hk += 1.0 / k
        hk1 += 1.0 / (k + 1.0)
        s += sign * t
        g += sign * t * (hk + hk1)
        if t < 1e-18 * abs(s) + 1e-305:
            break
        sign = -sign
        k += 1
    j = 0.5 * x * s
    if not want_y:
        return j, 0.0
    mu = math.log(0.5 * x) + GAMMA
    y = _TWO_OVER_PI_D * (mu * j - 1.0 / x) - (0.25 * x / math.pi) * g * 2.0
    return j, y


def _jy1_dd(x, want_y):
    qh, ql = _two_prod(0.5 * x, 0.5 * x)
    th, tl = 1.0, 0.0
    sh_, sl_ = 1.0, 0.0
    gh, gl = 1.0, 0.0
    hkh, hkl = 0.0, 0.0
    h1h, h1l = 1.0, 0.0
    sign = -1.0
    k = 1
    kmin = 0.5 * x + 2.0
    while k < 99:
        th, tl = _dd_mul(th, tl, qh, ql)
        th, tl = _dd_div_d(th, tl, float(k) * (float(k) + 1.0))
        sh_, sl_ = _dd_add(sh_, sl_, sign * th, sign * tl)
        if want_y:
            rh, rl = _dd_div_d(1.0, 0.0, float(k))
            hkh, hkl = _dd_add(hkh, hkl, rh, rl)
            rh, rl = _dd_div_d(1.0, 0.0, float(k) + 1.0)
            h1h, h1l = _dd_add(h1h, h1l, rh, rl)
            bh, bl = _dd_add(hkh, hkl, h1h, h1l)
            ph, pl = _dd_mul(th, tl, bh, bl)
            gh, gl = _dd_add(gh, gl, sign * ph, sign * pl)
        if k > kmin and th < 1e-34 * abs(sh_):
            break
        sign = -sign
        k += 1
    jh, jl = _dd_mul_d(sh_, sl_, 0.5 * x)
    j = jh + jl
    if not want_y:
        return j, 0.0
    # Y1 = (2/pi) * (mu*J1 - 1/x - (x/4)*g)
    muh, mul_ = _dd_add(*_dd_log_half_x(x), *_GAMMA)
    yh, yl = _dd_mul(muh, mul_, jh, jl)
    rh, rl = _dd_div(1.0, 0.0, x, 0.0)
    yh, yl = _dd_add(yh, yl, -rh, -rl)
    gh, gl = _dd_mul_d(gh, gl, 0.25 * x)
    yh, yl = _dd_add(yh, yl, -gh, -gl)
    yh, yl = _dd_mul(yh, yl, *_TWO_OVER_PI)
    return j, yh + yl


# ----------------------------------------------------------------------
# Hankel asymptotic expansions (J/Y) with compensated phase reduction
# ----------------------------------------------------------------------

def _hankel_pq(mu, x):
    """P and Q modulus/phase series for order with mu = 4*nu^2, x large."""
    xx = x * x
    # P: 1 - c2/x^2 + c4/x^4 - ... ; Q: c1/x - c3/x^3 + ...
    c = 1.0
    p = 1.0
    q = 0.0
    sign_p = -1.0
    sign_q = 1.0
    term_prev = math.inf
    k = 1
    pw = x
    while k < 42:
        c *= (mu - (2.0 * k - 1.0) ** 2) / (8.0 * k)
        t = c / pw
        mag = abs(t)
        if mag >= term_prev:
            break
        term_prev = mag
        if k % 2 == 1:
            q += sign_q * t
            sign_q = -sign_q
        else:
            p += sign_p * t
            sign_p = -sign_p
        if mag < 1e-17 * (abs(p) + abs(q)):
            break
        pw *= x
        k += 1
    return p, q


def _sincos_shifted(x, ch, cl):
    """sin and cos of (x - c) with c given as a double-double."""
    sh, e = _two_sum(x, -ch)
    lo = e - cl
    s = math.sin(sh)
    co = math.cos(sh)
    return s + lo * co, co - lo * s


def _jy_asym(order, x, want_y):
    if order == 0:
        p, q = _hankel_pq(0.0, x)
        s, c = _sincos_shifted(x, _PI_OVER_4[0], _PI_OVER_4[1])
    else:
        p, q = _hankel_pq(4.0, x)
        s, c = _sincos_shifted(x, _THREE_PI_OVER_4[0], _THREE_PI_OVER_4[1])
    w = math.sqrt(_TWO_OVER_PI_D / x)
    j = w * (p * c - q * s)
    if not want_y:
        return j, 0.0
    return j, w * (p * s + q * c)


# ----------------------------------------------------------------------
# public J/Y
# ----------------------------------------------------------------------

def j0(x):
    if x < JY_SMALL_CUT:
        return _jy0_small(x, False)[0]
    if x < JY_ASYM_CUT:
        return _jy0_dd(x, False)[0]
    return _jy_asym(0, x, False)[0]


def y0(x):
    if x < JY_SMALL_CUT:
        return _jy0_small(x, True)[1]
    if x < JY_ASYM_CUT:
        return _jy0_dd(x, True)[1]
    return _jy_asym(0, x, True)[1]


def j1(x):
    if x < JY_SMALL_CUT:
        return _jy1_small(x, False)[0]
    if x < JY_ASYM_CUT:
        return _jy1_dd(x, False)[0]
    return _jy_asym(1, x, False)[0]


def y1(x):
    if x < JY_SMALL_CUT:
        return _jy1_small(x, True)[1]
    if x < JY_ASYM_CUT:
        return _jy1_dd(x, True)[1]
    return _jy_asym(1, x, True)[1]


def jy_all(x):
    """(J0, J1, Y0, Y1) at x > 0; shares branch selection across orders."""
    if x < JY_SMALL_CUT:
        a0, b0 = _jy0_small(x, True)
        a1, b1 = _jy1_small(x, True)
    elif x < JY_ASYM_CUT:
        a0, b0 = _jy0_dd(x, True)
        a1, b1 = _jy1_dd(x, True)
    else:
        a0, b0 = _jy_asym(0, x, True)
        a1, b1 = _jy_asym(1, x, True)
    return a0, a1, b0, b1


# ----------------------------------------------------------------------
# modified Bessel I and K
# ----------------------------------------------------------------------

def _i_series(order, x):
    q = 0.25 * x * x
    t = 1.0
    s = 1.0
    k = 1
    while k < 400:
        t *= q / (k * (k + order))
        s += t
        if t < 1e-18 * s:
            break
        k += 1
    return s if order == 0 else 0.5 * x * s


def _ik_asym(order, x, want_i):
    mu = 4.0 * order * order
    c = 1.0
    si = 1.0
    sk = 1.0
    sign = -1.0
    term_prev = math.inf
    pw = x
    k = 1
    while k < 42:
        c *= (mu - (2.0 * k - 1.0) ** 2) / (8.0 * k)
        t = c / pw
        if abs(t) >= term_prev:
            break
        term_prev = abs(t)
        sk += t
        si += sign * t
        if abs(t) < 1e-17:
            break
        sign = -sign
        pw *= x
        k += 1
    if want_i:
        return math.exp(x) / math.sqrt(2.0 * math.pi * x) * si
    return math.sqrt(0.5 * math.pi / x) * math.exp(-x) * sk


def i0(x):
    if x >= I_ASYM_CUT:
        if x > I_OVERFLOW_X:
            raise OverflowError("i0 overflows double range for x=%g" % x)
        return _ik_asym(0, x, True)
    return _i_series(0, x)


def i1(x):
    if x >= I_ASYM_CUT:
        if x > I_OVERFLOW_X:
            raise OverflowError("i1 overflows double range for x=%g" % x)
        return _ik_asym(1, x, True)
    return _i_series(1, x)


def _k_small(x):
    """K0 and K1 by the logarithmic ascending series, plain doubles."""
    q = 0.25 * x * x
    mu = math.log(0.5 * x) + GAMMA
    # K0 = -mu*I0 + sum_{k>=1} H_k q^k/(k!)^2
    t = 1.0
    s0 = 1.0       # I0 series
    h0 = 0.0
    hk = 0.0
    k = 1
    while k < 60:
        t *= q / (k * k)
        hk += 1.0 / k
        s0 += t
        h0 += t * hk
        if t * (hk + 1.0) < 1e-18 * (s0 + abs(h0)) + 1e-305:
            break
        k += 1
    k0v = -mu * s0 + h0
    # K1 = mu*I1 + 1/x - (x/4) * sum (H_k + H_{k+1}) q^k/(k!(k+1)!)
    t = 1.0
    s1 = 1.0
    g = 1.0
    hk = 0.0
    hk1 = 1.0
    k = 1
    while k < 60:
        t *= q / (k * (k + 1.0))
        hk += 1.0 / k
        hk1 += 1.0 / (k + 1.0)
        s1 += t
        g += t * (hk + hk1)
        if t * (hk + hk1) < 1e-18 * (s1 + g) + 1e-305:
            break
        k += 1
    i1v = 0.5 * x * s1
    k1v = mu * i1v + 1.0 / x - 0.25 * x * g
    return k0v, k1v


def _k_mid_dd(x):
    """K0 and K1 by the same series in double-double (3 <= x < 17)."""
    qh, ql = _two_prod(0.5 * x, 0.5 * x)
    muh, mul_ = _dd_add(*_dd_log_half_x(x), *_GAMMA)

    th, tl = 1.0, 0.0
    s0h, s0l = 1.0, 0.0
    h0h, h0l = 0.0, 0.0
    hkh, hkl = 0.0, 0.0
    k = 1
    while k < 99:
        th, tl = _dd_mul(th, tl, qh, ql)
        th, tl = _dd_div_d(th, tl, float(k) * float(k))
        rh, rl = _dd_div_d(1.0, 0.0, float(k))
        hkh, hkl = _dd_add(hkh, hkl, rh, rl)
        s0h, s0l = _dd_add(s0h, s0l, th, tl)
        ph, pl = _dd_mul(th, tl, hkh, hkl)
        h0h, h0l = _dd_add(h0h, h0l, ph, pl)
        if th * (hkh + 1.0) < 1e-34 * (s0h + abs(h0h)):
            break
        k += 1
    ah, al = _dd_mul(muh, mul_, s0h, s0l)
    k0h, k0l = _dd_add(h0h, h0l, -ah, -al)
    k0v = k0h + k0l

    th, tl = 1.0, 0.0
    s1h, s1l = 1.0, 0.0
    gh, gl = 1.0, 0.0
    hkh, hkl = 0.0, 0.0
    h1h, h1l = 1.0, 0.0
    k = 1
    while k < 99:
        th, tl = _dd_mul(th, tl, qh, ql)
        th, tl = _dd_div_d(th, tl, float(k) * (float(k) + 1.0))
        rh, rl = _dd_div_d(1.0, 0.0, float(k))
        hkh, hkl = _dd_add(hkh, hkl, rh, rl)
        rh, rl = _dd_div_d(1.0, 0.0, float(k) + 1.0)
        h1h, h1l = _dd_add(h1h, h1l, rh, rl)
        s1h, s1l = _dd_add(s1h, s1l, th, tl)
        bh, bl = _dd_add(hkh, hkl, h1h, h1l)
        ph, pl = _dd_mul(th, tl, bh, bl)
        gh, gl = _dd_add(gh, gl, ph, pl)
        if th * (hkh + h1h) < 1e-34 * (s1h + gh):
            break
        k += 1
    i1h, i1l = _dd_mul_d(s1h, s1l, 0.5 * x)
    ah, al = _dd_mul(muh, mul_, i1h, i1l)
    rh, rl = _dd_div(1.0, 0.0, x, 0.0)
    k1h, k1l = _dd_add(ah, al, rh, rl)
    gh, gl = _dd_mul_d(gh, gl, 0.25 * x)
    k1h, k1l = _dd_add(k1h, k1l, -gh, -gl)
    return k0v, k1h + k1l


def k0(x):
    if x < K_SMALL_CUT:
        return _k_small(x)[0]
    if x < K_ASYM_CUT:
        return _k_mid_dd(x)[0]
    return _ik_asym(0, x, False)


def k1(x):
    if x < K_SMALL_CUT:
        return _k_small(x)[1]
    if x < K_ASYM_CUT:
        return _k_mid_dd(x)[1]
    return _ik_asym(1, x, False)


# ----------------------------------------------------------------------
# fused integrand kernels (the quadrature hot path)
# ----------------------------------------------------------------------

def ab_sq(h, kap, x):
    """alpha(x)^2 + beta(x)^2 for the resolvent denominator."""
    a0, a1, b0, b1 = jy_all(x)
    d = x * x - kap
    al = d * a1 + h * x * a0
    be = d * b1 + h * x * b0
    return al * al + be * be


def f_value(h, kap, x):
    """Spectral weight f(x) = P(x,1)^2 / x^2."""
    a0, a1, b0, b1 = jy_all(x)
    d = x * x - kap
    al = d * a1 + h * x * a0
    be = d * b1 + h * x * b0
    num = _TWO_OVER_PI_D * h
    return num * num / ((x * al) * (x * al) + (x * be) * (x * be))


# internal branch evaluators exposed for the seam tests
def _branch_jy0_small(x):
    return _jy0_small(x, True)


def _branch_jy0_dd(x):
    return _jy0_dd(x, True)


def _branch_jy0_asym(x):
    return _jy_asym(0, x, True)


def _branch_jy1_small(x):
    return _jy1_small(x, True)


def _branch_jy1_dd(x):
    return _jy1_dd(x, True)


def _branch_jy1_asym(x):
    return _jy_asym(1, x, True)


def _branch_k_small(x):
    return _k_small(x)


def _branch_k_dd(x):
    return _k_mid_dd(x)


def _branch_k_asym(x):
    return _ik_asym(0, x, False), _ik_asym(1, x, False)


def _branch_i_series(x):
    return _i_series(0, x), _i_series(1, x)


def _branch_i_asym(x):
    return _ik_asym(0, x, True), _ik_asym(1, x, True)
