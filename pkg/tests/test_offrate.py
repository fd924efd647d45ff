import math

import pytest

from koff2d.errors import DomainError, ParameterError
from koff2d.model import DimensionlessParams, PhysicalParams, nondimensionalize
from koff2d.offrate import (DEFAULT_X_SEQUENCE, LN2_MINUS_GAMMA,
                            ROUTE_CLOSED, ROUTE_QUADRATURE, ROUTE_STIELTJES,
                            finite_part_closed, finite_part_quadrature,
                            finite_part_route, finite_part_stieltjes,
                            koff_inverse, koff_inverse_closed)
from koff2d.quadrature import QuadratureConfig

CFG = QuadratureConfig()
GRID = [0.1, 0.3, 1.0, 3.0, 10.0]
DEEP_SEQUENCE = tuple(10.0 ** -k for k in range(1, 13))


def test_ln2_minus_gamma_constant():
    # frozen constant is the correctly rounded 40-digit value; the naive
    # double subtraction lands within a couple of ulp of it
    assert LN2_MINUS_GAMMA == pytest.approx(math.log(2.0) - 0.5772156649015329,
                                            abs=5e-17)
    import mpmath as mp
    with mp.workdps(40):
        assert float(mp.log(2) - mp.euler) == LN2_MINUS_GAMMA


# ------------------------------------------------------------- closed form

def test_finite_part_closed_examples():
    assert finite_part_closed(DimensionlessParams(0.0, 1.0)) == 0.0
    assert finite_part_closed(DimensionlessParams(1.0, 1.0)) == pytest.approx(
        1.1159315156584124, rel=1e-15)
    assert finite_part_closed(DimensionlessParams(2.0, 2.0)) == pytest.approx(
        0.6159315156584124, rel=1e-15)


def test_koff_inverse_closed_examples():
    r = koff_inverse_closed(PhysicalParams(0.0, 2.0, 1.0, 1.0))
    assert r.value == 0.5
    r = koff_inverse_closed(PhysicalParams(2.0 * math.pi, 1.0, 1.0, 1.0))
    assert r.value == pytest.approx(1.0 + LN2_MINUS_GAMMA, rel=1e-15)
    r = koff_inverse_closed(PhysicalParams(2.0 * math.pi, 1.0, 10.0, 1.0))
    assert r.value == pytest.approx(1.0 + LN2_MINUS_GAMMA / 10.0, rel=1e-15)


def test_closed_form_equals_scaled_finite_part():
    for ka, kd, D, a in [(2 * math.pi, 1, 1, 1), (3.3, 0.7, 2.0, 1.4),
                         (12.0, 5.0, 0.4, 0.3)]:
        p = PhysicalParams(ka, kd, D, a)
        from koff2d.model import physical_scale_factor
        direct = koff_inverse_closed(p).value
        scaled = physical_scale_factor(p) * finite_part_closed(nondimensionalize(p))
        assert direct == pytest.approx(scaled, rel=1e-13)


# --------------------------------------------------------- quadrature route

def test_quadrature_route_examples():
    r = finite_part_quadrature(DimensionlessParams(1.0, 1.0), CFG)
    assert r.value == pytest.approx(1.1159315157, abs=1e-8)
    r = finite_part_quadrature(DimensionlessParams(0.1, 1.0), CFG)
    assert r.value == pytest.approx(0.01 * LN2_MINUS_GAMMA + 0.1, abs=1e-8)
    r = finite_part_quadrature(DimensionlessParams(10.0, 0.1), CFG)
    expected = 1e4 * LN2_MINUS_GAMMA + 1e3
    assert r.value == pytest.approx(expected, rel=1e-6)


def test_quadrature_route_zero_h():
    r = finite_part_quadrature(DimensionlessParams(0.0, 2.0), CFG)
    assert r.value == 0.0


def test_three_route_agreement_grid():
    for h in GRID:
        for kap in GRID:
            params = DimensionlessParams(h, kap)
            fc = finite_part_closed(params)
            fq = finite_part_quadrature(params, CFG)
            fs = finite_part_stieltjes(params, DEEP_SEQUENCE, CFG)
            assert abs(fq.value - fc) <= 1e-8 * fc, (h, kap)
            assert abs(fs.value - fc) <= 1e-6 * fc, (h, kap)


def test_h_scaling_law_via_quadrature():
    # F(L*h, kap) = L^2 (h^2/kap^2)(ln2-g) + L h/kap^2: quadratic plus
    # linear in L, so base quantities reconstruct the scaled ones
    h, kap = 1.0, 1.0
    quad_coeff = LN2_MINUS_GAMMA * h * h / kap ** 2
    lin_coeff = h / kap ** 2
    for lam in (1.0, 2.0, 4.0):
        got = finite_part_quadrature(DimensionlessParams(lam * h, kap), CFG).value
        assert got == pytest.approx(lam * lam * quad_coeff + lam * lin_coeff,
                                    rel=1e-8)


# ---------------------------------------------------------- Stieltjes route

def test_stieltjes_route_default_sequence():
    params = DimensionlessParams(1.0, 1.0)
    r = finite_part_stieltjes(params, None, CFG)
    assert r.diagnostics["table"].x_values == DEFAULT_X_SEQUENCE
    assert r.value == pytest.approx(1.1159315157, abs=1e-6)
    assert r.error_estimate < 1e-5


def test_stieltjes_zero_h_identically_zero():
    r = finite_part_stieltjes(DimensionlessParams(0.0, 1.0), None, CFG)
    assert r.value == 0.0
    assert all(v == 0.0 for v in r.diagnostics["table"].compensated_values)


def test_stieltjes_diff_ratios_track_x_log_x():
    r = finite_part_stieltjes(DimensionlessParams(1.0, 1.0), None, CFG)
    xs = r.diagnostics["table"].x_values
    ds = r.diagnostics["diffs"]
    # last few decades: successive difference ratios within a factor of two
    # of the x ln x prediction
    for i in range(len(ds) - 4, len(ds) - 1):
        ratio = ds[i + 1] / ds[i]
        pred = (xs[i + 2] * math.log(xs[i + 2])) / (xs[i + 1] * math.log(xs[i + 1]))
        assert 0.5 * pred <= ratio <= 2.0 * pred


def test_stieltjes_table_invariants():
    r = finite_part_stieltjes(DimensionlessParams(2.0, 3.0), None, CFG)
    t = r.diagnostics["table"]
    assert all(b < a for a, b in zip(t.x_values, t.x_values[1:]))
    assert t.extrapolated == t.compensated_values[-1]
    assert abs(t.compensated_values[-1] - t.compensated_values[-2]) <= 1e-5


def test_stieltjes_sequence_validation():
    params = DimensionlessParams(1.0, 1.0)
    with pytest.raises(DomainError):
        finite_part_stieltjes(params, (1e-3, 1e-2), CFG)  # increasing
    with pytest.raises(DomainError):
        finite_part_stieltjes(params, (1e-1, 1e-14), CFG)  # below floor
    with pytest.raises(DomainError):
        finite_part_stieltjes(params, (), CFG)


# ---------------------------------------------------------------- dispatch

def test_koff_inverse_closed_route_is_definitional():
    for p in (PhysicalParams(2 * math.pi, 1, 1, 1), PhysicalParams(5.0, 2.0, 3.0, 0.7)):
        assert koff_inverse(p, "closed", CFG).value == koff_inverse_closed(p).value


def test_koff_inverse_route_agreement():
    p = PhysicalParams(2.0 * math.pi, 1.0, 1.0, 1.0)
    target = 1.0 + LN2_MINUS_GAMMA
    r = koff_inverse(p, "quadrature", CFG)
    assert r.route == ROUTE_QUADRATURE
    assert r.value == pytest.approx(target, abs=1e-8)
    r = koff_inverse(p, "stieltjes", CFG)
    assert r.route == ROUTE_STIELTJES
    assert r.value == pytest.approx(target, abs=1e-6)


def test_koff_inverse_zero_ka_short_circuit():
    for route in ("closed", "quadrature", "stieltjes"):
        r = koff_inverse(PhysicalParams(0.0, 2.0, 1.0, 1.0), route, CFG)
        assert r.value == 0.5


def test_unknown_route_rejected():
    with pytest.raises(ParameterError):
        koff_inverse(PhysicalParams(1, 1, 1, 1), "magic", CFG)
    with pytest.raises(ParameterError):
        finite_part_route(DimensionlessParams(1, 1), "magic", CFG)


def test_route_labels():
    assert finite_part_route(DimensionlessParams(1, 1), "closed", CFG).route \
        == ROUTE_CLOSED
    assert finite_part_route(DimensionlessParams(1, 1), "quadrature", CFG).route \
        == ROUTE_QUADRATURE
    assert finite_part_route(DimensionlessParams(1, 1), "stieltjes", CFG).route \
        == ROUTE_STIELTJES


# -------------------------------------------------------------- invariants

def test_physical_positivity():
    cases = [(0.0, 2.0, 1.0, 1.0), (1.0, 1.0, 1.0, 1.0), (20.0, 0.5, 3.0, 0.2),
             (2 * math.pi, 4.0, 0.1, 1.0)]
    for ka, kd, D, a in cases:
        p = PhysicalParams(ka, kd, D, a)
        v = koff_inverse(p, "closed", CFG).value
        assert v > 0.0
        assert v >= 1.0 / kd - 1e-15 / kd
        assert (v == 1.0 / kd) == (ka == 0.0)


def test_dimensional_consistency_scaling():
    # (D, ka) -> (sD, s ka) leaves h_tilde and 1/k_off unchanged
    base = PhysicalParams(3.0, 2.0, 1.5, 0.8)
    v0 = koff_inverse(base, "closed", CFG).value
    h0 = nondimensionalize(base).h_tilde
    for s in (2.0, 7.5):
        p = PhysicalParams(s * base.kappa_a, base.kappa_d, s * base.D, base.a)
        assert nondimensionalize(p).h_tilde == pytest.approx(h0, rel=1e-15)
        assert koff_inverse(p, "closed", CFG).value == pytest.approx(v0, rel=1e-14)


def test_quadrature_diagnostics_present():
    r = finite_part_quadrature(DimensionlessParams(1.0, 1.0), CFG)
    assert r.diagnostics["split"] == 1.0
    assert r.diagnostics["subdivisions"] >= 1
    assert r.diagnostics["converged"]
