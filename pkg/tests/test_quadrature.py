import math

import pytest

import oracles
from koff2d.errors import DomainError, ParameterError
from koff2d.integrand import IntegrandContext, f as f_eval, f_sub, f_zero
from koff2d.model import DimensionlessParams
from koff2d.quadrature import (_GAUSS_WEIGHTS, _GK_NODES, _GK_WEIGHTS,
                               FinitePartProblem, IntegralEstimate,
                               QuadratureConfig, finite_part,
                               integrate_adaptive, integrate_tail,
                               integrate_tail_truncated)

GAMMA = 0.5772156649015329
CFG = QuadratureConfig()


def _ctx11():
    return IntegrandContext(DimensionlessParams(1.0, 1.0))


# ------------------------------------------------------------- rule tables

def test_kronrod_rule_polynomial_exactness():
    # K15 integrates monomials exactly through degree 22 on [-1, 1]
    for deg in range(23):
        got = sum(w * t ** deg for w, t in zip(_GK_WEIGHTS, _GK_NODES))
        exact = 2.0 / (deg + 1) if deg % 2 == 0 else 0.0
        assert got == pytest.approx(exact, abs=3e-15)


def test_gauss_rule_polynomial_exactness():
    for deg in range(14):
        got = sum(w * t ** deg for w, t in zip(_GAUSS_WEIGHTS, _GK_NODES))
        exact = 2.0 / (deg + 1) if deg % 2 == 0 else 0.0
        assert got == pytest.approx(exact, abs=3e-15)


def test_rule_is_open_at_endpoints():
    assert min(_GK_NODES) > -1.0
    assert max(_GK_NODES) < 1.0


# --------------------------------------------------------------- adaptive

def test_polynomial():
    est = integrate_adaptive(lambda x: x * x, 0.0, 1.0, CFG)
    assert est.value == pytest.approx(1.0 / 3.0, abs=1e-12)
    assert est.converged


def test_inverse_sqrt_singularity():
    est = integrate_adaptive(lambda x: 1.0 / math.sqrt(x), 0.0, 1.0, CFG)
    assert est.value == pytest.approx(2.0, rel=CFG.rel_tol * 100)
    assert est.converged


def test_oscillatory_f_over_x_vs_simpson_oracle(fast_backend):
    ctx = _ctx11()
    g = lambda x: f_eval(ctx, x) / x
    est = integrate_adaptive(g, 1.0, 50.0, CFG)
    n = 1_000_001 if fast_backend else 100_001
    oracle = oracles.composite_simpson(g, 1.0, 50.0, n)
    assert est.value == pytest.approx(oracle, abs=1e-9)
    assert est.converged


def test_invalid_bounds():
    with pytest.raises(DomainError):
        integrate_adaptive(lambda x: x, 1.0, 1.0, CFG)
    with pytest.raises(DomainError):
        integrate_adaptive(lambda x: x, 0.0, math.inf, CFG)


def test_nonconvergence_flagged():
    cfg = QuadratureConfig(rel_tol=1e-14, max_subdivisions=3)
    est = integrate_adaptive(lambda x: 1.0 / math.sqrt(x), 0.0, 1.0, cfg)
    assert not est.converged
    assert est.subdivisions_used == 3
    assert est.error_estimate > 1e-14 * abs(est.value)


def test_converged_implies_error_within_tolerance():
    for g, lo, hi in [(lambda x: math.sin(x), 0.0, 3.0),
                      (lambda x: math.exp(-x * x), -2.0, 2.0)]:
        est = integrate_adaptive(g, lo, hi, CFG)
        assert est.converged
        assert est.error_estimate <= max(CFG.abs_tol, CFG.rel_tol * abs(est.value))


def test_determinism_bitwise():
    g = lambda x: math.sin(3.0 * x) / (1.0 + x * x)
    a = integrate_adaptive(g, 0.0, 10.0, CFG)
    b = integrate_adaptive(g, 0.0, 10.0, CFG)
    assert a == b


# ------------------------------------------------------------------ tails

def test_tail_inverse_square():
    est = integrate_tail(lambda x: x ** -2.0, 1.0, CFG)
    assert est.value == pytest.approx(1.0, abs=1e-12)


def test_tail_inverse_sixth():
    est = integrate_tail(lambda x: x ** -6.0, 2.0, CFG)
    assert est.value == pytest.approx(1.0 / (5.0 * 2 ** 5), abs=1e-12)


def test_tail_f_over_x_vs_truncated_oracle(fast_backend):
    ctx = _ctx11()
    g = lambda x: f_eval(ctx, x) / x
    est = integrate_tail(g, 1.0, CFG)
    n1 = 500_001 if fast_backend else 50_001
    n2 = 200_001 if fast_backend else 20_001
    oracle = (oracles.composite_simpson(g, 1.0, 50.0, n1)
              + oracles.composite_simpson(g, 50.0, 1.0e4, n2))
    envelope_rest = (2.0 / math.pi) / (5.0 * (1.0e4) ** 5)
    assert abs(est.value - oracle) <= 1e-9 + envelope_rest


def test_tail_truncated_with_envelope_matches_substitution():
    g = lambda x: x ** -6.0
    full = integrate_tail(g, 2.0, CFG)
    trunc = integrate_tail_truncated(g, 2.0, 1.0e4, (1.0, 6.0), CFG)
    assert trunc.value == pytest.approx(full.value, rel=1e-10)
    assert trunc.error_estimate >= 1.0 * (1.0e4) ** -5.0 / 5.0


def test_tail_envelope_padding_only_pads_error():
    g = lambda x: x ** -6.0
    plain = integrate_tail(g, 2.0, CFG)
    padded = integrate_tail(g, 2.0, CFG, envelope=(1.0, 6.0))
    assert padded.value == plain.value
    assert padded.error_estimate >= plain.error_estimate
    # with a fat envelope the padding is visible
    fat = integrate_tail(g, 2.0, CFG, envelope=(1e60, 2.0))
    assert fat.error_estimate > plain.error_estimate


def test_tail_invalid_lo():
    with pytest.raises(DomainError):
        integrate_tail(lambda x: x ** -2.0, 0.0, CFG)


# ------------------------------------------------------------- finite part

def test_finite_part_exponential_desk_check():
    # int_1^inf e^-x/x + int_0^1 (e^-x - 1)/x = -gamma
    prob = FinitePartProblem(f=lambda x: math.exp(-x), f0=1.0, split=1.0,
                             sub=lambda x: math.expm1(-x) / x)
    est = finite_part(prob, CFG)
    assert est.value == pytest.approx(-GAMMA, abs=1e-10)
    assert est.converged


def test_finite_part_exponential_against_e1_series():
    # same check cross-derived from the E1 series: R(1) = E1(1) - Ein(1)
    e1 = oracles.e1_series(1.0)
    ein = GAMMA + e1  # Ein(1) = gamma + ln(1) + E1(1)
    prob = FinitePartProblem(f=lambda x: math.exp(-x), f0=1.0, split=1.0,
                             sub=lambda x: math.expm1(-x) / x)
    est = finite_part(prob, CFG)
    assert est.value == pytest.approx(e1 - ein, abs=1e-12)


def test_finite_part_constant_contract_violation_flagged():
    # constant f: near-zero piece is 0, tail diverges; must not converge
    cfg = QuadratureConfig(rel_tol=1e-10, max_subdivisions=40)
    prob = FinitePartProblem(f=lambda x: 3.0, f0=3.0, split=1.0)
    est = finite_part(prob, cfg)
    assert not est.converged


def test_finite_part_paper_f_equals_closed_form():
    params = DimensionlessParams(1.0, 1.0)
    ctx = IntegrandContext(params)
    prob = FinitePartProblem(f=lambda x: f_eval(ctx, x), f0=f_zero(params),
                             split=1.0, sub=lambda x: f_sub(ctx, x))
    est = finite_part(prob, CFG)
    assert est.value == pytest.approx(1.1159315156584124, abs=1e-8)


def test_finite_part_paper_f_vs_graded_simpson_oracle(fast_backend):
    # independent brute force: tail after x -> 1/t plus near piece after x = u^4
    params = DimensionlessParams(1.0, 1.0)
    ctx = IntegrandContext(params)
    n = 200_001 if fast_backend else 20_001
    tail = oracles.composite_simpson(
        lambda t: f_eval(ctx, 1.0 / t) / (1.0 / t) / (t * t), 1e-4, 1.0, n)
    tail += (2.0 / math.pi) / (5.0 * (1e4) ** 5)  # envelope rest
    near = oracles.simpson_u4(lambda x: f_sub(ctx, x), n)
    prob = FinitePartProblem(f=lambda x: f_eval(ctx, x), f0=1.0,
                             split=1.0, sub=lambda x: f_sub(ctx, x))
    est = finite_part(prob, CFG)
    assert est.value == pytest.approx(tail + near, abs=2e-9)


def test_split_point_invariance():
    # R(s) + f(0) ln s is split-independent
    params = DimensionlessParams(1.0, 1.0)
    ctx = IntegrandContext(params)
    values = []
    for s in (0.25, 0.5, 1.0, 2.0, 4.0):
        cfg = QuadratureConfig(split_point=s)
        prob = FinitePartProblem(f=lambda x: f_eval(ctx, x), f0=1.0, split=s,
                                 sub=lambda x: f_sub(ctx, x))
        est = finite_part(prob, cfg)
        values.append(est.value + 1.0 * math.log(s))
    spread = max(values) - min(values)
    assert spread <= 10.0 * CFG.rel_tol * abs(values[2])


def test_tightening_tolerance_does_not_worsen():
    params = DimensionlessParams(1.0, 1.0)
    ctx = IntegrandContext(params)
    target = 1.1159315156584124
    errs = []
    for rtol in (1e-6, 1e-7, 1e-8, 1e-9, 1e-10):
        cfg = QuadratureConfig(rel_tol=rtol)
        prob = FinitePartProblem(f=lambda x: f_eval(ctx, x), f0=1.0, split=1.0,
                                 sub=lambda x: f_sub(ctx, x))
        errs.append(abs(finite_part(prob, cfg).value - target))
    for coarse, fine in zip(errs, errs[1:]):
        assert fine <= coarse + 1e-15


def test_config_invariants():
    with pytest.raises(ParameterError):
        QuadratureConfig(rel_tol=1e-15)
    with pytest.raises(ParameterError):
        QuadratureConfig(max_subdivisions=0)
    with pytest.raises(ParameterError):
        QuadratureConfig(tail_cutoff=0.5, split_point=1.0)
    with pytest.raises(ParameterError):
        QuadratureConfig(abs_tol=0.0)


def test_estimate_addition():
    a = IntegralEstimate(1.0, 1e-12, 3, True)
    b = IntegralEstimate(2.0, 1e-13, 4, False)
    c = a + b
    assert c.value == 3.0
    assert c.subdivisions_used == 7
    assert not c.converged
