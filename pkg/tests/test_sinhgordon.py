"""ODE layer: branches, oracle agreement, phase integral, admissibility."""

import math

import numpy as np
import pytest

from maxsurf import sinhgordon as sg
from maxsurf.errors import DomainError, IntervalError, SingularIntegrandError

from oracles import bisect_root, simpson_fixed

ENERGY_DRIFT_TOL = 1e-9
RK_MATCH_TOL = 1e-7
ODE_RESIDUAL_TOL = 1e-5

# Frozen composite-Simpson values for the phase integral (reproduce with
# oracles.simpson_fixed over the same ranges, 40000 panels).
G_E4_HALF = 0.035072015419378412
G_EM05_PROBE = 0.20137192988514338

CASES = [
    (4.0, 0.0),
    (4.0, 1.1),
    (1.5, 0.4),
    (1.0, 0.0),
    (1.0, 0.7),
    (0.1, 0.9),
    (-0.5, 0.0),
    (-0.9, 0.2),
    (-1.0, 0.0),
    (-1.0, 0.8),
    (-2.0, 0.7),
    (-6.0, 1.3),
]


def initial_slope(energy, v0):
    return math.sqrt(2.0 * (energy + math.cosh(2.0 * v0)))


def probe_window(s, frac=0.90, cap=4.0):
    """Inner fraction of the interval, capped for infinite ends."""
    lo, hi = s.interval
    lo = max(lo, -cap)
    hi = min(hi, cap)
    w = hi - lo
    pad = 0.5 * (1.0 - frac) * w
    return lo + pad, hi - pad


def test_branch_classification():
    assert sg.solve(4.0, 0.0).branch == "Tn"
    assert sg.solve(1.0, 0.3).branch == "TnDn"
    assert sg.solve(0.0, 0.0).branch == "TnDn"
    assert sg.solve(-1.0, 0.0).branch == "ConstantZero"
    assert sg.solve(-1.0, 0.5).branch == "TnDn"
    assert sg.solve(-3.0, 1.2).branch == "Sn"


def test_constant_zero_solution():
    s = sg.solve(-1.0, 0.0)
    assert s.interval == (-math.inf, math.inf)
    assert sg.eval_v(s, 17.3) == 0.0
    assert sg.eval_v_prime(s, -5.0) == 0.0


def test_initial_value_problem():
    for energy, v0 in CASES:
        s = sg.solve(energy, v0)
        assert sg.eval_v(s, 0.0) == pytest.approx(v0, abs=1e-12)
        assert sg.eval_v_prime(s, 0.0) == pytest.approx(
            initial_slope(energy, v0), abs=1e-12
        )


def test_initial_value_at_energy_floor():
    # energy exactly -cosh(2 v0): the solution starts at its minimum
    v0 = 0.9
    s = sg.solve(-math.cosh(1.8), v0)
    assert sg.eval_v_prime(s, 0.0) == pytest.approx(0.0, abs=1e-12)
    assert sg.eval_v(s, 0.0) == pytest.approx(v0, abs=1e-12)


def test_energy_conservation():
    for energy, v0 in CASES:
        s = sg.solve(energy, v0)
        a, b = probe_window(s, frac=0.96)
        xs = np.linspace(a, b, 400)
        v = sg.eval_v(s, xs)
        dv = sg.eval_v_prime(s, xs)
        drift = np.max(np.abs(0.5 * dv * dv - np.cosh(2.0 * v) - energy))
        assert drift < ENERGY_DRIFT_TOL


def test_closed_form_matches_rk_oracle():
    for energy, v0 in [(2.0, 0.3), (1.0, 0.5), (-0.4, 0.1), (-1.0, 0.8), (-4.0, 1.2)]:
        s = sg.solve(energy, v0)
        a, b = probe_window(s)
        slope = initial_slope(energy, v0)
        for x_end in (a, b):
            if x_end == 0.0:
                continue
            path = sg.rk_oracle(energy, v0, slope, x_end, 1e-4)
            mism = np.max(np.abs(sg.eval_v(s, path.xs) - path.v))
            assert mism < RK_MATCH_TOL, (energy, v0, x_end, mism)
            assert path.energy_drift < ENERGY_DRIFT_TOL


def test_rk_oracle_constant_path():
    path = sg.rk_oracle(-1.0, 0.0, 0.0, 2.0, 1e-3)
    assert np.max(np.abs(path.v)) == 0.0
    assert path.energy_drift == 0.0


def test_rk_oracle_log_tan_and_order():
    # elementary solution log(tan(x + 0.2)) as an exact reference
    v0 = math.log(math.tan(0.2))
    slope = 2.0 / math.sin(0.4)
    x_end = 1.2
    errs = []
    for h in (2e-3, 1e-3):
        path = sg.rk_oracle(1.0, v0, slope, x_end, h)
        ref = np.log(np.tan(path.xs + 0.2))
        errs.append(np.max(np.abs(path.v - ref)))
    assert errs[1] < RK_MATCH_TOL
    # classical fourth order: halving h cuts the error about 16x
    ratio = errs[0] / errs[1]
    assert 10.0 < ratio < 22.0, ratio


def test_rk_oracle_guards():
    with pytest.raises(DomainError):
        sg.rk_oracle(1.0, 0.3, 1.0, 1.0, 1e-3)  # inconsistent initial energy
    with pytest.raises(DomainError):
        sg.rk_oracle(-1.0, 0.0, 0.0, 1.0, -1e-3)
    # blow-up guard: the path stops once |v| > 50
    slope = initial_slope(5.0, 0.0)
    path = sg.rk_oracle(5.0, 0.0, slope, 10.0, 1e-4)
    assert path.xs[-1] < 10.0
    assert abs(path.v[-1]) > 50.0


def test_mirror_solution():
    for energy, v0 in [(2.0, 0.4), (0.3, 0.2), (-1.0, 0.6), (-5.0, 1.5)]:
        s = sg.solve(energy, v0)
        m = sg.solve(energy, v0, negated=True)
        a, b = probe_window(s)
        xs = np.linspace(a, b, 50)
        assert np.allclose(sg.eval_v(m, xs), -sg.eval_v(s, xs), atol=0)
        assert np.allclose(sg.eval_v_prime(m, xs), -sg.eval_v_prime(s, xs), atol=0)


def test_reflection_symmetry_above_floor():
    # for energy > -1 the profile is odd about the interval midpoint
    for energy, v0 in [(3.0, 0.7), (1.0, 0.2), (0.5, 0.0), (-0.8, 0.3)]:
        s = sg.solve(energy, v0)
        lo, hi = s.interval
        mid = 0.5 * (lo + hi)
        ts = np.linspace(0.0, 0.44 * (hi - lo), 40)
        assert np.allclose(
            sg.eval_v(s, mid + ts), -sg.eval_v(s, mid - ts), atol=1e-9
        )


def test_no_vanishing_below_floor():
    for energy, v0 in [(-1.5, 0.9), (-6.0, 1.3)]:
        s = sg.solve(energy, v0)
        a, b = probe_window(s, frac=0.999)
        v = sg.eval_v(s, np.linspace(a, b, 500))
        assert np.min(v) >= math.log(s.scale) - 1e-12
        vn = sg.eval_v(sg.solve(energy, v0, negated=True), np.linspace(a, b, 500))
        assert np.max(vn) < 0.0


def test_ode_residual_second_difference():
    # the h^2 truncation term scales with exp(4|v|), so probe where the
    # profile is moderate; consistency there is the point of the check
    h = 1e-4
    for energy, v0 in CASES:
        s = sg.solve(energy, v0)
        a, b = probe_window(s)
        xs = np.linspace(a, b, 200)
        xs = xs[np.abs(sg.eval_v(s, xs)) <= 1.5]
        assert xs.size > 20
        second = (sg.eval_v(s, xs + h) - 2.0 * sg.eval_v(s, xs) + sg.eval_v(s, xs - h)) / (h * h)
        resid = np.max(np.abs(second - 2.0 * np.sinh(2.0 * sg.eval_v(s, xs))))
        assert resid < ODE_RESIDUAL_TOL, (energy, v0, resid)


def test_blow_up_at_finite_endpoints():
    for energy, v0 in [(4.0, 0.0), (0.2, 0.5), (-6.0, 1.3)]:
        s = sg.solve(energy, v0)
        lo, hi = s.interval
        assert abs(sg.eval_v(s, lo + 1e-7)) > 4.0
        assert abs(sg.eval_v(s, hi - 1e-7)) > 4.0


def test_eval_outside_interval():
    s = sg.solve(2.0, 0.0)
    lo, hi = s.interval
    with pytest.raises(IntervalError):
        sg.eval_v(s, hi + 0.1)
    with pytest.raises(IntervalError):
        sg.eval_v_prime(s, np.array([0.0, lo - 1.0]))
    with pytest.raises(IntervalError):
        sg.eval_v(s, hi)  # the interval is open


def test_solve_preconditions():
    with pytest.raises(DomainError):
        sg.solve(1.0, -0.2)
    with pytest.raises(DomainError):
        sg.solve(-6.0, 0.1)


def test_phase_integral_constant_zero():
    s = sg.solve(-1.0, 0.0)
    assert sg.G_integral(s, 3.25, 0.0) == -3.25
    assert sg.G_integral(s, -2.0) == 2.0  # default base 0


def test_phase_integral_frozen_values():
    s = sg.solve(4.0, 0.0)
    assert sg.G_integral(s, 0.5, 0.0) == pytest.approx(G_E4_HALF, abs=1e-12)
    s2 = sg.solve(-0.5, 0.0)
    base = sg.default_base_point(s2)
    assert sg.G_integral(s2, -0.7, base) == pytest.approx(G_EM05_PROBE, abs=1e-12)


def test_phase_integral_vs_live_simpson():
    s = sg.solve(-3.0, 1.0)
    base = sg.default_base_point(s)
    alo, ahi = sg.admissible_interval(s)
    x = alo + 0.8 * (ahi - alo)
    want = simpson_fixed(
        lambda t: 1.0 / (-6.0 + math.exp(2.0 * sg.eval_v(s, t))), base, x, 40000
    )
    assert sg.G_integral(s, x, base) == pytest.approx(want, abs=1e-11)


def test_phase_integral_additivity():
    for energy, v0 in [(4.0, 0.0), (0.3, 0.4), (-2.0, 0.8)]:
        s = sg.solve(energy, v0)
        if energy < 0:
            lo, hi = sg.admissible_interval(s)
        else:
            lo, hi = s.interval
        a = lo + 0.1 * (hi - lo)
        b = lo + 0.45 * (hi - lo)
        c = lo + 0.9 * (hi - lo)
        lhs = sg.G_integral(s, b, a) + sg.G_integral(s, c, b)
        assert lhs == pytest.approx(sg.G_integral(s, c, a), abs=1e-9)


def test_phase_integral_singular_guard():
    # denominator vanishes at the admissible boundary; crossing it fails
    s = sg.solve(-0.5, 0.0)
    assert sg.admissible_interval(s)[1] == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(SingularIntegrandError):
        sg.G_integral(s, 0.2, -0.5)
    s2 = sg.solve(-6.0, 1.3)
    alo, ahi = sg.admissible_interval(s2)
    with pytest.raises(SingularIntegrandError):
        sg.G_integral(s2, ahi + 0.3 * (s2.interval[1] - ahi), ahi - 0.01)


def test_admissible_constant_zero_everywhere():
    s = sg.solve(-1.0, 0.0)
    assert sg.admissible_interval(s) == (-math.inf, math.inf)


def test_admissible_elementary_coth():
    s = sg.solve(-1.0, 0.7)
    lo, hi = sg.admissible_interval(s)
    assert lo == -math.inf
    assert hi == pytest.approx(s.phase - math.atanh(1.0 / math.sqrt(2.0)), abs=1e-12)
    # at the boundary the defining quantity vanishes
    assert 2.0 * (-1.0) + math.exp(2.0 * sg.eval_v(s, hi)) == pytest.approx(0.0, abs=1e-9)
    # the mirror is admissible everywhere
    assert sg.admissible_interval(sg.solve(-1.0, 0.7, negated=True)) == s.interval


def test_admissible_boundaries_by_bisection():
    # locate the roots of 2E + exp(2v) independently and compare
    for energy, v0 in [(-6.0, 1.3), (-0.5, 0.3), (-0.9, 0.0)]:
        s = sg.solve(energy, v0)
        lo, hi = s.interval
        alo, ahi = sg.admissible_interval(s)

        def crit(x):
            return 2.0 * energy + math.exp(2.0 * sg.eval_v(s, x))

        if alo > lo:
            root = bisect_root(crit, lo + 1e-9, 0.5 * (alo + ahi))
            assert alo == pytest.approx(root, abs=1e-9)
        root = bisect_root(crit, 0.5 * (alo + ahi), hi - 1e-9)
        assert ahi == pytest.approx(root, abs=1e-9)


def test_admissible_negated_branches():
    s = sg.solve(-4.0, 1.1, negated=True)
    assert sg.admissible_interval(s) == s.interval
    # negated mid-branch: admissible to the right of the crossing
    s2 = sg.solve(-0.5, 0.4, negated=True)
    alo, ahi = sg.admissible_interval(s2)
    assert ahi == s2.interval[1]
    crit = 2.0 * (-0.5) + math.exp(2.0 * sg.eval_v(s2, alo + 1e-12))
    assert crit == pytest.approx(0.0, abs=1e-6)
    xs = np.linspace(alo + 1e-6, ahi - 1e-6, 200)
    assert np.all(np.exp(2.0 * sg.eval_v(s2, xs)) < 1.0)


def test_admissible_requires_negative_energy():
    with pytest.raises(IntervalError):
        sg.admissible_interval(sg.solve(2.0, 0.0))
    with pytest.raises(IntervalError):
        sg.admissible_interval(sg.solve(0.0, 0.3))


def test_vectorized_evaluation():
    s = sg.solve(1.5, 0.2)
    xs = np.array([[-0.3, 0.0], [0.1, 0.4]])
    v = sg.eval_v(s, xs)
    assert v.shape == xs.shape
    for idx in np.ndindex(xs.shape):
        assert v[idx] == sg.eval_v(s, float(xs[idx]))
