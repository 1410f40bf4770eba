"""Acceptance gate: nine numbered criteria, one printed pass/fail line each.

Every criterion computes its measurement first, prints its line even when
failing, then asserts.  Tolerances are pinned in the asserts.
"""

import math

import numpy as np
import pytest

from voltconv import (AbelKernel, C_FIXED, ChargeProblem, Power, PowerLog,
                      SampledFunction, VolterraIKernel, apply_Jnu,
                      check_half_sobolev_I, check_holder, check_sobolev,
                      extend_reflect, fractional_integral, gagliardo_seminorm,
                      luxemburg_norm, norm, product_weights, ramanujan_R,
                      solve_nonlinear_charge, volterra_I, volterra_I_laplace,
                      volterra_M, volterra_N, young_C_from_A)
from voltconv.charge import solve_linear_charge
from voltconv.kernels import DEFAULT_RTOL, _volterra_power_moment
from voltconv.verify import (orlicz_hypothesis_sup, random_trig_polynomial,
                             sonine_defect)

VI = VolterraIKernel()


@pytest.fixture
def announce(capfd):
    def _announce(num, label, ok, detail=""):
        status = "PASS" if ok else "FAIL"
        suffix = f"  [{detail}]" if detail else ""
        with capfd.disabled():
            print(f"\nacceptance {num} ({label}): {status}{suffix}")
        return ok
    return _announce


def test_criterion_1_sonine_identity(announce):
    levels = (512, 1024, 2048, 4096)
    defects = [sonine_defect(n, 1.0, cutoff=0.05) for n in levels]
    at_2048 = defects[levels.index(2048)]
    ok = at_2048 <= 1e-3 and all(b < a for a, b in zip(defects, defects[1:]))
    announce(1, "sonine identity", ok,
             f"defect@2048={at_2048:.3g}, trend={['%.2e' % d for d in defects]}")
    assert at_2048 <= 1e-3
    assert all(b < a for a, b in zip(defects, defects[1:]))


def test_criterion_2_special_function_cross_checks(announce):
    r0_err = abs(ramanujan_R(0.0) - 1.0)
    rel_nr = max(abs(volterra_N(float(x)) - (math.exp(x) - ramanujan_R(float(x))))
                 / volterra_N(float(x))
                 for x in np.logspace(-2, math.log10(2.0), 25))
    rel_dual = max(abs(volterra_I(float(x)) - volterra_I_laplace(float(x)))
                   / volterra_I(float(x))
                   for x in np.logspace(-2, math.log10(5.0), 25))
    ok = r0_err <= 1e-8 and rel_nr <= 1e-8 and rel_dual <= 1e-8
    announce(2, "special-function cross-checks", ok,
             f"R(0) err={r0_err:.1e}, N=e^x-R rel={rel_nr:.1e}, dual I rel={rel_dual:.1e}")
    assert r0_err <= 1e-8
    assert rel_nr <= 1e-8
    assert rel_dual <= 1e-8


def test_criterion_3_abel_exactness(announce):
    n = 256
    kernel = AbelKernel(0.5)
    xs = np.linspace(0.0, 1.0, n + 1)
    out = fractional_integral(0.5, SampledFunction(1.0, xs.copy()))
    err_x = float(np.abs(out.values - 4.0 * xs ** 1.5 / (3.0 * math.sqrt(math.pi))).max())
    ones = apply_Jnu(kernel, SampledFunction(1.0, np.ones(n + 1)))
    err_1 = float(np.abs(ones.values - kernel.N_grid(xs)).max())
    ok = err_x <= 1e-8 and err_1 <= 1e-10
    announce(3, "Abel exactness", ok, f"g=x err={err_x:.1e}, g=1 err={err_1:.1e}")
    assert err_x <= 1e-8
    assert err_1 <= 1e-10


def test_criterion_4_explicit_constant_bounds(announce):
    T, n = 1.0, 512
    NT = VI.N(T)
    w = product_weights(VI, T / n, n)
    rng = np.random.default_rng(2024)
    linf_excess = -math.inf
    w11_excess = -math.inf
    for _ in range(20):
        g = random_trig_polynomial(T, n, rng)
        jg = apply_Jnu(VI, g, weights=w)
        linf_excess = max(linf_excess,
                          norm(jg, "Linf") - NT * norm(g, "Linf"))
        w11_bound = NT * (abs(float(g.values[0])) + norm(g, "W11"))
        w11_excess = max(w11_excess, norm(jg, "W11") - w11_bound)
    g = SampledFunction(T, np.sin(2.0 * np.linspace(0.0, T, n + 1)) + 1.0)
    ext = extend_reflect(g)
    l2_defect = abs(norm(ext, "Lp", p=2.0) - math.sqrt(2.0) * norm(g, "Lp", p=2.0))
    gag_ratio = gagliardo_seminorm(ext, 0.3) / gagliardo_seminorm(g, 0.3)
    ok = (linf_excess <= 1e-10 and w11_excess <= 1e-10
          and l2_defect <= 1e-10 and gag_ratio <= 2.0 * 1.05)
    announce(4, "explicit-constant bounds", ok,
             f"Linf excess={linf_excess:.1e}, W11 excess={w11_excess:.1e}, "
             f"sqrt2 defect={l2_defect:.1e}, ext Gagliardo ratio={gag_ratio:.3f}")
    assert linf_excess <= 1e-10
    assert w11_excess <= 1e-10
    assert l2_defect <= 1e-10
    assert gag_ratio <= 2.0 * 1.05


def test_criterion_5_sobolev_contraction_trend(announce):
    rep = check_sobolev(VI, theta=0.3, T_list=(1.0, 0.5, 0.25, 0.125), n=1024)
    by_name = {c.name: c for c in rep.criteria}
    band = by_name["contraction_band"]
    shrink = by_name["contraction_shrinks"]
    ok = band.passed and shrink.passed
    announce(5, "H^theta contraction trend", ok,
             f"rho/N band={band.measured:.3f} (<=2), "
             f"rho(1/8)={shrink.measured:.3f} < rho(1)={shrink.threshold:.3f}")
    assert band.passed
    assert shrink.passed


def test_criterion_6_N_dichotomy(announce):
    rep = check_half_sobolev_I(n_max=8192)
    by_name = {c.name: c for c in rep.criteria}
    cauchy = by_name["gagliardo_0.45_cauchy"]
    diverge = by_name["gagliardo_0.75_divergent"]
    ok = cauchy.measured <= 0.05 and diverge.passed
    announce(6, "N dichotomy", ok,
             f"theta=0.45 Cauchy defect={cauchy.measured:.3f} (<=0.05), "
             f"theta=0.75 min growth/doubling={diverge.measured:.3f} (>0.10 x3)")
    assert cauchy.measured <= 0.05
    assert diverge.passed


def test_criterion_7_orlicz_construction(announce):
    C = young_C_from_A(Power(4.0 / 3.0), 2.0)
    xs = np.logspace(1.0, 4.0, 30)
    slope = np.polyfit(np.log(xs), np.log([C(float(x)) for x in xs]), 1)[0]
    slope_err = abs(slope - 4.0)

    n, t = 2048, 0.5
    grid = np.linspace(0.0, 1.0, n + 1)
    indicator = SampledFunction(1.0, (grid <= t).astype(float))
    worst_ind = 0.0
    for A in (Power(3.0), PowerLog(1.0, 1.0)):
        measured = luxemburg_norm(indicator, A)
        target = 1.0 / float(A.inverse(1.0 / t))
        worst_ind = max(worst_ind, abs(measured / target - 1.0))

    _, band_abel = orlicz_hypothesis_sup(AbelKernel(0.25), Power(4.0 / 3.0))
    _, band_vi = orlicz_hypothesis_sup(VI, PowerLog(1.0, 1.0))
    ok = slope_err <= 1e-3 and worst_ind <= 0.01 and band_abel <= 2.0 and band_vi <= 2.0
    announce(7, "Orlicz construction", ok,
             f"slope err={slope_err:.1e}, indicator err={worst_ind:.2%}, "
             f"hypothesis bands={band_abel:.3f}/{band_vi:.3f}")
    assert slope_err <= 1e-3
    assert worst_ind <= 0.01
    assert band_abel <= 2.0
    assert band_vi <= 2.0


def _nonlinear_forcing(xs, alpha0):
    """Continuum forcing that makes q(t) = t the exact solution for sigma = 1:
    f = q + J_I((4 pi a0 t^2 + c) t) via the exact power moments of I."""
    mom = {j: np.array([_volterra_power_moment(float(j), float(x), DEFAULT_RTOL)
                        if x > 0.0 else 0.0 for x in xs]) for j in range(4)}
    cubic = (xs ** 3 * mom[0] - 3.0 * xs ** 2 * mom[1]
             + 3.0 * xs * mom[2] - mom[3])
    linear = xs * mom[0] - mom[1]
    return xs + 4.0 * math.pi * alpha0 * cubic + C_FIXED * linear


def test_criterion_8_charge_solvers(announce):
    # Linear: manufactured complex solution, recovered through forward
    # substitution to round-off.
    n, T, alpha = 1024, 1.0, 0.3
    xs = np.linspace(0.0, T, n + 1)
    q_ref = np.exp(1j * xs) * (1.0 + xs)
    c = 4.0 * math.pi * alpha + C_FIXED
    f = q_ref + apply_Jnu(VI, SampledFunction(T, c * q_ref)).values
    lin = solve_linear_charge(ChargeProblem(kind="linear", alpha=alpha,
                                            forcing=SampledFunction(T, f)))
    lin_err = float(np.abs(lin.solution.values - q_ref).max())

    # Nonlinear: continuum-exact forcing for q(t) = t, sigma = 1, alpha0 = 0.1.
    alpha0 = 0.1
    errs = []
    for m in (1024, 2048, 4096):
        ys = np.linspace(0.0, T, m + 1)
        forcing = SampledFunction(T, _nonlinear_forcing(ys, alpha0))
        rep = solve_nonlinear_charge(
            ChargeProblem(kind="nonlinear", forcing=forcing,
                          alpha=alpha0, sigma=1.0), tol=1e-12)
        errs.append(float(np.abs(rep.solution.values - ys).max()))
    orders = [math.log2(a / b) for a, b in zip(errs, errs[1:])]
    ok = lin_err <= 1e-10 and errs[-1] <= 1e-6 and min(orders) >= 1.0
    announce(8, "charge-equation solvers", ok,
             f"linear err={lin_err:.1e}, nonlinear errs={['%.2e' % e for e in errs]}, "
             f"orders={['%.2f' % o for o in orders]}")
    assert lin_err <= 1e-10
    assert errs[-1] <= 1e-6
    assert min(orders) >= 1.0


def test_criterion_9_holder_ratio_stability(announce):
    bands = {}
    for label, kernel in (("volterra-i", VI), ("abel(0.3)", AbelKernel(0.3))):
        rep = check_holder(kernel, alpha=0.4, n_levels=3, n0=512,
                           g_exponent=0.4)
        bands[label] = {c.name: c for c in rep.criteria}["holder_ratio_band"]
    ok = all(c.measured < 2.0 for c in bands.values())
    announce(9, "Hoelder ratio stability", ok,
             ", ".join(f"{k}: band={c.measured:.4f}" for k, c in bands.items()))
    for c in bands.values():
        assert c.measured < 2.0
