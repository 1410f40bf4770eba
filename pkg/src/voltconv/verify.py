"""Theorem-by-theorem numerical verification harness.

Each check measures the quantities appearing in one estimate for the
convolution operator J_nu and reports pass/fail per criterion.  Checks with
explicit constants (the L^inf bound N(T), the W^{1,1} bound, the extension
factors sqrt(2) and 2, the Sonine identity's 1) assert those constants; all
other checks are constant-free and assert boundedness or trends only, with
"bounded across refinement" operationalized as a max/min ratio <= 2 over at
least three levels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .convolve import SampledFunction, apply_Jnu, apply_Phi, product_weights
from .errors import DomainError
from .kernels import (EULER_MASCHERONI, Kernel, LogSonineKernel,
                      VolterraIKernel, volterra_I, volterra_N)
from .spaces import (PowerLog, YoungFunction, gagliardo_seminorm,
                     holder_seminorm, luxemburg_norm, norm, sobolev_norm,
                     young_C_from_A)

BOUNDEDNESS_BAND = 2.0


@dataclass(frozen=True)
class Criterion:
    name: str
    measured: float
    threshold: float
    passed: bool

    def line(self) -> str:
        status = "pass" if self.passed else "fail"
        return f"{self.name}\t{self.measured:.6g}\t{self.threshold:.6g}\t{status}"


@dataclass
class VerificationReport:
    check: str
    criteria: list[Criterion] = field(default_factory=list)
    trend: list[tuple[int, float]] = field(default_factory=list)
    seed: int | None = None
    inconclusive: bool = False

    @property
    def verdict(self) -> str:
        if self.inconclusive:
            return "inconclusive"
        return "pass" if all(c.passed for c in self.criteria) else "fail"

    def add(self, name: str, measured: float, threshold: float,
            passed: bool | None = None) -> None:
        if passed is None:
            passed = measured <= threshold
        self.criteria.append(Criterion(name, float(measured), float(threshold), passed))

    def lines(self) -> list[str]:
        return [c.line() for c in self.criteria]


def random_trig_polynomial(T: float, n: int, rng: np.random.Generator,
                           terms: int = 6, decay: float = 1.5,
                           zero_at_origin: bool = False) -> SampledFunction:
    """Seeded trigonometric test function with decay-controlled regularity."""
    xs = np.linspace(0.0, T, n + 1)
    vals = np.zeros(n + 1)
    for j in range(1, terms + 1):
        c = rng.standard_normal() / j ** decay
        vals += c * np.sin(j * math.pi * xs / T)
        if not zero_at_origin:
            d = rng.standard_normal() / j ** decay
            vals += d * np.cos(j * math.pi * xs / T)
    return SampledFunction(T, vals)


def _band_ok(values) -> tuple[float, bool]:
    """Max/min ratio of positive measurements and its boundedness verdict."""
    arr = np.asarray([v for v in values if v > 0.0])
    if len(arr) == 0:
        return 0.0, True
    ratio = float(arr.max() / arr.min())
    return ratio, ratio <= BOUNDEDNESS_BAND


def _regularized_log_kernel_samples(T: float, n: int) -> SampledFunction:
    """Samples of phi(x) = -gamma - log x with the node at 0 replaced by the
    mass-preserving stand-in for the first cell."""
    xs = np.linspace(0.0, T, n + 1)
    vals = np.empty(n + 1)
    vals[1:] = -EULER_MASCHERONI - np.log(xs[1:])
    vals[0] = LogSonineKernel().singular_endpoint_value(T / n)
    return SampledFunction(T, vals)


def sonine_defect(n: int, T: float, cutoff: float = 0.05) -> float:
    """max over x_k >= cutoff of |integral_0^x I(x-s) phi(s) ds - 1|."""
    phi = _regularized_log_kernel_samples(T, n)
    out = apply_Jnu(VolterraIKernel(), phi)
    mask = phi.grid >= cutoff
    return float(np.abs(out.values[mask] - 1.0).max())


def check_sonine(n: int = 2048, T: float = 1.0, tol: float = 1e-3) -> VerificationReport:
    """The kernel I is a Sonine kernel: its convolution with -gamma - log x
    is identically 1, and the composed operators invert each other onto the
    running integral."""
    if T > 2.0:
        raise DomainError("check_sonine expects T <= 2")
    rep = VerificationReport(check="sonine")
    levels = [max(n // 4, 64), max(n // 2, 128), n, 2 * n]
    defects = [sonine_defect(m, T) for m in levels]
    rep.trend = list(zip(levels, defects))
    rep.add("sonine_unit_defect", defects[2], tol)
    rep.add("sonine_defect_decreasing",
            float(max(np.diff(defects))), 0.0,
            passed=all(d2 < d1 for d1, d2 in zip(defects, defects[1:])))

    xs = np.linspace(0.0, T, n + 1)
    vi = VolterraIKernel()
    cases = {"one": (np.ones(n + 1), xs),
             "identity": (xs.copy(), xs ** 2 / 2.0),
             "cos": (np.cos(xs), np.sin(xs))}
    for name, (g_vals, primitive) in cases.items():
        ig = apply_Jnu(vi, SampledFunction(T, g_vals))
        comp = apply_Phi(ig)
        defect = float(np.abs(comp.values - primitive).max())
        rep.add(f"composition_{name}", defect, tol)
    return rep


def _holder_ratio(kernel: Kernel, alpha: float, n: int, T: float = 1.0,
                  g_exponent: float | None = None) -> tuple[float, float]:
    """S(n) = max over admissible pairs (y/2 <= x < y) of
    |Jg(y) - Jg(x)| / ([g]_alpha (y-x)^alpha N(y-x)), plus the sup of the
    companion mass ratio (N(y) - N(x)) / N(y - x) over the same pairs."""
    exp = alpha if g_exponent is None else g_exponent
    xs = np.linspace(0.0, T, n + 1)
    g = SampledFunction(T, xs ** exp)
    w = product_weights(kernel, T / n, n)
    jg = apply_Jnu(kernel, g, weights=w).values
    seminorm = holder_seminorm(g, alpha)
    Nk = np.concatenate([[0.0], w.row_sums()])
    h = T / n
    best = 0.0
    mass = 0.0
    for d in range(1, n):
        lo = max(d, 1)           # y/2 <= x with x = k h, y = (k+d) h means k >= d
        if lo + d > n:
            break
        k = np.arange(lo, n - d + 1)
        num = np.abs(jg[k + d] - jg[k]).max()
        best = max(best, num / (seminorm * (d * h) ** alpha * Nk[d]))
        mass = max(mass, float((Nk[k + d] - Nk[k]).max()) / Nk[d])
    return best, mass


def check_holder(kernel: Kernel, alpha: float, n_levels: int = 3,
                 n0: int = 512, g_exponent: float | None = None) -> VerificationReport:
    """Hölder-regularization bound: the increment of Jg over admissible pairs
    is controlled by [g]_alpha (y-x)^alpha N(y-x) with an unknown constant;
    the measured ratio must stay in a factor-2 band across refinements."""
    rep = VerificationReport(check="holder")
    ratios, masses = [], []
    for i in range(n_levels):
        n = n0 * 2 ** i
        s, m = _holder_ratio(kernel, alpha, n, g_exponent=g_exponent)
        ratios.append(s)
        masses.append(m)
        rep.trend.append((n, s))
    band, ok = _band_ok(ratios)
    rep.add("holder_ratio_band", band, BOUNDEDNESS_BAND, passed=ok)
    band_m, ok_m = _band_ok(masses)
    rep.add("kernel_mass_ratio_band", band_m, BOUNDEDNESS_BAND, passed=ok_m)
    return rep


def orlicz_hypothesis_sup(kernel: Kernel, A: YoungFunction,
                          tau0: float = 0.3, decades: int = 5) -> tuple[float, float]:
    """sup and max/min band of N(t) / (t A^{-1}(1/t)) on a log grid of
    (0, tau0]; boundedness of this functional is the entry hypothesis of the
    Orlicz-gain estimate."""
    ts = np.logspace(math.log10(tau0) - decades, math.log10(tau0), 12 * decades)
    vals = np.array([kernel.N(float(t)) / (t * float(A.inverse(1.0 / t)))
                     for t in ts])
    return float(vals.max()), float(vals.max() / vals.min())


def check_lp_orlicz(kernel: Kernel, A: YoungFunction, p: float,
                    trials: int = 10, seed: int = 1234,
                    n_levels: tuple[int, ...] = (256, 512, 1024),
                    T: float = 1.0) -> VerificationReport:
    """Orlicz gain of integrability: with C built from A, the ratio
    ||J_nu g||_C / ||g||_p stays bounded over random g and refinements."""
    rep = VerificationReport(check="lp_orlicz", seed=seed)
    sup, band = orlicz_hypothesis_sup(kernel, A)
    hyp_ok = band <= BOUNDEDNESS_BAND
    rep.add("hypothesis_band", band, BOUNDEDNESS_BAND, passed=hyp_ok)
    if not hyp_ok:
        rep.inconclusive = True
        rep.add("hypothesis_sup", sup, math.inf, passed=False)
        return rep
    C = young_C_from_A(A, p)
    level_maxima = []
    for n in n_levels:
        rng = np.random.default_rng(seed)
        w = product_weights(kernel, T / n, n)
        worst = 0.0
        for _ in range(trials):
            g = random_trig_polynomial(T, n, rng)
            jg = apply_Jnu(kernel, g, weights=w)
            denom = norm(g, "Lp", p=p)
            if denom == 0.0:
                continue
            worst = max(worst, luxemburg_norm(jg, C) / denom)
        level_maxima.append(worst)
        rep.trend.append((n, worst))
    band, ok = _band_ok(level_maxima)
    rep.add("orlicz_ratio_band", band, BOUNDEDNESS_BAND, passed=ok)
    return rep


def check_linf_continuity(kernel: Kernel, trials: int = 20, seed: int = 99,
                          n: int = 512, T: float = 1.0) -> VerificationReport:
    """L^inf bound with the explicit constant N(T), and the vanishing modulus
    of continuity of J_nu g under refinement."""
    if not kernel.positive:
        raise DomainError("check_linf_continuity requires a positive kernel")
    rep = VerificationReport(check="linf_continuity", seed=seed)
    rng = np.random.default_rng(seed)
    NT = kernel.N(T)
    w = product_weights(kernel, T / n, n)
    worst_excess = -math.inf
    for _ in range(trials):
        g = SampledFunction(T, rng.choice([-1.0, 1.0], size=n + 1) * rng.uniform(0.5, 2.0))
        jg = apply_Jnu(kernel, g, weights=w)
        bound = NT * float(np.abs(g.values).max())
        worst_excess = max(worst_excess, float(np.abs(jg.values).max()) - bound)
    rep.add("linf_bound_excess", worst_excess, 1e-10)
    # Saturation case: g = 1 attains the constant at x = T.
    ones = apply_Jnu(kernel, SampledFunction(T, np.ones(n + 1)), weights=w)
    rep.add("linf_saturation_defect", abs(float(np.real(ones.values[-1])) - NT), 1e-8)
    increments = []
    for m in (n, 2 * n, 4 * n):
        rng2 = np.random.default_rng(seed + 1)
        g = random_trig_polynomial(T, m, rng2)
        jg = apply_Jnu(kernel, g)
        increments.append(float(np.abs(np.diff(jg.values)).max()))
        rep.trend.append((m, increments[-1]))
    rep.add("modulus_decreasing", float(max(np.diff(increments))), 0.0,
            passed=all(b < a for a, b in zip(increments, increments[1:])))
    return rep


def check_sobolev(kernel: Kernel, theta: float,
                  T_list: tuple[float, ...] = (1.0, 0.5, 0.25, 0.125),
                  n: int = 1024, seed: int = 1234, trials: int = 3) -> VerificationReport:
    """Sobolev contraction: rho(T) = ||Jg||_{H^theta} / ||g||_{H^theta}
    tracks N(T) (factor-2 band), shrinking as T -> 0; plus the W^{1,1}
    bound with the explicit constant N(T)."""
    if not 0.0 < theta < 1.0 or theta == 0.5:
        raise DomainError("theta must lie in (0,1) \\ {1/2}")
    rep = VerificationReport(check="sobolev", seed=seed)
    zero_origin = theta > 0.5
    rhos = []
    for T in T_list:
        rng = np.random.default_rng(seed)
        w = product_weights(kernel, T / n, n)
        worst = 0.0
        for _ in range(trials):
            g = random_trig_polynomial(T, n, rng, zero_at_origin=zero_origin)
            jg = apply_Jnu(kernel, g, weights=w)
            worst = max(worst, sobolev_norm(jg, theta) / sobolev_norm(g, theta))
        rhos.append(worst)
        rep.trend.append((int(1.0 / T * 8), worst))
    ratios = [rho / kernel.N(T) for rho, T in zip(rhos, T_list)]
    band, ok = _band_ok(ratios)
    rep.add("contraction_band", band, BOUNDEDNESS_BAND, passed=ok)
    rep.add("contraction_shrinks", rhos[-1], rhos[0], passed=rhos[-1] < rhos[0])

    T = T_list[0]
    xs = np.linspace(0.0, T, n + 1)
    g = SampledFunction(T, xs.copy())
    jg = apply_Jnu(kernel, g)
    w11_ratio = norm(jg, "W11") / (kernel.N(T) * (abs(g.values[0]) + norm(g, "W11")))
    rep.add("w11_ratio", w11_ratio, 1.05)
    return rep


def _volterra_N_samples(T: float, n: int) -> SampledFunction:
    xs = np.linspace(0.0, T, n + 1)
    vals = np.array([volterra_N(float(x)) for x in xs])
    return SampledFunction(T, vals)


def check_half_sobolev_I(T: float = 0.03, n_max: int = 8192,
                         seed: int = 21, trials: int = 3) -> VerificationReport:
    """Dichotomy of N = integral of the Volterra kernel: its Gagliardo
    seminorm converges for theta <= 1/2 and diverges for theta > 1/2, and
    the H^{1/2} bound for the operator I holds with the constant
    max{||N||_{H^{1/2}}, N(T)}.

    The divergence for theta > 1/2 is driven by the origin, where N grows
    like 1/log(1/x); its numerical rate is log-suppressed, so a short
    interval is needed for the trend to clear the 10%-per-doubling bar at
    reachable grid sizes.  The default T = 0.03 does."""
    if T > 1.0:
        raise DomainError("check_half_sobolev_I expects T <= 1")
    rep = VerificationReport(check="half_sobolev_i", seed=seed)
    ns = [n_max // 8, n_max // 4, n_max // 2, n_max]
    samples = {n: _volterra_N_samples(T, n) for n in ns}
    for theta, mode in ((0.45, "cauchy"), (0.5, "cauchy"), (0.75, "diverge")):
        vals = [gagliardo_seminorm(samples[n], theta) for n in ns]
        rep.trend.extend((n, v) for n, v in zip(ns, vals))
        growths = [b / a - 1.0 for a, b in zip(vals, vals[1:])]
        if mode == "cauchy":
            rep.add(f"gagliardo_{theta:g}_cauchy", max(abs(gr) for gr in growths), 0.05)
        else:
            rep.add(f"gagliardo_{theta:g}_divergent", min(growths), 0.10,
                    passed=all(gr > 0.10 for gr in growths))

    vi = VolterraIKernel()
    n = n_max // 4
    NT = volterra_N(T)
    N_half = sobolev_norm(samples[n], 0.5)
    scale = max(N_half, NT)
    kappas = []
    for level in (n // 2, n):
        rng = np.random.default_rng(seed)
        w = product_weights(vi, T / level, level)
        worst = 0.0
        for _ in range(trials):
            g = random_trig_polynomial(T, level, rng)
            jg = apply_Jnu(vi, g, weights=w)
            denom = norm(g, "Linf") + sobolev_norm(g, 0.5)
            worst = max(worst, sobolev_norm(jg, 0.5) / denom)
        kappas.append(worst / scale)
    band, ok = _band_ok(kappas)
    rep.add("half_sobolev_constant_band", band, BOUNDEDNESS_BAND, passed=ok)
    return rep


def check_kernel_shape(points: int = 200) -> VerificationReport:
    """Shape of the Volterra kernel: convex, positive, with an interior
    minimum; a decreasing branch precedes the minimum."""
    rep = VerificationReport(check="kernel_shape")
    xs = np.logspace(-4, math.log10(3.0), points)
    vals = np.array([volterra_I(float(x)) for x in xs])
    dd = _second_divided_differences(xs, vals)
    rep.add("convexity_min_divided_difference", float(-dd.min()), 1e-8)
    rep.add("positive_minimum", float(-vals.min()), 0.0, passed=vals.min() > 0.0)
    i_min = int(vals.argmin())
    rep.add("minimum_location_ok", xs[i_min], 2.0,
            passed=0.1 < xs[i_min] < 2.0 and vals[i_min] > 1.0)
    pre = vals[:i_min + 1]
    rep.add("decreasing_before_minimum", float(np.diff(pre).max()), 0.0,
            passed=bool(np.all(np.diff(pre) < 0.0)))
    sanity = _second_divided_differences(xs, np.exp(xs))
    rep.add("sanity_exp_convex", float(-sanity.min()), 0.0, passed=sanity.min() > 0.0)
    return rep


def _second_divided_differences(xs: np.ndarray, vals: np.ndarray) -> np.ndarray:
    s1 = np.diff(vals) / np.diff(xs)
    return np.diff(s1) / (xs[2:] - xs[:-2])


ALL_CHECKS = ("sonine", "holder", "lp-orlicz", "linf", "sobolev",
              "half-sobolev", "kernel-shape")


def run_check(name: str, n: int = 2048, T: float = 1.0,
              seed: int = 1234) -> VerificationReport:
    """Run one named check with defaults matching the acceptance settings."""
    if name == "sonine":
        return check_sonine(n=n, T=T)
    if name == "holder":
        return check_holder(VolterraIKernel(), alpha=0.4, g_exponent=0.4)
    if name == "lp-orlicz":
        return check_lp_orlicz(VolterraIKernel(), PowerLog(1.0, 1.0), p=2.0, seed=seed)
    if name == "linf":
        return check_linf_continuity(VolterraIKernel(), seed=seed)
    if name == "sobolev":
        return check_sobolev(VolterraIKernel(), theta=0.3, seed=seed)
    if name == "half-sobolev":
        return check_half_sobolev_I(seed=seed)
    if name == "kernel-shape":
        return check_kernel_shape()
    raise DomainError(f"unknown check {name!r}; available: {', '.join(ALL_CHECKS)}")
