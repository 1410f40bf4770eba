"""Numerical function-space machinery.

Hölder and Gagliardo (fractional Sobolev) seminorms, W^{1,1} / L^p / L^inf
norms, the even reflection extension, Young-function algebra (conjugation,
the integrability-gain function C built from A) and Luxemburg (Orlicz)
norms, all on uniformly sampled functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.optimize import minimize_scalar

from .convolve import SampledFunction
from .errors import DomainError, UnboundedNormError, UsageError
from .kernels import Kernel, TabulatedKernel, VolterraIKernel


@dataclass(frozen=True)
class NormReport:
    """A measured (semi)norm together with the grid it was computed on."""
    kind: str
    value: float
    T: float
    n: int


# ---------------------------------------------------------------------------
# Seminorms and norms
# ---------------------------------------------------------------------------

def holder_seminorm(g: SampledFunction, alpha: float) -> float:
    """sup over grid pairs of |g(x) - g(y)| / |x - y|^alpha."""
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"Hölder exponent must lie in (0, 1), got {alpha}")
    h = g.h
    best = 0.0
    for d in range(1, g.n + 1):
        diff = np.abs(g.values[d:] - g.values[:-d]).max()
        best = max(best, diff / (d * h) ** alpha)
    return float(best)


def gagliardo_seminorm(g: SampledFunction, theta: float) -> float:
    """Discrete Gagliardo seminorm [g]_{H^theta} on (0, T).

    Off-diagonal cell pairs use the node-value double sum
    h^2 |g_k - g_j|^2 / |x_k - x_j|^(1+2 theta); the diagonal band is
    integrated in closed form using the interpolant's slope on each cell,
    which keeps the integrable singularity under control.
    """
    if not 0.0 < theta < 1.0:
        raise DomainError(f"Sobolev index must lie in (0, 1), got {theta}")
    v = np.asarray(g.values, dtype=complex if g.is_complex else float)
    h = g.h
    n = g.n
    cells = v[:-1]
    total = 0.0
    for d in range(1, n):
        diff2 = np.abs(cells[d:] - cells[:-d]) ** 2
        total += 2.0 * diff2.sum() * h * h / (d * h) ** (1.0 + 2.0 * theta)
    slopes = np.abs(np.diff(v)) / h
    diag = (slopes ** 2).sum() * h ** (3.0 - 2.0 * theta) / ((1.0 - theta) * (3.0 - 2.0 * theta))
    return float(math.sqrt(total + diag))


def norm(g: SampledFunction, kind: str, p: float | None = None) -> float:
    """Trapezoid L^p norm, W^{1,1} norm (L^1 plus total variation of the
    interpolant) or the max norm."""
    v = np.abs(np.asarray(g.values))
    h = g.h
    if kind == "Linf":
        return float(v.max())
    if kind == "W11":
        return float(np.trapezoid(v, dx=h) + np.abs(np.diff(g.values)).sum())
    if kind == "Lp":
        if p is None or p < 1.0:
            raise DomainError(f"Lp norm needs p >= 1, got {p}")
        return float(np.trapezoid(v ** p, dx=h) ** (1.0 / p))
    raise UsageError(f"unknown norm kind {kind!r}")


def sobolev_norm(g: SampledFunction, theta: float) -> float:
    """Full H^theta norm: sqrt(L2^2 + Gagliardo^2)."""
    l2 = norm(g, "Lp", p=2.0)
    return math.sqrt(l2 * l2 + gagliardo_seminorm(g, theta) ** 2)


def extend_reflect(g: SampledFunction) -> SampledFunction:
    """Even reflection about T onto [0, 2T] (zero outside, implicitly)."""
    values = np.concatenate([g.values, g.values[-2::-1]])
    return SampledFunction(2.0 * g.T, values)


# ---------------------------------------------------------------------------
# Young functions
# ---------------------------------------------------------------------------

class YoungFunction:
    """A convex increasing function A with A(0) = 0, evaluable forward and
    inverse."""

    name = "young"

    def __call__(self, x):
        raise NotImplementedError

    def inverse(self, y):
        raise NotImplementedError


class Power(YoungFunction):
    """A(x) = coeff * x^p, p >= 1."""

    def __init__(self, p: float, coeff: float = 1.0):
        if p < 1.0 or coeff <= 0.0:
            raise DomainError(f"Power Young function needs p >= 1, coeff > 0")
        self.p = p
        self.coeff = coeff
        self.name = f"power({p:g})"

    def __call__(self, x):
        return self.coeff * np.asarray(x, dtype=float) ** self.p

    def inverse(self, y):
        return (np.asarray(y, dtype=float) / self.coeff) ** (1.0 / self.p)


class PowerLog(YoungFunction):
    """Shape x^p log^gamma(x) for large x, convexified near the origin by the
    chord from 0 to the point x0 where the shape is convex with slope at
    least the chord's."""

    def __init__(self, p: float, gamma_log: float):
        if p < 1.0:
            raise DomainError(f"PowerLog needs p >= 1, got {p}")
        self.p = p
        self.gamma_log = gamma_log
        self.name = f"powerlog({p:g},{gamma_log:g})"
        self.x0 = self._convexity_onset()
        self.c0 = self._shape(self.x0) / self.x0

    def _shape(self, x):
        return x ** self.p * np.log(x) ** self.gamma_log

    def _convexity_onset(self) -> float:
        # Second derivative of x^p L^gamma (L = log x) has the sign of
        # p(p-1) L^2 + gamma(2p-1) L + gamma(gamma-1); take the largest root.
        p, gam = self.p, self.gamma_log
        a, b, c = p * (p - 1.0), gam * (2.0 * p - 1.0), gam * (gam - 1.0)
        L0 = 1.0
        if a > 0.0:
            disc = b * b - 4.0 * a * c
            if disc > 0.0:
                L0 = max(L0, (-b + math.sqrt(disc)) / (2.0 * a))
        elif b > 0.0:
            L0 = max(L0, -c / b)
        elif gam < 0.0:
            raise DomainError("PowerLog with p = 1 and negative log power is "
                              "not convexifiable")
        # Chord-slope condition x A'/A = p + gamma/L >= 1.
        if p == 1.0 and gam < 0.0:
            raise DomainError("sublinear PowerLog shape")
        if gam < 0.0:
            L0 = max(L0, -gam / (p - 1.0))
        return math.exp(L0 * 1.0000001)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.where(x >= self.x0,
                       self._shape(np.maximum(x, self.x0)),
                       self.c0 * x)
        return out if out.ndim else float(out)

    def inverse(self, y):
        y = np.asarray(y, dtype=float)
        y_knee = self._shape(self.x0)

        def inv_scalar(yy):
            if yy <= y_knee:
                return yy / self.c0
            lo, hi = self.x0, max(2.0 * self.x0, 2.0)
            while self._shape(hi) < yy:
                hi *= 2.0
            for _ in range(200):
                mid = math.sqrt(lo * hi)
                if self._shape(mid) < yy:
                    lo = mid
                else:
                    hi = mid
                if hi - lo <= 1e-14 * hi:
                    break
            return 0.5 * (lo + hi)

        out = np.vectorize(inv_scalar)(y)
        return out if out.ndim else float(out)


class NumericMonotone(YoungFunction):
    """Young function given by an increasing table, interpolated linearly in
    log-log coordinates and power-law extrapolated outside the table."""

    def __init__(self, xs, ys, check_convexity: bool = True):
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        if np.any(xs <= 0.0) or np.any(ys <= 0.0):
            raise DomainError("NumericMonotone table must be strictly positive")
        if np.any(np.diff(xs) <= 0.0) or np.any(np.diff(ys) <= 0.0):
            raise DomainError("NumericMonotone table must be strictly increasing")
        self.log_x = np.log(xs)
        self.log_y = np.log(ys)
        self.name = "numeric"
        if check_convexity:
            self._check_convexity(xs, ys)

    @staticmethod
    def _check_convexity(xs, ys):
        # Divided differences on the table nodes, with mild floating slack.
        slopes = np.diff(ys) / np.diff(xs)
        if np.any(np.diff(slopes) < -1e-7 * max(slopes.max(), 1.0)):
            raise DomainError("NumericMonotone table is not convex")

    def _interp(self, lx, xp, fp):
        slope_lo = (fp[1] - fp[0]) / (xp[1] - xp[0])
        slope_hi = (fp[-1] - fp[-2]) / (xp[-1] - xp[-2])
        out = np.interp(lx, xp, fp)
        lo = lx < xp[0]
        hi = lx > xp[-1]
        out = np.where(lo, fp[0] + slope_lo * (lx - xp[0]), out)
        out = np.where(hi, fp[-1] + slope_hi * (lx - xp[-1]), out)
        return out

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore"):
            lx = np.log(np.where(x > 0.0, x, 1.0))
        out = np.where(x > 0.0, np.exp(self._interp(lx, self.log_x, self.log_y)), 0.0)
        return out if out.ndim else float(out)

    def inverse(self, y):
        y = np.asarray(y, dtype=float)
        with np.errstate(divide="ignore"):
            ly = np.log(np.where(y > 0.0, y, 1.0))
        out = np.where(y > 0.0, np.exp(self._interp(ly, self.log_y, self.log_x)), 0.0)
        return out if out.ndim else float(out)


# ---------------------------------------------------------------------------
# Luxemburg norm and Young-function algebra
# ---------------------------------------------------------------------------

_LUXEMBURG_CAP = 1e12


def luxemburg_norm(g: SampledFunction, A: YoungFunction,
                   rel_width: float = 1e-8) -> float:
    """inf{lambda > 0 : integral_0^T A(|g|/lambda) dt <= 1}, by bisection on
    the trapezoid approximation of the functional."""
    v = np.abs(np.asarray(g.values))
    if not v.any():
        return 0.0
    h = g.h

    def functional(lam):
        return float(np.trapezoid(A(v / lam), dx=h))

    hi = max(float(v.max()), 1e-300)
    while functional(hi) > 1.0:
        hi *= 2.0
        if hi > _LUXEMBURG_CAP * max(float(v.max()), 1.0):
            raise UnboundedNormError("Luxemburg functional stays above 1 up to the cap")
    lo = hi
    while functional(lo) <= 1.0 and lo > 1e-300:
        lo *= 0.5
    while hi - lo > rel_width * hi:
        mid = 0.5 * (lo + hi)
        if functional(mid) <= 1.0:
            hi = mid
        else:
            lo = mid
    return float(hi)


def _numeric_derivative(A: YoungFunction, t: float) -> float:
    eps = 1e-6
    return float(A(t * (1.0 + eps)) - A(t * (1.0 - eps))) / (2.0 * t * eps)


def young_conjugate(A: YoungFunction, s_min: float = 1e-6, s_max: float = 1e8,
                    points_per_decade: int = 8) -> NumericMonotone:
    """Legendre transform conj(A)(s) = sup_t (s t - A(t)), tabulated on a log
    grid of slopes s.  Requires A superlinear at infinity."""
    big = 1e10
    if not float(A(big)) / big > 4.0 * float(A(big / 8.0)) / (big / 8.0):
        raise DomainError("young_conjugate requires a superlinear Young function")

    def argmax_t(s):
        lo, hi = 1e-12, 1e12
        if _numeric_derivative(A, lo) >= s:
            return lo
        while _numeric_derivative(A, hi) < s:
            hi *= 10.0
            if hi > 1e200:
                raise DomainError("could not bracket the conjugate slope")
        for _ in range(200):
            mid = math.sqrt(lo * hi)
            if _numeric_derivative(A, mid) < s:
                lo = mid
            else:
                hi = mid
            if hi - lo <= 1e-12 * hi:
                break
        return math.sqrt(lo * hi)

    decades = math.log10(s_max / s_min)
    s_grid = np.logspace(math.log10(s_min), math.log10(s_max),
                         int(decades * points_per_decade) + 1)
    vals = []
    for s in s_grid:
        t = argmax_t(float(s))
        vals.append(max(s * t - float(A(t)), 1e-300))
    vals = np.maximum.accumulate(np.asarray(vals))
    keep = np.concatenate([[True], np.diff(vals) > 0.0])
    return NumericMonotone(s_grid[keep], vals[keep], check_convexity=False)


def young_C_from_A(A: YoungFunction, p: float,
                   x_min: float = 1e-8, x_max: float = 1e18,
                   points_per_decade: int = 12) -> NumericMonotone:
    """The integrability-gain Young function C with
    C^{-1}(x) = integral_0^x t^(-2+1/p) A^{-1}(t) dt.

    Rejects pairs for which the defining integral diverges at 0, i.e. when
    A^{-1}(t) does not vanish faster than t^(1-1/p)."""
    if p <= 1.0:
        raise DomainError(f"need p > 1, got {p}")
    # Local exponent of A^{-1} near 0 decides convergence.
    t1, t2 = 1e-10, 1e-9
    e0 = math.log(float(A.inverse(t2)) / float(A.inverse(t1))) / math.log(t2 / t1)
    if e0 <= 1.0 - 1.0 / p + 1e-9:
        raise DomainError("defining integral for C^{-1} diverges at 0 "
                          f"(local exponent {e0:.4g} <= 1 - 1/p)")

    def integrand(t):
        return t ** (-2.0 + 1.0 / p) * float(A.inverse(t))

    decades = math.log10(x_max / x_min)
    xs = np.logspace(math.log10(x_min), math.log10(x_max),
                     int(decades * points_per_decade) + 1)
    cinv = np.empty_like(xs)
    head, _ = quad(integrand, 0.0, xs[0], limit=200)
    cinv[0] = head
    for i in range(1, len(xs)):
        seg, _ = quad(integrand, xs[i - 1], xs[i], limit=200)
        cinv[i] = cinv[i - 1] + seg
    # C maps the value axis back: C(cinv(x)) = x.
    keep = np.concatenate([[True], np.diff(cinv) > 0.0])
    C = NumericMonotone(cinv[keep], xs[keep], check_convexity=False)
    # Sanity required by the construction: C(x)/x^p increasing.
    probe = np.logspace(math.log10(cinv[0]) + 0.5, math.log10(cinv[-1]) - 0.5, 40)
    ratio = C(probe) / probe ** p
    if np.any(np.diff(ratio) < -1e-6 * np.abs(ratio[:-1])):
        raise DomainError("constructed C violates C(x)/x^p monotonicity")
    return C


# ---------------------------------------------------------------------------
# Averaged rearrangement
# ---------------------------------------------------------------------------

_VOLTERRA_MIN_X = None


def _volterra_argmin() -> float:
    global _VOLTERRA_MIN_X
    if _VOLTERRA_MIN_X is None:
        from .kernels import volterra_I
        res = minimize_scalar(volterra_I, bounds=(0.01, 2.0), method="bounded")
        _VOLTERRA_MIN_X = float(res.x)
    return _VOLTERRA_MIN_X


def avg_rearrangement(kernel: Kernel, x: float, domain: float | None = None,
                      samples: int = 4096) -> float:
    """Averaged rearrangement nu**(x) = (1/x) integral_0^x nu*.

    For x inside the kernel's decreasing range this is exactly N(x)/x.
    Beyond it, nu* is computed by sorting dense samples of nu on
    (0, domain] (domain defaults to x).
    """
    if x <= 0.0:
        raise DomainError(f"avg_rearrangement needs x > 0, got {x}")
    if not kernel.positive:
        raise DomainError("averaged rearrangement requires a positive kernel")
    if isinstance(kernel, VolterraIKernel):
        mono = _volterra_argmin()
    elif isinstance(kernel, TabulatedKernel):
        dec = np.diff(kernel.values[1:]) <= 1e-15
        mono = kernel.xs[-1] if dec.all() else float(kernel.xs[1 + np.argmin(dec)])
    else:
        mono = math.inf   # Abel kernels decrease on the whole axis
    D = x if domain is None else float(domain)
    if D < x:
        raise DomainError("rearrangement domain must contain (0, x)")
    if x <= mono and D <= mono:
        return kernel.N(x) / x
    ts = np.linspace(0.0, D, samples + 1)[1:]
    vals = np.sort(np.array([kernel.nu(float(t)) for t in ts]))[::-1]
    # Trapezoid of the decreasing rearrangement over (0, x); the first cell
    # mass is taken from N to respect a possible singularity at 0.
    h = D / samples
    k = max(int(round(x / h)), 1)
    first = kernel.N(h)
    rest = np.trapezoid(vals[:k], dx=h) - np.trapezoid(vals[:2], dx=h) + first if k >= 2 else first
    return float(rest / (k * h))
