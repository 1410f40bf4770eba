"""Singular convolution kernels and the special functions behind them.

The central object is the Volterra function of order -1,

    I(x) = integral_0^inf x^(s-1) / Gamma(s) ds,

together with its antiderivative N(x) = integral_0^x I and the Ramanujan
function R(x).  Abel kernels x^(alpha-1)/Gamma(alpha), the sign-changing
log kernel -gamma - log(x) and tabulated kernels are exposed behind one
``Kernel`` interface providing the pointwise value ``nu``, the integral
function ``N`` and the first moment ``M``.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.integrate import quad
from scipy.special import gamma as gamma_fn, gammaln

from .errors import AccuracyError, DomainError

#: Euler-Mascheroni constant, 16 significant digits.
EULER_MASCHERONI = 0.5772156649015329

#: Default relative quadrature tolerance for kernel evaluations.
DEFAULT_RTOL = 1e-9

_QUAD_LIMIT = 200


def _rough_volterra_scale(x: float) -> float:
    """Crude positive magnitude estimate of I(x), used only to set absolute
    quadrature targets and tail cutoffs."""
    if x < 0.5:
        return 1.0 / (x * math.log(1.0 / x) ** 2)
    return math.exp(x)


def _gamma_tail_cutoff(x: float, j: float, target_log: float) -> float:
    """Upper integration limit for integral_0^inf x^(s+j)/((s+j) Gamma(s)) ds.

    The log-integrand eventually decreases like -s log(s/x) + s; start past
    the turning point s ~ e^2 x and grow until the integrand is below the
    target.
    """
    logx = math.log(x)
    s = max(7.39 * x, 10.0)
    while (s + j) * logx - math.log(s + j) - gammaln(s) > target_log:
        s *= 1.5
        if s > 1e7:  # pragma: no cover - defensive, never hit at desk scale
            break
    return s


def _checked_quad(fn, a, b, rtol, scale, what, points=None):
    val, err = quad(fn, a, b, epsabs=scale * rtol * 1e-2, epsrel=rtol * 1e-2,
                    limit=_QUAD_LIMIT, points=points)
    if err > rtol * max(abs(val), scale * 1e-6) + 1e-300:
        raise AccuracyError(
            f"quadrature for {what} did not converge (error estimate {err:g})",
            estimate=val, error=err)
    return val


@lru_cache(maxsize=200_000)
def _volterra_power_moment(j: float, x: float, rtol: float) -> float:
    """integral_0^x s^j I(s) ds = integral_0^inf x^(s+j) / ((s+j) Gamma(s)) ds.

    j = 0 gives N(x), j = 1 gives the first moment M(x).
    """
    if x == 0.0:
        return 0.0
    logx = math.log(x)
    scale = _rough_volterra_scale(x) * x ** (j + 1)
    smax = _gamma_tail_cutoff(x, j, math.log(scale * rtol) - 5.0)

    def integrand(s):
        return math.exp((s + j) * logx - gammaln(s)) / (s + j)

    return _checked_quad(integrand, 0.0, smax, rtol, scale,
                         f"Volterra moment j={j}", points=[min(smax, max(x, 1.0))])


@lru_cache(maxsize=200_000)
def _volterra_I_cached(x: float, rtol: float) -> float:
    logx = math.log(x)
    scale = _rough_volterra_scale(x)
    smax = _gamma_tail_cutoff(x, -1.0, math.log(scale * rtol) - 5.0)

    def integrand(s):
        return math.exp((s - 1.0) * logx - gammaln(s))

    return _checked_quad(integrand, 0.0, smax, rtol, scale, "Volterra I",
                         points=[min(smax, max(x, 1.0))])


def volterra_I(x: float, rtol: float = DEFAULT_RTOL) -> float:
    """The Volterra function I(x) = integral_0^inf x^(s-1)/Gamma(s) ds, x > 0."""
    if x <= 0.0:
        raise DomainError(f"volterra_I requires x > 0, got {x}")
    return _volterra_I_cached(float(x), rtol)


def volterra_I_laplace(x: float, rtol: float = DEFAULT_RTOL) -> float:
    """Independent evaluation of I via the Laplace-type representation

        I(x) = e^x + integral_0^inf e^(-s x) / (log^2 s + pi^2) ds.

    Kept as a cross-check oracle for :func:`volterra_I`.
    """
    if x <= 0.0:
        raise DomainError(f"volterra_I_laplace requires x > 0, got {x}")

    def integrand(s):
        return math.exp(-s * x) / (math.log(s) ** 2 + math.pi ** 2)

    pi2 = math.pi ** 2
    # Split at s = 1 (the slowest-varying region) and use an exponentially
    # weighted tail; the integrand is smooth and bounded by 1/pi^2.
    head = _checked_quad(integrand, 0.0, 1.0, rtol, 1.0 / pi2, "Laplace head")
    tail = _checked_quad(integrand, 1.0, np.inf, rtol,
                         math.exp(-x) / (pi2 * max(x, 1e-12)), "Laplace tail")
    return math.exp(x) + head + tail


@lru_cache(maxsize=200_000)
def _ramanujan_cached(x: float, rtol: float) -> float:
    if x == 0.0:
        # integral du / (u^2 + pi^2) over the real line = 1
        return 1.0

    # Substituting u = log s turns R into
    #   integral_{-inf}^{inf} exp(-x e^u) / (u^2 + pi^2) du,
    # a smooth integrand; split where the exponential starts to bite.
    def integrand(u):
        if u > 700.0 or x * math.exp(min(u, 700.0)) > 745.0:
            return 0.0
        return math.exp(-x * math.exp(u)) / (u * u + math.pi ** 2)

    split = -math.log(x)
    left = _checked_quad(integrand, -np.inf, split, rtol, 1.0, "Ramanujan R left")
    right = _checked_quad(integrand, split, np.inf, rtol, 1.0, "Ramanujan R right")
    return left + right


def ramanujan_R(x: float, rtol: float = DEFAULT_RTOL) -> float:
    """Ramanujan function R(x) = integral_0^inf e^(-s x)/(s (log^2 s + pi^2)) ds."""
    if x < 0.0:
        raise DomainError(f"ramanujan_R requires x >= 0, got {x}")
    return _ramanujan_cached(float(x), rtol)


def volterra_N(x: float, rtol: float = DEFAULT_RTOL) -> float:
    """N(x) = integral_0^x I(s) ds = integral_0^inf x^s / Gamma(s+1) ds."""
    if x < 0.0:
        raise DomainError(f"volterra_N requires x >= 0, got {x}")
    if x == 0.0:
        return 0.0
    return _volterra_power_moment(0.0, float(x), rtol)


def volterra_M(x: float, rtol: float = DEFAULT_RTOL) -> float:
    """First moment integral_0^x s I(s) ds of the Volterra kernel."""
    if x < 0.0:
        raise DomainError(f"volterra_M requires x >= 0, got {x}")
    if x == 0.0:
        return 0.0
    return _volterra_power_moment(1.0, float(x), rtol)


class Kernel:
    """A positive (or, for the log kernel, sign-changing) locally integrable
    convolution kernel nu with evaluable integral function N and first
    moment M.

    Instances are immutable after construction and safe to share across
    threads.
    """

    #: True when nu > 0 on the whole positive axis.
    positive: bool = True
    name: str = "kernel"

    def __init__(self, rtol: float = DEFAULT_RTOL):
        self.rtol = rtol

    def nu(self, x: float) -> float:
        """Pointwise kernel value nu(x), x > 0."""
        raise NotImplementedError

    def N(self, x: float) -> float:
        """Integral function N(x) = integral_0^x nu(s) ds, x >= 0."""
        raise NotImplementedError

    def M(self, x: float) -> float:
        """First moment M(x) = integral_0^x s nu(s) ds, x >= 0."""
        raise NotImplementedError

    def _check_positive_arg(self, x: float) -> None:
        if x <= 0.0:
            raise DomainError(f"{self.name}: kernel argument must be > 0, got {x}")

    def _check_nonneg_arg(self, x: float) -> None:
        if x < 0.0:
            raise DomainError(f"{self.name}: argument must be >= 0, got {x}")

    def N_grid(self, xs) -> np.ndarray:
        return np.array([self.N(float(x)) for x in np.asarray(xs, dtype=float)])

    def M_grid(self, xs) -> np.ndarray:
        return np.array([self.M(float(x)) for x in np.asarray(xs, dtype=float)])

    def singular_endpoint_value(self, h: float) -> float:
        """Finite stand-in for nu(0) when the kernel itself is sampled on a
        grid of spacing h: the value that makes the first linear cell carry
        the exact mass N(h)."""
        return 2.0 * self.N(h) / h - self.nu(h)

    def __repr__(self):
        return f"{type(self).__name__}(rtol={self.rtol!r})"


class VolterraIKernel(Kernel):
    """nu = I, the Volterra function of order -1."""

    name = "volterra-i"
    positive = True

    def nu(self, x):
        self._check_positive_arg(x)
        return volterra_I(x, self.rtol)

    def N(self, x):
        self._check_nonneg_arg(x)
        return volterra_N(x, self.rtol)

    def M(self, x):
        self._check_nonneg_arg(x)
        return volterra_M(x, self.rtol)


class AbelKernel(Kernel):
    """Abel kernel x^(alpha-1)/Gamma(alpha), 0 < alpha < 1."""

    positive = True

    def __init__(self, alpha: float, rtol: float = DEFAULT_RTOL):
        if not 0.0 < alpha < 1.0:
            raise DomainError(f"Abel exponent must lie in (0, 1), got {alpha}")
        super().__init__(rtol)
        self.alpha = alpha
        self.name = f"abel({alpha:g})"
        self._inv_gamma = 1.0 / gamma_fn(alpha)

    def nu(self, x):
        self._check_positive_arg(x)
        return x ** (self.alpha - 1.0) * self._inv_gamma

    def N(self, x):
        self._check_nonneg_arg(x)
        return x ** self.alpha / gamma_fn(self.alpha + 1.0)

    def M(self, x):
        self._check_nonneg_arg(x)
        return x ** (self.alpha + 1.0) * self._inv_gamma / (self.alpha + 1.0)

    def __repr__(self):
        return f"AbelKernel(alpha={self.alpha!r}, rtol={self.rtol!r})"


class LogSonineKernel(Kernel):
    """The Sonine companion of the Volterra kernel, phi(x) = -gamma - log x.

    Sign-changing: positive only for x < exp(-gamma).  Operations that
    require positivity must reject this kernel.
    """

    name = "log-sonine"
    positive = False

    def nu(self, x):
        self._check_positive_arg(x)
        return -EULER_MASCHERONI - math.log(x)

    def N(self, x):
        self._check_nonneg_arg(x)
        if x == 0.0:
            return 0.0
        return x * (1.0 - EULER_MASCHERONI - math.log(x))

    def M(self, x):
        self._check_nonneg_arg(x)
        if x == 0.0:
            return 0.0
        return x * x * (0.25 - 0.5 * EULER_MASCHERONI - 0.5 * math.log(x))


class TabulatedKernel(Kernel):
    """Kernel given by samples on a uniform grid starting at 0, interpreted
    piecewise-linearly.  Lower accuracy than the analytic variants: N uses
    the exact integral of the interpolant, M integrates s*nu(s) cell by cell
    with Simpson's rule (exact for the piecewise-quadratic integrand)."""

    def __init__(self, xs, values, rtol: float = DEFAULT_RTOL):
        super().__init__(rtol)
        xs = np.asarray(xs, dtype=float)
        values = np.asarray(values, dtype=float)
        if xs.ndim != 1 or xs.shape != values.shape or len(xs) < 2:
            raise DomainError("tabulated kernel needs matching 1-d samples")
        if xs[0] != 0.0 or not np.allclose(np.diff(xs), xs[1] - xs[0]):
            raise DomainError("tabulated kernel grid must be uniform from 0")
        if not np.all(np.isfinite(values)):
            raise DomainError("tabulated kernel samples must be finite")
        self.xs = xs
        self.values = values
        self.positive = bool(np.all(values > 0.0))
        self.name = "tabulated"
        # Exact running integral of the interpolant at the nodes.
        h = xs[1] - xs[0]
        self._cumN = np.concatenate(
            [[0.0], np.cumsum(0.5 * h * (values[1:] + values[:-1]))])

    def _interp(self, x):
        if x > self.xs[-1]:
            raise DomainError(f"tabulated kernel sampled only up to {self.xs[-1]}")
        return float(np.interp(x, self.xs, self.values))

    def nu(self, x):
        self._check_positive_arg(x)
        return self._interp(x)

    def N(self, x):
        self._check_nonneg_arg(x)
        if x == 0.0:
            return 0.0
        h = self.xs[1] - self.xs[0]
        i = min(int(x / h), len(self.xs) - 2)
        t = x - self.xs[i]
        va = self.values[i]
        vb = self._interp(x)
        return float(self._cumN[i] + 0.5 * t * (va + vb))

    def M(self, x):
        self._check_nonneg_arg(x)
        if x == 0.0:
            return 0.0
        h = self.xs[1] - self.xs[0]
        i_last = min(int(x / h), len(self.xs) - 2)
        total = 0.0
        for i in range(i_last + 1):
            a = self.xs[i]
            b = min(self.xs[i + 1], x)
            if b <= a:
                break
            mid = 0.5 * (a + b)
            fa = a * self.values[i]
            fm = mid * self._interp(mid)
            fb = b * self._interp(b)
            total += (b - a) / 6.0 * (fa + 4.0 * fm + fb)
        return total


def make_kernel(name: str, alpha: float | None = None,
                rtol: float = DEFAULT_RTOL) -> Kernel:
    """Construct a built-in kernel from its CLI-facing name."""
    if name == "volterra-i":
        return VolterraIKernel(rtol=rtol)
    if name == "abel":
        if alpha is None:
            raise DomainError("abel kernel requires an alpha parameter")
        return AbelKernel(alpha, rtol=rtol)
    if name == "log-sonine":
        return LogSonineKernel(rtol=rtol)
    raise DomainError(f"unknown kernel {name!r}")
