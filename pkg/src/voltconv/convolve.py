"""Product-integration convolution (J_nu g)(x) = integral_0^x nu(x-s) g(s) ds.

The rule represents g by its piecewise-linear interpolant on a uniform grid
and integrates the kernel exactly against it, so only the integral function
N and the first moment M of the kernel are ever needed: the singularity of
nu at the origin is never sampled pointwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, UsageError
from .kernels import AbelKernel, Kernel, LogSonineKernel


@dataclass(frozen=True)
class SampledFunction:
    """Samples of a real- or complex-valued function at x_k = k T / n,
    interpreted piecewise-linearly on [0, T]."""

    T: float
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values)
        if values.ndim != 1 or len(values) < 2:
            raise UsageError("SampledFunction needs a 1-d array of >= 2 samples")
        if self.T <= 0.0:
            raise UsageError(f"interval length must be positive, got {self.T}")
        if not np.all(np.isfinite(values)):
            raise UsageError("samples must be finite")
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        """Number of cells."""
        return len(self.values) - 1

    @property
    def h(self) -> float:
        return self.T / self.n

    @property
    def grid(self) -> np.ndarray:
        return np.linspace(0.0, self.T, self.n + 1)

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.values)

    @classmethod
    def from_callable(cls, fn, T: float, n: int) -> "SampledFunction":
        xs = np.linspace(0.0, T, n + 1)
        return cls(T, np.asarray([fn(x) for x in xs]))

    def same_grid(self, other: "SampledFunction") -> bool:
        return self.n == other.n and np.isclose(self.T, other.T, rtol=1e-12)


@dataclass(frozen=True)
class ProductWeights:
    """Convolution weights exact for piecewise-linear inputs.

    a[m] = N(m h) - N((m-1) h) and b[m] = (M(m h) - M((m-1) h)) / h for
    m = 1..n (index 0 unused).  On the cell x_k - s in [(m-1)h, mh] the
    contribution of the interpolant of g is

        (a[m] - c[m]) g[k-m+1] + c[m] g[k-m],  c[m] = b[m] - (m-1) a[m].
    """

    kernel: Kernel
    h: float
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray = field(init=False)

    def __post_init__(self):
        m = np.arange(len(self.a))
        object.__setattr__(self, "c", self.b - (m - 1) * self.a)

    @property
    def n(self) -> int:
        return len(self.a) - 1

    @property
    def diagonal(self) -> float:
        """Weight multiplying the newest sample g[k]."""
        return float(self.a[1] - self.c[1])

    def row_sums(self) -> np.ndarray:
        """Telescoping partial sums; equals N(k h) up to kernel tolerance."""
        return np.cumsum(self.a[1:])


def product_weights(kernel: Kernel, h: float, n: int) -> ProductWeights:
    """Precompute product-integration weights for n cells of width h."""
    if h <= 0.0 or n < 1:
        raise UsageError(f"need h > 0 and n >= 1, got h={h}, n={n}")
    xs = h * np.arange(n + 1)
    Nv = kernel.N_grid(xs)
    Mv = kernel.M_grid(xs)
    a = np.diff(Nv, prepend=0.0)
    b = np.diff(Mv, prepend=0.0) / h
    a[0] = b[0] = 0.0
    return ProductWeights(kernel=kernel, h=h, a=a, b=b)


def _apply_weights(w: ProductWeights, values: np.ndarray) -> np.ndarray:
    n = len(values) - 1
    w_new = w.a[1:n + 1] - w.c[1:n + 1]   # multiplies g[k-m+1]
    w_old = w.c[1:n + 1]                  # multiplies g[k-m]
    out = np.zeros(n + 1, dtype=values.dtype)
    if n >= 1:
        # term1[k] = sum_m w_new[m] g[k-m+1]; term2[k] = sum_m w_old[m] g[k-m].
        # np.convolve performs the direct O(n^2) summation.
        t1 = np.convolve(w_new, values[1:])[:n]
        t2 = np.convolve(w_old, values[:-1])[:n]
        out[1:] = t1 + t2
    return out


def apply_Jnu(kernel: Kernel, g: SampledFunction,
              weights: ProductWeights | None = None) -> SampledFunction:
    """Samples of (J_nu g)(x_k); exact whenever g is piecewise linear."""
    if weights is None:
        weights = product_weights(kernel, g.h, g.n)
    else:
        if weights.n < g.n or not np.isclose(weights.h, g.h, rtol=1e-12):
            raise UsageError("weights were computed for a different grid")
    return SampledFunction(g.T, _apply_weights(weights, g.values))


def apply_Phi(g: SampledFunction) -> SampledFunction:
    """Convolution against the sign-changing Sonine companion kernel
    phi(x) = -gamma - log x."""
    return apply_Jnu(LogSonineKernel(), g)


def fractional_integral(alpha: float, g: SampledFunction) -> SampledFunction:
    """Riemann-Liouville fractional integral of order alpha in (0, 1)."""
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"fractional order must lie in (0, 1), got {alpha}")
    return apply_Jnu(AbelKernel(alpha), g)
