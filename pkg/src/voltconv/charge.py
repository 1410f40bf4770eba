"""Causal time-stepping solvers for the 2D point-interaction charge equation

    q(t) + integral_0^t I(t-s) c(q(s)) q(s) ds = f(t),

with c(q) = 4 pi alpha + C_FIXED in the linear case and
c(q) = 4 pi alpha0 |q|^(2 sigma) + C_FIXED in the nonlinear one.  The
coupling coefficient is read as |q(s)|^(2 sigma) under the integral.

Each step is implicit in the newest value; the per-step fixed point
contracts because the local weight mass N(h) vanishes as h -> 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .convolve import ProductWeights, SampledFunction, apply_Jnu, product_weights
from .errors import ConvergenceError, SingularStepError, UsageError
from .kernels import EULER_MASCHERONI, Kernel, VolterraIKernel

#: The fixed complex constant -log 4 + 2 gamma - i pi / 2 of the charge equation.
C_FIXED = complex(-math.log(4.0) + 2.0 * EULER_MASCHERONI, -math.pi / 2.0)


@dataclass(frozen=True)
class ChargeProblem:
    """Data of the (non)linear charge equation on the grid of ``forcing``."""

    kind: str                      # "linear" or "nonlinear"
    forcing: SampledFunction
    alpha: float = 0.0             # strength (alpha for linear, alpha0 for nonlinear)
    sigma: float = 1.0             # nonlinearity exponent, nonlinear only
    kernel: Kernel = field(default_factory=VolterraIKernel)
    c_fixed: complex = C_FIXED

    def __post_init__(self):
        if self.kind not in ("linear", "nonlinear"):
            raise UsageError(f"kind must be 'linear' or 'nonlinear', got {self.kind!r}")
        if self.kind == "nonlinear" and self.sigma <= 0.0:
            raise UsageError(f"nonlinearity exponent must be > 0, got {self.sigma}")

    @property
    def linear_coefficient(self) -> complex:
        return 4.0 * math.pi * self.alpha + self.c_fixed

    def coefficient(self, q: np.ndarray) -> np.ndarray:
        """Per-sample coupling coefficient c(q)."""
        if self.kind == "linear":
            return np.full_like(q, self.linear_coefficient, dtype=complex)
        return 4.0 * math.pi * self.alpha * np.abs(q) ** (2.0 * self.sigma) + self.c_fixed


@dataclass(frozen=True)
class SolveReport:
    solution: SampledFunction
    residual: float
    iterations: int


def _history_sum(w: ProductWeights, u: np.ndarray, k: int) -> complex:
    """Contribution of u[0..k-1] to (J u)(x_k); the diagonal term is excluded."""
    w_new = w.a[1:k + 1] - w.c[1:k + 1]
    w_old = w.c[1:k + 1]
    # m = 1..k pairs u[k-m+1] with w_new and u[k-m] with w_old; drop the m=1
    # w_new term, which multiplies the unknown u[k].
    s = np.dot(w_old, u[k - 1::-1])
    if k >= 2:
        s += np.dot(w_new[1:], u[k - 1:0:-1])
    return s


def solve_linear_charge(p: ChargeProblem, tol: float = 1e-12,
                        weights: ProductWeights | None = None) -> SolveReport:
    """Forward substitution for the linear charge equation."""
    if p.kind != "linear":
        raise UsageError("solve_linear_charge requires a linear problem")
    f = np.asarray(p.forcing.values, dtype=complex)
    n = len(f) - 1
    if weights is None:
        weights = product_weights(p.kernel, p.forcing.h, n)
    c = p.linear_coefficient
    d = 1.0 + c * weights.diagonal
    if abs(d) < 1e-12:
        raise SingularStepError(f"singular step factor 1 + c w_kk = {d}")
    q = np.zeros(n + 1, dtype=complex)
    q[0] = f[0]
    u = np.zeros(n + 1, dtype=complex)   # u = c q, accumulated causally
    u[0] = c * q[0]
    for k in range(1, n + 1):
        s = _history_sum(weights, u, k)
        q[k] = (f[k] - s) / d
        u[k] = c * q[k]
    sol = SampledFunction(p.forcing.T, q)
    res = residual_check(p, sol, weights=weights)
    return SolveReport(solution=sol, residual=res, iterations=1)


def solve_nonlinear_charge(p: ChargeProblem, tol: float = 1e-10,
                           max_iter: int = 100,
                           weights: ProductWeights | None = None) -> SolveReport:
    """Per-step fixed-point iteration for the nonlinear charge equation.

    Each step solves q_k + w_kk c(q_k) q_k = f_k - (history) by iterating
    q -> f_k - history - w_kk c(q) q, seeded with the previous node's value
    and damped by 0.5 whenever the defect grows.
    """
    if p.kind != "nonlinear":
        raise UsageError("solve_nonlinear_charge requires a nonlinear problem")
    f = np.asarray(p.forcing.values, dtype=complex)
    n = len(f) - 1
    if weights is None:
        weights = product_weights(p.kernel, p.forcing.h, n)
    wd = weights.diagonal
    a0 = 4.0 * math.pi * p.alpha
    two_sigma = 2.0 * p.sigma

    def coef(qv: complex) -> complex:
        return a0 * abs(qv) ** two_sigma + p.c_fixed

    q = np.zeros(n + 1, dtype=complex)
    q[0] = f[0]
    u = np.zeros(n + 1, dtype=complex)
    u[0] = coef(q[0]) * q[0]
    worst_iters = 1
    for k in range(1, n + 1):
        s = _history_sum(weights, u, k)
        rhs = f[k] - s
        qk = q[k - 1]
        defect = abs(qk + wd * coef(qk) * qk - rhs)
        converged = defect <= tol
        it = 0
        while not converged and it < max_iter:
            it += 1
            qk_new = rhs - wd * coef(qk) * qk
            new_defect = abs(qk_new + wd * coef(qk_new) * qk_new - rhs)
            if new_defect > defect:
                qk_new = 0.5 * (qk + qk_new)
                new_defect = abs(qk_new + wd * coef(qk_new) * qk_new - rhs)
            qk, defect = qk_new, new_defect
            converged = defect <= tol
        if not converged:
            raise ConvergenceError(
                f"fixed point at step {k} stalled with defect {defect:g}",
                iterate=qk, defect=defect)
        worst_iters = max(worst_iters, it)
        q[k] = qk
        u[k] = coef(qk) * qk
    sol = SampledFunction(p.forcing.T, q)
    res = residual_check(p, sol, weights=weights)
    return SolveReport(solution=sol, residual=res, iterations=worst_iters)


def residual_check(p: ChargeProblem, q: SampledFunction,
                   weights: ProductWeights | None = None) -> float:
    """Max-norm defect of q against the charge equation, via apply_Jnu."""
    if not q.same_grid(p.forcing):
        raise UsageError("solution and forcing grids do not match")
    qv = np.asarray(q.values, dtype=complex)
    u = SampledFunction(q.T, p.coefficient(qv) * qv)
    ju = apply_Jnu(p.kernel, u, weights=weights)
    return float(np.abs(qv + ju.values - p.forcing.values).max())
