"""Product-integration convolution."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from voltconv import (AbelKernel, LogSonineKernel, SampledFunction, UsageError,
                      VolterraIKernel, apply_Jnu, apply_Phi,
                      fractional_integral, product_weights)
from voltconv.errors import DomainError

ABEL_HALF = AbelKernel(0.5)


def grid_fn(fn, T=1.0, n=128):
    return SampledFunction.from_callable(fn, T, n)


def test_sampled_function_validation():
    with pytest.raises(UsageError):
        SampledFunction(1.0, np.array([1.0]))
    with pytest.raises(UsageError):
        SampledFunction(-1.0, np.array([1.0, 2.0]))
    with pytest.raises(UsageError):
        SampledFunction(1.0, np.array([1.0, np.nan]))


def test_constant_gives_N():
    for kernel in (ABEL_HALF, VolterraIKernel(), LogSonineKernel()):
        g = grid_fn(lambda x: 1.0, n=64)
        out = apply_Jnu(kernel, g)
        ref = kernel.N_grid(g.grid)
        assert np.abs(out.values - ref).max() <= 1e-10


def test_abel_half_of_identity_exact():
    # J_{1/2} x = 4 x^{3/2} / (3 sqrt(pi)), and piecewise-linear inputs are
    # integrated exactly.
    g = grid_fn(lambda x: x, n=256)
    out = fractional_integral(0.5, g)
    ref = 4.0 * g.grid ** 1.5 / (3.0 * math.sqrt(math.pi))
    assert np.abs(out.values - ref).max() <= 1e-12


def test_log_sonine_of_constant():
    g = grid_fn(lambda x: 1.0, n=64)
    out = apply_Phi(g)
    xs = g.grid
    ref = np.zeros_like(xs)
    ref[1:] = xs[1:] * (1.0 - 0.5772156649015329 - np.log(xs[1:]))
    assert np.abs(out.values - ref).max() <= 1e-12


def test_semigroup_half_plus_half_is_integral():
    g = grid_fn(math.cos, n=1024)
    once = fractional_integral(0.5, g)
    twice = fractional_integral(0.5, once)
    ref = np.sin(g.grid)
    # The intermediate sqrt-type singularity at 0 dominates the error there.
    assert np.abs(twice.values - ref).max() <= 2e-4
    assert np.abs(twice.values[16:] - ref[16:]).max() <= 1e-4


def test_fractional_integral_order_validation():
    g = grid_fn(lambda x: x, n=8)
    for bad in (0.0, 1.0, -0.5, 1.5):
        with pytest.raises(DomainError):
            fractional_integral(bad, g)


def test_weights_row_sums_match_N():
    w = product_weights(ABEL_HALF, 1.0 / 64, 64)
    xs = np.linspace(0.0, 1.0, 65)
    assert np.abs(w.row_sums() - ABEL_HALF.N_grid(xs)[1:]).max() <= 1e-12


def test_weights_reuse_and_mismatch():
    w = product_weights(ABEL_HALF, 1.0 / 64, 64)
    short = SampledFunction(0.5, np.ones(33))    # same h, fewer cells
    out = apply_Jnu(ABEL_HALF, short, weights=w)
    assert np.abs(out.values - ABEL_HALF.N_grid(short.grid)).max() <= 1e-12
    other = SampledFunction(1.0, np.ones(33))    # different h
    with pytest.raises(UsageError):
        apply_Jnu(ABEL_HALF, other, weights=w)


def test_causality():
    rng = np.random.default_rng(0)
    vals = rng.standard_normal(65)
    g = SampledFunction(1.0, vals)
    out1 = apply_Jnu(ABEL_HALF, g).values
    vals2 = vals.copy()
    vals2[40:] += 10.0
    out2 = apply_Jnu(ABEL_HALF, SampledFunction(1.0, vals2)).values
    assert np.array_equal(out1[:40], out2[:40])
    assert not np.allclose(out1[40:], out2[40:])


def test_positivity_and_monotone_bound():
    rng = np.random.default_rng(1)
    g = SampledFunction(1.0, rng.uniform(0.0, 1.0, 65))
    out = apply_Jnu(ABEL_HALF, g).values
    assert np.all(out >= -1e-14)
    # Positive kernel, nonnegative nondecreasing input: output nondecreasing.
    h = SampledFunction(1.0, np.sort(rng.uniform(0.0, 1.0, 65)))
    out2 = apply_Jnu(VolterraIKernel(), h).values
    assert np.all(np.diff(out2) >= -1e-14)


def test_complex_input_splits():
    rng = np.random.default_rng(2)
    re = rng.standard_normal(33)
    im = rng.standard_normal(33)
    z = SampledFunction(1.0, re + 1j * im)
    out = apply_Jnu(ABEL_HALF, z)
    assert out.is_complex
    out_re = apply_Jnu(ABEL_HALF, SampledFunction(1.0, re)).values
    out_im = apply_Jnu(ABEL_HALF, SampledFunction(1.0, im)).values
    assert np.abs(out.values - (out_re + 1j * out_im)).max() <= 1e-13


@given(st.floats(-5.0, 5.0), st.floats(-5.0, 5.0), st.integers(0, 1000))
@settings(max_examples=25, deadline=None)
def test_linearity(a, b, seed):
    rng = np.random.default_rng(seed)
    u = rng.standard_normal(33)
    v = rng.standard_normal(33)
    w = product_weights(ABEL_HALF, 1.0 / 32, 32)
    lhs = apply_Jnu(ABEL_HALF, SampledFunction(1.0, a * u + b * v), weights=w).values
    rhs = (a * apply_Jnu(ABEL_HALF, SampledFunction(1.0, u), weights=w).values
           + b * apply_Jnu(ABEL_HALF, SampledFunction(1.0, v), weights=w).values)
    assert np.abs(lhs - rhs).max() <= 1e-9 * (1.0 + abs(a) + abs(b))


def test_pointwise_quadrature_oracle():
    # Independent oracle: adaptive quadrature of nu(x - s) g(s) for the
    # piecewise-linear interpolant of random samples.
    from scipy.integrate import quad
    rng = np.random.default_rng(3)
    n = 16
    xs = np.linspace(0.0, 1.0, n + 1)
    vals = rng.standard_normal(n + 1)
    g = SampledFunction(1.0, vals)
    out = apply_Jnu(ABEL_HALF, g).values

    def interp(s):
        return np.interp(s, xs, vals)

    for k in (4, 9, 16):
        x = xs[k]
        ref = 0.0
        for j in range(k):
            ref += quad(lambda s: ABEL_HALF.nu(x - s) * interp(s),
                        xs[j], xs[j + 1], limit=200,
                        points=[x] if xs[j + 1] == x else None)[0]
        assert out[k] == pytest.approx(ref, abs=1e-9)
