"""Numerical toolkit for Volterra convolution operators with singular
kernels: special functions, singularity-exact product integration, charge
equation solvers, function-space norms, and a theorem verification harness.
"""

from .charge import (C_FIXED, ChargeProblem, SolveReport, residual_check,
                     solve_linear_charge, solve_nonlinear_charge)
from .convolve import (ProductWeights, SampledFunction, apply_Jnu, apply_Phi,
                       fractional_integral, product_weights)
from .errors import (AccuracyError, ConvergenceError, DomainError,
                     SingularStepError, UnboundedNormError, UsageError,
                     VoltconvError)
from .kernels import (EULER_MASCHERONI, AbelKernel, Kernel, LogSonineKernel,
                      TabulatedKernel, VolterraIKernel, make_kernel,
                      ramanujan_R, volterra_I, volterra_I_laplace, volterra_M,
                      volterra_N)
from .spaces import (NormReport, NumericMonotone, Power, PowerLog,
                     YoungFunction, avg_rearrangement, extend_reflect,
                     gagliardo_seminorm, holder_seminorm, luxemburg_norm,
                     norm, sobolev_norm, young_C_from_A, young_conjugate)
from .verify import (ALL_CHECKS, VerificationReport, check_half_sobolev_I,
                     check_holder, check_kernel_shape, check_linf_continuity,
                     check_lp_orlicz, check_sobolev, check_sonine, run_check)

__version__ = "0.1.0"

__all__ = [
    "AbelKernel", "AccuracyError", "ALL_CHECKS", "apply_Jnu", "apply_Phi",
    "avg_rearrangement", "C_FIXED", "ChargeProblem", "check_half_sobolev_I",
    "check_holder", "check_kernel_shape", "check_linf_continuity",
    "check_lp_orlicz", "check_sobolev", "check_sonine", "ConvergenceError",
    "DomainError", "EULER_MASCHERONI", "extend_reflect", "fractional_integral",
    "gagliardo_seminorm", "holder_seminorm", "Kernel", "LogSonineKernel",
    "luxemburg_norm", "make_kernel", "norm", "NormReport", "NumericMonotone",
    "Power", "PowerLog", "product_weights", "ProductWeights", "ramanujan_R",
    "residual_check", "run_check", "SampledFunction", "SingularStepError",
    "sobolev_norm", "solve_linear_charge", "solve_nonlinear_charge",
    "SolveReport", "TabulatedKernel", "UnboundedNormError", "UsageError",
    "VerificationReport", "volterra_I", "volterra_I_laplace", "volterra_M",
    "volterra_N", "VolterraIKernel", "VoltconvError", "YoungFunction",
    "young_C_from_A", "young_conjugate",
]
