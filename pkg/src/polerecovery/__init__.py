"""Recover a first-order pole of a function meromorphic in ``Re z > 0`` from
its samples at the half-integers ``N + 1/2``.

The samples are expanded on Meixner-Pollaczek polynomials.  The resulting
coefficients are affine in an auxiliary parameter ``k``; their slope and
intercept give, degree by degree, the pole position and residue, which
settle on plateaux that are detected and averaged.  The estimates are then
checked by rebuilding every sample from all the others.

Modules
-------
special       log-Gamma, Pollaczek polynomials, basis functions, Q_n kernel
samples       sample sets, noise model and the catalog of test functions
coefficients  exact data sums, pole terms and cumulative norms
recovery      regression in k, traces, plateau detection, estimates
validation    analyticity test, reconstruction, truncation, interpolation
cli           command-line driver
"""

from .coefficients import (CoefficientTable, coefficient_table, frak_c, hat_c_pole,
                           sum_m_frak, sum_m_hat, tau_n)
from .errors import CoefficientOverflow, DomainError, NoPoleDetected, QuadratureError
from .recovery import (ConvergenceRange, PoleEstimate, RecoveryConfig, RegressionLine, Trace,
                       detect_range, estimate_pole, estimate_residue, pole_trace, recover,
                       regress_mq, residue_trace)
from .samples import NoiseSpec, SampleSet, TestFunction, catalog, custom, perturb, sample
from .special import (ScaledComplex, complex_log_gamma, pollaczek_p, pollaczek_p_asymptotic,
                      pollaczek_p_hypergeometric, psi_n, q_n)
from .validation import (AnalyticityVerdict, ReconstructionReport, analyticity_test,
                         choose_truncation, delta_error, interpolate, reconstruct,
                         reconstruct_analytic, reconstruct_meromorphic)

__version__ = "0.1.0"

__all__ = [
    "AnalyticityVerdict", "CoefficientOverflow", "CoefficientTable", "ConvergenceRange",
    "DomainError", "NoPoleDetected", "NoiseSpec", "PoleEstimate", "QuadratureError",
    "ReconstructionReport", "RecoveryConfig", "RegressionLine", "SampleSet", "ScaledComplex",
    "TestFunction", "Trace", "analyticity_test", "catalog", "choose_truncation",
    "coefficient_table", "complex_log_gamma", "custom", "delta_error", "detect_range",
    "estimate_pole", "estimate_residue", "frak_c", "hat_c_pole", "interpolate", "perturb",
    "pole_trace", "pollaczek_p", "pollaczek_p_asymptotic", "pollaczek_p_hypergeometric",
    "psi_n", "q_n", "reconstruct", "reconstruct_analytic", "reconstruct_meromorphic",
    "recover", "regress_mq", "residue_trace", "sample", "sum_m_frak", "sum_m_hat", "tau_n",
]
