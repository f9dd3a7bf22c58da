"""Generalized coherent states: construction, quadrature and property checks."""
from .core import FamilySpec, KernelValue, TruncatedState, kernel, normalization, state_vector
from .errors import (
    DomainError,
    GencsError,
    NoConvergence,
    NormalizationVanishes,
    ParameterError,
    RatioUndefined,
)
from .families import (
    make_bessel,
    make_canonical,
    make_disc,
    make_family,
    make_laguerre,
    make_logdisc,
    make_power_iterate,
)
from .quadrature import integrate, moment_matrix
from .reporting import RunConfig, load_config, write_report
from .verify import VerificationReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "DomainError", "FamilySpec", "GencsError", "KernelValue", "NoConvergence",
    "NormalizationVanishes", "ParameterError", "RatioUndefined", "RunConfig",
    "TruncatedState", "VerificationReport", "integrate", "kernel", "load_config",
    "make_bessel", "make_canonical", "make_disc", "make_family", "make_laguerre",
    "make_logdisc", "make_power_iterate", "moment_matrix", "normalization",
    "run_suite", "state_vector", "write_report",
]
