"""Exception types raised across the package."""


class GencsError(Exception):
    """Base class for all package errors."""


class DomainError(GencsError, ValueError):
    """An argument lies outside the domain of a function or family."""


class ParameterError(GencsError, ValueError):
    """Family parameters violate a structural constraint."""


class NoConvergence(GencsError, RuntimeError):
    """A series or quadrature did not meet its stopping rule within budget."""


class NormalizationVanishes(GencsError, ArithmeticError):
    """N(r) is zero (or below 1e-300); the state is undefined at this label."""


class RatioUndefined(GencsError, ArithmeticError):
    """A coefficient ratio Phi_{m+1}/Phi_m was requested where Phi_m = 0."""
