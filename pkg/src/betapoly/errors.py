"""Exception types shared by the kernel, calculator and simulation layers."""


class BetapolyError(Exception):
    """Base class for all package errors."""


class DomainNotRepresentable(BetapolyError, ValueError):
    """A kernel argument lies outside the domain where its integral converges."""


class NonConvergence(BetapolyError, ArithmeticError):
    """Quadrature hit its refinement cap before meeting the requested tolerance."""


class DegenerateInput(BetapolyError, ValueError):
    """A point cloud is not in general position (not full-dimensional)."""
