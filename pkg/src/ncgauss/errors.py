"""Exception types shared across the package."""


class NCGaussError(Exception):
    """Base class for all package errors."""


class DimensionError(NCGaussError, ValueError):
    """Matrix arguments have incompatible or non-square shapes."""


class SymmetryError(NCGaussError, ValueError):
    """A matrix required to be symmetric (or antisymmetric) is not."""


class DomainError(NCGaussError, ValueError):
    """Parameters lie outside the mathematically admissible region."""


class DegeneracyError(NCGaussError, ArithmeticError):
    """A result violates positive definiteness or invertibility."""


class SpectrumError(NCGaussError, ArithmeticError):
    """Eigenvalues do not form a valid symplectic spectrum."""


class NumericDomainError(NCGaussError, ArithmeticError):
    """A closed-form radicand is negative beyond round-off tolerance."""


class StepError(NCGaussError, ValueError):
    """A finite-difference step leaves the family's domain.

    ``suggested_step`` carries the largest step found to keep all
    perturbed evaluations inside the domain (None if none was found).
    """

    def __init__(self, message: str, suggested_step: float | None = None):
        super().__init__(message)
        self.suggested_step = suggested_step
