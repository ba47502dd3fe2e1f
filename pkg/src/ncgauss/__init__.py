"""Information geometry of bipartite Gaussian states on deformed phase space.

Build symplectic structures (commutative, deformed, and partial-transpose
reflected), classify Gaussian states by their symplectic spectra, compute
Fisher-Rao metrics on covariance families, and integrate regularized
state-space volumes over the physical / separable / entangled parameter
regions.
"""

from .errors import (
    DegeneracyError,
    DimensionError,
    DomainError,
    NCGaussError,
    NumericDomainError,
    SpectrumError,
    StepError,
    SymmetryError,
)
from .infogeo import (
    CovarianceFamily,
    fisher_metric_numeric,
    pushed_family,
    regularizer,
    toy_family,
    toy_metric_closed_form,
    toy_metric_det,
    toy_regularizer_closed_form,
    toy_tau,
)
from .linalg import adjugate, eig_symmetric, spectrum_real_general
from .phasespace import (
    DarbouxMap,
    NCParams,
    SymplecticForm,
    bopp_shift,
    commutative_form,
    nc_form,
    ppt_form,
)
from .states import (
    CovarianceMatrix,
    StateClass,
    ToyPoint,
    classify,
    classify_grid,
    darboux_conjugate,
    disk_grid,
    flatten_index,
    nu_minus,
    nu_prime_minus,
    symplectic_spectrum,
    toy_covariance,
)
from .volume import (
    IntegralEstimate,
    RegionSpec,
    SweepTable,
    entangled_volume,
    integrate_region,
    sweep,
)

__version__ = "0.1.0"

__all__ = [
    "CovarianceFamily",
    "CovarianceMatrix",
    "DarbouxMap",
    "DegeneracyError",
    "DimensionError",
    "DomainError",
    "IntegralEstimate",
    "NCGaussError",
    "NCParams",
    "NumericDomainError",
    "RegionSpec",
    "SpectrumError",
    "StateClass",
    "StepError",
    "SweepTable",
    "SymmetryError",
    "SymplecticForm",
    "ToyPoint",
    "adjugate",
    "bopp_shift",
    "classify",
    "classify_grid",
    "commutative_form",
    "darboux_conjugate",
    "disk_grid",
    "eig_symmetric",
    "entangled_volume",
    "fisher_metric_numeric",
    "flatten_index",
    "integrate_region",
    "nc_form",
    "nu_minus",
    "nu_prime_minus",
    "ppt_form",
    "pushed_family",
    "regularizer",
    "spectrum_real_general",
    "sweep",
    "symplectic_spectrum",
    "toy_covariance",
    "toy_family",
    "toy_metric_closed_form",
    "toy_metric_det",
    "toy_regularizer_closed_form",
    "toy_tau",
]
