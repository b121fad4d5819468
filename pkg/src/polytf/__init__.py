"""Slepian-type eigenfunctions of polynomial windows for orthogonal polynomial systems."""

from .approx import (
    Concentration,
    ConcentrationSpec,
    ReconstructionReport,
    approximation_bounds,
    arcsine_fraction,
    concentration,
    node_count_fraction,
    reconstruct_on_interval,
    select_nodes,
    shift_to_associated,
)
from .errors import (
    DomainError,
    NormalizationError,
    NumericalError,
    ParameterError,
    PolytfError,
    WindowError,
)
from .localization import (
    FunctionRep,
    LocalizationReport,
    epsilon,
    localization_report,
    psi_variance_closed,
    variance,
    variance_decay_sweep,
    window_mass,
)
from .polyeval import cd_kernel, eval_associated, eval_orthonormal, eval_series
from .quadrature import QuadratureRule, gauss_rule, inner_product
from .spectral import SlepianBasis, eval_psi_explicit, eval_psi_series, slepian_basis
from .tridiag import EigenDecomposition, JacobiMatrix, build_jacobi, eigendecompose, eigenvalues
from .uncertainty import (
    BoundsReport,
    UncertaintyRegion,
    WitnessFunction,
    check_bounds,
    gamma1,
    gamma2,
    sharp_bound,
    uncertainty_region,
    witness_diagonal,
    witness_mixed,
    witness_target,
)
from .weights import (
    NevaiDiagnostics,
    RecurrenceSource,
    chebyshev1,
    chebyshev2,
    custom,
    from_config,
    jacobi,
    legendre,
    nevai_diagnostics,
)

__version__ = "0.1.0"
