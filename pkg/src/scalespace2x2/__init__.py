"""Scale-space filtering with a 2x2 matrix of 3-tap convolution filters."""
from .conditions import (
    FeasibilityReport,
    ValidationReport,
    is_feasible,
    numeric_validate,
    sample_feasible,
    theorem2_check,
)
from .design import DesignResult, compare, optimize
from .errors import (
    DegenerateEigenbasis,
    DimensionMismatch,
    EmptyFeasibleGrid,
    NegativeDiscriminant,
    NonRealResponse,
    PositiveD,
    SizeLimit,
)
from .iteration import (
    EquivalentFilter,
    SystemState,
    circulant_power_oracle,
    dft,
    equivalent_filter,
    iterate,
    per_frequency_eigen,
    step,
)
from .realization import (
    FilterTaps,
    MatrixOfFilters,
    realize_balanced,
    realize_multiplier_free_cross,
    taps_to_sigma,
    verify_realization,
)
from .spectral import (
    DesignParams,
    ResponseCurve,
    SpectralPoint,
    circulant_equivalent_response,
    cross_product,
    equivalent_response,
    falloff,
    gaussian_response,
    response_curve,
    response_table,
    sigma_aa,
    sigma_xx,
    spectral_point,
)

__version__ = "0.1.0"
