"""One-dimensional Coulomb problem: waves, scattering, and bound states.

The package treats the potential ``lambda/|x|`` on the punctured line in
three layers:

``specfun``
    Regular and singular Coulomb wave functions on both half-lines,
    with series, Maclaurin, and asymptotic evaluation regimes, plus the
    confluent-hypergeometric bound-state series.
``scatter``
    Exact transmission through hole- and plateau-truncated barriers,
    the vanishing-transmission limit, the unitary S-matrix
    parametrization, connection-coefficient maps, and the WKB/Gamow
    comparison.
``bound``
    The two interlaced bound-state families (Laguerre-based regular
    states and Bessel-K anomalous states), their norms, overlaps,
    hermiticity defects, and Gram-matrix diagnostics.

``numerics`` supplies shared quadrature/extrapolation/precision
infrastructure and ``cli`` exposes everything as a command-line tool.
"""

from .numerics import (
    ExtrapolationSpec,
    NumericsError,
    PrecisionCapError,
    QuadratureSpec,
    ToleranceError,
    extrapolate_limit,
    integrate,
    max_digits,
    with_precision,
)
from .specfun import (
    DEFAULT_CONTEXT,
    AccuracyError,
    DomainError,
    PoleError,
    PrecisionContext,
    ProblemParams,
    SingularityError,
    WaveEval,
    bessel_and_friends,
    bound_series_J,
    bound_series_JK,
    coulomb_C,
    coulomb_asymptotic,
    coulomb_eval,
    coulomb_maclaurin,
    theta_phase,
)
from .scatter import (
    ConnectionCoefficients,
    SMatrix,
    ScatteringSolution,
    TruncationConfig,
    coefficients_from_T,
    coefficients_from_t_r,
    composed_transmission,
    exact_escape_probability,
    half_barrier,
    matched_solution,
    plateau_transmission,
    s_matrix,
    wkb_gamow,
)
from .bound import (
    BoundState,
    GramResult,
    PolyPair,
    anomalous_norm,
    anomalous_wavefunction,
    anomalous_wavefunction_derivative,
    delta_np,
    elliptic_overlap_report,
    gram_analysis,
    overlap,
    poly_pair,
    regular_orthogonality,
    regular_wavefunction,
    spectrum,
)

__version__ = "0.1.0"
