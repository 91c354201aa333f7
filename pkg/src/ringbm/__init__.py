"""Periodic fractional stochastic processes on a circle.

Three process classes (Gaussian, grey, generalized grey), their exact form
factors and Debye functions, gyration relations, exact path sampling and a
Monte Carlo cross-validation harness.
"""

__version__ = "0.1.0"

from .errors import (
    ConvergenceError,
    DomainError,
    FactorizationError,
    UnsupportedParameterError,
)
from .formfactor import (
    DebyeCurve,
    GyrationReport,
    Transform,
    debye_asymptote,
    debye_curve,
    debye_pfbm,
    debye_pgbm,
    debye_pggbm,
    debye_value,
    end_to_halftime_sq,
    form_factor,
    form_factor_mc,
    gyration_relation,
    kratky,
    linear_fbm_gyration_sq,
    pgbm_tail_coefficients,
    radius_of_gyration_sq,
    write_curve_csv,
    y_from_k,
)
from .process import (
    CircleGrid,
    CovarianceMatrix,
    ProcessClass,
    ProcessSpec,
    covariance,
    covariance_matrix,
    geodesic_variance,
    increment_char_fn,
    increment_second_moment,
    multivariate_char_fn,
    psd_check,
    self_similarity_check,
)
from .sampler import (
    PathEnsemble,
    SamplingMethod,
    export_ensemble,
    sample_gaussian_paths,
    sample_mwright,
    sample_process,
)
from .specfn import (
    DEFAULT_POLICY,
    SeriesPolicy,
    fox_wright_2psi2,
    gamma_fn,
    gamma_upper_incomplete,
    m_wright,
    mittag_leffler,
    mittag_leffler_asymptotic,
    mittag_leffler_general,
)
