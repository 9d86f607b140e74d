"""Cross-damped two-ion Gaussian dynamics, estimation, and entanglement."""

from .model import (
    ModelParams,
    PhysicalParams,
    bose_occupation,
    effective_model,
)
from .dynamics import (
    DriftMatrix,
    MomentState,
    anomalous_moment_1,
    collective_rates,
    drift_eigenvalues,
    population,
    propagate,
    short_time_population,
    steady_state,
)
from .phonon_stats import (
    LocalGaussian,
    Pmf,
    UnsupportedRegimeError,
    general_pmf,
    geometric_pmf,
    hyp2f1,
    sample,
)
from .inference import (
    CrbReport,
    FisherMatrix,
    MleReport,
    ParamVector,
    crb,
    dfs_null_scaling,
    fim_general,
    fim_thermal,
    mle_harness,
    population_gradient,
)
from .entanglement import (
    CovarianceReal,
    ScanResult,
    SqueezedThermalSpec,
    YResult,
    evolve_y,
    scan,
    to_real_covariance,
    y_invariant,
)

__version__ = "0.1.0"
