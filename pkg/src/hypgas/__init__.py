"""Scattering lengths, energy bounds, and BEC certificates on hyperbolic manifolds."""

from .bounds import (
    BoundReport,
    GasParameters,
    IntegralTriple,
    condensate_fraction_lower,
    diluteness_Y,
    energy_upper_bound,
    i_bound,
    k_bound,
    quad_integrals,
    simplified_upper_bound,
    trial_energy_bound,
    y0_threshold,
)
from .errors import HypgasError, InvalidRegimeError, MatchingError
from .geometry import (
    PointH2,
    PointH3,
    ball_volume,
    geodesic_distance,
    radial_weight,
)
from .manifolds import (
    CondensateCertificate,
    CongruenceQuotient3,
    CustomManifold,
    ManifoldModel,
    ModularSurface,
    RandomSurface,
    certify_bec,
    spectral_gap,
    volume,
)
from .oracles import (
    DiscreteMinimizerResult,
    InequalityCase,
    discrete_minimizer,
    inequality_report,
)
from .scattering import (
    Potential,
    RadialProfile,
    ScatteringParams,
    ScatteringSolution,
    c_d,
    f_infinity,
    minimizer_profile,
    scattering_energy,
    scattering_length,
    solve_zero_energy,
)

__version__ = "0.1.0"
