"""Numerical toolkit for one-dimensional holomorphic dynamics.

Rational maps on the Riemann sphere with chart-safe evaluation, Koenigs
linearization at repelling fixed points, periodic-orbit solving, the
maximal-entropy and harmonic measures, algebraic-correspondence
certificates, expanding circle dynamics, and expansion diagnostics.
"""

__version__ = "0.1.0"

from .circle import (
    BlaschkeProduct,
    IntervalReport,
    LyapunovSpectrum,
    RigidityReport,
    SpectrumEntry,
    circle_periodic_orbits,
    lyapunov_spectrum,
    rigidity_verdict,
    spectrum_interval_check,
)
from .correspond import (
    CurveCandidate,
    MultiplierRelation,
    bidegree_sweep,
    curve_invariance_check,
    degree_relation_check,
    fit_invariant_curve,
    graph_samples,
    iterate_graph_curve,
    multiplier_relation_search,
    semiconjugacy_residual,
)
from .errors import (
    ConfigError,
    HoloscopeError,
    InternalError,
    NonConvergenceError,
    PreconditionError,
)
from .expansion import (
    BallScalingReport,
    ShrinkEstimate,
    measure_ball_scaling,
    shrink_rate_estimate,
)
from .linearize import (
    GeneralizedLinearizer,
    Linearizer,
    eval_generalized,
    eval_linearizer,
    generalized_koenigs,
    koenigs_series,
    linearizer_residual,
)
from .maps import Poly, RationalMap, polynomial_map
from .measures import (
    ComparisonReport,
    EmpiricalMeasure,
    GreenEvaluation,
    brownian_exit_measure,
    escape_radius,
    exceptional_points,
    green_function,
    map_hash,
    measure_compare,
    pushforward_measure,
    sample_mmem,
)
from .orbits import (
    Census,
    Cycle,
    classify,
    cycle_multiplier,
    multiplier,
    periodic_point_census,
    periodic_points,
)
from .sphere import INF, SpherePoint, chordal, sphere_point

__all__ = [
    "__version__",
    "BallScalingReport",
    "BlaschkeProduct",
    "Census",
    "ComparisonReport",
    "ConfigError",
    "CurveCandidate",
    "Cycle",
    "EmpiricalMeasure",
    "GeneralizedLinearizer",
    "GreenEvaluation",
    "HoloscopeError",
    "INF",
    "IntervalReport",
    "InternalError",
    "Linearizer",
    "LyapunovSpectrum",
    "MultiplierRelation",
    "NonConvergenceError",
    "Poly",
    "PreconditionError",
    "RationalMap",
    "RigidityReport",
    "ShrinkEstimate",
    "SpectrumEntry",
    "SpherePoint",
    "bidegree_sweep",
    "brownian_exit_measure",
    "chordal",
    "circle_periodic_orbits",
    "classify",
    "curve_invariance_check",
    "cycle_multiplier",
    "degree_relation_check",
    "escape_radius",
    "eval_generalized",
    "eval_linearizer",
    "exceptional_points",
    "fit_invariant_curve",
    "generalized_koenigs",
    "graph_samples",
    "green_function",
    "iterate_graph_curve",
    "koenigs_series",
    "linearizer_residual",
    "lyapunov_spectrum",
    "map_hash",
    "measure_ball_scaling",
    "measure_compare",
    "multiplier",
    "multiplier_relation_search",
    "periodic_point_census",
    "periodic_points",
    "polynomial_map",
    "pushforward_measure",
    "rigidity_verdict",
    "sample_mmem",
    "semiconjugacy_residual",
    "shrink_rate_estimate",
    "spectrum_interval_check",
    "sphere_point",
]
