"""Equilibria of Hotelling-Downs competition under best-worst voting rules."""

__version__ = "0.1.0"

from .core import (
    CanonicalProfile,
    ElectorateMap,
    Interval,
    Profile,
    Rule,
    canonicalize,
    electorates,
    validate_rule,
)
from .scoring import (
    DeviationAnalysis,
    ScoreReport,
    best_deviation,
    deviation_limit,
    deviation_payoff,
    score_all,
)
from .equilibrium import (
    EquilibriumCertificate,
    Verdict,
    classify,
    cne_check,
    is_nash,
    ncne_conditions,
)
from .construct import (
    NcneConfig,
    cne_interval,
    ncne_family,
    ncne_m4,
    ncne_m5,
    ncne_max_dispersed,
    ncne_min_dispersed,
)
