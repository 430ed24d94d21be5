from .numbers import Complex, ExtendedComplex, parse_complex, unit_phase
from .results import (
    AnalyticityReport,
    ConvergenceRow,
    ExcisionSpec,
    ImproperResult,
    InfinityResiduePair,
    MatchedRadiusRow,
    NamedValue,
    Potential,
    QuadResult,
    ResiduePair,
    SectorLimit,
    SectorLimits,
    VerificationReport,
    convergence_to_dataframe,
    reports_to_dataframe,
)

__all__ = [
    "AnalyticityReport",
    "Complex",
    "ConvergenceRow",
    "ExcisionSpec",
    "ExtendedComplex",
    "ImproperResult",
    "InfinityResiduePair",
    "MatchedRadiusRow",
    "NamedValue",
    "Potential",
    "QuadResult",
    "ResiduePair",
    "SectorLimit",
    "SectorLimits",
    "VerificationReport",
    "convergence_to_dataframe",
    "parse_complex",
    "reports_to_dataframe",
    "unit_phase",
]
