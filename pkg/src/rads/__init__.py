"""Ransomware incident decision support.

Scores each affected application with exact rational arithmetic,
corrects for the attacker's framing and reference-point manipulation,
and recommends pay vs. resist per application, with what-if sweeps over
thresholds, weights, factors and the ransom-doubling countdown.
"""

from .adjusters import (
    DeadlinePressure,
    HistoryAmbiguous,
    feasibility_value,
    framing_value,
    reference_value,
)
from .documents import (
    report_to_dict,
    report_to_json,
    scenario_to_dict,
    scenario_to_json,
    validate_scenario,
    validate_scenario_bytes,
)
from .engine import (
    CriticalityStats,
    CurrencyMismatch,
    EmptyScenario,
    adjusted_factor,
    compare_costs,
    criticality_stats,
    decide,
    decision_factor,
    evaluate,
)
from .model import (
    AdjusterPolicy,
    Application,
    BackupPolicy,
    CriticalityClass,
    CriticalityScale,
    Decision,
    DecisionReport,
    DEFAULT_SCALE,
    FactorAssessment,
    HandledOutcome,
    HistoryEntry,
    IncidentHistory,
    IncidentScenario,
    ModelError,
    Money,
    RadsError,
    RansomDemand,
    Violation,
    WeightProfile,
)
from .store import IncidentStore, NotFound, StorageUnavailable, VersionConflict
from .whatif import (
    ClockSkew,
    CountdownState,
    InfeasibleSweep,
    SweepRequest,
    SweptQuantity,
    countdown,
    offer_expired,
    ransom_at,
    sweep,
    sweep_csv,
)

__version__ = "0.1.0"
