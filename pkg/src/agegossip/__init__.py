"""Reliability and version age in two-source age-based gossip networks."""
from .analytics import AnalyticResult, AnalyticTables, limit_age_g0, limit_age_ginf, solve
from .harness import ComparisonReport, ExperimentConfig, emit, sweep
from .model import INFINITE_AGE, PacketState, Params, SetSummary, merge, set_summary
from .simulator import Estimates, NetworkState, run

__all__ = [
    "AnalyticResult", "AnalyticTables", "ComparisonReport", "Estimates",
    "ExperimentConfig", "INFINITE_AGE", "NetworkState", "PacketState", "Params",
    "SetSummary", "emit", "limit_age_g0", "limit_age_ginf", "merge", "run",
    "set_summary", "solve", "sweep",
]
