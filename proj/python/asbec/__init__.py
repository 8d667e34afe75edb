"""Artificial bee colony optimization with the AsBeC technology set."""

from _asbec import (
    BoundsMode,
    ColonyConfig,
    ExecMode,
    ParallelPlan,
    TechnologySet,
    TimedTrace,
    TracePoint,
    evaluate,
    fitness,
    function_info,
    gain,
    list_functions,
    mean_log10,
    median_best,
    run,
    run_serial,
)

__all__ = [
    "BoundsMode",
    "ColonyConfig",
    "ExecMode",
    "ParallelPlan",
    "TechnologySet",
    "TimedTrace",
    "TracePoint",
    "evaluate",
    "fitness",
    "function_info",
    "gain",
    "list_functions",
    "mean_log10",
    "median_best",
    "run",
    "run_serial",
]
