"""
Pydantic models for the solver and the bench harness
"""

from .schemas import (
    FallbackMode,
    SolverConfig,
    ParamChoice,
    SolveParams,
    WeightKind,
    WeightModel,
    Family,
    GenSpec,
    BenchRecord,
    SolveReport,
    CliConfig
)

__all__ = [
    'FallbackMode',
    'SolverConfig',
    'ParamChoice',
    'SolveParams',
    'WeightKind',
    'WeightModel',
    'Family',
    'GenSpec',
    'BenchRecord',
    'SolveReport',
    'CliConfig'
]
