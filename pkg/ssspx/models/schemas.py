# ssspx/models/schemas.py
"""
Pydantic models for solver configuration, parameters and bench records
"""

from enum import Enum
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator


class FallbackMode(str, Enum):
    AUTO = "auto"
    NEVER = "never"
    ALWAYS = "always"


class SolverConfig(BaseModel):
    debug_checks: bool = False
    fallback: FallbackMode = FallbackMode.AUTO
    force_t: Optional[int] = None
    force_k: Optional[int] = None
    force_delta: Optional[int] = None
    # frame-level oracle checks only run while the reduced graph is this small
    debug_oracle_limit: int = 5000

    @field_validator('force_t')
    @classmethod
    def _t_at_least_two(cls, v):
        if v is not None and v < 2:
            raise ValueError('force_t must be >= 2')
        return v

    @field_validator('force_k')
    @classmethod
    def _k_positive(cls, v):
        if v is not None and v < 1:
            raise ValueError('force_k must be >= 1')
        return v

    @field_validator('force_delta')
    @classmethod
    def _delta_at_least_three(cls, v):
        if v is not None and v < 3:
            raise ValueError('force_delta must be >= 3')
        return v

    @classmethod
    def from_settings(cls, overrides: Optional[Dict[str, Any]] = None) -> 'SolverConfig':
        """Builds the config from config.yaml's solver section, then applies non-None overrides."""
        from ssspx.config import settings, debug_checks_from_env

        data = dict(settings.get('solver') or {})
        for key, value in (overrides or {}).items():
            if value is not None:
                data[key] = value
        if debug_checks_from_env():
            data['debug_checks'] = True
        return cls(**data)


class ParamChoice(BaseModel):
    """Formula values for t, k and delta, and why Dijkstra was chosen instead (if it was)."""
    n: int
    m: int
    t: int
    k: int
    delta: int
    fallback_reason: Optional[str] = None

    @property
    def use_fallback(self) -> bool:
        return self.fallback_reason is not None


class SolveParams(BaseModel):
    t: int
    k: int
    delta: int
    l_max: int

    @field_validator('t')
    @classmethod
    def _t_valid(cls, v):
        if v < 2:
            raise ValueError('t must be >= 2')
        return v

    @field_validator('k')
    @classmethod
    def _k_valid(cls, v):
        if v < 1:
            raise ValueError('k must be >= 1')
        return v

    def block_size(self, level: int) -> int:
        """M(l) = t * 2^((l-1)t); level 0 uses the base map."""
        if level <= 0:
            return 1
        return self.t << ((level - 1) * self.t)

    def u_cap(self, level: int) -> int:
        return self.t ** 3 << (level * self.t)

    def s_cap(self, level: int) -> int:
        return self.t ** 2 << (level * self.t)

    def entry_cap(self, level: int) -> int:
        """Largest frontier a level-l call may receive: s_cap(l), or one expanded pull of the parent."""
        return max(self.s_cap(level), (1 + 3 * self.k) * self.block_size(level + 1))


class WeightKind(str, Enum):
    UNIFORM_INTEGER = "uniform-integer"
    UNIFORM_REAL = "uniform-real"
    ZERO_HEAVY = "zero-heavy"


class WeightModel(BaseModel):
    kind: WeightKind = WeightKind.UNIFORM_INTEGER
    low: int = 1
    high: int = 100
    # zero-heavy only: probability that an edge weighs 0, otherwise uniform-integer
    p_zero: float = 0.5

    @field_validator('p_zero')
    @classmethod
    def _probability(cls, v):
        if not 0.0 <= v <= 1.0:
            raise ValueError('p_zero must be within [0, 1]')
        return v

    @model_validator(mode='after')
    def _range_ordered(self):
        if self.low < 0 or self.high < self.low:
            raise ValueError('weight range must satisfy 0 <= low <= high')
        return self

    def label(self) -> str:
        if self.kind == WeightKind.ZERO_HEAVY:
            return f"{self.kind.value}({self.p_zero})"
        if self.kind == WeightKind.UNIFORM_INTEGER:
            return f"{self.kind.value}({self.low},{self.high})"
        return self.kind.value


class Family(str, Enum):
    RANDOM_M = "random-m"
    PATH = "path"
    GRID = "grid"
    LAYERED = "layered"
    STAR_CYCLE = "star-cycle"


class GenSpec(BaseModel):
    family: Family
    n: int
    m: int = 0
    weights: WeightModel = Field(default_factory=WeightModel)
    seed: int = 1

    @field_validator('n')
    @classmethod
    def _n_positive(cls, v):
        if v < 1:
            raise ValueError('n must be >= 1')
        return v

    @field_validator('m')
    @classmethod
    def _m_non_negative(cls, v):
        if v < 0:
            raise ValueError('m must be >= 0')
        return v


class BenchRecord(BaseModel):
    family: str
    n: int
    m: int
    weights: str
    seed: int
    repetition: int = 0
    mode: str
    t: int
    k: int
    delta: int
    n_inner: int = 0
    m_inner: int = 0
    wall_time: float
    stats: Dict[str, Any] = Field(default_factory=dict)
    oracle_match: Optional[bool] = None


class SolveReport(BaseModel):
    """JSON document printed by `solve --json`; distances use None for unreachable."""
    source: int
    distances: List[Optional[float]]
    params: Dict[str, Any] = Field(default_factory=dict)
    stats: Dict[str, Any] = Field(default_factory=dict)
    invariants: Optional[Dict[str, Any]] = None


class CliConfig(BaseModel):
    """One solve/verify invocation: exactly one input source, 1-based source id."""
    command: str
    input: Optional[str] = None
    gen: Optional[GenSpec] = None
    source: int = 1
    output: Literal['text', 'json'] = 'text'
    debug_checks: bool = False
    force_t: Optional[int] = None
    force_k: Optional[int] = None
    force_delta: Optional[int] = None
    no_fallback: bool = False

    @model_validator(mode='after')
    def _one_input(self):
        if (self.input is None) == (self.gen is None):
            raise ValueError('give exactly one of an input file or --gen')
        return self

    def solver_config(self) -> SolverConfig:
        return SolverConfig.from_settings({
            'debug_checks': True if self.debug_checks else None,
            'force_t': self.force_t,
            'force_k': self.force_k,
            'force_delta': self.force_delta,
            'fallback': FallbackMode.NEVER if self.no_fallback else None,
        })
