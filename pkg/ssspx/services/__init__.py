"""
Generators and the benchmark runner
"""

from .harness import generate, run_bench, summarize_trend, write_csv, write_json
from .rng import SplitMix64

__all__ = [
    'generate',
    'run_bench',
    'summarize_trend',
    'write_csv',
    'write_json',
    'SplitMix64',
]
