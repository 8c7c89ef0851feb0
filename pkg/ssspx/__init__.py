"""
ssspx - deterministic single-source shortest paths below the sorting barrier.
"""
__version__ = "0.1.0"
