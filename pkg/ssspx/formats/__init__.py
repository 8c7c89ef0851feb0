"""
Graph file formats
"""

from .dimacs import parse_dimacs, write_dimacs

__all__ = ['parse_dimacs', 'write_dimacs']
