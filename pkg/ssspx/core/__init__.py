"""
Core modules of the solver
"""

from .graph import Graph, ReducedGraph, reduce_degree, validate
from .labels import INFINITY, MINIMAL, DistLabel, LabelStore
from .dstruct import BaseMap, BlockStructure, new_structure
from .treepart import RootedTree, partition_tree
from .pivots import PivotOutput, find_pivots
from .oracle import OracleResult, dijkstra, true_targets
from .bmssp import BmsspResult, SolveResult, bmssp, choose_params, solve
from .stats import ExecStats

__all__ = [
    'Graph',
    'ReducedGraph',
    'reduce_degree',
    'validate',
    'INFINITY',
    'MINIMAL',
    'DistLabel',
    'LabelStore',
    'BaseMap',
    'BlockStructure',
    'new_structure',
    'RootedTree',
    'partition_tree',
    'PivotOutput',
    'find_pivots',
    'OracleResult',
    'dijkstra',
    'true_targets',
    'BmsspResult',
    'SolveResult',
    'bmssp',
    'choose_params',
    'solve',
    'ExecStats',
]
