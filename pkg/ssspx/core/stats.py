"""
Execution counters for one solve
"""
from dataclasses import dataclass, field, fields
from typing import Any, Dict, List


@dataclass(slots=True)
class ExecStats:
    relaxations: int = 0
    valid_relaxations: int = 0
    equal_relaxations: int = 0
    direct_inserts: int = 0
    max_direct_per_edge: int = 0
    pulls: int = 0
    inserts: int = 0
    merges: int = 0
    merged_pairs: int = 0
    descents: int = 0
    selection_work: int = 0
    find_pivots_calls: int = 0
    partition_ops: int = 0
    heap_ops: int = 0
    base_case_calls: int = 0
    comparisons: int = 0
    additions: int = 0
    max_depth: int = 0
    # largest |U| / U_cap(l) seen on a partial execution
    partial_ratio: float = 0.0
    full_by_level: Dict[int, int] = field(default_factory=dict)
    partial_by_level: Dict[int, int] = field(default_factory=dict)
    # frames entered with |S| above s_cap(l)
    oversized_frontiers: int = 0
    # one slot per reduced edge; empty unless edge tracking is on
    direct_per_edge: List[int] = field(default_factory=list)

    def track_edges(self, m: int):
        self.direct_per_edge = [0] * m

    def count_direct(self, edge_index: int):
        self.direct_inserts += 1
        if self.direct_per_edge:
            c = self.direct_per_edge[edge_index] + 1
            self.direct_per_edge[edge_index] = c
            if c > self.max_direct_per_edge:
                self.max_direct_per_edge = c

    def record_exit(self, level: int, full: bool, u_size: int = 0, u_cap: int = 0):
        bucket = self.full_by_level if full else self.partial_by_level
        bucket[level] = bucket.get(level, 0) + 1
        if not full and u_cap:
            ratio = u_size / u_cap
            if ratio > self.partial_ratio:
                self.partial_ratio = ratio

    def work(self) -> int:
        return self.comparisons + self.additions

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {}
        for f in fields(self):
            if f.name == 'direct_per_edge':
                continue
            value = getattr(self, f.name)
            if isinstance(value, dict):
                value = {str(k): v for k, v in sorted(value.items())}
            out[f.name] = value
        return out


@dataclass(slots=True)
class StructureWork:
    """Work done by one block structure, checked against its amortized budgets."""
    inserted: int = 0
    merged: int = 0
    merge_calls: int = 0
    # older pairs replaced by smaller merged values
    merge_removals: int = 0
    descents: int = 0
    # bisection steps over the block index
    descent_work: int = 0
    merge_work: int = 0
    selected: int = 0
    selection_work: int = 0
