# ssspx/core/labels.py
"""
Distance labels: (length, n_edges, curr, pred) tuples compared lexicographically.

Tuple bounds use the same type, so a comparison bound B at a tie still
separates labels by edge count and vertex id. Unset labels hold INFINITY.
"""
import logging
import math
from enum import Enum
from typing import List, NamedTuple, Optional

from ssspx.core.stats import ExecStats

logger = logging.getLogger(__name__)

# pred of a source label; sorts before every real vertex id
NO_PRED = -1


class DistLabel(NamedTuple):
    length: float
    n_edges: int
    curr: int
    pred: int = NO_PRED

    def is_finite(self) -> bool:
        return self.length != math.inf


INFINITY = DistLabel(math.inf, 0, NO_PRED, NO_PRED)
MINIMAL = DistLabel(-math.inf, 0, NO_PRED, NO_PRED)


class Ordering(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def compare(a: DistLabel, b: DistLabel) -> Ordering:
    if a < b:
        return Ordering.LESS
    if a == b:
        return Ordering.EQUAL
    return Ordering.GREATER


def source_label(s: int) -> DistLabel:
    return DistLabel(0.0, 0, s, NO_PRED)


def extend(d_u: DistLabel, v: int, w: float) -> DistLabel:
    return DistLabel(d_u.length + w, d_u.n_edges + 1, v, d_u.curr)


class LabelStore:
    """The global d[] array of one solve."""

    def __init__(self, n: int, stats: Optional[ExecStats] = None):
        self.d: List[DistLabel] = [INFINITY] * n
        self.stats = stats if stats is not None else ExecStats()

    def __len__(self):
        return len(self.d)

    def __getitem__(self, v: int) -> DistLabel:
        return self.d[v]

    def set_source(self, s: int):
        self.d[s] = source_label(s)

    def relax(self, u: int, v: int, w: float, bound: DistLabel) -> bool:
        """Succeeds iff extend(d[u]) <= d[v] and extend(d[u]) < bound."""
        st = self.stats
        st.relaxations += 1
        st.additions += 1
        st.comparisons += 2
        du = self.d[u]
        cand = DistLabel(du.length + w, du.n_edges + 1, v, u)
        dv = self.d[v]
        if cand <= dv and cand < bound:
            if cand == dv:
                st.equal_relaxations += 1
            else:
                st.valid_relaxations += 1
                self.d[v] = cand
            return True
        return False


def path_to(labels: List[DistLabel], v: int) -> List[int]:
    """Vertices from the source to v along pred pointers; [] when v is unreachable."""
    if not labels[v].is_finite():
        return []
    path = [v]
    cur = labels[v]
    # a pred chain has exactly n_edges links
    for _ in range(cur.n_edges):
        cur = labels[cur.pred]
        path.append(cur.curr)
    path.reverse()
    return path
