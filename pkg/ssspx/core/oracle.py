# ssspx/core/oracle.py
"""
Reference Dijkstra over the same label algebra as the solver.
"""
import heapq
import logging
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Set, Union

from ssspx.core.graph import Graph, ReducedGraph
from ssspx.core.labels import INFINITY, NO_PRED, DistLabel, LabelStore
from ssspx.core.stats import ExecStats
from ssspx.utils.errors import SourceOutOfRange

logger = logging.getLogger(__name__)


@dataclass
class OracleResult:
    source: int
    labels: List[DistLabel]
    order: List[int] = field(default_factory=list)

    def lengths(self) -> List[Optional[float]]:
        return [lab.length if lab.is_finite() else None for lab in self.labels]

    def reachable(self, v: int) -> bool:
        return self.labels[v].is_finite()


def dijkstra(g: Union[Graph, ReducedGraph], source: int, stats: Optional[ExecStats] = None) -> OracleResult:
    if isinstance(g, ReducedGraph):
        g = g.inner
    if not 0 <= source < g.n:
        raise SourceOutOfRange(f"source {source} outside [0, {g.n})")
    store = LabelStore(g.n, stats)
    store.set_source(source)
    d = store.d
    out = g.out
    done = [False] * g.n
    order: List[int] = []
    heap = [(d[source], source)]
    while heap:
        lab, u = heapq.heappop(heap)
        if done[u] or lab != d[u]:
            continue
        done[u] = True
        order.append(u)
        for v, w, _ in out[u]:
            if store.relax(u, v, w, INFINITY) and not done[v]:
                heapq.heappush(heap, (d[v], v))
    return OracleResult(source=source, labels=d, order=order)


def chain_meets(result: OracleResult, marked: Iterable[int]) -> List[bool]:
    """meets[v]: the canonical shortest pred chain of v visits a marked vertex."""
    marks = set(marked)
    labels = result.labels
    meets = [False] * len(labels)
    for v in result.order:
        p = labels[v].pred
        meets[v] = v in marks or (p != NO_PRED and meets[p])
    return meets


def true_targets(result: OracleResult, B: DistLabel, S: Iterable[int]) -> Set[int]:
    """{v : dis(v) < B and the shortest path of v visits S}."""
    meets = chain_meets(result, S)
    labels = result.labels
    return {v for v in result.order if meets[v] and labels[v] < B}
