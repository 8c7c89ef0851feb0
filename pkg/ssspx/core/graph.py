# ssspx/core/graph.py
"""
Directed weighted graphs and the constant-degree reduction.
"""
import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ssspx.utils.errors import InvalidDelta, NegativeWeight, NonFiniteWeight, VertexOutOfRange

logger = logging.getLogger(__name__)

# (dst, weight, edge index)
Arc = Tuple[int, float, int]


class Graph:
    """Edge list over vertices 0..n-1; adjacency is built on first use."""

    def __init__(self, n: int, src: Sequence[int], dst: Sequence[int], weight: Sequence[float]):
        if not (len(src) == len(dst) == len(weight)):
            raise ValueError('src, dst and weight must have equal length')
        self.n = int(n)
        self.src: List[int] = [int(x) for x in src]
        self.dst: List[int] = [int(x) for x in dst]
        self.weight: List[float] = [float(x) for x in weight]
        self._out: Optional[List[List[Arc]]] = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int, float]], check: bool = True) -> 'Graph':
        src, dst, weight = [], [], []
        for u, v, w in edges:
            src.append(u)
            dst.append(v)
            weight.append(w)
        g = cls(n, src, dst, weight)
        if check:
            validate(g)
        return g

    @property
    def m(self) -> int:
        return len(self.src)

    @property
    def out(self) -> List[List[Arc]]:
        if self._out is None:
            out: List[List[Arc]] = [[] for _ in range(self.n)]
            for e, (u, v, w) in enumerate(zip(self.src, self.dst, self.weight)):
                out[u].append((v, w, e))
            self._out = out
        return self._out

    def edges(self) -> Iterator[Tuple[int, int, float]]:
        return zip(self.src, self.dst, self.weight)

    def degrees(self) -> Tuple[np.ndarray, np.ndarray]:
        """(in-degree, out-degree) per vertex."""
        src = np.asarray(self.src, dtype=np.int64)
        dst = np.asarray(self.dst, dtype=np.int64)
        return np.bincount(dst, minlength=self.n), np.bincount(src, minlength=self.n)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n == other.n and self.src == other.src
                and self.dst == other.dst and self.weight == other.weight)

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def validate(g: Graph) -> None:
    """Raises for the lowest-indexed bad edge: ids out of range, then non-finite, then negative weights."""
    if g.m == 0:
        return
    src = np.asarray(g.src, dtype=np.int64)
    dst = np.asarray(g.dst, dtype=np.int64)
    w = np.asarray(g.weight, dtype=np.float64)

    bad_id = (src < 0) | (src >= g.n) | (dst < 0) | (dst >= g.n)
    bad_finite = ~np.isfinite(w)
    bad_sign = np.less(w, 0.0, where=~bad_finite, out=np.zeros(w.shape, dtype=bool))
    bad = np.flatnonzero(bad_id | bad_finite | bad_sign)
    if bad.size == 0:
        return
    e = int(bad[0])
    if bad_id[e]:
        raise VertexOutOfRange(
            f"edge {e} ({g.src[e]} -> {g.dst[e]}) leaves the vertex range [0, {g.n})", edge_index=e)
    if bad_finite[e]:
        raise NonFiniteWeight(f"edge {e} has non-finite weight {g.weight[e]!r}", edge_index=e)
    raise NegativeWeight(f"edge {e} has negative weight {g.weight[e]!r}", edge_index=e)


@dataclass
class ReducedGraph:
    inner: Graph
    delta: int
    rep: List[int]
    origin: List[int]
    # number of inner edges that stand for original edges (inner edge e < m_orig is original edge e)
    m_orig: int

    @property
    def n_inner(self) -> int:
        return self.inner.n


def cycle_sizes(g: Graph, delta: int) -> np.ndarray:
    indeg, outdeg = g.degrees()
    total = indeg + outdeg
    return np.maximum(1, -(-total // (delta - 2)))


def reduce_degree(g: Graph, delta: int) -> ReducedGraph:
    """Replace every vertex with a zero-weight cycle so in/out degrees stay <= delta."""
    if delta < 3:
        raise InvalidDelta(f"delta must be >= 3, got {delta}")

    sizes = cycle_sizes(g, delta)
    base = np.zeros(g.n, dtype=np.int64)
    if g.n > 1:
        base[1:] = np.cumsum(sizes)[:-1]
    n_inner = int(sizes.sum())
    indeg, _ = g.degrees()

    sizes_l = sizes.tolist()
    base_l = base.tolist()
    indeg_l = indeg.tolist()

    # incident slots: incoming edges first, then outgoing, each by edge index
    in_rank = [0] * g.n
    out_rank = [0] * g.n
    src, dst, weight = [], [], []
    for u, v, w in g.edges():
        tail = base_l[u] + (indeg_l[u] + out_rank[u]) % sizes_l[u]
        out_rank[u] += 1
        head = base_l[v] + in_rank[v] % sizes_l[v]
        in_rank[v] += 1
        src.append(tail)
        dst.append(head)
        weight.append(w)

    for v in range(g.n):
        c = sizes_l[v]
        if c < 2:
            continue
        b = base_l[v]
        for i in range(c):
            src.append(b + i)
            dst.append(b + (i + 1) % c)
            weight.append(0.0)

    inner = Graph(n_inner, src, dst, weight)
    origin = np.repeat(np.arange(g.n, dtype=np.int64), sizes).tolist()
    logger.debug("reduced n=%d m=%d to n_inner=%d m_inner=%d (delta=%d)",
                 g.n, g.m, inner.n, inner.m, delta)
    return ReducedGraph(inner=inner, delta=delta, rep=base_l, origin=origin, m_orig=g.m)


def max_degrees(g: Graph) -> Tuple[int, int]:
    if g.n == 0:
        return 0, 0
    indeg, outdeg = g.degrees()
    return int(indeg.max()), int(outdeg.max())
