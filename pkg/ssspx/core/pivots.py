# ssspx/core/pivots.py
"""
find_pivots: bounded local Dijkstra searches from a frontier S.

Each search from x in S grows a tree K of valid relaxations. It stops when K
reaches k vertices (a new forest tree), when it touches a vertex of an
existing forest tree (K is merged into that tree), or when its heap runs dry
(K is kept as an arborescence rooted at x). Forest trees are then cut into
subtrees of size [k, 3k) and every non-root vertex of S lands in the first
subtree containing it.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from ssspx.core.graph import Graph
from ssspx.core.heap import IndexedHeap, SearchScratch
from ssspx.core.labels import NO_PRED, DistLabel, LabelStore
from ssspx.core.stats import ExecStats
from ssspx.core.treepart import RootedTree, group_edges, partition_tree

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


@dataclass
class ForestTree:
    vertices: List[int] = field(default_factory=list)
    edges: List[Edge] = field(default_factory=list)


@dataclass
class PivotOutput:
    groups: List[List[int]]
    trees: List[List[Edge]]
    Q: List[int]
    W: List[int]
    # subtrees produced by the partition, including those holding no vertex of S
    n_subtrees: int = 0
    forest: List[ForestTree] = field(default_factory=list)

    @property
    def W_roots(self) -> List[int]:
        return self.Q

    @property
    def p(self) -> int:
        return len(self.groups)


def find_pivots(B: DistLabel, S: Sequence[int], k: int, store: LabelStore, g: Graph,
                scratch: SearchScratch, stats: ExecStats) -> PivotOutput:
    stats.find_pivots_calls += 1
    scratch.new_call()
    d = store.d
    out = g.out

    forest: List[ForestTree] = []
    W: Dict[int, None] = {}
    Q: List[int] = []

    for x in S:
        if scratch.forest_of(x) >= 0:
            continue
        heap = IndexedHeap(scratch, stats)
        heap.push(x, d[x])
        parent: Dict[int, int] = {x: NO_PRED}
        hit = -1
        hit_edge: Edge = (NO_PRED, NO_PRED)
        while heap and len(parent) < k:
            u, _ = heap.pop_min()
            for v, w, _ in out[u]:
                if not store.relax(u, v, w, B):
                    continue
                fid = scratch.forest_of(v)
                if fid >= 0:
                    hit, hit_edge = fid, (u, v)
                    break
                if heap.contains(v):
                    # replaces the old incoming edge of v
                    parent[v] = u
                    heap.decrease_key(v, d[v])
                elif v not in parent:
                    parent[v] = u
                    heap.push(v, d[v])
            if hit >= 0:
                break

        if hit >= 0:
            tree = forest[hit]
            _absorb(tree, parent, hit, scratch)
            tree.edges.append(hit_edge)
        elif len(parent) >= k:
            fid = len(forest)
            tree = ForestTree()
            forest.append(tree)
            _absorb(tree, parent, fid, scratch)
        else:
            Q.append(x)
            W.update(dict.fromkeys(parent))

    q_set = set(Q)
    pending = {x for x in S if x not in q_set}
    groups: List[List[int]] = []
    trees: List[List[Edge]] = []
    n_subtrees = 0
    for tree in forest:
        rooted = RootedTree.from_edges(tree.vertices[0], tree.edges)
        parts = partition_tree(rooted, k, stats)
        n_subtrees += len(parts)
        part_edges = group_edges(parts, tree.edges)
        for part, edges in zip(parts, part_edges):
            members = [v for v in part if v in pending]
            if not members:
                continue
            pending.difference_update(members)
            groups.append(members)
            trees.append(edges)

    logger.debug("find_pivots |S|=%d: %d groups, |Q|=%d, |W|=%d", len(S), len(groups), len(Q), len(W))
    return PivotOutput(groups=groups, trees=trees, Q=Q, W=list(W),
                       n_subtrees=n_subtrees, forest=forest)


def _absorb(tree: ForestTree, parent: Dict[int, int], fid: int, scratch: SearchScratch):
    for v, p in parent.items():
        tree.vertices.append(v)
        scratch.set_forest(v, fid)
        if p != NO_PRED:
            tree.edges.append((p, v))


def heap_budget(out: PivotOutput, k: int, max_degree: int) -> int:
    """Upper bound on heap operations of one find_pivots call."""
    return 3 * (out.n_subtrees + len(out.Q)) * k * (max_degree + 2) + len(out.Q)
