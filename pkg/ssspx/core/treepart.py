# ssspx/core/treepart.py
"""
Edge-disjoint partition of a rooted tree into subtrees of size [s, 3s).
"""
from collections import defaultdict
from typing import Dict, Iterable, List, Optional, Tuple

from ssspx.core.stats import ExecStats
from ssspx.utils.errors import InvalidSize


class RootedTree:
    """Tree edges are undirected; children are listed in ascending vertex id."""

    def __init__(self, root: int, children: Dict[int, List[int]]):
        self.root = root
        self.children = children
        self._size = 1 + sum(len(c) for c in children.values())

    @classmethod
    def from_edges(cls, root: int, edges: Iterable[Tuple[int, int]]) -> 'RootedTree':
        adj: Dict[int, List[int]] = defaultdict(list)
        for a, b in edges:
            adj[a].append(b)
            adj[b].append(a)
        children: Dict[int, List[int]] = {}
        seen = {root}
        stack = [root]
        while stack:
            v = stack.pop()
            kids = sorted(c for c in adj.get(v, ()) if c not in seen)
            seen.update(kids)
            if kids:
                children[v] = kids
            stack.extend(kids)
        return cls(root, children)

    @classmethod
    def from_parents(cls, parent: Dict[int, int]) -> 'RootedTree':
        """parent maps every vertex to its parent, the root to itself or a negative id."""
        root = None
        children: Dict[int, List[int]] = defaultdict(list)
        for v, p in parent.items():
            if p < 0 or p == v:
                root = v
            else:
                children[p].append(v)
        if root is None:
            raise InvalidSize('parent map has no root')
        return cls(root, {v: sorted(c) for v, c in children.items()})

    def __len__(self):
        return self._size


def partition_tree(tree: RootedTree, s: int, stats: Optional[ExecStats] = None) -> List[List[int]]:
    """Groups in DFS completion order; the root's leftover joins the last group."""
    n = len(tree)
    if not 1 <= s <= n:
        raise InvalidSize(f"group size s={s} must lie in [1, {n}]")

    children = tree.children
    # each open frame's pending group is a linked chain starting at the frame vertex
    nxt: Dict[int, int] = {}
    tail: Dict[int, int] = {}
    size: Dict[int, int] = {}
    groups: List[List[int]] = []
    ops = 0

    def take(v: int) -> List[int]:
        nonlocal ops
        out = []
        x = v
        for _ in range(size[v]):
            out.append(x)
            x = nxt.get(x, -1)
        ops += len(out)
        return out

    root = tree.root
    tail[root] = root
    size[root] = 1
    stack: List[List[int]] = [[root, 0]]
    while stack:
        frame = stack[-1]
        v, i = frame
        kids = children.get(v, ())
        ops += 1
        if i < len(kids):
            frame[1] = i + 1
            c = kids[i]
            tail[c] = c
            size[c] = 1
            stack.append([c, 0])
            continue
        stack.pop()
        if not stack:
            break
        p = stack[-1][0]
        nxt[tail[p]] = v
        tail[p] = tail[v]
        size[p] += size[v]
        if size[p] >= s:
            groups.append(take(p))
            tail[p] = p
            size[p] = 1

    rest = take(root)
    if groups:
        last = groups[-1]
        present = set(last)
        last.extend(x for x in rest if x not in present)
        ops += len(rest)
    else:
        groups.append(rest)

    if stats is not None:
        stats.partition_ops += ops
    return groups


def group_edges(groups: List[List[int]], edges: Iterable[Tuple[int, int]]) -> List[List[Tuple[int, int]]]:
    """Assigns each tree edge to the one group holding both of its endpoints."""
    owner: Dict[int, List[int]] = defaultdict(list)
    for j, g in enumerate(groups):
        for v in g:
            owner[v].append(j)
    out: List[List[Tuple[int, int]]] = [[] for _ in groups]
    for a, b in edges:
        ja = owner.get(a, ())
        jb = set(owner.get(b, ()))
        for j in ja:
            if j in jb:
                out[j].append((a, b))
                break
    return out
