# ssspx/core/heap.py
"""
Position-tracked binary min-heap for the local searches of find_pivots.

Positions live in SearchScratch arrays stamped with the current search epoch,
so a new search starts without clearing anything.
"""
from typing import List, Tuple

from ssspx.core.labels import DistLabel
from ssspx.core.stats import ExecStats


class SearchScratch:
    """Per-vertex tags shared by every find_pivots call of one solve."""

    def __init__(self, n: int):
        self.n = n
        self.pos: List[int] = [-1] * n
        self.pos_stamp: List[int] = [0] * n
        self.search_epoch = 0
        # tree membership: forest id valid while forest_stamp == call_epoch
        self.forest: List[int] = [-1] * n
        self.forest_stamp: List[int] = [0] * n
        self.call_epoch = 0

    def new_search(self) -> int:
        self.search_epoch += 1
        return self.search_epoch

    def new_call(self) -> int:
        self.call_epoch += 1
        return self.call_epoch

    def forest_of(self, v: int) -> int:
        if self.forest_stamp[v] == self.call_epoch:
            return self.forest[v]
        return -1

    def set_forest(self, v: int, fid: int):
        self.forest[v] = fid
        self.forest_stamp[v] = self.call_epoch


class IndexedHeap:
    def __init__(self, scratch: SearchScratch, stats: ExecStats):
        self.scratch = scratch
        self.stats = stats
        self.items: List[Tuple[DistLabel, int]] = []
        self.epoch = scratch.new_search()

    def __len__(self):
        return len(self.items)

    def __bool__(self):
        return bool(self.items)

    def contains(self, v: int) -> bool:
        sc = self.scratch
        return sc.pos_stamp[v] == self.epoch and sc.pos[v] >= 0

    def push(self, v: int, key: DistLabel):
        self.stats.heap_ops += 1
        sc = self.scratch
        sc.pos_stamp[v] = self.epoch
        sc.pos[v] = len(self.items)
        self.items.append((key, v))
        self._sift_up(len(self.items) - 1)

    def decrease_key(self, v: int, key: DistLabel):
        self.stats.heap_ops += 1
        i = self.scratch.pos[v]
        self.items[i] = (key, v)
        self._sift_up(i)

    def pop_min(self) -> Tuple[int, DistLabel]:
        self.stats.heap_ops += 1
        items = self.items
        key, v = items[0]
        last = items.pop()
        self.scratch.pos[v] = -1
        if items:
            items[0] = last
            self.scratch.pos[last[1]] = 0
            self._sift_down(0)
        return v, key

    def _sift_up(self, i: int):
        items, pos = self.items, self.scratch.pos
        entry = items[i]
        cmp = 0
        while i > 0:
            parent = (i - 1) >> 1
            cmp += 1
            if entry[0] < items[parent][0]:
                items[i] = items[parent]
                pos[items[i][1]] = i
                i = parent
            else:
                break
        items[i] = entry
        pos[entry[1]] = i
        self.stats.comparisons += cmp

    def _sift_down(self, i: int):
        items, pos = self.items, self.scratch.pos
        size = len(items)
        entry = items[i]
        cmp = 0
        while True:
            child = 2 * i + 1
            if child >= size:
                break
            if child + 1 < size:
                cmp += 1
                if items[child + 1][0] < items[child][0]:
                    child += 1
            cmp += 1
            if items[child][0] < entry[0]:
                items[i] = items[child]
                pos[items[i][1]] = i
                i = child
            else:
                break
        items[i] = entry
        pos[entry[1]] = i
        self.stats.comparisons += cmp
