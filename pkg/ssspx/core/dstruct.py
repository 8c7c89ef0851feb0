# ssspx/core/dstruct.py
"""
Partial-sorting block structure D and the M = 1 base map.

Blocks are kept ordered by their lower bound; items inside a block are
unsorted. Values must be distinct (labels carry their own vertex id, so
they are), and every value stored must stay below the structure bound B.
"""
import heapq
import logging
import math
from bisect import bisect_right
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from ssspx.core.labels import DistLabel, MINIMAL
from ssspx.core.stats import ExecStats, StructureWork
from ssspx.utils.errors import InvalidParameter, MergePreconditionViolated

logger = logging.getLogger(__name__)

# constant of the amortized work budgets checked by BlockStructure.budget_problems
BUDGET_FACTOR = 16

Pair = Tuple[int, DistLabel]


def select(values: Sequence, i: int, stats: Optional[ExecStats] = None):
    """i-th smallest (0-based) of distinct values, by median of medians."""
    items = list(values)
    if not 0 <= i < len(items):
        raise IndexError(f"rank {i} outside [0, {len(items)})")
    while True:
        n = len(items)
        if stats is not None:
            stats.selection_work += n
        if n <= 32:
            return sorted(items)[i]
        medians = [sorted(items[j:j + 5])[(min(5, n - j) - 1) // 2] for j in range(0, n, 5)]
        pivot = select(medians, (len(medians) - 1) // 2, stats)
        lower = [x for x in items if x < pivot]
        upper = [x for x in items if pivot < x]
        equal = n - len(lower) - len(upper)
        if i < len(lower):
            items = lower
        elif i < len(lower) + equal:
            return pivot
        else:
            i -= len(lower) + equal
            items = upper


class Block:
    __slots__ = ('lo', 'keys', 'vals', 'alive')

    def __init__(self, lo: DistLabel):
        self.lo = lo
        self.keys: List[int] = []
        self.vals: List[DistLabel] = []
        self.alive = True

    def __len__(self):
        return len(self.keys)


class BlockStructure:
    def __init__(self, M: int, B: DistLabel, stats: Optional[ExecStats] = None, debug: bool = False):
        if M < 2:
            raise InvalidParameter(f"block structure needs M >= 2, got {M}")
        self.M = M
        self.B = B
        self.stats = stats if stats is not None else ExecStats()
        self.debug = debug
        self.count = 0
        self.loc: Dict[int, Tuple[Block, int]] = {}
        self.work = StructureWork()
        self._moves = 0
        # set by pull, cleared by anything else that reshapes the front
        self._pulled = False
        self._reset()

    def _reset(self):
        first = Block(MINIMAL)
        self.blocks: List[Block] = [first]
        self._los: List[DistLabel] = [MINIMAL]

    def __len__(self):
        return self.count

    def __bool__(self):
        return self.count > 0

    def __contains__(self, key: int) -> bool:
        return key in self.loc

    def get(self, key: int) -> Optional[DistLabel]:
        entry = self.loc.get(key)
        if entry is None:
            return None
        blk, idx = entry
        return blk.vals[idx]

    def items(self) -> Iterable[Pair]:
        for blk in self.blocks:
            yield from zip(blk.keys, blk.vals)

    def block_sizes(self) -> List[int]:
        return [len(b) for b in self.blocks]

    # --- placement helpers

    def _index(self, blk: Block) -> int:
        return bisect_right(self._los, blk.lo) - 1

    def _find(self, value: DistLabel) -> int:
        st = self.stats
        steps = max(1, len(self._los).bit_length())
        st.descents += 1
        st.comparisons += steps
        self.work.descents += 1
        self.work.descent_work += steps
        return bisect_right(self._los, value) - 1

    def _append(self, blk: Block, key: int, value: DistLabel):
        self.loc[key] = (blk, len(blk.keys))
        blk.keys.append(key)
        blk.vals.append(value)
        self.count += 1

    def _remove(self, key: int) -> Block:
        blk, idx = self.loc.pop(key)
        last = len(blk.keys) - 1
        if idx != last:
            moved = blk.keys[last]
            blk.keys[idx] = moved
            blk.vals[idx] = blk.vals[last]
            self.loc[moved] = (blk, idx)
        blk.keys.pop()
        blk.vals.pop()
        self.count -= 1
        return blk

    def _relocate(self, blk: Block):
        self._moves += len(blk.keys)
        loc = self.loc
        for idx, key in enumerate(blk.keys):
            loc[key] = (blk, idx)

    def _select(self, values: Sequence[DistLabel], i: int) -> DistLabel:
        before = self.stats.selection_work
        pivot = select(values, i, self.stats)
        self.work.selected += len(values)
        self.work.selection_work += self.stats.selection_work - before
        return pivot

    # --- normalisation

    def _split(self, blk: Block):
        while len(blk) > self.M:
            i = self._index(blk)
            pivot = self._select(blk.vals, len(blk) // 2)
            upper = Block(pivot)
            keep_k, keep_v = [], []
            for key, val in zip(blk.keys, blk.vals):
                if val < pivot:
                    keep_k.append(key)
                    keep_v.append(val)
                else:
                    upper.keys.append(key)
                    upper.vals.append(val)
            blk.keys, blk.vals = keep_k, keep_v
            self.blocks.insert(i + 1, upper)
            self._los.insert(i + 1, pivot)
            self._relocate(blk)
            self._relocate(upper)
            if len(upper) > self.M:
                self._split(upper)

    def _join(self, blk: Block) -> Block:
        i = self._index(blk)
        if i + 1 < len(self.blocks):
            keep, gone = blk, self.blocks[i + 1]
            j = i + 1
        else:
            keep, gone = self.blocks[i - 1], blk
            j = i
        base = len(keep.keys)
        self._moves += len(gone.keys)
        keep.keys.extend(gone.keys)
        keep.vals.extend(gone.vals)
        for off, key in enumerate(gone.keys):
            self.loc[key] = (keep, base + off)
        gone.alive = False
        del self.blocks[j]
        del self._los[j]
        return keep

    def _normalize(self, blk: Block):
        if not blk.alive:
            return
        while len(self.blocks) > 1 and 3 * len(blk) < self.M:
            blk = self._join(blk)
        if len(blk) > self.M:
            self._split(blk)

    def _collapse_if_small(self):
        if len(self.blocks) > 1 and 3 * self.count < self.M:
            keys, vals = [], []
            for blk in self.blocks:
                keys.extend(blk.keys)
                vals.extend(blk.vals)
                blk.alive = False
            self._reset()
            first = self.blocks[0]
            first.keys, first.vals = keys, vals
            self._relocate(first)

    # --- public operations

    def insert(self, key: int, value: DistLabel):
        """Keeps the smaller value when key is already present."""
        stale: Optional[Block] = None
        entry = self.loc.get(key)
        if entry is not None:
            self.stats.comparisons += 1
            blk, idx = entry
            if blk.vals[idx] <= value:
                return
            stale = self._remove(key)
        self.stats.inserts += 1
        self.work.inserted += 1
        self._pulled = False
        blk = self.blocks[self._find(value)]
        self._append(blk, key, value)
        self._normalize(blk)
        if stale is not None and stale is not blk:
            self._normalize(stale)
        self._collapse_if_small()

    def pull(self) -> Tuple[List[int], DistLabel]:
        """Keys of the min(M, count) smallest values and a bound x separating them from the rest."""
        st = self.stats
        st.pulls += 1
        if self.count <= self.M:
            keys = [k for blk in self.blocks for k in blk.keys]
            for blk in self.blocks:
                blk.alive = False
            self.loc.clear()
            self.count = 0
            self._reset()
            return keys, self.B

        taken: List[Pair] = []
        j = 0
        while len(taken) < self.M + 1:
            blk = self.blocks[j]
            taken.extend(zip(blk.keys, blk.vals))
            blk.alive = False
            j += 1
        del self.blocks[:j]
        del self._los[:j]

        x = self._select([v for _, v in taken], self.M)
        out: List[int] = []
        front = Block(MINIMAL)
        for key, val in taken:
            if val < x:
                out.append(key)
                del self.loc[key]
            else:
                front.keys.append(key)
                front.vals.append(val)
        self.count -= len(out)
        self.blocks.insert(0, front)
        self._los.insert(0, MINIMAL)
        self._relocate(front)
        self._settle_front()
        self._collapse_if_small()
        self._pulled = True
        return out, x

    def _settle_front(self):
        """Bring the first block into [ceil(M/2), floor(2M/3)] unless it is the only one."""
        lo_w = -(-self.M // 2)
        hi_w = 2 * self.M // 3
        blocks = self.blocks
        size, j = 0, 0
        while j < len(blocks) and (j == 0 or size < lo_w):
            size += len(blocks[j])
            j += 1
        if j == 1 and size <= hi_w:
            return
        keys: List[int] = []
        vals: List[DistLabel] = []
        for blk in blocks[:j]:
            keys.extend(blk.keys)
            vals.extend(blk.vals)
            blk.alive = False
        front = Block(MINIMAL)
        rest: Optional[Block] = None
        if size <= hi_w:
            front.keys, front.vals = keys, vals
        else:
            pivot = self._select(vals, hi_w)
            rest = Block(pivot)
            for key, val in zip(keys, vals):
                part = front if val < pivot else rest
                part.keys.append(key)
                part.vals.append(val)
            if 3 * len(rest) < self.M:
                if j < len(blocks):
                    nxt = blocks[j]
                    nxt.alive = False
                    rest.keys.extend(nxt.keys)
                    rest.vals.extend(nxt.vals)
                    j += 1
                else:
                    front.keys.extend(rest.keys)
                    front.vals.extend(rest.vals)
                    rest = None
        placed = [front] if rest is None else [front, rest]
        blocks[:j] = placed
        self._los[:j] = [b.lo for b in placed]
        for blk in placed:
            self._relocate(blk)
        if rest is not None and len(rest) > self.M:
            self._split(rest)

    def merge(self, other: Union['BlockStructure', 'BaseMap']):
        """Absorb a structure whose values all lie below every value here; `other` is emptied."""
        if self.debug:
            self._check_merge(other)
        if not other:
            return
        st = self.stats
        st.merges += 1
        st.merged_pairs += len(other)
        work = self.work
        work.merge_calls += 1
        scanned = len(other)
        work.merged += scanned
        moves_before = self._moves
        self._pulled = False
        batch_size = max(1, math.ceil(self.M / 3))
        batch: List[Pair] = []
        if isinstance(other, BlockStructure):
            for blk in other.blocks:
                batch.extend(zip(blk.keys, blk.vals))
                if len(batch) >= batch_size:
                    self._place_batch(batch)
                    batch = []
        else:
            for pair in other.items():
                batch.append(pair)
                if len(batch) >= batch_size:
                    self._place_batch(batch)
                    batch = []
        if batch:
            self._place_batch(batch)
        other.clear()
        self._collapse_if_small()
        work.merge_work += scanned + self._moves - moves_before

    def _place_batch(self, batch: List[Pair]):
        touched: List[Block] = []
        lo_val = min(v for _, v in batch)
        i = self._find(lo_val)
        blk = self.blocks[i]
        hi = self._los[i + 1] if i + 1 < len(self._los) else None
        for key, val in batch:
            entry = self.loc.get(key)
            if entry is not None:
                old_blk, idx = entry
                if old_blk.vals[idx] <= val:
                    continue
                self.work.merge_removals += 1
                touched.append(self._remove(key))
            if hi is None or val < hi:
                target = blk
            else:
                target = self.blocks[self._find(val)]
            self._append(target, key, val)
            if target is not blk:
                touched.append(target)
        self._normalize(blk)
        for t in touched:
            self._normalize(t)

    def clear(self):
        for blk in self.blocks:
            blk.alive = False
        self.loc.clear()
        self.count = 0
        self._pulled = False
        self._reset()

    def min_value(self) -> Optional[DistLabel]:
        if not self.count:
            return None
        return min(v for blk in self.blocks for v in blk.vals)

    def max_value(self) -> Optional[DistLabel]:
        if not self.count:
            return None
        return max(v for blk in self.blocks for v in blk.vals)

    def _check_merge(self, other):
        if isinstance(other, BlockStructure) and not 3 * other.M < self.M:
            raise MergePreconditionViolated(
                f"merged structure has M={other.M}, needs < {self.M}/3")
        if other and self.count:
            if not other.max_value() < self.min_value():
                raise MergePreconditionViolated('merged values must lie below every value already stored')

    def check(self) -> List[str]:
        """Structural problems, empty when every invariant holds."""
        problems = []
        if self._los != [b.lo for b in self.blocks]:
            problems.append('lower-bound index out of sync with blocks')
        if self.blocks[0].lo != MINIMAL:
            problems.append('first block does not start at the minimal bound')
        for i, blk in enumerate(self.blocks):
            hi = self.blocks[i + 1].lo if i + 1 < len(self.blocks) else self.B
            if i + 1 < len(self.blocks) and not blk.lo < hi:
                problems.append(f'block {i} interval is empty or unordered')
            for idx, (key, val) in enumerate(zip(blk.keys, blk.vals)):
                if not (blk.lo <= val < hi):
                    problems.append(f'key {key} value outside block {i} interval')
                if self.loc.get(key) != (blk, idx):
                    problems.append(f'locator entry of key {key} is stale')
            if len(blk) > self.M:
                problems.append(f'block {i} holds {len(blk)} > M={self.M}')
            if len(self.blocks) > 1 and 3 * len(blk) < self.M:
                problems.append(f'block {i} holds {len(blk)} < M/3')
        if self._pulled and len(self.blocks) > 1:
            front = len(self.blocks[0])
            if not -(-self.M // 2) <= front <= 2 * self.M // 3:
                problems.append(f'front block holds {front} after pull, outside [M/2, 2M/3] for M={self.M}')
        if sum(len(b) for b in self.blocks) != self.count or len(self.loc) != self.count:
            problems.append('count does not match stored pairs')
        return problems

    def budget_problems(self) -> List[str]:
        """Amortized work bounds that the counters in `work` break, empty when all hold."""
        w, c = self.work, BUDGET_FACTOR
        n_total = max(self.M, w.inserted + w.merged)
        log_nm = max(1.0, math.log2(n_total / self.M))
        problems = []
        if w.descents > w.inserted + 2 * w.merged:
            problems.append(f'{w.descents} descents for {w.inserted} inserts and {w.merged} merged pairs')
        if w.descent_work > c * w.descents * log_nm:
            problems.append(f'descent work {w.descent_work} above {c} * {w.descents} * log2(N/M)')
        if w.merge_work > c * (w.merged + self.M * (w.merge_calls + w.merge_removals)):
            problems.append(f'merge work {w.merge_work} not linear in {w.merged} merged pairs')
        if w.selection_work > c * w.selected:
            problems.append(f'selection work {w.selection_work} not linear in {w.selected} selected values')
        return problems


class BaseMap:
    """M = 1 ordered map: a heap with lazy deletion and the best value per key."""

    M = 1

    def __init__(self, B: DistLabel, stats: Optional[ExecStats] = None):
        self.B = B
        self.stats = stats if stats is not None else ExecStats()
        self.best: Dict[int, DistLabel] = {}
        self._heap: List[Tuple[DistLabel, int]] = []

    def __len__(self):
        return len(self.best)

    def __bool__(self):
        return bool(self.best)

    def __contains__(self, key: int) -> bool:
        return key in self.best

    def get(self, key: int) -> Optional[DistLabel]:
        return self.best.get(key)

    def insert(self, key: int, value: DistLabel):
        st = self.stats
        cur = self.best.get(key)
        if cur is not None:
            st.comparisons += 1
            if cur <= value:
                return
        st.inserts += 1
        st.comparisons += max(1, len(self._heap).bit_length())
        self.best[key] = value
        heapq.heappush(self._heap, (value, key))

    def _clean_top(self):
        heap, best = self._heap, self.best
        while heap and best.get(heap[0][1]) != heap[0][0]:
            heapq.heappop(heap)

    def pull(self) -> Tuple[List[int], DistLabel]:
        """The single smallest key and the new minimum remaining value (B when empty)."""
        st = self.stats
        st.pulls += 1
        self._clean_top()
        if not self._heap:
            return [], self.B
        st.comparisons += max(1, len(self._heap).bit_length())
        _, key = heapq.heappop(self._heap)
        del self.best[key]
        return [key], self.peek()

    def peek(self) -> DistLabel:
        self._clean_top()
        return self._heap[0][0] if self._heap else self.B

    def items(self) -> List[Pair]:
        return sorted(self.best.items(), key=lambda kv: kv[1])

    def merge(self, other):
        raise InvalidParameter('the M = 1 base map does not support merge')

    def clear(self):
        self.best.clear()
        self._heap.clear()

    def min_value(self) -> Optional[DistLabel]:
        return min(self.best.values()) if self.best else None

    def max_value(self) -> Optional[DistLabel]:
        return max(self.best.values()) if self.best else None


def new_structure(M: int, B: DistLabel, n_hint: Optional[int] = None,
                  stats: Optional[ExecStats] = None, debug: bool = False) -> Union[BlockStructure, BaseMap]:
    if M < 1:
        raise InvalidParameter(f"M must be >= 1, got {M}")
    if M == 1:
        return BaseMap(B, stats)
    if n_hint is not None and n_hint > M and M < math.log2(n_hint / M):
        raise InvalidParameter(f"M={M} is below log2(N/M) for N={n_hint}")
    return BlockStructure(M, B, stats, debug)
