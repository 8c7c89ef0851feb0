# ssspx/services/harness.py
"""
Seeded graph generators and the benchmark runner.

Families:
  random-m    m distinct ordered pairs u != v drawn uniformly
  path        chain 0 -> 1 -> ... -> n-1 plus random chords up to m edges
  grid        near-square grid, both directions between 4-neighbours (m derived)
  layered     m edges, each from a layer to the next one
  star-cycle  hub 0 -> every vertex, plus the cycle 1 -> 2 -> ... -> n-1 -> 1 (m derived)

Structure is drawn first, weights second, from one SplitMix64 stream
seeded with spec.seed.
"""
import csv
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from ssspx.core.bmssp import solve
from ssspx.core.graph import Graph, validate
from ssspx.core.oracle import dijkstra
from ssspx.models.schemas import BenchRecord, Family, GenSpec, SolverConfig, WeightKind, WeightModel
from ssspx.services.rng import SplitMix64
from ssspx.utils.errors import InfeasibleSpec

logger = logging.getLogger(__name__)

Edges = Tuple[List[int], List[int]]

CSV_COLUMNS = [
    'family', 'n', 'm', 'weights', 'seed', 'repetition', 'mode', 't', 'k', 'delta',
    'n_inner', 'm_inner', 'wall_time', 'relaxations', 'comparisons', 'additions',
    'work_per_edge', 'pulls', 'inserts', 'merges', 'find_pivots_calls', 'base_case_calls',
    'max_depth', 'max_direct_per_edge', 'oracle_match',
]


def _random_m(n: int, m: int, rng: SplitMix64) -> Edges:
    pairs = n * (n - 1)
    if m > pairs:
        raise InfeasibleSpec(f"random-m cannot place {m} distinct edges on {n} vertices (max {pairs})")
    if 2 * m > pairs:
        # dense request: rank every ordered pair by a random key
        us, vs = np.nonzero(~np.eye(n, dtype=bool))
        order = np.argsort(rng.next_u64(pairs), kind='stable')[:m]
        return us[order].tolist(), vs[order].tolist()

    seen = set()
    src: List[int] = []
    dst: List[int] = []
    while len(src) < m:
        batch = m - len(src)
        u = rng.below(n, batch)
        v = rng.below(n - 1, batch)
        v = v + (v >= u)
        for a, b in zip(u.tolist(), v.tolist()):
            if (a, b) not in seen:
                seen.add((a, b))
                src.append(a)
                dst.append(b)
    return src, dst


def _path(n: int, m: int, rng: SplitMix64) -> Edges:
    src = list(range(n - 1))
    dst = list(range(1, n))
    extra = m - (n - 1)
    if extra > 0 and n > 1:
        u = rng.below(n, extra)
        v = rng.below(n - 1, extra)
        v = v + (v >= u)
        src.extend(u.tolist())
        dst.extend(v.tolist())
    return src, dst


def _grid(n: int) -> Edges:
    rows = max(1, math.isqrt(n))
    cols = -(-n // rows)
    src: List[int] = []
    dst: List[int] = []
    for i in range(n):
        c = i % cols
        for j in ((i + 1) if c + 1 < cols else -1, i + cols):
            if 0 <= j < n:
                src += [i, j]
                dst += [j, i]
    return src, dst


def _layered(n: int, m: int, rng: SplitMix64) -> Edges:
    width = max(1, math.isqrt(n))
    last_start = (-(-n // width) - 1) * width
    if m and last_start == 0:
        raise InfeasibleSpec(f"layered graph on {n} vertices has a single layer; cannot place {m} edges")
    if m == 0:
        return [], []
    u = rng.below(last_start, m)
    nxt = (u // width + 1) * width
    size = np.minimum(width, n - nxt)
    v = nxt + (rng.next_u64(m) % size.astype(np.uint64)).astype(np.int64)
    return u.tolist(), v.tolist()


def _star_cycle(n: int) -> Edges:
    src = [0] * (n - 1)
    dst = list(range(1, n))
    if n >= 3:
        src.extend(range(1, n))
        dst.extend(list(range(2, n)) + [1])
    return src, dst


def draw_weights(model: WeightModel, m: int, rng: SplitMix64) -> np.ndarray:
    if model.kind == WeightKind.UNIFORM_INTEGER:
        return rng.integers(model.low, model.high, m).astype(np.float64)
    if model.kind == WeightKind.UNIFORM_REAL:
        return model.low + rng.uniform(m) * (model.high - model.low)
    zero = rng.uniform(m) < model.p_zero
    values = rng.integers(model.low, model.high, m).astype(np.float64)
    return np.where(zero, 0.0, values)


def generate(spec: GenSpec) -> Graph:
    """Same spec, same edge list."""
    rng = SplitMix64(spec.seed)
    n, m = spec.n, spec.m
    if spec.family == Family.RANDOM_M:
        src, dst = _random_m(n, m, rng)
    elif spec.family == Family.PATH:
        src, dst = _path(n, m, rng)
    elif spec.family == Family.GRID:
        src, dst = _grid(n)
    elif spec.family == Family.LAYERED:
        src, dst = _layered(n, m, rng)
    else:
        src, dst = _star_cycle(n)
    weights = draw_weights(spec.weights, len(src), rng)
    g = Graph(n, src, dst, weights.tolist())
    validate(g)
    return g


def run_cell(spec: GenSpec, repetition: int, config: SolverConfig, verify: bool) -> BenchRecord:
    g = generate(spec)
    res = solve(g, 0, config)
    match = None
    if verify:
        match = res.distances == dijkstra(g, 0).lengths()
        if not match:
            logger.error("oracle mismatch on %s n=%d seed=%d", spec.family.value, spec.n, spec.seed)
    params = res.params_dict()
    return BenchRecord(
        family=spec.family.value,
        n=g.n,
        m=g.m,
        weights=spec.weights.label(),
        seed=spec.seed,
        repetition=repetition,
        mode=res.mode,
        t=params['t'],
        k=params['k'],
        delta=params['delta'],
        n_inner=params.get('n_inner', g.n),
        m_inner=params.get('m_inner', g.m),
        wall_time=res.wall_time,
        stats=res.stats.to_dict(),
        oracle_match=match,
    )


def run_bench(specs: Sequence[GenSpec], repetitions: int = 1, config: Optional[SolverConfig] = None,
              verify: bool = True, workers: int = 1) -> List[BenchRecord]:
    """One record per (spec, repetition), in input order."""
    config = config or SolverConfig.from_settings()
    cells = [(spec, r) for spec in specs for r in range(repetitions)]
    logger.info("bench: %d cells, %d worker(s), verify=%s", len(cells), workers, verify)
    if workers <= 1:
        return [run_cell(spec, r, config, verify) for spec, r in cells]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(run_cell, spec, r, config, verify) for spec, r in cells]
        return [f.result() for f in futures]


def csv_row(rec: BenchRecord) -> Dict[str, Any]:
    st = rec.stats
    work = st.get('comparisons', 0) + st.get('additions', 0)
    row = rec.model_dump(exclude={'stats'})
    for key in ('relaxations', 'comparisons', 'additions', 'pulls', 'inserts', 'merges',
                'find_pivots_calls', 'base_case_calls', 'max_depth', 'max_direct_per_edge'):
        row[key] = st.get(key, 0)
    row['work_per_edge'] = work / max(rec.m, 1)
    return row


def write_csv(records: Iterable[BenchRecord], path: Union[str, Path]):
    with open(path, 'w', newline='', encoding='utf-8') as f:
        writer = csv.DictWriter(f, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        for rec in records:
            writer.writerow(csv_row(rec))


def write_json(records: Iterable[BenchRecord], path: Union[str, Path]):
    with open(path, 'w', encoding='utf-8') as f:
        json.dump([rec.model_dump(mode='json') for rec in records], f, indent=2)


def summarize_trend(records: Sequence[BenchRecord]) -> Dict[str, Any]:
    """Per-n mean of (comparisons + additions) / m and its growth across the sweep."""
    by_n: Dict[int, List[float]] = {}
    for rec in records:
        st = rec.stats
        by_n.setdefault(rec.n, []).append((st.get('comparisons', 0) + st.get('additions', 0)) / max(rec.m, 1))
    if not by_n:
        return {'n': [], 'work_per_edge': [], 'growth': None, 'bound': None,
                'within_bound': None, 'non_decreasing': None}
    ns = np.array(sorted(by_n))
    per_edge = np.array([np.mean(by_n[n]) for n in ns.tolist()])
    growth = float(per_edge[-1] / per_edge[0]) if per_edge[0] > 0 else math.inf
    bound = math.log2(int(ns[-1])) / 4 if ns[-1] > 1 else 0.0
    return {
        'n': ns.tolist(),
        'work_per_edge': per_edge.tolist(),
        'growth': growth,
        'bound': bound,
        'within_bound': growth < bound,
        'non_decreasing': bool(np.all(np.diff(per_edge) >= 0)),
    }
