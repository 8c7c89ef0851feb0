# ssspx/core/bmssp.py
"""
Bounded multi-source shortest paths: the recursion, its Dijkstra base case,
parameter selection and the top-level solve.
"""
import logging
import math
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Union

from ssspx.core import checks
from ssspx.core.dstruct import BaseMap, BlockStructure, new_structure
from ssspx.core.graph import Graph, ReducedGraph, max_degrees, reduce_degree, validate
from ssspx.core.heap import SearchScratch
from ssspx.core.labels import INFINITY, DistLabel, LabelStore, path_to
from ssspx.core.oracle import OracleResult, dijkstra, true_targets
from ssspx.core.pivots import find_pivots, heap_budget
from ssspx.core.stats import ExecStats
from ssspx.models.schemas import FallbackMode, ParamChoice, SolveParams, SolveReport, SolverConfig
from ssspx.utils.error_handler import InvariantReport
from ssspx.utils.errors import SourceOutOfRange

logger = logging.getLogger(__name__)


class Status(str, Enum):
    FULL = "full"
    PARTIAL = "partial"


@dataclass
class BmsspResult:
    B_prime: DistLabel
    U: List[int]
    D: Union[BlockStructure, BaseMap]
    status: Status

    @property
    def full(self) -> bool:
        return self.status == Status.FULL


class FrameMarks:
    """Per-level U membership. Frames of one level never overlap, so one stamped array per level suffices."""

    def __init__(self, n: int, levels: int):
        self.stamp = [[0] * n for _ in range(levels + 1)]
        self.epoch = [0] * (levels + 1)

    def open(self, level: int):
        self.epoch[level] += 1

    def mark(self, level: int, v: int):
        self.stamp[level][v] = self.epoch[level]

    def marked(self, level: int, v: int) -> bool:
        return self.stamp[level][v] == self.epoch[level]


@dataclass
class SolverContext:
    graph: Graph
    store: LabelStore
    params: SolveParams
    scratch: SearchScratch
    marks: FrameMarks
    stats: ExecStats
    debug: bool = False
    oracle: Optional[OracleResult] = None
    report: Optional[InvariantReport] = None
    max_degree: int = 0


def choose_params(n: int, m: int, config: Optional[SolverConfig] = None) -> ParamChoice:
    config = config or SolverConfig()
    log_n = math.log2(n) if n > 1 else 0.0
    loglog = math.log2(log_n) if log_n > 1 else 0.0
    delta = max(3, math.floor(0.25 * min(m / n if n else 0.0, loglog)))
    if config.force_delta is not None:
        delta = config.force_delta
    t = math.ceil(math.sqrt(log_n * loglog / delta)) if log_n * loglog > 0 else 1
    if config.force_t is not None:
        t = config.force_t
    k = math.ceil(t / math.log2(t)) if t >= 2 else 1
    if config.force_k is not None:
        k = config.force_k

    reason = None
    if config.fallback == FallbackMode.ALWAYS:
        reason = 'fallback forced by configuration'
    elif config.fallback == FallbackMode.AUTO:
        if n < 2 ** 10:
            reason = f'n={n} below 2^10'
        elif m >= n * log_n:
            reason = 'dense regime: m >= n log2 n'
        elif t < 4:
            reason = f't={t} below 4'
        elif delta > math.log2(k):
            reason = f'delta={delta} exceeds log2 k={math.log2(k):.3f}'
    return ParamChoice(n=n, m=m, t=t, k=k, delta=delta, fallback_reason=reason)


def level_count(n_inner: int, t: int) -> int:
    if n_inner <= 1:
        return 0
    return math.ceil(math.log2(n_inner) / t)


def base_case(B: DistLabel, S: Sequence[int], ctx: SolverContext) -> BmsspResult:
    st = ctx.stats
    st.base_case_calls += 1
    store = ctx.store
    d = store.d
    out = ctx.graph.out
    cap = ctx.params.t ** 3

    H = BaseMap(B, st)
    for x in S:
        H.insert(x, d[x])
    U: List[int] = []
    while H and len(U) <= cap:
        keys, _ = H.pull()
        u = keys[0]
        U.append(u)
        for v, w, _ in out[u]:
            if store.relax(u, v, w, B):
                H.insert(v, d[v])
    B_prime = H.peek()
    status = Status.FULL if B_prime == B else Status.PARTIAL
    st.record_exit(0, status == Status.FULL, len(U), cap)
    return BmsspResult(B_prime=B_prime, U=U, D=H, status=status)


def bmssp(B: DistLabel, S: Sequence[int], level: int, ctx: SolverContext, depth: int = 0) -> BmsspResult:
    st = ctx.stats
    if depth > st.max_depth:
        st.max_depth = depth
    oracle = ctx.oracle
    if len(S) > ctx.params.s_cap(level):
        st.oversized_frontiers += 1
        if ctx.debug and len(S) > ctx.params.entry_cap(level):
            ctx.report.log_violation(f'sizes[l={level}]', '|S| exceeds the frontier cap of its level',
                                     {'size': len(S), 'cap': ctx.params.entry_cap(level)})
    if oracle is not None:
        checks.check_frontier(oracle, ctx.store.d, B, S, (), S, ctx.report, stage=f'entry[l={level}]')

    if level == 0:
        res = base_case(B, S, ctx)
        if oracle is not None:
            checks.check_frame(oracle, ctx.store.d, B, S, res.B_prime, res.U, (k for k, _ in res.D.items()),
                               res.full, ctx.report, level)
        return res

    store, params, marks = ctx.store, ctx.params, ctx.marks
    d = store.d
    out = ctx.graph.out
    M = params.block_size(level)
    D = new_structure(M, B, stats=st, debug=ctx.debug)

    ops_before = st.heap_ops
    piv = find_pivots(B, S, params.k, store, ctx.graph, ctx.scratch, st)
    if ctx.debug:
        _audit_pivots(piv, S, ctx, st.heap_ops - ops_before, B, level)

    # pivot groups: live members, member -> group, current pivot per group
    groups: List[Dict[int, None]] = []
    member: Dict[int, int] = {}
    pivot: List[int] = []
    for j, P in enumerate(piv.groups):
        groups.append(dict.fromkeys(P))
        for v in P:
            member[v] = j
        p = min(P, key=d.__getitem__)
        pivot.append(p)
        D.insert(p, d[p])

    B_prime = min([B] + [d[p] for p in pivot])
    marks.open(level)
    U: List[int] = []
    u_cap = params.u_cap(level)
    expand_cap = M + 3 * params.k * M

    while len(U) <= u_cap and D:
        keys, B_i = D.pull()
        if ctx.debug and not (B_prime <= B_i <= B):
            ctx.report.log_violation(f'bounds[l={level}]', 'pulled bound outside [B\'_(i-1), B]',
                                     {'B_i': B_i, 'B_prime': B_prime, 'B': B})
        S_i = [x for x in keys if not marks.marked(level, x)]
        in_S = set(S_i)
        for x in list(S_i):
            j = member.get(x)
            if j is not None and pivot[j] == x:
                for v in groups[j]:
                    if v not in in_S and d[v] < B_i:
                        S_i.append(v)
                        in_S.add(v)
        if ctx.debug and len(S_i) > expand_cap:
            ctx.report.log_violation(f'sizes[l={level}]', 'expanded S_i exceeds M + 3kM',
                                     {'size': len(S_i), 'cap': expand_cap})

        if S_i:
            sub = bmssp(B_i, S_i, level - 1, ctx, depth + 1)
            D.merge(sub.D)
            B_i_prime, U_i = sub.B_prime, sub.U
        else:
            B_i_prime, U_i = B_i, []

        if ctx.debug:
            overlap = [u for u in U_i if marks.marked(level, u)]
            if overlap:
                ctx.report.log_violation(f'disjoint[l={level}]', 'sub-call U_i overlaps earlier U_i',
                                         {'vertices': overlap[:20]})
            if B_i_prime < B_prime:
                ctx.report.log_violation(f'bounds[l={level}]', "B' decreased across iterations",
                                         {'before': B_prime, 'after': B_i_prime})

        J: Dict[int, None] = {}
        for u in U_i:
            marks.mark(level, u)
            j = member.pop(u, None)
            if j is not None:
                del groups[j][u]
                if pivot[j] == u and groups[j]:
                    J[j] = None

        for u in U_i:
            for v, w, e in out[u]:
                if store.relax(u, v, w, B):
                    dv = d[v]
                    if not dv < B_i:
                        D.insert(v, dv)
                        st.count_direct(e)
                        j = member.get(v)
                        if j is not None and j not in J and d[pivot[j]] > dv:
                            pivot[j] = v

        for j in J:
            # a later vertex of the same U_i may have emptied the group
            if not groups[j]:
                continue
            p = min(groups[j], key=d.__getitem__)
            pivot[j] = p
            D.insert(p, d[p])

        B_prime = B_i_prime
        U.extend(U_i)

    for x in S:
        dx = d[x]
        if B_prime <= dx < B:
            D.insert(x, dx)

    W_prime = [x for x in piv.W if not marks.marked(level, x) and d[x] < B_prime]
    for u in W_prime:
        marks.mark(level, u)
        for v, w, _ in out[u]:
            if store.relax(u, v, w, B):
                dv = d[v]
                if not dv < B_prime:
                    D.insert(v, dv)
    U.extend(W_prime)

    status = Status.FULL if B_prime == B else Status.PARTIAL
    st.record_exit(level, status == Status.FULL, len(U), u_cap)
    logger.debug("bmssp l=%d |S|=%d -> |U|=%d %s", level, len(S), len(U), status.value)
    if ctx.debug and isinstance(D, BlockStructure):
        for problem in D.budget_problems():
            ctx.report.log_violation(f'budget[l={level}]', problem, {'M': M})
    if oracle is not None:
        checks.check_frame(oracle, d, B, S, B_prime, U, (k for k, _ in D.items()),
                           status == Status.FULL, ctx.report, level)
    return BmsspResult(B_prime=B_prime, U=U, D=D, status=status)


def _audit_pivots(piv, S: Sequence[int], ctx: SolverContext, heap_ops: int, B: DistLabel, level: int):
    report = ctx.report
    stage = f'find_pivots[l={level}]'
    k = ctx.params.k
    seen = set()
    for P in piv.groups:
        if len(P) >= 3 * k:
            report.log_violation(stage, 'pivot group holds 3k or more vertices', {'size': len(P)})
        if seen.intersection(P):
            report.log_violation(stage, 'pivot groups overlap')
        seen.update(P)
    if seen.intersection(piv.Q) or seen.union(piv.Q) != set(S):
        report.log_violation(stage, 'pivot groups and Q do not partition S')
    if piv.p > len(S):
        report.log_violation(stage, 'more pivot groups than frontier vertices', {'p': piv.p, 'S': len(S)})
    if not set(piv.W_roots) <= set(piv.W):
        report.log_violation(stage, 'a root of W is missing from W')
    used = set()
    for edges in piv.trees:
        own = {(min(a, b), max(a, b)) for a, b in edges}
        if used & own:
            report.log_violation(stage, 'pivot group trees share an edge')
        used |= own
    n_forest = len({v for tree in piv.forest for v in tree.vertices})
    if k > 1 and piv.p * (k - 1) > n_forest:
        report.log_violation(stage, 'more pivot groups than forest size allows',
                             {'p': piv.p, 'forest': n_forest})
    if len(piv.W) > k * len(piv.Q) + len(piv.Q):
        report.log_violation(stage, '|W| exceeds k|Q| + |Q|', {'W': len(piv.W), 'Q': len(piv.Q)})
    for tree in piv.forest:
        if len(tree.edges) != len(tree.vertices) - 1 or len(set(tree.vertices)) != len(tree.vertices):
            report.log_violation(stage, 'forest tree is not a tree', {'vertices': len(tree.vertices)})
    budget = heap_budget(piv, k, ctx.max_degree)
    if heap_ops > budget:
        report.log_violation(stage, 'heap operations exceed budget', {'ops': heap_ops, 'budget': budget})
    if ctx.oracle is not None:
        Y = [v for P in piv.groups for v in P]
        checks.check_frontier(ctx.oracle, ctx.store.d, B, S, piv.W, Y, report, stage=f'{stage}/frontier')
        n_targets = len(true_targets(ctx.oracle, B, S))
        if k > 1 and piv.p * k > 2 * n_targets:
            report.log_violation(stage, 'pivot groups exceed 2|targets|/k', {'p': piv.p, 'targets': n_targets})


@dataclass
class SolveResult:
    source: int
    distances: List[Optional[float]]
    stats: ExecStats
    choice: ParamChoice
    mode: str
    params: Optional[SolveParams] = None
    labels: List[DistLabel] = field(default_factory=list)
    reduced: Optional[ReducedGraph] = None
    report: Optional[InvariantReport] = None
    wall_time: float = 0.0

    def path(self, v: int) -> List[int]:
        """Original vertices from the source to v, [] when unreachable."""
        if self.reduced is None:
            return path_to(self.labels, v)
        inner = path_to(self.labels, self.reduced.rep[v])
        origin = self.reduced.origin
        out: List[int] = []
        for x in inner:
            o = origin[x]
            if not out or out[-1] != o:
                out.append(o)
        return out

    def params_dict(self) -> Dict:
        data = self.choice.model_dump()
        data['mode'] = self.mode
        if self.params is not None:
            data.update(t=self.params.t, k=self.params.k, l_max=self.params.l_max)
        if self.reduced is not None:
            data['n_inner'] = self.reduced.n_inner
            data['m_inner'] = self.reduced.inner.m
        return data

    def to_report(self) -> SolveReport:
        return SolveReport(
            source=self.source,
            distances=self.distances,
            params=self.params_dict(),
            stats=self.stats.to_dict(),
            invariants=self.report.summary() if self.report is not None else None,
        )


def solve(g: Graph, source: int, config: Optional[SolverConfig] = None) -> SolveResult:
    config = config or SolverConfig.from_settings()
    validate(g)
    if not 0 <= source < g.n:
        raise SourceOutOfRange(f"source {source} outside [0, {g.n})")

    choice = choose_params(g.n, g.m, config)
    stats = ExecStats()
    t0 = time.perf_counter()

    if choice.use_fallback:
        logger.info("solve n=%d m=%d via dijkstra (%s)", g.n, g.m, choice.fallback_reason)
        res = dijkstra(g, source, stats)
        return SolveResult(source=source, distances=res.lengths(), stats=stats, choice=choice,
                           mode='dijkstra', labels=res.labels, wall_time=time.perf_counter() - t0)

    reduced = reduce_degree(g, choice.delta)
    inner = reduced.inner
    t = max(2, choice.t)
    params = SolveParams(t=t, k=max(1, choice.k), delta=choice.delta,
                         l_max=level_count(inner.n, t))
    logger.info("solve n=%d m=%d via bmssp t=%d k=%d delta=%d l_max=%d n_inner=%d",
                g.n, g.m, params.t, params.k, params.delta, params.l_max, inner.n)

    store = LabelStore(inner.n, stats)
    ctx = SolverContext(graph=inner, store=store, params=params, scratch=SearchScratch(inner.n),
                        marks=FrameMarks(inner.n, params.l_max), stats=stats,
                        debug=config.debug_checks, max_degree=max(max_degrees(inner)))
    report = None
    if config.debug_checks:
        report = InvariantReport()
        ctx.report = report
        stats.track_edges(inner.m)
        if inner.n <= config.debug_oracle_limit:
            ctx.oracle = dijkstra(inner, reduced.rep[source])
        else:
            report.log_warning('setup', 'reduced graph above the oracle limit; frame checks skipped',
                               {'n_inner': inner.n, 'limit': config.debug_oracle_limit})

    s0 = reduced.rep[source]
    store.set_source(s0)
    top = bmssp(INFINITY, [s0], params.l_max, ctx)

    if report is not None:
        if not top.full:
            report.log_violation('top', 'top-level call was not a full execution')
        if stats.max_direct_per_edge > 1:
            report.log_violation('once-per-edge', 'an edge took the direct-insert branch twice',
                                 {'max': stats.max_direct_per_edge})
        checks.check_pred_chains(inner, store.d, report)
        if ctx.oracle is not None:
            checks.check_labels_match(ctx.oracle, store.d, report)

    d = store.d
    distances = []
    for v in range(g.n):
        lab = d[reduced.rep[v]]
        distances.append(lab.length if lab.is_finite() else None)
    return SolveResult(source=source, distances=distances, stats=stats, choice=choice, mode='bmssp',
                       params=params, labels=d, reduced=reduced, report=report,
                       wall_time=time.perf_counter() - t0)
