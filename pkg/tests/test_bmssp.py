import math

import pytest
from hypothesis import given

from ssspx.core.bmssp import (FrameMarks, SolverContext, _audit_pivots, base_case, bmssp, choose_params, level_count,
                              solve)
from ssspx.core.dstruct import BlockStructure
from ssspx.core.graph import Graph
from ssspx.core.heap import SearchScratch
from ssspx.core.labels import INFINITY, DistLabel, LabelStore, source_label
from ssspx.core.oracle import dijkstra
from ssspx.core.pivots import PivotOutput
from ssspx.core.stats import ExecStats
from ssspx.models.schemas import FallbackMode, Family, GenSpec, SolverConfig, SolveParams, WeightKind, WeightModel
from ssspx.services.harness import generate
from ssspx.utils.error_handler import InvariantReport
from ssspx.utils.errors import SourceOutOfRange

from tests.strategies import PROPERTY_SETTINGS, graphs_with_source, recursion_configs


def make_ctx(g: Graph, source: int, t: int = 2, k: int = 2, l_max: int = 0) -> SolverContext:
    stats = ExecStats()
    store = LabelStore(g.n, stats)
    store.set_source(source)
    return SolverContext(graph=g, store=store, params=SolveParams(t=t, k=k, delta=3, l_max=l_max),
                         scratch=SearchScratch(g.n), marks=FrameMarks(g.n, l_max), stats=stats)


class TestChooseParams:
    def test_tiny_graph_falls_back(self):
        choice = choose_params(4, 4)
        assert choice.use_fallback
        assert 'below 2^10' in choice.fallback_reason

    def test_large_sparse_formulas(self):
        choice = choose_params(2 ** 20, 2 ** 22)
        assert (choice.t, choice.k, choice.delta) == (6, 3, 3)
        # delta = 3 is larger than log2(3), so the recursion is not worth it here
        assert choice.delta > math.log2(choice.k)
        assert 'delta' in choice.fallback_reason

    def test_dense_regime_falls_back(self):
        n = 2 ** 10
        choice = choose_params(n, n * 10)
        assert 'dense' in choice.fallback_reason

    def test_never_and_always(self):
        assert not choose_params(4, 4, SolverConfig(fallback=FallbackMode.NEVER)).use_fallback
        assert choose_params(2 ** 20, 2 ** 21, SolverConfig(fallback=FallbackMode.ALWAYS)).use_fallback

    def test_overrides(self):
        choice = choose_params(100, 300, SolverConfig(force_t=3, force_delta=4, fallback=FallbackMode.NEVER))
        assert (choice.t, choice.k, choice.delta) == (3, 2, 4)
        assert choose_params(100, 300, SolverConfig(force_t=3, force_k=5)).k == 5


@pytest.mark.parametrize('n, t, expected', [(1, 2, 0), (2, 2, 1), (1024, 2, 5), (1000, 3, 4)])
def test_level_count(n, t, expected):
    assert level_count(n, t) == expected


class TestBaseCase:
    def test_isolated_source(self):
        ctx = make_ctx(Graph.from_edges(1, []), 0)
        res = base_case(INFINITY, [0], ctx)
        assert res.full
        assert res.U == [0]
        assert res.B_prime == INFINITY

    def test_star_overflows_to_partial(self):
        t = 2
        leaves = t ** 3 + 2
        g = Graph.from_edges(leaves + 1, [(0, i, 0.0) for i in range(1, leaves + 1)])
        ctx = make_ctx(g, 0, t=t)
        res = base_case(INFINITY, [0], ctx)
        assert not res.full
        assert len(res.U) == t ** 3 + 1
        assert res.U == list(range(t ** 3 + 1))
        d = ctx.store.d
        assert res.B_prime == d[t ** 3 + 1]
        assert all(d[u] < res.B_prime for u in res.U)
        assert sorted(k for k, _ in res.D.items()) == [t ** 3 + 1, t ** 3 + 2]

    def test_respects_bound(self):
        g = Graph.from_edges(3, [(0, 1, 1.0), (1, 2, 1.0)])
        ctx = make_ctx(g, 0)
        res = base_case(DistLabel(1.5, 0, 0), [0], ctx)
        assert res.full
        assert res.U == [0, 1]
        assert ctx.store[2] == INFINITY


class TestRecursion:
    def test_two_vertices_single_level(self):
        g = Graph.from_edges(2, [(0, 1, 7.0)])
        ctx = make_ctx(g, 0, t=2, k=2, l_max=1)
        res = bmssp(INFINITY, [0], 1, ctx)
        assert res.full
        assert sorted(res.U) == [0, 1]
        assert ctx.store.d == dijkstra(g, 0).labels

    def test_frames_check_clean(self, recursion_config):
        g = generate(GenSpec(family=Family.RANDOM_M, n=120, m=360, seed=11,
                             weights=WeightModel(kind=WeightKind.ZERO_HEAVY, p_zero=0.5)))
        res = solve(g, 0, recursion_config(t=2, k=2))
        assert res.mode == 'bmssp'
        assert res.report.ok, res.report.violations[:3]
        assert res.stats.max_direct_per_edge <= 1
        assert res.stats.find_pivots_calls > 0
        assert res.distances == dijkstra(g, 0).lengths()

    def test_oversized_frontier_is_reported(self):
        g = Graph.from_edges(15, [])
        ctx = make_ctx(g, 0, t=2, k=2)
        ctx.debug, ctx.report = True, InvariantReport()
        for v in range(15):
            ctx.store.d[v] = DistLabel(float(v), 0, v)
        assert ctx.params.entry_cap(0) == 14
        bmssp(INFINITY, list(range(15)), 0, ctx)
        assert ctx.stats.oversized_frontiers == 1
        assert 'sizes[l=0]' in ctx.report.stages()

    def test_frontier_within_cap_is_clean(self):
        g = Graph.from_edges(14, [])
        ctx = make_ctx(g, 0, t=2, k=2)
        ctx.debug, ctx.report = True, InvariantReport()
        for v in range(14):
            ctx.store.d[v] = DistLabel(float(v), 0, v)
        bmssp(INFINITY, list(range(14)), 0, ctx)
        assert ctx.stats.oversized_frontiers == 1
        assert ctx.report.ok

    def test_budget_problems_reach_the_report(self, recursion_config, monkeypatch):
        monkeypatch.setattr(BlockStructure, 'budget_problems', lambda self: ['merge work 1 not linear'])
        g = generate(GenSpec(family=Family.RANDOM_M, n=120, m=360, seed=11))
        res = solve(g, 0, recursion_config(t=2, k=2))
        assert any(stage.startswith('budget[l=') for stage in res.report.stages())


class TestPivotAudit:
    def audit(self, piv, S, oracle_graph=None, B=INFINITY):
        g = oracle_graph if oracle_graph is not None else Graph.from_edges(3, [(0, 1, 1.0), (1, 2, 1.0)])
        ctx = make_ctx(g, 0, t=2, k=2, l_max=1)
        ctx.debug, ctx.report = True, InvariantReport()
        if oracle_graph is not None:
            ctx.oracle = dijkstra(g, 0)
        _audit_pivots(piv, S, ctx, 0, B, 1)
        return [v['message'] for v in ctx.report.violations]

    def test_more_groups_than_frontier(self):
        piv = PivotOutput(groups=[[0], [1], [2]], trees=[[], [], []], Q=[], W=[], n_subtrees=3)
        messages = self.audit(piv, [0, 1])
        assert 'more pivot groups than frontier vertices' in messages
        assert 'more pivot groups than forest size allows' in messages

    def test_group_trees_sharing_an_edge(self):
        piv = PivotOutput(groups=[[0], [1]], trees=[[(0, 1)], [(1, 0)]], Q=[], W=[], n_subtrees=2)
        assert 'pivot group trees share an edge' in self.audit(piv, [0, 1])

    def test_roots_missing_from_W(self):
        piv = PivotOutput(groups=[], trees=[], Q=[0], W=[1])
        assert 'a root of W is missing from W' in self.audit(piv, [0])

    def test_pivot_count_against_targets(self):
        g = Graph.from_edges(3, [(0, 1, 1.0), (1, 2, 1.0)])
        piv = PivotOutput(groups=[[0]], trees=[[]], Q=[], W=[], n_subtrees=1)
        messages = self.audit(piv, [0], oracle_graph=g, B=source_label(0))
        assert 'pivot groups exceed 2|targets|/k' in messages

    def test_real_pivots_pass(self, recursion_config):
        g = generate(GenSpec(family=Family.GRID, n=100, m=300, seed=4))
        res = solve(g, 0, recursion_config(t=2, k=3))
        assert res.stats.find_pivots_calls > 0
        assert not [s for s in res.report.stages() if s.startswith('find_pivots')]


class TestSolve:
    def test_single_vertex(self, recursion_config):
        assert solve(Graph.from_edges(1, []), 0, recursion_config()).distances == [0.0]

    def test_two_vertices(self, recursion_config):
        assert solve(Graph.from_edges(2, [(0, 1, 7.0)]), 0, recursion_config()).distances == [0.0, 7.0]

    def test_fallback_matches(self):
        g = Graph.from_edges(3, [(0, 1, 2.0), (1, 2, 2.0), (0, 2, 5.0)])
        res = solve(g, 0, SolverConfig())
        assert res.mode == 'dijkstra'
        assert res.distances == [0.0, 2.0, 4.0]
        assert res.path(2) == [0, 1, 2]

    def test_bad_source(self):
        with pytest.raises(SourceOutOfRange):
            solve(Graph.from_edges(2, []), 2, SolverConfig())

    def test_paths_map_back_to_original_vertices(self, recursion_config):
        g = Graph.from_edges(5, [(0, i, 1.0) for i in range(1, 5)] + [(4, 3, 0.0), (3, 1, 0.5)])
        res = solve(g, 0, recursion_config())
        assert res.distances == [0.0, 1.0, 1.0, 1.0, 1.0]
        assert res.path(3) == [0, 3]
        assert res.path(1) == [0, 1]

    def test_unreachable_stays_none(self, recursion_config):
        g = Graph.from_edges(4, [(0, 1, 1.0), (2, 3, 1.0)])
        assert solve(g, 0, recursion_config()).distances == [0.0, 1.0, None, None]

    def test_report_document(self, recursion_config):
        res = solve(Graph.from_edges(3, [(0, 1, 1.0), (1, 2, 1.0)]), 0, recursion_config())
        doc = res.to_report()
        assert doc.invariants['ok'] is True
        assert doc.params['mode'] == 'bmssp'
        assert doc.params['t'] == 2
        assert 'comparisons' in doc.stats

    def test_env_turns_on_debug_checks(self, monkeypatch):
        monkeypatch.setenv('SSSPX_DEBUG_CHECKS', '1')
        config = SolverConfig.from_settings({'fallback': FallbackMode.NEVER, 'force_t': 2})
        res = solve(Graph.from_edges(2, [(0, 1, 1.0)]), 0, config)
        assert res.report is not None and res.report.ok

    @PROPERTY_SETTINGS
    @given(case=graphs_with_source(max_n=60, max_factor=4), config=recursion_configs())
    def test_matches_oracle_with_debug_checks(self, case, config):
        g, s = case
        res = solve(g, s, config)
        assert res.distances == dijkstra(g, s).lengths()
        assert res.report.ok, res.report.violations[:3]
        assert res.stats.max_direct_per_edge <= 1


@pytest.mark.parametrize('family', list(Family))
@pytest.mark.parametrize('kind', list(WeightKind))
@pytest.mark.parametrize('seed', [1, 2, 3])
def test_generated_corpus_matches_oracle(family, kind, seed, recursion_config):
    spec = GenSpec(family=family, n=150, m=450, seed=seed, weights=WeightModel(kind=kind))
    g = generate(spec)
    res = solve(g, 0, recursion_config(t=2 + seed % 2, k=2, delta=3 + seed % 3))
    assert res.distances == dijkstra(g, 0).lengths()
    assert res.report.ok, res.report.violations[:3]


SMALL_INTEGER_WEIGHTS = WeightModel(kind=WeightKind.UNIFORM_INTEGER, low=0, high=3)


@pytest.mark.parametrize('debug', [False, True])
def test_pivot_group_emptied_within_one_round(debug, recursion_config):
    g = generate(GenSpec(family=Family.RANDOM_M, n=20, m=60, seed=2, weights=SMALL_INTEGER_WEIGHTS))
    res = solve(g, 0, recursion_config(t=2, k=2, delta=4, debug=debug))
    assert res.distances == dijkstra(g, 0).lengths()
    if debug:
        assert res.report.ok, res.report.violations[:3]


@pytest.mark.parametrize('family', list(Family))
@pytest.mark.parametrize('seed', range(12))
def test_small_integer_weights_match_oracle(family, seed, recursion_config):
    g = generate(GenSpec(family=family, n=20, m=60, seed=seed, weights=SMALL_INTEGER_WEIGHTS))
    res = solve(g, 0, recursion_config(t=2, k=2, delta=4, debug=False))
    assert res.distances == dijkstra(g, 0).lengths()


@pytest.mark.slow
def test_oracle_equivalence_sweep():
    config = SolverConfig(fallback=FallbackMode.NEVER, force_t=3, force_k=2)
    families = list(Family)
    kinds = list(WeightKind)
    for i in range(1000):
        n = 1 + (i * 37) % 5000
        spec = GenSpec(family=families[i % len(families)], n=n, m=min((i % 9) * n, n * (n - 1)),
                       seed=i, weights=WeightModel(kind=kinds[i % len(kinds)]))
        g = generate(spec)
        assert solve(g, 0, config).distances == dijkstra(g, 0).lengths(), spec


@pytest.mark.slow
def test_frame_checks_over_many_graphs():
    families = list(Family)
    kinds = list(WeightKind)
    for i in range(200):
        n = 2 + (i * 53) % 199
        spec = GenSpec(family=families[i % len(families)], n=n, m=min((i % 5) * n, n * (n - 1)),
                       seed=i, weights=WeightModel(kind=kinds[i % len(kinds)]))
        g = generate(spec)
        config = SolverConfig(debug_checks=True, fallback=FallbackMode.NEVER,
                              force_t=2 + i % 3, force_k=2 + i % 2, force_delta=3)
        res = solve(g, 0, config)
        assert res.distances == dijkstra(g, 0).lengths(), spec
        assert res.report.ok, (spec, res.report.violations[:3])


@pytest.mark.slow
def test_desk_scale_run():
    g = generate(GenSpec(family=Family.RANDOM_M, n=100_000, m=400_000, seed=1))
    res = solve(g, 0, SolverConfig())
    assert res.distances == dijkstra(g, 0).lengths()
    assert res.wall_time < 10.0


@pytest.mark.slow
def test_recursion_at_scale_matches():
    g = generate(GenSpec(family=Family.RANDOM_M, n=5_000, m=20_000, seed=2))
    res = solve(g, 0, SolverConfig(fallback=FallbackMode.NEVER))
    assert res.mode == 'bmssp'
    assert res.distances == dijkstra(g, 0).lengths()
