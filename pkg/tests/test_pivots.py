from hypothesis import given
from hypothesis import strategies as st

from ssspx.core.graph import Graph, max_degrees
from ssspx.core.heap import IndexedHeap, SearchScratch
from ssspx.core.labels import INFINITY, DistLabel, LabelStore
from ssspx.core.oracle import dijkstra
from ssspx.core.pivots import find_pivots, heap_budget
from ssspx.core.stats import ExecStats

from tests.strategies import PROPERTY_SETTINGS, graphs


def run(g: Graph, S, k, store=None):
    stats = ExecStats()
    if store is None:
        store = LabelStore(g.n, stats)
        store.set_source(S[0])
    store.stats = stats
    out = find_pivots(INFINITY, S, k, store, g, SearchScratch(g.n), stats)
    return out, store, stats


class TestIndexedHeap:
    def test_orders_and_decreases(self):
        stats = ExecStats()
        heap = IndexedHeap(SearchScratch(5), stats)
        for v, x in [(0, 5.0), (1, 3.0), (2, 4.0), (3, 9.0)]:
            heap.push(v, DistLabel(x, 0, v))
        heap.decrease_key(3, DistLabel(1.0, 0, 3))
        assert heap.contains(3) and not heap.contains(4)
        popped = [heap.pop_min()[0] for _ in range(4)]
        assert popped == [3, 1, 2, 0]
        assert not heap
        assert stats.heap_ops == 9

    def test_new_search_forgets_positions(self):
        scratch = SearchScratch(3)
        first = IndexedHeap(scratch, ExecStats())
        first.push(1, DistLabel(1.0, 0, 1))
        second = IndexedHeap(scratch, ExecStats())
        assert not second.contains(1)


def test_single_vertex():
    out, _, _ = run(Graph.from_edges(1, []), [0], 2)
    assert out.groups == []
    assert out.Q == [0]
    assert out.W == [0]


def test_path_grows_one_tree():
    g = Graph.from_edges(6, [(i, i + 1, 1.0) for i in range(5)])
    out, store, _ = run(g, [0], 4)
    assert out.Q == []
    assert len(out.forest) == 1
    assert sorted(out.forest[0].vertices) == [0, 1, 2, 3]
    assert out.groups == [[0]]
    assert store[3] == DistLabel(3.0, 3, 3, 2)


def test_second_search_joins_existing_tree():
    # 0 -> 2 -> 3 -> 4, and a shorter way into 2 from 1
    g = Graph.from_edges(5, [(0, 2, 2.0), (2, 3, 1.0), (3, 4, 1.0), (1, 2, 1.0)])
    store = LabelStore(5)
    store.set_source(0)
    store.d[1] = DistLabel(0.0, 1, 1, 0)
    out, store, _ = run(g, [0, 1], 3, store)
    assert out.Q == []
    assert len(out.forest) == 1
    tree = out.forest[0]
    assert sorted(tree.vertices) == [0, 1, 2, 3]
    assert len(tree.edges) == 3
    assert sorted(v for P in out.groups for v in P) == [0, 1]
    assert store[2] == DistLabel(1.0, 2, 2, 1)


@PROPERTY_SETTINGS
@given(g=graphs(max_n=60, min_n=1), k=st.integers(1, 5), data=st.data())
def test_partition_of_frontier(g, k, data):
    oracle = dijkstra(g, 0)
    reach = [v for v in range(g.n) if oracle.reachable(v)]
    S = data.draw(st.lists(st.sampled_from(reach), min_size=1, unique=True))
    store = LabelStore(g.n)
    store.d = list(oracle.labels)
    out, store, stats = run(g, S, k, store)

    seen = set()
    for P in out.groups:
        assert 0 < len(P) < 3 * k
        assert not seen.intersection(P)
        seen.update(P)
    assert not seen.intersection(out.Q)
    assert seen | set(out.Q) == set(S)
    assert len(out.W) <= (k + 1) * len(out.Q)
    assert set(out.Q) <= set(out.W)
    for tree in out.forest:
        assert len(tree.edges) == len(tree.vertices) - 1
        assert len(set(tree.vertices)) == len(tree.vertices)
    assert stats.heap_ops <= heap_budget(out, k, max(max_degrees(g)))
    # labels were final already, so nothing may change
    assert store.d == oracle.labels
