import math
import random
import time

import networkx as nx
import pytest

from augmenter import (
    augment_and_cascade, maximum_matching, open_petal, run_phase, search_phase,
)
from errors import InvalidMatchingError, PathError
from fixtures import get_fixture
from generators import greedy_matching, random_graph, random_maximal_matching
from graph_core import AlternatingPath, Graph, Matching, is_augmenting, validate_matching
from level_state import INF, PhaseConfig, init_phase, run_min
from oracle import augmenting_paths, max_matching_exhaustive, profile_graph

SUPERGRAPH = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 2), (1, 4), (2, 5), (0, 3)]


def _networkx_size(g: Graph) -> int:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return len(nx.max_weight_matching(h, maxcardinality=True))


def test_single_edge():
    result = maximum_matching(Graph(2, [(0, 1)]))
    assert result.size == 1
    assert result.matching.edges() == [(0, 1)]


def test_empty_and_edgeless_graphs():
    assert maximum_matching(Graph(0)).size == 0
    result = maximum_matching(Graph(5))
    assert result.size == 0
    assert len(result.phases) == 1
    assert result.phases[0].shortest == INF


def test_path_fixture_is_solved_in_one_productive_phase(path_graph):
    result = maximum_matching(path_graph.graph, path_graph.matching)
    assert result.size == 2
    assert [stats.paths for stats in result.phases] == [1, 0]
    first = result.phases[0]
    assert first.shortest == 3
    assert list(first.extracted[0].vertices) in (
        path_graph.vertices('f1', 'a', 'b', 'f2'),
        path_graph.vertices('f2', 'b', 'a', 'f1'),
    )
    assert first.as_dict()['shortest'] == 3
    assert result.phases[1].as_dict()['shortest'] is None


@pytest.mark.parametrize('name, size', [
    ('triangle', 1), ('five-cycle', 3), ('nested', 5), ('no-base', 2),
    ('two-paths', 2), ('blossom-on-path', 6), ('c4', 2), ('c5', 2), ('petersen', 5),
])
def test_fixtures_reach_their_maximum(name, size):
    fixture = get_fixture(name)
    assert maximum_matching(fixture.graph).size == size
    assert maximum_matching(fixture.graph, fixture.matching).size == size


def test_open_petal_walks_around_the_cycle(five_cycle):
    run = search_phase(five_cycle.graph, five_cycle.matching)
    s, pf = run.state, run.forest
    c, b = five_cycle.vertices('c', 'b')
    p = open_petal(s, pf, c, b)
    assert list(p.vertices) == five_cycle.vertices('c', 'd', 'e', 'g', 'b')
    assert p.matched == (True, False, True, False)
    # at its minlevel c just steps down to its predecessor
    assert list(open_petal(s, pf, c, b, parity=1).vertices) == [c, b]


def test_open_petal_needs_a_reached_vertex():
    g = Graph(3, [(0, 1)])
    run = search_phase(g, Matching.from_pairs(3, [(0, 1)]))
    with pytest.raises(PathError, match="not reached"):
        open_petal(run.state, run.forest, 0, 2)


def test_cascade_removes_the_blossom_hanging_off_the_path(blossom_on_path):
    g, m = blossom_on_path.graph, blossom_on_path.matching
    run = search_phase(g, m)
    assert run.stats.shortest == 9
    assert run.stats.paths == 1
    assert run.stats.petals == 1
    assert not any(run.state.alive)
    assert run.matching.size == 6
    b, c, d = blossom_on_path.vertices('b', 'c', 'd')
    path = set(run.stats.extracted[0].vertices)
    dead = {v for v in range(g.n) if not run.state.alive[v]}
    assert dead - path == {c, d}
    assert dead - path == profile_graph(g, m).blossoms[(b, 7)]


def test_augment_and_cascade(path_graph):
    g, m = path_graph.graph, path_graph.matching
    s = init_phase(g, m)
    run_min(s, 0)
    run_min(s, 1)
    p = AlternatingPath.from_vertices(g, m, path_graph.vertices('f1', 'a', 'b', 'f2'))
    bigger, removed = augment_and_cascade(g, m, s, p)
    assert bigger.size == 2
    assert removed == frozenset(range(4))
    with pytest.raises(PathError, match="not augmenting"):
        augment_and_cascade(g, m, init_phase(g, m), AlternatingPath.from_vertices(g, m, path_graph.vertices('a', 'b')))


def test_cascade_spares_a_disjoint_path(two_paths):
    g, m = two_paths.graph, two_paths.matching
    a1, a2, b1, b2 = two_paths.vertices('a1', 'a2', 'b1', 'b2')
    s = init_phase(g, m)
    run_min(s, 0)
    bigger, removed = augment_and_cascade(g, m, s, AlternatingPath.from_vertices(g, m, [a1, a2]))
    assert bigger.size == 1
    assert removed == frozenset({a1, a2})
    assert s.alive[b1] and s.alive[b2]


def test_one_phase_takes_both_disjoint_paths(two_paths):
    m, stats = run_phase(two_paths.graph, two_paths.matching)
    assert m.size == 2
    assert stats.paths == 2
    assert stats.shortest == 1


def test_run_phase_returns_matching_and_stats(path_graph):
    m, stats = run_phase(path_graph.graph, path_graph.matching)
    assert m.size == 2
    assert stats.paths == 1
    assert stats.search_levels == 2
    assert stats.edge_scans > 0


def test_search_level_cap_stops_early(path_graph):
    result = maximum_matching(path_graph.graph, path_graph.matching, config=PhaseConfig(max_search_level=0))
    assert result.size == 1


def test_invalid_start_is_rejected():
    g = Graph(3, [(0, 1), (1, 2)])
    with pytest.raises(InvalidMatchingError):
        maximum_matching(g, Matching([2, None, 0]))


def test_warm_start_matches_cold_start():
    g = random_graph(40, 90, 7)
    cold = maximum_matching(g)
    warm = maximum_matching(g, warm_start=True)
    assert warm.size == cold.size
    assert greedy_matching(g).size <= warm.size


def test_trace_sees_the_double_searches(triangle):
    lines = []
    maximum_matching(triangle.graph, triangle.matching, trace=lines.append)
    assert any(line.startswith('bottleneck') for line in lines)


def test_every_subgraph_of_a_small_supergraph():
    for mask in range(1 << len(SUPERGRAPH)):
        g = Graph(6, [e for k, e in enumerate(SUPERGRAPH) if mask >> k & 1])
        result = maximum_matching(g)
        assert validate_matching(g, result.matching) is None
        assert result.size == max_matching_exhaustive(g), mask


def _random_small(rng: random.Random, max_n: int) -> Graph:
    n = rng.randint(1, max_n)
    return random_graph(n, rng.randint(0, min(n * (n - 1) // 2, 30)), rng)


def _exactness(count: int):
    rng = random.Random(1)
    for trial in range(count):
        g = _random_small(rng, 14)
        assert maximum_matching(g).size == max_matching_exhaustive(g), trial


def test_exact_on_random_small_graphs():
    _exactness(100)


@pytest.mark.slow
def test_exact_on_many_random_small_graphs():
    _exactness(500)


def test_agrees_with_networkx_on_medium_graphs():
    rng = random.Random(2)
    for trial in range(30):
        n = rng.randint(20, 80)
        g = random_graph(n, rng.randint(n // 2, 3 * n), rng)
        assert maximum_matching(g).size == _networkx_size(g), trial


def test_each_phase_is_maximal_and_lengths_grow():
    rng = random.Random(3)
    for trial in range(100):
        g = _random_small(rng, 12)
        m = random_maximal_matching(g, rng) if rng.random() < 0.5 else Matching.empty(g.n)
        previous = 0
        while True:
            run = search_phase(g, m)
            stats = run.stats
            if stats.paths == 0:
                break
            assert stats.shortest > previous, trial
            previous = stats.shortest
            used = set()
            for p in stats.extracted:
                assert len(p) == stats.shortest
                assert is_augmenting(g, m, p)
                assert not used & set(p.vertices)
                used |= set(p.vertices)
            assert augmenting_paths(g, m, int(stats.shortest), avoid=frozenset(used)) == [], trial
            assert run.matching.size == m.size + stats.paths
            m = run.matching


def _check_phase_bounds(g: Graph, label):
    result = maximum_matching(g)
    assert len(result.phases) <= 2 * math.ceil(math.sqrt(g.n)) + 2, label
    for stats in result.phases:
        assert stats.edge_scans <= g.m, label
        assert stats.edge_scans + stats.ddfs_steps <= 8 * g.m, label
    lengths = [stats.shortest for stats in result.phases if stats.paths > 0]
    assert all(a < b for a, b in zip(lengths, lengths[1:])), label


def test_phase_count_stays_within_the_square_root_bound():
    for seed in range(3):
        _check_phase_bounds(random_graph(300, 700, seed), seed)


@pytest.mark.slow
@pytest.mark.parametrize('seed', range(50))
def test_phase_bounds_across_sizes_and_densities(seed):
    rng = random.Random(seed)
    n = rng.randint(200, 2000)
    m = rng.randint(n // 2, 6 * n)
    _check_phase_bounds(random_graph(n, m, rng), (seed, n, m))


@pytest.mark.slow
def test_hundred_thousand_vertices_within_the_time_bound():
    g = random_graph(10 ** 5, 5 * 10 ** 5, 1)
    started = time.perf_counter()
    result = maximum_matching(g)
    elapsed = time.perf_counter() - started
    assert validate_matching(g, result.matching) is None
    assert result.phases[-1].paths == 0
    # about 10 s on a desktop machine
    assert elapsed < 15.0, elapsed
