import logging
import random
from typing import List, Optional, Tuple, Union

from ddfs import LayeredGraph
from graph_core import Graph, Matching

logger = logging.getLogger(__name__)

Seed = Union[int, random.Random]

_MASK64 = (1 << 64) - 1


def _rng(seed: Seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def trial_seed(seed: int, index: int) -> int:
    """Seed of the index-th trial derived from a run seed; stable across platforms"""
    return (seed * 6364136223846793005 + 1442695040888963407 * (index + 1)) & _MASK64


def random_graph(n: int, m: int, seed: Seed) -> Graph:
    """
    Erdős–Rényi graph with exactly min(m, n(n-1)/2) edges.

    Sparse requests draw vertex pairs and reject duplicates; dense ones
    sample straight from the list of all pairs.
    """
    rng = _rng(seed)
    total = n * (n - 1) // 2
    m = max(0, min(m, total))
    if 2 * m > total:
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        return Graph(n, rng.sample(pairs, m))
    seen = set()
    edges: List[Tuple[int, int]] = []
    while len(edges) < m:
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v:
            continue
        key = (u, v) if u < v else (v, u)
        if key in seen:
            continue
        seen.add(key)
        edges.append(key)
    return Graph(n, edges)


def greedy_matching(g: Graph) -> Matching:
    """Maximal matching taking edges in id order"""
    partner: List[Optional[int]] = [None] * g.n
    for u, v in g.edges:
        if partner[u] is None and partner[v] is None:
            partner[u] = v
            partner[v] = u
    return Matching(partner)


def random_maximal_matching(g: Graph, seed: Seed) -> Matching:
    rng = _rng(seed)
    order = list(g.edges)
    rng.shuffle(order)
    partner: List[Optional[int]] = [None] * g.n
    for u, v in order:
        if partner[u] is None and partner[v] is None:
            partner[u] = v
            partner[v] = u
    return Matching(partner)


def random_layered_graph(seed: Seed, max_layers: int = 12, max_vertices: int = 40) -> LayeredGraph:
    """
    Random layered DAG with two roots on the top layer.

    Layers are narrow so that shared vertices (and bottlenecks) are common.
    Every non-bottom vertex gets one arc to the layer just below, plus
    random extra arcs to any lower layer.
    """
    rng = _rng(seed)
    h = rng.randint(1, max_layers - 1)
    budget = max_vertices - 2
    width = rng.randint(1, 4)
    layer: List[int] = []
    by_layer: List[List[int]] = []
    for k in range(h):
        size = min(rng.randint(1, width), max(1, budget - (h - 1 - k)))
        budget -= size
        ids = list(range(len(layer), len(layer) + size))
        layer.extend([k] * size)
        by_layer.append(ids)
    red_root = len(layer)
    layer.append(h)
    if rng.random() < 0.05:
        green_root = red_root
    else:
        green_root = len(layer)
        layer.append(h)
    by_layer.append(sorted({red_root, green_root}))

    density = rng.choice((0.05, 0.15, 0.3))
    arcs: List[List[int]] = [[] for _ in layer]
    for k in range(1, h + 1):
        below = [w for j in range(k) for w in by_layer[j]]
        for v in by_layer[k]:
            targets = [rng.choice(by_layer[k - 1])]
            for w in below:
                if w not in targets and rng.random() < density:
                    targets.append(w)
            rng.shuffle(targets)
            arcs[v] = targets
    return LayeredGraph(layer, arcs, red_root, green_root)
