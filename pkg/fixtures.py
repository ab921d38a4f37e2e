from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence, Tuple

from graph_core import Graph, Matching


@dataclass(frozen=True)
class NamedGraph:
    """Small hand-built instance with readable vertex labels"""
    name: str
    graph: Graph
    matching: Matching
    labels: Dict[str, int]

    def __getitem__(self, label: str) -> int:
        return self.labels[label]

    def vertices(self, *labels: str) -> List[int]:
        return [self.labels[x] for x in labels]


def _build(name: str, names: Sequence[str], edges: Sequence[Tuple[str, str]],
           matched: Sequence[Tuple[str, str]] = ()) -> NamedGraph:
    labels = {x: i for i, x in enumerate(names)}
    g = Graph(len(names), [(labels[a], labels[b]) for a, b in edges])
    m = Matching.from_pairs(g.n, [(labels[a], labels[b]) for a, b in matched])
    return NamedGraph(name, g, m, labels)


def path() -> NamedGraph:
    return _build('path', ['f1', 'a', 'b', 'f2'],
                  [('f1', 'a'), ('a', 'b'), ('b', 'f2')], [('a', 'b')])


def triangle() -> NamedGraph:
    return _build('triangle', ['f', 'a', 'b'],
                  [('f', 'a'), ('a', 'b'), ('f', 'b')], [('a', 'b')])


def five_cycle() -> NamedGraph:
    """Stem f-w-b under the odd cycle b-c-d-e-g; every cycle edge has tenacity 9"""
    return _build(
        'five-cycle', ['f', 'w', 'b', 'c', 'd', 'e', 'g'],
        [('f', 'w'), ('w', 'b'), ('b', 'c'), ('c', 'd'), ('d', 'e'), ('e', 'g'), ('g', 'b')],
        [('w', 'b'), ('c', 'd'), ('e', 'g')],
    )


def nested() -> NamedGraph:
    """
    Cycle b-c-d-g-e (tenacity 9) hanging from b, inside a larger odd cycle
    through f closed by the bridge c-y4 (tenacity 11).
    """
    return _build(
        'nested', ['f', 'x1', 'b', 'c', 'd', 'e', 'g', 'y1', 'y2', 'y3', 'y4'],
        [
            ('f', 'x1'), ('x1', 'b'), ('b', 'c'), ('c', 'd'), ('b', 'e'), ('e', 'g'), ('d', 'g'),
            ('f', 'y1'), ('y1', 'y2'), ('y2', 'y3'), ('y3', 'y4'), ('c', 'y4'),
        ],
        [('x1', 'b'), ('c', 'd'), ('e', 'g'), ('y1', 'y2'), ('y3', 'y4')],
    )


def no_base() -> NamedGraph:
    """Two free vertices both adjacent to the ends of one matched edge"""
    return _build(
        'no-base', ['f1', 'f2', 'u', 'v'],
        [('f1', 'u'), ('f1', 'v'), ('f2', 'u'), ('f2', 'v'), ('u', 'v')],
        [('u', 'v')],
    )


def two_paths() -> NamedGraph:
    return _build('two-paths', ['a1', 'a2', 'b1', 'b2'], [('a1', 'a2'), ('b1', 'b2')])


def blossom_on_path() -> NamedGraph:
    """The only augmenting path runs through b, base of the triangle b-c-d"""
    return _build(
        'blossom-on-path', ['f', 'w', 'b', 'c', 'd', 'p1', 'p2', 'p3', 'p4', 'p5', 'p6', 'h'],
        [
            ('f', 'w'), ('w', 'b'), ('b', 'c'), ('c', 'd'), ('d', 'b'),
            ('b', 'p1'), ('p1', 'p2'), ('p2', 'p3'), ('p3', 'p4'), ('p4', 'p5'), ('p5', 'p6'), ('p6', 'h'),
        ],
        [('w', 'b'), ('c', 'd'), ('p1', 'p2'), ('p3', 'p4'), ('p5', 'p6')],
    )


def cycle(n: int) -> NamedGraph:
    names = [f"v{i}" for i in range(n)]
    return _build(f"c{n}", names, [(names[i], names[(i + 1) % n]) for i in range(n)])


def petersen() -> NamedGraph:
    outer = [f"o{i}" for i in range(5)]
    inner = [f"i{i}" for i in range(5)]
    edges = [(outer[i], outer[(i + 1) % 5]) for i in range(5)]
    edges += [(outer[i], inner[i]) for i in range(5)]
    edges += [(inner[i], inner[(i + 2) % 5]) for i in range(5)]
    return _build('petersen', outer + inner, edges)


FIXTURES: Dict[str, Callable[[], NamedGraph]] = {
    'path': path,
    'triangle': triangle,
    'five-cycle': five_cycle,
    'nested': nested,
    'no-base': no_base,
    'two-paths': two_paths,
    'blossom-on-path': blossom_on_path,
    'c4': lambda: cycle(4),
    'c5': lambda: cycle(5),
    'petersen': petersen,
}


def get_fixture(name: str) -> NamedGraph:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise ValueError(f"unknown fixture '{name}', known: {', '.join(sorted(FIXTURES))}")
