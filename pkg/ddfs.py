from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import IntEnum
from typing import TYPE_CHECKING, Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

import config
from errors import DdfsError, OracleGuardError
from level_state import LevelState

if TYPE_CHECKING:
    from petal_forest import PetalForest

logger = logging.getLogger(__name__)

# (center reached, vertex the arc actually enters); they differ only on the graph form
Arc = Tuple[int, int]
TreeEdge = Tuple[int, int]
Trace = Callable[[str], None]


class Color(IntEnum):
    RED = 1
    GREEN = 2


@dataclass
class LayeredGraph:
    """Directed acyclic graph whose arcs strictly descend in layer"""
    layer: List[int]
    arcs: List[List[int]]
    red_root: int
    green_root: int

    def __post_init__(self):
        n = len(self.layer)
        if len(self.arcs) != n:
            raise DdfsError(f"{n} layers but {len(self.arcs)} arc lists")
        for root in (self.red_root, self.green_root):
            if not 0 <= root < n:
                raise DdfsError(f"root {root} outside 0..{n - 1}")
        reaches_bottom = [False] * n
        for v in sorted(range(n), key=lambda x: self.layer[x]):
            if self.layer[v] < 0:
                raise DdfsError(f"vertex {v} has negative layer {self.layer[v]}")
            for w in self.arcs[v]:
                if not 0 <= w < n:
                    raise DdfsError(f"arc {v}->{w} leaves the vertex range")
                if self.layer[w] >= self.layer[v]:
                    raise DdfsError(f"arc {v}->{w} does not descend ({self.layer[v]} -> {self.layer[w]})")
            reaches_bottom[v] = self.layer[v] == 0 or any(reaches_bottom[w] for w in self.arcs[v])
            if not reaches_bottom[v]:
                raise DdfsError(f"vertex {v} has no path to layer 0")

    @property
    def n(self) -> int:
        return len(self.layer)

    def successors(self, v: int) -> List[Arc]:
        return [(w, w) for w in self.arcs[v]]


@dataclass(frozen=True)
class Bottleneck:
    """Highest vertex on every root-to-bottom path; red and green exclude it"""
    bottleneck: int
    red: FrozenSet[int]
    green: FrozenSet[int]
    red_tree: Dict[int, TreeEdge] = field(compare=False)
    green_tree: Dict[int, TreeEdge] = field(compare=False)
    red_root: int
    green_root: int
    steps: int

    @property
    def is_empty(self) -> bool:
        """Both roots coincide, nothing was searched"""
        return self.red_root == self.green_root


@dataclass(frozen=True)
class FreePair:
    """Two distinct bottom vertices reached along vertex-disjoint tree paths"""
    red_free: int
    green_free: int
    red_tree: Dict[int, TreeEdge] = field(compare=False)
    green_tree: Dict[int, TreeEdge] = field(compare=False)
    red_root: int
    green_root: int
    steps: int


DdfsOutcome = Union[Bottleneck, FreePair]


@dataclass
class _Side:
    color: Color
    stack: List[int]
    # child -> (parent center, entered vertex)
    tree: Dict[int, TreeEdge] = field(default_factory=dict)
    # arcs that landed on the other side's top while it was still there
    hits: Dict[int, TreeEdge] = field(default_factory=dict)

    @property
    def top(self) -> int:
        return self.stack[-1]


class _DoubleSearch:
    """
    Two coordinated depth-first searches over a layered structure.

    The side whose top sits higher moves, red on ties. An arc onto an
    uncolored vertex advances; an arc onto the other side's top is recorded
    as a hit and scanning goes on. A side that runs out of vertices takes
    the other side's top, unless that top is the other side's last vertex,
    which then is the bottleneck.
    """

    def __init__(self, layer_of: Callable[[int], float], successors: Callable[[int], Sequence[Arc]],
                 trace: Optional[Trace] = None):
        self.layer_of = layer_of
        self.successors = successors
        self.trace = trace
        self.color: Dict[int, Color] = {}
        self.cursor: Dict[int, int] = {}
        self.arcs: Dict[int, Sequence[Arc]] = {}
        self.steps = 0

    def _emit(self, event: str, color: Color, v: int) -> None:
        if self.trace is not None:
            self.trace(f"{event} {color.name.lower()} {v} {int(self.layer_of(v))}")

    def _arcs_of(self, u: int) -> Sequence[Arc]:
        arcs = self.arcs.get(u)
        if arcs is None:
            arcs = self.arcs[u] = self.successors(u)
        return arcs

    def run(self, red_root: int, green_root: int) -> DdfsOutcome:
        if red_root == green_root:
            return Bottleneck(red_root, frozenset(), frozenset(), {}, {}, red_root, green_root, 0)
        red = _Side(Color.RED, [red_root])
        green = _Side(Color.GREEN, [green_root])
        self.color[red_root] = Color.RED
        self.color[green_root] = Color.GREEN
        while True:
            r_layer, g_layer = self.layer_of(red.top), self.layer_of(green.top)
            if r_layer == 0 and g_layer == 0:
                self._emit('freepair', Color.RED, red.top)
                self._emit('freepair', Color.GREEN, green.top)
                return FreePair(
                    red.top, green.top,
                    self._own_tree(red), self._own_tree(green),
                    red_root, green_root, self.steps,
                )
            side, other = (red, green) if r_layer >= g_layer else (green, red)
            if self._advance(side, other):
                continue
            side.stack.pop()
            if side.stack:
                continue
            if len(other.stack) == 1:
                return self._bottleneck(red, green, red_root, green_root, side, other)
            self._steal(side, other)

    def _advance(self, side: _Side, other: _Side) -> bool:
        u = side.top
        arcs = self._arcs_of(u)
        k = self.cursor.get(u, 0)
        while k < len(arcs):
            w, via = arcs[k]
            k += 1
            self.steps += 1
            if w not in self.color:
                self.cursor[u] = k
                self.color[w] = side.color
                side.tree[w] = (u, via)
                side.stack.append(w)
                self._emit('advance', side.color, w)
                return True
            if w == other.top:
                side.hits.setdefault(w, (u, via))
                self._emit('meet', side.color, w)
        self.cursor[u] = k
        self._emit('retreat', side.color, u)
        return False

    def _entry(self, side: _Side, v: int) -> Optional[TreeEdge]:
        return side.hits.get(v) or side.tree.get(v)

    def _steal(self, side: _Side, other: _Side) -> None:
        c = other.stack.pop()
        edge = self._entry(side, c)
        if edge is None:
            raise DdfsError(f"{side.color.name.lower()} side has no arc into {c}")
        side.tree[c] = edge
        self.color[c] = side.color
        side.stack.append(c)
        self._emit('advance', side.color, c)

    def _own_tree(self, side: _Side) -> Dict[int, TreeEdge]:
        return {v: e for v, e in side.tree.items() if self.color.get(v) == side.color}

    def _bottleneck(self, red: _Side, green: _Side, red_root: int, green_root: int,
                    side: _Side, other: _Side) -> Bottleneck:
        b = other.stack[0]
        into_b = {side.color: self._entry(side, b), other.color: other.tree.get(b)}
        if into_b[side.color] is None:
            raise DdfsError(f"{side.color.name.lower()} side never reached bottleneck {b}")
        red_tree = self._own_tree(red)
        green_tree = self._own_tree(green)
        red_tree.pop(b, None)
        green_tree.pop(b, None)
        if into_b[Color.RED] is not None:
            red_tree[b] = into_b[Color.RED]
        if into_b[Color.GREEN] is not None:
            green_tree[b] = into_b[Color.GREEN]
        red_set = frozenset(v for v, c in self.color.items() if c == Color.RED and v != b)
        green_set = frozenset(v for v, c in self.color.items() if c == Color.GREEN and v != b)
        self._emit('bottleneck', other.color, b)
        return Bottleneck(b, red_set, green_set, red_tree, green_tree, red_root, green_root, self.steps)


def ddfs_layered(h: LayeredGraph, trace: Optional[Trace] = None) -> DdfsOutcome:
    """Find the highest bottleneck of the two roots, or two distinct layer-0 vertices"""
    outcome = _DoubleSearch(lambda v: h.layer[v], h.successors, trace).run(h.red_root, h.green_root)
    logger.debug(f"[ddfs_layered] n={h.n} -> {type(outcome).__name__} in {outcome.steps} steps")
    return outcome


def ddfs_on_graph(s: LevelState, pf: 'PetalForest', bridge: int, trace: Optional[Trace] = None) -> DdfsOutcome:
    """Run the double search from the bud* of both bridge endpoints over predecessor links"""
    u, v = s.graph.edges[bridge]
    if not (s.alive[u] and s.alive[v]):
        raise DdfsError(f"bridge ({u}, {v}) has a dead endpoint")
    alive = s.alive

    def successors(x: int) -> List[Arc]:
        arcs = []
        for w in s.preds[x]:
            if not alive[w]:
                continue
            star = pf.bud_star(w)
            if alive[star]:
                arcs.append((star, w))
        return arcs

    search = _DoubleSearch(s.minlevel, successors, trace)
    return search.run(pf.bud_star(u), pf.bud_star(v))


def tree_path(tree: Dict[int, TreeEdge], root: int, target: int) -> List[int]:
    """Centers on the tree path root..target"""
    path = [target]
    v = target
    while v != root:
        edge = tree.get(v)
        if edge is None:
            raise DdfsError(f"vertex {v} is not connected to root {root}")
        v = edge[0]
        path.append(v)
        if len(path) > len(tree) + 1:
            raise DdfsError(f"tree rooted at {root} contains a cycle")
    path.reverse()
    return path


def _root_paths(h: LayeredGraph, root: int, budget: List[int]):
    """Yield every root-to-layer-0 path as a vertex list"""
    stack = [(root, [root])]
    while stack:
        v, path = stack.pop()
        if h.layer[v] == 0:
            budget[0] -= 1
            if budget[0] < 0:
                raise OracleGuardError(f"more than {config.LAYERED_MAX_PATHS} root-to-bottom paths")
            yield path
            continue
        for w in reversed(h.arcs[v]):
            stack.append((w, path + [w]))


def brute_bottleneck(h: LayeredGraph) -> Optional[int]:
    """Highest vertex shared by every root-to-layer-0 path, by full enumeration"""
    if h.red_root == h.green_root:
        return h.red_root
    budget = [config.LAYERED_MAX_PATHS]
    common: Optional[set] = None
    for root in (h.red_root, h.green_root):
        for path in _root_paths(h, root, budget):
            common = set(path) if common is None else common & set(path)
            if not common:
                return None
    if not common:
        return None
    return max(common, key=lambda v: h.layer[v])


def _reachable(h: LayeredGraph, sources: Sequence[int], blocked: Optional[int] = None) -> set:
    seen = {v for v in sources if v != blocked}
    stack = list(seen)
    while stack:
        v = stack.pop()
        for w in h.arcs[v]:
            if w != blocked and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def _reaching(h: LayeredGraph, targets: Sequence[int]) -> set:
    back: List[List[int]] = [[] for _ in range(h.n)]
    for v in range(h.n):
        for w in h.arcs[v]:
            back[w].append(v)
    seen = set(targets)
    stack = list(seen)
    while stack:
        v = stack.pop()
        for x in back[v]:
            if x not in seen:
                seen.add(x)
                stack.append(x)
    return seen


def bottleneck_edges(h: LayeredGraph, b: int) -> int:
    """Arcs lying on some root-to-b path"""
    tail = _reachable(h, (h.red_root, h.green_root), blocked=b)
    head = _reaching(h, (b,))
    return sum(1 for x in tail for y in h.arcs[x] if y in head)


def free_pair_edges(h: LayeredGraph, red_free: int, green_free: int) -> int:
    """Arcs lying on some path from a root to either free vertex"""
    tail = _reachable(h, (h.red_root, h.green_root))
    head = _reaching(h, (red_free, green_free))
    return sum(1 for x in tail for y in h.arcs[x] if y in head)
