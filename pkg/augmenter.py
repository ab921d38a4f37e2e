from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, List, MutableSequence, Optional, Sequence, Tuple

from ddfs import Color, FreePair, Trace, TreeEdge
from errors import PathError, PetalError
from generators import greedy_matching
from graph_core import (
    AlternatingPath, Graph, Matching, augment, augmenting_problem, ensure_matching, is_augmenting,
)
from level_state import INF, LevelState, PhaseConfig, format_level, init_phase, phase_done, run_min
from petal_forest import PetalForest, run_max

logger = logging.getLogger(__name__)

EVEN = 0
ODD = 1

# Called with the search level, the phase state and the petal forest
LevelHook = Callable[[int, LevelState, PetalForest], None]


@dataclass
class PhaseStats:
    search_levels: int = 0
    edge_scans: int = 0
    ddfs_steps: int = 0
    petals: int = 0
    paths: int = 0
    shortest: float = INF
    extracted: List[AlternatingPath] = field(default_factory=list, repr=False)

    def as_dict(self) -> Dict[str, Optional[int]]:
        return {
            'search_levels': self.search_levels,
            'edge_scans': self.edge_scans,
            'ddfs_steps': self.ddfs_steps,
            'petals': self.petals,
            'paths': self.paths,
            'shortest': None if self.shortest == INF else int(self.shortest),
        }


@dataclass
class MatchingResult:
    matching: Matching
    phases: List[PhaseStats]

    @property
    def size(self) -> int:
        return self.matching.size


def walk(s: LevelState, pf: PetalForest, x: int, t: int, parity: int) -> List[int]:
    """
    Alternating path x..t going down, with x taken at the level of the given parity.

    Vertices at their minlevel follow predecessor links; a vertex needed at
    its maxlevel is routed through the bridge of its petal.
    """
    path = [x]
    cur = x
    floor = s.minlevel(t)
    while cur != t:
        if s.minlevel(cur) % 2 != parity:
            path.extend(_open_inner(s, pf, cur, t)[1:])
            return path
        if s.minlevel(cur) <= floor:
            raise PathError(f"walk from {x} went below {t} without meeting it")
        nxt = next((w for w in s.preds[cur] if s.alive[w]), None)
        if nxt is None:
            raise PathError(f"vertex {cur} has no live predecessor")
        path.append(nxt)
        cur = nxt
        parity ^= 1
    return path


def _expand(s: LevelState, pf: PetalForest, tree: Dict[int, TreeEdge], root: int, target: int) -> List[int]:
    """Full vertex path root..target behind a contracted search tree path"""
    hops: List[Tuple[int, int, int]] = []
    v = target
    while v != root:
        edge = tree.get(v)
        if edge is None:
            raise PathError(f"vertex {v} is not in the search tree of {root}")
        parent, via = edge
        hops.append((parent, via, v))
        v = parent
    path = [root]
    for parent, via, child in reversed(hops):
        path.extend(walk(s, pf, via, child, int(s.minlevel(parent) - 1) % 2))
    return path


def _open_inner(s: LevelState, pf: PetalForest, x: int, t: int) -> List[int]:
    petal = pf.petal_containing(x)
    if petal is None:
        raise PathError(f"vertex {x} is needed at its maxlevel but lies in no petal")
    if not s.alive[petal.bud]:
        raise PetalError(f"petal {petal.id} is consulted after its bud {petal.bud} died")
    if pf.color[x] == Color.RED:
        c, d = petal.bridge
        own_tree, own_root = petal.red_tree, petal.red_root
        other_tree, other_root = petal.green_tree, petal.green_root
    else:
        d, c = petal.bridge
        own_tree, own_root = petal.green_tree, petal.green_root
        other_tree, other_root = petal.red_tree, petal.red_root
    parity = ODD if petal.matched_bridge else EVEN
    up = walk(s, pf, c, own_root, parity) + _expand(s, pf, own_tree, own_root, x)[1:]
    across = walk(s, pf, d, other_root, parity) + _expand(s, pf, other_tree, other_root, petal.bud)[1:]
    return up[::-1] + across + walk(s, pf, petal.bud, t, EVEN)[1:]


def _flags(partner: Sequence[Optional[int]], vertices: Sequence[int]) -> Tuple[bool, ...]:
    return tuple(partner[a] == b for a, b in zip(vertices, vertices[1:]))


def open_petal(s: LevelState, pf: PetalForest, v: int, b: int, parity: Optional[int] = None) -> AlternatingPath:
    """Alternating path from v down to b, by default at v's maxlevel when v is in a petal"""
    if parity is None:
        level = s.maxlevel(v) if pf.petal_of[v] is not None else s.minlevel(v)
        if level == INF:
            raise PathError(f"vertex {v} was not reached this phase")
        parity = int(level) % 2
    vertices = walk(s, pf, v, b, parity)
    return AlternatingPath(tuple(vertices), _flags(s.mate, vertices))


def extract_path(s: LevelState, pf: PetalForest, bridge: int, outcome: FreePair,
                 partner: Optional[Sequence[Optional[int]]] = None) -> AlternatingPath:
    """Augmenting path between the two free vertices of a free-pair outcome, through the bridge"""
    u, v = s.graph.edges[bridge]
    parity = ODD if s.mate[u] == v else EVEN
    red_down = walk(s, pf, u, outcome.red_root, parity) + \
        _expand(s, pf, outcome.red_tree, outcome.red_root, outcome.red_free)[1:]
    green_down = walk(s, pf, v, outcome.green_root, parity) + \
        _expand(s, pf, outcome.green_tree, outcome.green_root, outcome.green_free)[1:]
    vertices = red_down[::-1] + green_down
    partner = s.mate if partner is None else partner
    problem = augmenting_problem(s.graph, partner, vertices)
    if problem is not None:
        raise PathError(f"bridge ({u}, {v}): {problem}")
    return AlternatingPath(tuple(vertices), _flags(partner, vertices))


def _remove(s: LevelState, vertices: Sequence[int]) -> List[int]:
    """Kill the vertices, then everything left without a live predecessor"""
    removed = []
    queue = deque()
    for v in vertices:
        if s.alive[v]:
            s.alive[v] = False
            removed.append(v)
            queue.append(v)
    while queue:
        dead = queue.popleft()
        for y in s.succ_of[dead]:
            if not s.alive[y]:
                continue
            s.alive_preds[y] -= 1
            if s.alive_preds[y] == 0:
                s.alive[y] = False
                removed.append(y)
                queue.append(y)
    return removed


def _flip(partner: MutableSequence[Optional[int]], vertices: Sequence[int]) -> None:
    for k in range(0, len(vertices) - 1, 2):
        a, b = vertices[k], vertices[k + 1]
        partner[a] = b
        partner[b] = a


def augment_and_cascade(g: Graph, m: Matching, s: LevelState, p: AlternatingPath) -> Tuple[Matching, FrozenSet[int]]:
    """Augment along p and remove every vertex that can no longer sit on a disjoint shortest path"""
    if not is_augmenting(g, m, p):
        raise PathError(f"path {list(p.vertices)} is not augmenting")
    matching = augment(m, p)
    removed = _remove(s, p.vertices)
    return matching, frozenset(removed)


@dataclass
class PhaseRun:
    """What one phase leaves behind; state and forest stay around for inspection"""
    state: LevelState
    forest: PetalForest
    matching: Matching
    stats: PhaseStats


def search_phase(g: Graph, m: Matching, config: Optional[PhaseConfig] = None,
                 trace: Optional[Trace] = None, on_level: Optional[LevelHook] = None) -> PhaseRun:
    """
    Find a maximal set of disjoint shortest augmenting paths and augment along all of them.

    on_level is called once the bridges of a search level are processed,
    before the phase decides whether to stop.
    """
    config = config or PhaseConfig()
    s = init_phase(g, m, config)
    pf = PetalForest(g.n)
    partner = list(m.partner)
    stats = PhaseStats()

    def sink(bridge: int, outcome: FreePair) -> None:
        p = extract_path(s, pf, bridge, outcome, partner)
        _flip(partner, p.vertices)
        removed = _remove(s, p.vertices)
        stats.extracted.append(p)
        logger.debug(f"[search_phase] path of length {len(p)} through bridge {g.edges[bridge]}, "
                     f"{len(removed)} vertices removed")

    for i in range(config.search_limit(g) + 1):
        run_min(s, i)
        run_max(s, pf, i, sink, trace)
        stats.search_levels = i + 1
        if on_level is not None:
            on_level(i, s, pf)
        if stats.extracted:
            stats.shortest = 2 * i + 1
            break
        if phase_done(s, i):
            break

    stats.edge_scans = s.edge_scans
    stats.ddfs_steps = s.ddfs_steps
    stats.petals = len(pf.petals)
    stats.paths = len(stats.extracted)
    logger.debug(f"[search_phase] levels={stats.search_levels} paths={stats.paths} "
                 f"shortest={format_level(stats.shortest)} petals={stats.petals}")
    return PhaseRun(s, pf, Matching(partner), stats)


def run_phase(g: Graph, m: Matching, config: Optional[PhaseConfig] = None,
              trace: Optional[Trace] = None) -> Tuple[Matching, PhaseStats]:
    run = search_phase(g, m, config, trace)
    return run.matching, run.stats


def maximum_matching(g: Graph, m0: Optional[Matching] = None, *, warm_start: bool = False,
                     config: Optional[PhaseConfig] = None, trace: Optional[Trace] = None) -> MatchingResult:
    """Repeat phases until none finds an augmenting path"""
    if m0 is None and warm_start:
        m0 = greedy_matching(g)
    m = ensure_matching(g, m0)
    phases: List[PhaseStats] = []
    while True:
        m, stats = run_phase(g, m, config, trace)
        phases.append(stats)
        if stats.paths == 0:
            break
    logger.info(f"[maximum_matching] n={g.n} m={g.m}: size {m.size} after {len(phases)} phases")
    return MatchingResult(m, phases)
