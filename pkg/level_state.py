from __future__ import annotations

import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from enum import IntEnum
from typing import Dict, List, Optional

from errors import InvalidMatchingError, PhaseOrderError
from graph_core import Graph, Matching, validate_matching

logger = logging.getLogger(__name__)

INF = math.inf


class EdgeClass(IntEnum):
    UNSCANNED = 0
    PROP = 1
    BRIDGE = 2


class BridgePlacement(IntEnum):
    PLACED = 0
    DEFERRED = 1
    DROPPED = 2


@dataclass
class PhaseConfig:
    """Per-phase knobs"""
    max_search_level: Optional[int] = None
    count_scans: bool = True

    def __post_init__(self):
        if self.max_search_level is not None and self.max_search_level < 0:
            raise ValueError(f"max_search_level must be >= 0, got {self.max_search_level}")

    def search_limit(self, g: Graph) -> int:
        return g.n if self.max_search_level is None else self.max_search_level


def format_level(value) -> str:
    return 'inf' if value == INF else str(int(value))


class LevelState:
    """Levels, predecessors, edge classes and bridge buckets of one phase"""

    def __init__(self, g: Graph, m: Matching):
        n = g.n
        self.graph = g
        self.mate: List[Optional[int]] = list(m.partner)
        self.mate_edge: List[Optional[int]] = [
            g.edge_id(v, w) if w is not None else None for v, w in enumerate(self.mate)
        ]
        self.evenlevel: List[float] = [INF] * n
        self.oddlevel: List[float] = [INF] * n
        self.preds: List[List[int]] = [[] for _ in range(n)]
        self.succ_of: List[List[int]] = [[] for _ in range(n)]
        self.alive_preds: List[int] = [0] * n
        self.classification: List[EdgeClass] = [EdgeClass.UNSCANNED] * g.m
        self.bridge_tenacity: Dict[int, float] = {}
        self.bridge_buckets: Dict[int, List[int]] = defaultdict(list)
        self.pending: List[List[int]] = [[] for _ in range(n)]
        self.level_buckets: Dict[int, List[int]] = defaultdict(list)
        self.alive: List[bool] = [True] * n
        self.edge_scans = 0
        self.ddfs_steps = 0
        self.next_level = 0
        self.count_scans = True

    def minlevel(self, v: int) -> float:
        even, odd = self.evenlevel[v], self.oddlevel[v]
        return even if even < odd else odd

    def maxlevel(self, v: int) -> float:
        even, odd = self.evenlevel[v], self.oddlevel[v]
        return even if even > odd else odd

    def tenacity(self, v: int) -> float:
        return self.evenlevel[v] + self.oddlevel[v]

    def is_outer(self, v: int) -> bool:
        return self.evenlevel[v] < self.oddlevel[v]

    def edge_tenacity(self, e: int) -> float:
        u, v = self.graph.edges[e]
        if self.mate[u] == v:
            return self.oddlevel[u] + self.oddlevel[v] + 1
        return self.evenlevel[u] + self.evenlevel[v] + 1

    def dump_levels(self) -> List[str]:
        """One line per vertex: v evenlevel oddlevel tenacity"""
        return [
            f"{v} {format_level(self.evenlevel[v])} {format_level(self.oddlevel[v])} {format_level(self.tenacity(v))}"
            for v in range(self.graph.n)
        ]

    def dump_buckets(self) -> List[str]:
        lines = []
        for t in sorted(self.bridge_buckets):
            edges = self.bridge_buckets[t]
            if not edges:
                continue
            pairs = ' '.join(f"{self.graph.edges[e][0]}-{self.graph.edges[e][1]}" for e in edges)
            lines.append(f"bucket {t} {pairs}")
        return lines


def init_phase(g: Graph, m: Matching, config: Optional[PhaseConfig] = None) -> LevelState:
    """Fresh phase state: evenlevel 0 at free vertices, everything else infinite"""
    violation = validate_matching(g, m)
    if violation is not None:
        raise InvalidMatchingError(violation)
    s = LevelState(g, m)
    s.count_scans = config.count_scans if config is not None else True
    for v in range(g.n):
        if s.mate[v] is None:
            s.evenlevel[v] = 0
            s.level_buckets[0].append(v)
    return s


def _scan(s: LevelState, u: int, v: int, e: int, i: int, found: List[int]) -> None:
    s.classification[e] = EdgeClass.PROP
    if s.count_scans:
        s.edge_scans += 1
    if s.minlevel(v) >= i + 1:
        slot = s.oddlevel if i % 2 == 0 else s.evenlevel
        if slot[v] == INF:
            slot[v] = i + 1
            s.level_buckets[i + 1].append(v)
            found.append(v)
        s.preds[v].append(u)
        s.succ_of[u].append(v)
        s.alive_preds[v] += 1
    else:
        s.classification[e] = EdgeClass.BRIDGE
        register_bridge(s, e)


def run_min(s: LevelState, i: int) -> List[int]:
    """Search from every level-i vertex; return the vertices given minlevel i+1"""
    if i != s.next_level:
        raise PhaseOrderError(f"run_min called for level {i}, expected {s.next_level}")
    s.next_level += 1
    g = s.graph
    found: List[int] = []
    for u in sorted(s.level_buckets.get(i, ())):
        if not s.alive[u]:
            continue
        if i % 2 == 0:
            mate = s.mate[u]
            for v, e in g.adjacency[u]:
                if v == mate or not s.alive[v] or s.classification[e] != EdgeClass.UNSCANNED:
                    continue
                _scan(s, u, v, e, i, found)
        else:
            v, e = s.mate[u], s.mate_edge[u]
            if v is None or not s.alive[v] or s.classification[e] != EdgeClass.UNSCANNED:
                continue
            _scan(s, u, v, e, i, found)
    return found


def _place(s: LevelState, e: int, t: float) -> None:
    s.bridge_tenacity[e] = t
    s.bridge_buckets[int(t)].append(e)


def register_bridge(s: LevelState, e: int) -> BridgePlacement:
    """Bucket a bridge by tenacity, or defer it until a missing maxlevel is known"""
    u, v = s.graph.edges[e]
    slot = s.oddlevel if s.mate[u] == v else s.evenlevel
    t = slot[u] + slot[v] + 1
    if t != INF:
        _place(s, e, t)
        return BridgePlacement.PLACED
    waiting = False
    for w in (u, v):
        # a vertex with no finite level at all is unreachable this phase
        if slot[w] == INF and s.minlevel(w) != INF:
            s.pending[w].append(e)
            waiting = True
    return BridgePlacement.DEFERRED if waiting else BridgePlacement.DROPPED


def resolve_pending(s: LevelState, v: int) -> List[int]:
    """Place bridges deferred on v whose tenacity became finite"""
    waiting, s.pending[v] = s.pending[v], []
    placed = []
    for e in waiting:
        if e in s.bridge_tenacity:
            continue
        t = s.edge_tenacity(e)
        if t != INF:
            _place(s, e, t)
            placed.append(e)
    return placed


def phase_done(s: LevelState, i: int) -> bool:
    """True when nothing at a later level or tenacity can still fire"""
    if any(bucket for level, bucket in s.level_buckets.items() if level > i):
        return False
    return not any(bucket for t, bucket in s.bridge_buckets.items() if t >= 2 * i + 3)
