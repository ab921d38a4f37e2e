from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, List, Optional, Tuple

from ddfs import Bottleneck, Color, FreePair, Trace, TreeEdge, ddfs_on_graph
from errors import PetalError
from level_state import INF, LevelState, resolve_pending

logger = logging.getLogger(__name__)

# Called with the bridge edge id and the free pair found through it
AugmentSink = Callable[[int, FreePair], None]


@dataclass(frozen=True)
class Petal:
    id: int
    bridge: Tuple[int, int]
    bud: int
    members: FrozenSet[int]
    tenacity: int
    red_root: int
    green_root: int
    red_tree: Dict[int, TreeEdge]
    green_tree: Dict[int, TreeEdge]
    matched_bridge: bool

    def describe(self) -> str:
        members = ' '.join(str(v) for v in sorted(self.members))
        return f"petal {self.id} bud {self.bud} bridge {self.bridge[0]} {self.bridge[1]} members {members}"


class PetalForest:
    """Petals of one phase and the union-find that realizes bud*"""

    def __init__(self, n: int):
        self.petals: List[Petal] = []
        self.petal_of: List[Optional[int]] = [None] * n
        self.color: List[Optional[Color]] = [None] * n
        self._parent = list(range(n))
        self._size = [1] * n
        # representative -> bud* of its set
        self._anchor = list(range(n))

    def _find(self, v: int) -> int:
        root = v
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[v] != root:
            self._parent[v], v = root, self._parent[v]
        return root

    def bud_star(self, v: int) -> int:
        return self._anchor[self._find(v)]

    def union(self, member: int, bud: int) -> None:
        """Merge member's set into bud's; bud's bud* stays the anchor"""
        a, b = self._find(member), self._find(bud)
        if a == b:
            raise PetalError(f"{member} and {bud} already share bud* {self._anchor[a]}")
        anchor = self._anchor[b]
        if self._size[a] > self._size[b]:
            a, b = b, a
        self._parent[a] = b
        self._size[b] += self._size[a]
        self._anchor[b] = anchor

    def petal_containing(self, v: int) -> Optional[Petal]:
        pid = self.petal_of[v]
        return self.petals[pid] if pid is not None else None

    def dump_petals(self) -> List[str]:
        return [p.describe() for p in self.petals]


def create_petal(s: LevelState, pf: PetalForest, bridge: int, outcome: Bottleneck, i: int) -> Petal:
    """Turn a bottleneck outcome into a petal hanging from its bottleneck"""
    t = 2 * i + 1
    u, v = s.graph.edges[bridge]
    b = outcome.bottleneck
    if not s.is_outer(b):
        raise PetalError(f"bud {b} of bridge ({u}, {v}) is not outer")
    members = frozenset(outcome.red | outcome.green)
    petal = Petal(
        id=len(pf.petals),
        bridge=(u, v),
        bud=b,
        members=members,
        tenacity=t,
        red_root=outcome.red_root,
        green_root=outcome.green_root,
        red_tree=outcome.red_tree,
        green_tree=outcome.green_tree,
        matched_bridge=s.mate[u] == v,
    )
    pf.petals.append(petal)
    for x in sorted(members):
        if pf.petal_of[x] is not None:
            raise PetalError(f"vertex {x} is already in petal {pf.petal_of[x]}")
        if s.evenlevel[x] != INF and s.oddlevel[x] != INF:
            raise PetalError(f"vertex {x} already has both levels, maxlevel would be assigned twice")
        low = s.minlevel(x)
        level = t - low
        if level <= low:
            raise PetalError(f"vertex {x}: maxlevel {level} does not exceed minlevel {low}")
        if level % 2 == 0:
            s.evenlevel[x] = level
        else:
            s.oddlevel[x] = level
        pf.color[x] = Color.RED if x in outcome.red else Color.GREEN
        pf.petal_of[x] = petal.id
        pf.union(x, b)
        s.level_buckets[level].append(x)
        resolve_pending(s, x)
    logger.debug(f"[create_petal] {petal.describe()}")
    return petal


def run_max(s: LevelState, pf: PetalForest, i: int, sink: AugmentSink, trace: Optional[Trace] = None) -> int:
    """Process every bridge of tenacity 2i+1; returns the number of petals created"""
    bucket = s.bridge_buckets.get(2 * i + 1)
    if not bucket:
        return 0
    created = 0
    alive = s.alive
    for e in bucket:
        u, v = s.graph.edges[e]
        if not (alive[u] and alive[v] and alive[pf.bud_star(u)] and alive[pf.bud_star(v)]):
            continue
        outcome = ddfs_on_graph(s, pf, e, trace)
        s.ddfs_steps += outcome.steps
        if isinstance(outcome, FreePair):
            sink(e, outcome)
        elif not outcome.is_empty:
            create_petal(s, pf, e, outcome, i)
            created += 1
    return created
