"""
Exhaustive ground truth for small graphs.

Everything here is computed by enumerating simple alternating paths, so it
is exponential and guarded by instance-size limits from config. Nothing in
this module may import the search engine.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx

import config
from errors import OracleGuardError
from graph_core import Graph, Matching

logger = logging.getLogger(__name__)

INF = math.inf

Path = Tuple[int, ...]
BlossomKey = Tuple[int, int]


def _fmt(value) -> str:
    return 'inf' if value == INF else str(int(value))


class _Budget:
    def __init__(self, limit: int):
        self.left = limit
        self.limit = limit

    def spend(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise OracleGuardError(f"more than {self.limit} alternating paths enumerated")


def _alternating_paths(g: Graph, partner: Sequence[Optional[int]], start: int, budget: _Budget,
                       avoid: FrozenSet[int] = frozenset()) -> Iterator[Path]:
    """Every simple alternating path from start whose first edge is unmatched"""
    path = [start]
    on_path = {start}

    def extend(want_matched: bool) -> Iterator[Path]:
        budget.spend()
        yield tuple(path)
        v = path[-1]
        if want_matched:
            nexts = [partner[v]] if partner[v] is not None else []
        else:
            nexts = [w for w in g.neighbors(v) if w != partner[v]]
        for w in nexts:
            if w in on_path or w in avoid:
                continue
            path.append(w)
            on_path.add(w)
            yield from extend(not want_matched)
            path.pop()
            on_path.discard(w)

    return extend(False)


def _min_paths(paths: Iterator[Path]) -> Tuple[Dict[Tuple[int, int], int], Dict[Tuple[int, int], List[Path]]]:
    """Shortest length and all shortest paths per (endpoint, parity)"""
    best: Dict[Tuple[int, int], int] = {}
    witnesses: Dict[Tuple[int, int], List[Path]] = {}
    for p in paths:
        length = len(p) - 1
        key = (p[-1], length % 2)
        known = best.get(key)
        if known is None or length < known:
            best[key] = length
            witnesses[key] = [p]
        elif length == known:
            witnesses[key].append(p)
    return best, witnesses


@dataclass
class Failure:
    check: str
    witness: Tuple
    detail: str = ''

    def __str__(self) -> str:
        return f"{self.check} {self.witness}: {self.detail}"


@dataclass
class StructureReport:
    failures: List[Failure] = field(default_factory=list)
    checked: Dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, check: str, witness: Tuple, detail: str = '') -> None:
        self.failures.append(Failure(check, witness, detail))

    def count(self, check: str) -> None:
        self.checked[check] = self.checked.get(check, 0) + 1


@dataclass
class OracleProfile:
    graph: Graph
    partner: Tuple[Optional[int], ...]
    evenlevel: List[float]
    oddlevel: List[float]
    # shortest paths from a free vertex, per (vertex, parity)
    level_paths: Dict[Tuple[int, int], List[Path]]
    shortest: float
    f_sets: Dict[int, FrozenSet[Optional[int]]] = field(default_factory=dict)
    base: Dict[int, int] = field(default_factory=dict)
    chains: Dict[int, List[int]] = field(default_factory=dict)
    blossoms: Dict[BlossomKey, FrozenSet[int]] = field(default_factory=dict)
    depth: Dict[BlossomKey, int] = field(default_factory=dict)
    classic_blossoms: Dict[BlossomKey, FrozenSet[int]] = field(default_factory=dict)
    edge_class: List[str] = field(default_factory=list)
    edge_tenacity: List[float] = field(default_factory=list)
    supports: Dict[int, FrozenSet[int]] = field(default_factory=dict)
    _from_base: Dict[int, Tuple[dict, dict]] = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return self.graph.n

    def tenacity(self, v: int) -> float:
        return self.evenlevel[v] + self.oddlevel[v]

    def minlevel(self, v: int) -> float:
        return min(self.evenlevel[v], self.oddlevel[v])

    def maxlevel(self, v: int) -> float:
        return max(self.evenlevel[v], self.oddlevel[v])

    def is_outer(self, v: int) -> bool:
        return self.evenlevel[v] < self.oddlevel[v]

    def paths(self, v: int, parity: int) -> List[Path]:
        return self.level_paths.get((v, parity), [])

    def min_paths(self, v: int) -> List[Path]:
        level = self.minlevel(v)
        return [] if level == INF else self.paths(v, int(level) % 2)

    def max_paths(self, v: int) -> List[Path]:
        level = self.maxlevel(v)
        return [] if level == INF else self.paths(v, int(level) % 2)

    def all_level_paths(self, v: int) -> List[Path]:
        return self.paths(v, 0) + self.paths(v, 1)

    def has_all_bases(self, v: int) -> bool:
        """Iterated base chain ends at a free vertex"""
        chain = self.chains.get(v)
        return bool(chain) and self.partner[chain[-1]] is None

    def from_base(self, b: int) -> Tuple[dict, dict]:
        """Shortest alternating paths from b starting with an unmatched edge"""
        if b not in self._from_base:
            budget = _Budget(config.ORACLE_MAX_PATHS)
            self._from_base[b] = _min_paths(_alternating_paths(self.graph, self.partner, b, budget))
        return self._from_base[b]


def _guard(g: Graph, max_vertices: Optional[int]) -> None:
    limit = config.ORACLE_MAX_VERTICES if max_vertices is None else max_vertices
    if g.n > limit:
        raise OracleGuardError(f"graph has {g.n} vertices, exhaustive enumeration allows at most {limit}")


def enumerate_levels(g: Graph, m: Matching, max_vertices: Optional[int] = None) -> OracleProfile:
    """Exact even and odd levels by enumerating every alternating path from every free vertex"""
    _guard(g, max_vertices)
    partner = m.partner
    budget = _Budget(config.ORACLE_MAX_PATHS)

    def all_paths() -> Iterator[Path]:
        for f in range(g.n):
            if partner[f] is None:
                yield from _alternating_paths(g, partner, f, budget)

    best, witnesses = _min_paths(all_paths())
    evenlevel = [float(best.get((v, 0), INF)) for v in range(g.n)]
    oddlevel = [float(best.get((v, 1), INF)) for v in range(g.n)]
    shortest = min((oddlevel[f] for f in range(g.n) if partner[f] is None), default=INF)
    return OracleProfile(g, partner, evenlevel, oddlevel, witnesses, shortest)


def _furthest_above(profile: OracleProfile, p: Path, t: float) -> Optional[int]:
    for x in reversed(p):
        if profile.tenacity(x) > t:
            return x
    return None


def compute_bases(profile: OracleProfile) -> None:
    """Base of every vertex below l_m, and its iterated base chain"""
    for v in range(profile.n):
        t = profile.tenacity(v)
        if t == INF:
            continue
        profile.f_sets[v] = frozenset(_furthest_above(profile, p, t) for p in profile.all_level_paths(v))
        if t < profile.shortest:
            candidates = profile.f_sets[v]
            if len(candidates) == 1 and None not in candidates:
                profile.base[v] = next(iter(candidates))
    for v in profile.base:
        chain = []
        x = v
        while x in profile.base:
            x = profile.base[x]
            chain.append(x)
        profile.chains[v] = chain


def _tenacity_range(profile: OracleProfile) -> List[int]:
    finite = [profile.tenacity(v) for v in range(profile.n) if profile.tenacity(v) != INF]
    top = int(max(finite, default=1))
    return list(range(1, top + 1, 2))


def build_blossoms(profile: OracleProfile) -> None:
    """Blossoms by the recursive definition and by the base_{>t} definition"""
    memo: Dict[BlossomKey, Tuple[FrozenSet[int], int]] = {}

    def blossom(b: int, t: int) -> Tuple[FrozenSet[int], int]:
        if t <= 1:
            return frozenset(), 0
        key = (b, t)
        if key in memo:
            return memo[key]
        crown = {v for v in range(profile.n) if profile.tenacity(v) == t and profile.base.get(v) == b}
        members = set(crown)
        depths = []
        for x in crown | {b}:
            if profile.is_outer(x):
                inner, d = blossom(x, t - 2)
                members |= inner
                depths.append(d)
        depth = 1 + max(depths) if crown else blossom(b, t - 2)[1]
        memo[key] = (frozenset(members), depth)
        return memo[key]

    def base_above(v: int, t: int) -> Optional[int]:
        x = v
        while profile.tenacity(x) <= t:
            if x not in profile.base:
                return None
            x = profile.base[x]
        return x

    for t in _tenacity_range(profile):
        if t >= profile.shortest:
            break
        classic: Dict[int, Set[int]] = {}
        for v in range(profile.n):
            if profile.tenacity(v) <= t:
                b = base_above(v, t)
                if b is not None and profile.is_outer(b):
                    classic.setdefault(b, set()).add(v)
        for b in range(profile.n):
            if not profile.is_outer(b) or profile.tenacity(b) <= t:
                continue
            members, depth = blossom(b, t)
            if members or b in classic:
                profile.blossoms[(b, t)] = members
                profile.depth[(b, t)] = depth
                profile.classic_blossoms[(b, t)] = frozenset(classic.get(b, ()))


def classify_edges(profile: OracleProfile) -> None:
    """Props, bridges, edge tenacities and bridge supports"""
    g = profile.graph
    profile.edge_class = []
    profile.edge_tenacity = []
    for e, (u, v) in enumerate(g.edges):
        prop = any(p[-2] == v for p in profile.min_paths(u) if len(p) > 1) or \
            any(p[-2] == u for p in profile.min_paths(v) if len(p) > 1)
        profile.edge_class.append('prop' if prop else 'bridge')
        if profile.partner[u] == v:
            t = profile.oddlevel[u] + profile.oddlevel[v] + 1
        else:
            t = profile.evenlevel[u] + profile.evenlevel[v] + 1
        profile.edge_tenacity.append(t)
        if prop or t == INF or t > profile.shortest:
            continue
        pair = {(u, v), (v, u)}
        profile.supports[e] = frozenset(
            w for w in range(g.n)
            if profile.tenacity(w) == t and any(
                any((a, b) in pair for a, b in zip(p, p[1:])) for p in profile.max_paths(w)
            )
        )


def profile_graph(g: Graph, m: Matching, max_vertices: Optional[int] = None) -> OracleProfile:
    profile = enumerate_levels(g, m, max_vertices)
    compute_bases(profile)
    build_blossoms(profile)
    classify_edges(profile)
    logger.debug(f"[profile_graph] n={g.n} l_m={_fmt(profile.shortest)} "
                 f"bases={len(profile.base)} blossoms={len(profile.blossoms)}")
    return profile


def _check_honesty(profile: OracleProfile, report: StructureReport) -> None:
    for v in range(profile.n):
        t = profile.tenacity(v)
        if t == INF or t > profile.shortest:
            continue
        for p in profile.all_level_paths(v):
            report.count('honesty')
            for k, u in enumerate(p):
                if profile.tenacity(u) < t:
                    continue
                level = profile.evenlevel[u] if k % 2 == 0 else profile.oddlevel[u]
                if k != level:
                    report.fail('honesty', (v, u), f"{u} at {k} on {list(p)}, level {_fmt(level)}")
                elif profile.tenacity(u) > t and k != profile.minlevel(u):
                    report.fail('honesty', (v, u), f"{u} at {k} on {list(p)}, minlevel {_fmt(profile.minlevel(u))}")


def _check_bases(profile: OracleProfile, report: StructureReport) -> None:
    for v, candidates in profile.f_sets.items():
        if profile.tenacity(v) >= profile.shortest:
            continue
        report.count('base')
        if v not in profile.base:
            report.fail('base', (v,), f"candidates {sorted(candidates, key=lambda x: -1 if x is None else x)}")
        elif not profile.is_outer(profile.base[v]):
            report.fail('base', (v, profile.base[v]), "base is not outer")


def _check_laminar(profile: OracleProfile, report: StructureReport) -> None:
    sets = sorted({s for s in profile.blossoms.values() if s}, key=len)
    for i, a in enumerate(sets):
        for b in sets[i + 1:]:
            report.count('laminar')
            if a & b and not a <= b:
                report.fail('laminar', (tuple(sorted(a)), tuple(sorted(b))), "blossoms cross")


def _check_confinement(profile: OracleProfile, report: StructureReport) -> None:
    for v, b in profile.base.items():
        t = int(profile.tenacity(v))
        allowed = profile.blossoms.get((b, t), frozenset()) | {b}
        best, witnesses = profile.from_base(b)
        for parity in (0, 1):
            for p in witnesses.get((v, parity), []):
                report.count('confinement')
                stray = [x for x in p if x not in allowed]
                if stray:
                    report.fail('confinement', (b, t, v), f"{stray} on {list(p)}")


def _check_concat(profile: OracleProfile, report: StructureReport) -> None:
    for v, b in profile.base.items():
        best, _ = profile.from_base(b)
        for parity in (0, 1):
            for p in profile.paths(v, parity):
                report.count('concat')
                if b not in p:
                    report.fail('concat', (v, b), f"base missing from {list(p)}")
                    continue
                k = p.index(b)
                rest = len(p) - 1 - k
                if k != profile.evenlevel[b] or rest != best.get((v, parity)):
                    report.fail('concat', (v, b), f"split {k}+{rest} of {list(p)}")


def _check_iterated_bases(profile: OracleProfile, report: StructureReport) -> None:
    for v in profile.chains:
        if not profile.has_all_bases(v):
            continue
        for p in profile.all_level_paths(v):
            report.count('iterated-bases')
            on_path = set(p)
            for u in p:
                if profile.partner[u] is None:
                    continue
                if not profile.has_all_bases(u):
                    report.fail('iterated-bases', (v, u), f"{u} has an incomplete chain")
                    continue
                missing = [x for x in profile.chains[u] if x not in on_path]
                if missing:
                    report.fail('iterated-bases', (v, u), f"{missing} not on {list(p)}")


def _check_unique_bridge(profile: OracleProfile, report: StructureReport) -> None:
    g = profile.graph
    for v in range(profile.n):
        t = profile.tenacity(v)
        if t == INF or t > profile.shortest:
            continue
        for p in profile.max_paths(v):
            report.count('unique-bridge')
            found = [
                (a, b) for a, b in zip(p, p[1:])
                if profile.edge_class[g.edge_id(a, b)] == 'bridge' and profile.edge_tenacity[g.edge_id(a, b)] == t
            ]
            if len(found) != 1:
                report.fail('unique-bridge', (v,), f"{found} on {list(p)}")


def _check_edges(profile: OracleProfile, report: StructureReport) -> None:
    g = profile.graph
    for e, (u, v) in enumerate(g.edges):
        t = profile.edge_tenacity[e]
        if profile.partner[u] == v:
            report.count('t-matched')
            if not profile.tenacity(u) == profile.tenacity(v) == t:
                report.fail('t-matched', (u, v), f"{_fmt(profile.tenacity(u))} {_fmt(profile.tenacity(v))} {_fmt(t)}")
        elif profile.edge_class[e] == 'bridge' and t <= profile.shortest:
            report.count('un-bridge')
            if profile.tenacity(u) > t or profile.tenacity(v) > t:
                report.fail('un-bridge', (u, v), f"endpoint tenacity exceeds {_fmt(t)}")


def _check_equivalence(profile: OracleProfile, report: StructureReport) -> None:
    for key, members in profile.blossoms.items():
        report.count('equivalence')
        classic = profile.classic_blossoms.get(key, frozenset())
        if members != classic:
            report.fail('equivalence', key, f"recursive {sorted(members)} vs classic {sorted(classic)}")


def check_structure(profile: OracleProfile) -> StructureReport:
    """Verify the structural facts about shortest alternating paths on a full profile"""
    report = StructureReport()
    _check_honesty(profile, report)
    _check_bases(profile, report)
    _check_laminar(profile, report)
    _check_confinement(profile, report)
    _check_concat(profile, report)
    _check_iterated_bases(profile, report)
    _check_unique_bridge(profile, report)
    _check_edges(profile, report)
    _check_equivalence(profile, report)
    if report.failures:
        logger.debug(f"[check_structure] {len(report.failures)} failures, first: {report.failures[0]}")
    return report


def augmenting_paths(g: Graph, m: Matching, length: int, avoid: FrozenSet[int] = frozenset(),
                     max_vertices: Optional[int] = None) -> List[Path]:
    """Every augmenting path of exactly this length that avoids the given vertices"""
    _guard(g, max_vertices)
    budget = _Budget(config.ORACLE_MAX_PATHS)
    found = []
    for f in range(g.n):
        if m.partner[f] is not None or f in avoid:
            continue
        for p in _alternating_paths(g, m.partner, f, budget, avoid):
            if len(p) - 1 == length and p[-1] != f and m.partner[p[-1]] is None:
                found.append(p)
    return found


def max_matching_exhaustive(g: Graph, max_edges: Optional[int] = None) -> int:
    """Maximum matching size by branching on the lowest undecided vertex"""
    limit = config.ORACLE_MAX_EDGES if max_edges is None else max_edges
    if g.m > limit:
        raise OracleGuardError(f"graph has {g.m} edges, exhaustive search allows at most {limit}")
    used = [False] * g.n

    def solve(v: int) -> int:
        while v < g.n and used[v]:
            v += 1
        if v >= g.n - 1:
            return 0
        used[v] = True
        best = solve(v + 1)
        for w in g.neighbors(v):
            if w > v and not used[w]:
                used[w] = True
                best = max(best, 1 + solve(v + 1))
                used[w] = False
        used[v] = False
        return best

    return solve(0)


def reference_matching_size(g: Graph) -> int:
    """Independent maximum cardinality via networkx blossom contraction"""
    if g.n > config.REFERENCE_MAX_VERTICES:
        raise OracleGuardError(f"reference matcher is limited to {config.REFERENCE_MAX_VERTICES} vertices")
    nx_graph = nx.Graph()
    nx_graph.add_nodes_from(range(g.n))
    nx_graph.add_edges_from(g.edges)
    return len(nx.max_weight_matching(nx_graph, maxcardinality=True))


def dump_profile(profile: OracleProfile) -> List[str]:
    """Line dump mirroring the analyze output, plus bases, edges and blossoms"""
    lines = []
    for v in range(profile.n):
        base = profile.base.get(v)
        lines.append(
            f"{v} {_fmt(profile.evenlevel[v])} {_fmt(profile.oddlevel[v])} {_fmt(profile.tenacity(v))}"
            f" base {'-' if base is None else base}"
        )
    for e, (u, v) in enumerate(profile.graph.edges):
        lines.append(f"edge {u} {v} {profile.edge_class[e]} {_fmt(profile.edge_tenacity[e])}")
    for (b, t), members in sorted(profile.blossoms.items()):
        listed = ' '.join(str(x) for x in sorted(members))
        lines.append(f"blossom {b} {t} depth {profile.depth[(b, t)]} members {listed}".rstrip())
    lines.append(f"shortest {_fmt(profile.shortest)}")
    return lines
