from __future__ import annotations

import io
import logging
from dataclasses import dataclass
from typing import IO, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from errors import GraphFormatError, InvalidMatchingError, PathError

logger = logging.getLogger(__name__)

Source = Union[IO[str], IO[bytes], str, bytes]


class Graph:
    """Simple undirected graph on vertices 0..n-1 with stable edge ids"""

    __slots__ = ('n', 'edges', 'adjacency', '_index')

    def __init__(self, n: int, edges: Iterable[Tuple[int, int]] = ()):
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        self.n = n
        self.edges: List[Tuple[int, int]] = []
        self.adjacency: List[List[Tuple[int, int]]] = [[] for _ in range(n)]
        self._index = {}
        for u, v in edges:
            self._add_edge(u, v)

    def _add_edge(self, u: int, v: int) -> int:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"edge ({u}, {v}) has a vertex outside 0..{self.n - 1}")
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in self._index:
            raise ValueError(f"duplicate edge ({key[0]}, {key[1]})")
        edge_id = len(self.edges)
        self._index[key] = edge_id
        self.edges.append((u, v))
        self.adjacency[u].append((v, edge_id))
        self.adjacency[v].append((u, edge_id))
        return edge_id

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_id(self, u: int, v: int) -> Optional[int]:
        """Return the id of edge {u, v} or None"""
        return self._index.get((u, v) if u < v else (v, u))

    def has_edge(self, u: int, v: int) -> bool:
        return self.edge_id(u, v) is not None

    def neighbors(self, v: int) -> Iterator[int]:
        return (w for w, _ in self.adjacency[v])

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class Matching:
    """Partner map; immutable once built"""

    __slots__ = ('partner', 'size')

    def __init__(self, partner: Sequence[Optional[int]]):
        self.partner: Tuple[Optional[int], ...] = tuple(partner)
        self.size = sum(1 for p in self.partner if p is not None) // 2

    @classmethod
    def empty(cls, n: int) -> 'Matching':
        return cls([None] * n)

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Tuple[int, int]]) -> 'Matching':
        partner: List[Optional[int]] = [None] * n
        for u, v in pairs:
            partner[u] = v
            partner[v] = u
        return cls(partner)

    def mate(self, v: int) -> Optional[int]:
        return self.partner[v]

    def is_free(self, v: int) -> bool:
        return self.partner[v] is None

    def edges(self) -> List[Tuple[int, int]]:
        """Matched pairs as (u, v) with u < v, sorted"""
        return sorted((u, v) for u, v in enumerate(self.partner) if v is not None and u < v)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Matching) and self.partner == other.partner

    def __hash__(self) -> int:
        return hash(self.partner)

    def __repr__(self) -> str:
        return f"Matching(size={self.size})"


@dataclass(frozen=True)
class Violation:
    """First broken matching invariant and its witness vertices"""
    kind: str
    witness: Tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.kind} at {self.witness}"


@dataclass(frozen=True)
class AlternatingPath:
    """Simple path whose edges alternate between unmatched and matched"""
    vertices: Tuple[int, ...]
    matched: Tuple[bool, ...]

    @classmethod
    def from_vertices(cls, g: Graph, m: Matching, vertices: Sequence[int]) -> 'AlternatingPath':
        """Build a path and check adjacency, simplicity and alternation"""
        problem = _path_problem(g, m.partner, vertices)
        if problem:
            raise PathError(problem)
        flags = tuple(m.partner[a] == b for a, b in zip(vertices, vertices[1:]))
        return cls(tuple(vertices), flags)

    def __len__(self) -> int:
        return max(len(self.vertices) - 1, 0)


def _path_problem(g: Graph, partner: Sequence[Optional[int]], vertices: Sequence[int]) -> Optional[str]:
    if len(set(vertices)) != len(vertices):
        return f"path repeats a vertex: {list(vertices)}"
    previous = None
    for a, b in zip(vertices, vertices[1:]):
        if not g.has_edge(a, b):
            return f"({a}, {b}) is not an edge"
        matched = partner[a] == b
        if previous is not None and matched == previous:
            return f"edges do not alternate at vertex {a}"
        previous = matched
    return None


def augmenting_problem(g: Graph, partner: Sequence[Optional[int]], vertices: Sequence[int]) -> Optional[str]:
    """Reason why vertices is not an augmenting path, or None"""
    if len(vertices) < 2:
        return "augmenting path needs at least one edge"
    if partner[vertices[0]] is not None or partner[vertices[-1]] is not None:
        return "augmenting path endpoints must be free"
    if len(vertices) % 2 != 0:
        return "augmenting path must have odd length"
    return _path_problem(g, partner, vertices)


def is_augmenting(g: Graph, m: Matching, p: AlternatingPath) -> bool:
    return augmenting_problem(g, m.partner, p.vertices) is None


def augment(m: Matching, p: Union[AlternatingPath, Sequence[int]]) -> Matching:
    """Flip the matching along an augmenting path"""
    vertices = p.vertices if isinstance(p, AlternatingPath) else tuple(p)
    partner = list(m.partner)
    for i in range(0, len(vertices) - 1, 2):
        a, b = vertices[i], vertices[i + 1]
        partner[a] = b
        partner[b] = a
    return Matching(partner)


def validate_matching(g: Graph, m: Matching) -> Optional[Violation]:
    """Return None when m is a valid matching of g, otherwise the first violation"""
    if len(m.partner) != g.n:
        return Violation('size mismatch', (len(m.partner), g.n))
    for u, v in enumerate(m.partner):
        if v is None:
            continue
        if not 0 <= v < g.n or v == u:
            return Violation('partner out of range', (u, v))
        if m.partner[v] != u:
            return Violation('symmetry', (u, v))
        if not g.has_edge(u, v):
            return Violation('matched pair is not an edge', (u, v))
    return None


def ensure_matching(g: Graph, m: Optional[Matching]) -> Matching:
    """Default to the empty matching and reject invalid ones"""
    if m is None:
        return Matching.empty(g.n)
    violation = validate_matching(g, m)
    if violation is not None:
        raise InvalidMatchingError(violation)
    return m


def _read_text(source: Source) -> str:
    if isinstance(source, bytes):
        return source.decode('utf-8')
    if isinstance(source, str):
        return source
    data = source.read()
    if isinstance(data, bytes):
        return data.decode('utf-8')
    return data


def _parse_int(token: str, line_no: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphFormatError(f"expected an integer, got '{token}'", line_no)


def _data_lines(text: str, comment_prefix: Optional[str]) -> Iterator[Tuple[int, List[str]]]:
    for line_no, raw in enumerate(text.splitlines(), start=1):
        fields = raw.split()
        if not fields:
            continue
        if comment_prefix is not None and fields[0] == comment_prefix:
            continue
        yield line_no, fields


def _build(n: int, declared: int, pairs: List[Tuple[int, int, int]], last_line: int, base: int) -> Graph:
    """Pairs keep the ids as written in the file; base is subtracted here"""
    g = Graph(n)
    for a, b, line_no in pairs:
        u, v = a - base, b - base
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex id out of range in edge ({a}, {b})", line_no)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {a}", line_no)
        if g.has_edge(u, v):
            raise GraphFormatError(f"duplicate edge ({a}, {b})", line_no)
        g._add_edge(u, v)
    if g.m != declared:
        raise GraphFormatError(f"header declares {declared} edges, found {g.m}", last_line)
    return g


def _parse_dimacs(text: str) -> Graph:
    header = None
    pairs: List[Tuple[int, int, int]] = []
    last_line = 1
    for line_no, fields in _data_lines(text, 'c'):
        last_line = line_no
        if header is None:
            if fields[0] != 'p' or len(fields) != 4 or fields[1] != 'edge':
                raise GraphFormatError("malformed header, expected 'p edge <n> <m>'", line_no)
            header = (_parse_int(fields[2], line_no), _parse_int(fields[3], line_no))
            if header[0] < 0 or header[1] < 0:
                raise GraphFormatError("malformed header, negative size", line_no)
            continue
        if fields[0] != 'e' or len(fields) != 3:
            raise GraphFormatError("malformed edge line, expected 'e <u> <v>'", line_no)
        pairs.append((_parse_int(fields[1], line_no), _parse_int(fields[2], line_no), line_no))
    if header is None:
        raise GraphFormatError("empty input, missing 'p edge' header", last_line)
    return _build(header[0], header[1], pairs, last_line, base=1)


def _parse_edge_list(text: str) -> Graph:
    header = None
    pairs: List[Tuple[int, int, int]] = []
    last_line = 1
    for line_no, fields in _data_lines(text, None):
        last_line = line_no
        if len(fields) != 2:
            what = 'header' if header is None else 'edge line'
            raise GraphFormatError(f"malformed {what}, expected two integers", line_no)
        a, b = _parse_int(fields[0], line_no), _parse_int(fields[1], line_no)
        if header is None:
            if a < 0 or b < 0:
                raise GraphFormatError("malformed header, negative size", line_no)
            header = (a, b)
        else:
            pairs.append((a, b, line_no))
    if header is None:
        raise GraphFormatError("empty input, missing '<n> <m>' header", last_line)
    return _build(header[0], header[1], pairs, last_line, base=0)


def parse_graph(source: Source, fmt: str = 'dimacs') -> Graph:
    """Parse a DIMACS or edge-list graph, rejecting loops and duplicate edges"""
    text = _read_text(source)
    if fmt == 'dimacs':
        g = _parse_dimacs(text)
    elif fmt == 'edge-list':
        g = _parse_edge_list(text)
    else:
        raise GraphFormatError(f"unknown graph format '{fmt}'")
    logger.debug(f"[parse_graph] {fmt}: n={g.n} m={g.m}")
    return g


def serialize_graph(g: Graph, fmt: str = 'edge-list') -> str:
    if fmt == 'dimacs':
        lines = [f"p edge {g.n} {g.m}"] + [f"e {u + 1} {v + 1}" for u, v in g.edges]
    elif fmt == 'edge-list':
        lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]
    else:
        raise GraphFormatError(f"unknown graph format '{fmt}'")
    return '\n'.join(lines) + '\n'


def serialize_matching(m: Matching) -> str:
    lines = [str(m.size)] + [f"{u} {v}" for u, v in m.edges()]
    return '\n'.join(lines) + '\n'


def parse_matching(g: Graph, source: Source) -> Matching:
    """Read the matching output format back and validate it against g"""
    text = _read_text(source)
    lines = list(_data_lines(text, None))
    if not lines:
        raise GraphFormatError("empty matching input", 1)
    line_no, fields = lines[0]
    if len(fields) != 1:
        raise GraphFormatError("matching must start with its size", line_no)
    size = _parse_int(fields[0], line_no)
    pairs = []
    for line_no, fields in lines[1:]:
        if len(fields) != 2:
            raise GraphFormatError("malformed matched pair", line_no)
        u, v = _parse_int(fields[0], line_no), _parse_int(fields[1], line_no)
        if not (0 <= u < g.n and 0 <= v < g.n):
            raise GraphFormatError(f"vertex id out of range in pair ({u}, {v})", line_no)
        pairs.append((u, v))
    if len(pairs) != size:
        raise GraphFormatError(f"matching declares {size} pairs, found {len(pairs)}", lines[-1][0])
    partner: List[Optional[int]] = [None] * g.n
    for u, v in pairs:
        if partner[u] is not None or partner[v] is not None:
            raise InvalidMatchingError(Violation('vertex matched twice', (u, v)))
        partner[u] = v
        partner[v] = u
    m = Matching(partner)
    violation = validate_matching(g, m)
    if violation is not None:
        raise InvalidMatchingError(violation)
    return m


def graph_from_text(text: str, fmt: str = 'dimacs') -> Graph:
    return parse_graph(io.StringIO(text), fmt)
