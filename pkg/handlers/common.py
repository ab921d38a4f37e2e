import json
import sys
from typing import Optional, Tuple

import config
from ddfs import Trace
from fixtures import get_fixture
from graph_core import Graph, Matching, parse_graph, parse_matching

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2


def add_input_arguments(parser) -> None:
    """Graph source flags shared by match and analyze"""
    parser.add_argument('input', nargs='?', default='-', help="graph file, '-' for standard input")
    parser.add_argument('--format', dest='fmt', choices=config.GRAPH_FORMATS, default='dimacs')
    parser.add_argument('--fixture', help="use a named built-in graph instead of the input file")
    parser.add_argument('--matching', help="starting matching in the matching output format")
    parser.add_argument('--output', choices=config.OUTPUT_FORMATS, default='text')
    parser.add_argument('--trace', action='store_true', help="print double search events to stderr")


def _read(path: str) -> str:
    if path == '-':
        return sys.stdin.read()
    with open(path, encoding='utf-8') as f:
        return f.read()


def load_input(args) -> Tuple[Graph, Optional[Matching]]:
    """Graph from --fixture or the input file, plus the starting matching if one was given"""
    if args.fixture:
        fixture = get_fixture(args.fixture)
        g, m = fixture.graph, fixture.matching
    else:
        g, m = parse_graph(_read(args.input), args.fmt), None
    if args.matching:
        m = parse_matching(g, _read(args.matching))
    return g, m


def stderr_trace(enabled: bool) -> Optional[Trace]:
    if not enabled:
        return None
    return lambda line: print(line, file=sys.stderr)


def emit_json(payload) -> None:
    print(json.dumps(payload, sort_keys=True))
