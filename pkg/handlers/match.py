import logging

from augmenter import maximum_matching
from graph_core import serialize_matching
from handlers.common import EXIT_OK, add_input_arguments, emit_json, load_input, stderr_trace

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser('match', help="compute a maximum matching")
    add_input_arguments(parser)
    parser.add_argument('--warm-start', action='store_true', help="start from a greedy maximal matching")
    parser.set_defaults(handler=cmd_match)


def cmd_match(args) -> int:
    """Print a maximum matching of the input graph"""
    g, m0 = load_input(args)
    result = maximum_matching(g, m0, warm_start=args.warm_start, trace=stderr_trace(args.trace))

    if args.output == 'json':
        emit_json({
            'n': g.n,
            'm': g.m,
            'size': result.size,
            'matching': [list(pair) for pair in result.matching.edges()],
            'phases': [stats.as_dict() for stats in result.phases],
        })
    else:
        print(serialize_matching(result.matching), end='')

    logger.debug(f"[cmd_match] {len(result.phases)} phases, size {result.size}")
    return EXIT_OK
