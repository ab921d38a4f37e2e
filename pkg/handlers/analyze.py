from augmenter import maximum_matching, search_phase
from handlers.common import EXIT_OK, add_input_arguments, emit_json, load_input, stderr_trace
from level_state import format_level


def register(subparsers) -> None:
    parser = subparsers.add_parser('analyze', help="dump levels, petals and bridge buckets of one phase")
    add_input_arguments(parser)
    parser.set_defaults(handler=cmd_analyze)


def cmd_analyze(args) -> int:
    """
    Dump the phase that starts at the given matching.

    Without --matching (or a fixture matching) the graph is solved first and
    the last phase of that run, the one that finds nothing, is shown.
    """
    g, m = load_input(args)
    trace = stderr_trace(args.trace)
    if m is None:
        m = maximum_matching(g).matching
    run = search_phase(g, m, trace=trace)
    s, pf = run.state, run.forest

    levels = s.dump_levels()
    petals = pf.dump_petals()
    buckets = s.dump_buckets()

    if args.output == 'json':
        emit_json({
            'levels': levels,
            'petals': petals,
            'buckets': buckets,
            'stats': run.stats.as_dict(),
        })
    else:
        for line in levels + petals + buckets:
            print(line)
        print(f"shortest {format_level(run.stats.shortest)}")
    return EXIT_OK
