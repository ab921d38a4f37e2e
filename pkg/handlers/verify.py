import asyncio
import logging
import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import config
from augmenter import maximum_matching, search_phase
from database import RunStore
from errors import OracleGuardError
from generators import random_graph, random_maximal_matching, trial_seed
from graph_core import Graph, Matching, serialize_graph, serialize_matching
from handlers.common import EXIT_MISMATCH, EXIT_OK, emit_json
from level_state import INF, LevelState, format_level
from oracle import OracleProfile, augmenting_paths, check_structure, max_matching_exhaustive, profile_graph
from petal_forest import PetalForest

logger = logging.getLogger(__name__)


@dataclass
class Mismatch:
    check: str
    detail: str

    def __str__(self) -> str:
        return f"{self.check}: {self.detail}"


@dataclass
class Instance:
    index: int
    seed: int
    graph: Graph
    start: Matching


def register(subparsers) -> None:
    parser = subparsers.add_parser('verify', help="compare the engine with the exhaustive oracle on random graphs")
    parser.add_argument('--count', type=int, default=100, help="number of random graphs")
    parser.add_argument('--max-n', type=int, default=10, help="largest vertex count")
    parser.add_argument('--seed', type=int, default=config.DEFAULT_SEED)
    parser.add_argument('--only', type=int, help="run just the trial with this index")
    parser.add_argument('--inject-fault', action='store_true',
                        help="drop one matched edge from every engine answer (negative control)")
    parser.add_argument('--output', choices=config.OUTPUT_FORMATS, default='text')
    parser.add_argument('--record', action='store_true', help="store the run in the run history")
    parser.add_argument('--db', default=config.DATABASE_PATH)
    parser.set_defaults(handler=cmd_verify)


def make_instance(seed: int, index: int, max_n: int) -> Instance:
    """The index-th random case of a verify run; depends on nothing but its arguments"""
    case_seed = trial_seed(seed, index)
    rng = random.Random(case_seed)
    n = rng.randint(1, max_n)
    m = rng.randint(0, min(n * (n - 1) // 2, 2 * n, config.ORACLE_MAX_EDGES))
    g = random_graph(n, m, rng)
    return Instance(index, case_seed, g, random_maximal_matching(g, rng))


def compare_levels(profile: OracleProfile, s: LevelState) -> Optional[Mismatch]:
    """
    Minlevels are compared wherever the phase got to assign them; both
    levels only below l_m, since searches at l_m stop early.
    """
    shortest = profile.shortest
    for v in range(profile.n):
        oracle = (profile.evenlevel[v], profile.oddlevel[v])
        engine = (s.evenlevel[v], s.oddlevel[v])
        if shortest == INF or profile.tenacity(v) < shortest:
            if oracle != engine:
                return Mismatch('levels', f"vertex {v}: engine {_pair(engine)}, oracle {_pair(oracle)}")
        elif profile.minlevel(v) <= (shortest + 1) / 2 and profile.minlevel(v) != s.minlevel(v):
            return Mismatch('minlevel', f"vertex {v}: engine {format_level(s.minlevel(v))}, "
                                        f"oracle {format_level(profile.minlevel(v))}")
    return None


def _pair(levels: Tuple[float, float]) -> str:
    return f"{format_level(levels[0])}/{format_level(levels[1])}"


def bud_checker(profile: OracleProfile, found: List[Mismatch]):
    """Level hook checking bud* against bases and bud* fibers against blossoms"""

    def check(i: int, s: LevelState, pf: PetalForest) -> None:
        t = 2 * i + 1
        if t >= profile.shortest or found:
            return
        for v in range(profile.n):
            if profile.tenacity(v) != t or v not in profile.base:
                continue
            if pf.bud_star(v) != profile.base[v]:
                found.append(Mismatch('bud', f"vertex {v} at tenacity {t}: bud* {pf.bud_star(v)}, "
                                             f"base {profile.base[v]}"))
                return
        for (b, tb), members in sorted(profile.blossoms.items()):
            if tb != t:
                continue
            fiber = frozenset(v for v in range(profile.n)
                              if v != b and s.tenacity(v) <= t and pf.bud_star(v) == b)
            if fiber != members:
                found.append(Mismatch('blossom', f"bud* fiber of {b} at {t} is {sorted(fiber)}, "
                                                 f"blossom is {sorted(members)}"))
                return

    return check


def check_instance(inst: Instance, inject_fault: bool = False) -> Tuple[Optional[Mismatch], Dict]:
    """Run every engine-versus-oracle comparison on one case; the first disagreement wins"""
    g = inst.graph
    record = {'index': inst.index, 'seed': inst.seed, 'n': g.n, 'm': g.m}

    result = maximum_matching(g)
    answer = result.matching
    if inject_fault and answer.size:
        u, v = answer.edges()[-1]
        answer = Matching([None if x in (u, v) else w for x, w in enumerate(answer.partner)])
    expected = max_matching_exhaustive(g)
    record.update(size=answer.size, reference_size=expected, phases=len(result.phases))
    if answer.size != expected:
        return Mismatch('size', f"engine {answer.size}, exhaustive {expected}"), record

    profile = profile_graph(g, inst.start)
    found: List[Mismatch] = []
    run = search_phase(g, inst.start, on_level=bud_checker(profile, found))
    record.update(edge_scans=run.stats.edge_scans, ddfs_steps=run.stats.ddfs_steps)
    if found:
        return found[0], record

    if run.stats.shortest != profile.shortest:
        return Mismatch('shortest', f"engine {format_level(run.stats.shortest)}, "
                                    f"oracle {format_level(profile.shortest)}"), record
    mismatch = compare_levels(profile, run.state)
    if mismatch is not None:
        return mismatch, record

    if profile.shortest != INF:
        used = frozenset(v for p in run.stats.extracted for v in p.vertices)
        left = augmenting_paths(g, inst.start, int(profile.shortest), avoid=used)
        if left:
            return Mismatch('maximality', f"path {list(left[0])} is disjoint from all extracted paths"), record

    report = check_structure(profile)
    if not report.passed:
        return Mismatch('structure', str(report.failures[0])), record
    return None, record


async def _record(db_path: str, params: Dict, seed: int, records: List[Dict], failures: int) -> int:
    store = RunStore(db_path)
    await store.init_db()
    run_id = await store.add_run('verify', seed, params)
    await store.add_trials(run_id, records)
    await store.finish_run(run_id, len(records), failures)
    return run_id


def cmd_verify(args) -> int:
    """Engine against oracle on seeded random graphs; exit 1 on the first disagreement"""
    if args.max_n > config.ORACLE_MAX_VERTICES:
        raise OracleGuardError(f"--max-n {args.max_n} exceeds the oracle limit of {config.ORACLE_MAX_VERTICES} vertices")
    if args.max_n < 1 or args.count < 0:
        raise OracleGuardError("--max-n must be positive and --count non-negative")

    indices = [args.only] if args.only is not None else list(range(args.count))
    records: List[Dict] = []
    skipped = 0
    failed: Optional[Tuple[Instance, Mismatch]] = None

    for index in indices:
        inst = make_instance(args.seed, index, args.max_n)
        try:
            mismatch, record = check_instance(inst, args.inject_fault)
        except OracleGuardError as e:
            # path budget exceeded on a dense case
            logger.warning(f"[cmd_verify] trial {index} skipped: {e}")
            skipped += 1
            continue
        if mismatch is not None:
            record['failure'] = str(mismatch)
        records.append(record)
        if mismatch is not None:
            failed = (inst, mismatch)
            break

    if args.record:
        params = {'count': args.count, 'max_n': args.max_n, 'only': args.only, 'inject_fault': args.inject_fault}
        run_id = asyncio.run(_record(args.db, params, args.seed, records, int(failed is not None)))
        logger.info(f"[cmd_verify] recorded as run {run_id}")

    if failed is None:
        if args.output == 'json':
            emit_json({'verified': len(records), 'skipped': skipped, 'seed': args.seed, 'max_n': args.max_n})
        else:
            line = f"verified {len(records)} graphs, seed {args.seed}, max-n {args.max_n}"
            print(line + (f", skipped {skipped}" if skipped else ''))
        return EXIT_OK

    inst, mismatch = failed
    if args.output == 'json':
        emit_json({
            'check': mismatch.check,
            'detail': mismatch.detail,
            'seed': args.seed,
            'index': inst.index,
            'graph': [list(e) for e in inst.graph.edges],
            'n': inst.graph.n,
            'matching': [list(pair) for pair in inst.start.edges()],
        })
    else:
        print(f"mismatch at trial {inst.index} (seed {args.seed}, rerun with --only {inst.index})")
        print(str(mismatch))
        print('graph')
        print(serialize_graph(inst.graph, 'edge-list'), end='')
        print('matching')
        print(serialize_matching(inst.start), end='')
    return EXIT_MISMATCH
