import asyncio
import logging
import random
import time
from typing import Dict, List

from openpyxl import Workbook

import config
from augmenter import maximum_matching
from database import RunStore
from generators import random_graph, trial_seed
from handlers.common import EXIT_OK, emit_json

logger = logging.getLogger(__name__)

XLSX_HEADERS = [
    "Trial",
    "Seed",
    "n",
    "m",
    "Matching size",
    "Phases",
    "Edge scans",
    "DDFS steps",
    "Elapsed, ms",
]


def register(subparsers) -> None:
    parser = subparsers.add_parser('bench', help="time the engine on seeded random graphs")
    parser.add_argument('--n', type=int, default=1000)
    parser.add_argument('--m', type=int, default=5000)
    parser.add_argument('--trials', type=int, default=3)
    parser.add_argument('--seed', type=int, default=config.DEFAULT_SEED)
    parser.add_argument('--warm-start', action='store_true')
    parser.add_argument('--xlsx', help="also write the trials to an Excel workbook")
    parser.add_argument('--record', action='store_true', help="store the run in the run history")
    parser.add_argument('--db', default=config.DATABASE_PATH)
    parser.set_defaults(handler=cmd_bench)


def run_trial(n: int, m: int, seed: int, index: int, warm_start: bool = False) -> Dict:
    case_seed = trial_seed(seed, index)
    g = random_graph(n, m, random.Random(case_seed))
    started = time.perf_counter()
    result = maximum_matching(g, warm_start=warm_start)
    elapsed = (time.perf_counter() - started) * 1000
    return {
        'index': index,
        'seed': case_seed,
        'n': g.n,
        'm': g.m,
        'size': result.size,
        'phases': len(result.phases),
        'phase_edge_scans': [stats.edge_scans for stats in result.phases],
        'edge_scans': sum(stats.edge_scans for stats in result.phases),
        'ddfs_steps': sum(stats.ddfs_steps for stats in result.phases),
        'elapsed_ms': round(elapsed, 3),
    }


def export_trials_xlsx(records: List[Dict], filename: str) -> str:
    """Write bench trials to an Excel file, one row per trial"""
    wb = Workbook()
    ws = wb.active
    ws.title = "Trials"

    ws.append(XLSX_HEADERS)
    for record in records:
        ws.append([
            record.get('index'),
            str(record.get('seed')),
            record.get('n'),
            record.get('m'),
            record.get('size'),
            record.get('phases'),
            record.get('edge_scans'),
            record.get('ddfs_steps'),
            record.get('elapsed_ms'),
        ])

    # Auto-adjust column widths
    for column in ws.columns:
        max_length = max(len(str(cell.value)) for cell in column if cell.value is not None)
        column_letter = column[0].column_letter
        ws.column_dimensions[column_letter].width = min(max_length + 2, 50)

    wb.save(filename)
    return filename


async def _record(db_path: str, params: Dict, seed: int, records: List[Dict]) -> int:
    store = RunStore(db_path)
    await store.init_db()
    run_id = await store.add_run('bench', seed, params)
    await store.add_trials(run_id, records)
    await store.finish_run(run_id, len(records), 0)
    return run_id


def cmd_bench(args) -> int:
    """One JSON line per trial, in trial order"""
    if args.n < 0 or args.m < 0 or args.trials < 0:
        raise ValueError("--n, --m and --trials must be non-negative")

    records = []
    for index in range(args.trials):
        record = run_trial(args.n, args.m, args.seed, index, args.warm_start)
        emit_json(record)
        records.append(record)

    if args.xlsx:
        export_trials_xlsx(records, args.xlsx)
        logger.info(f"[cmd_bench] {len(records)} trials written to {args.xlsx}")

    if args.record:
        params = {'n': args.n, 'm': args.m, 'trials': args.trials, 'warm_start': args.warm_start}
        run_id = asyncio.run(_record(args.db, params, args.seed, records))
        logger.info(f"[cmd_bench] recorded as run {run_id}")
    return EXIT_OK
