import asyncio
import json

import config
from database import RunStore
from handlers.common import EXIT_OK, emit_json


def register(subparsers) -> None:
    parser = subparsers.add_parser('history', help="list recorded verify and bench runs")
    parser.add_argument('--limit', type=int, default=10)
    parser.add_argument('--run', type=int, help="show the trials of one run instead")
    parser.add_argument('--db', default=config.DATABASE_PATH)
    parser.set_defaults(handler=cmd_history)


async def _load(db_path: str, limit: int, run_id):
    store = RunStore(db_path)
    await store.init_db()
    if run_id is not None:
        return await store.get_trials(run_id)
    return await store.get_recent_runs(limit)


def cmd_history(args) -> int:
    rows = asyncio.run(_load(args.db, args.limit, args.run))
    for row in rows:
        if row.get('params'):
            row['params'] = json.loads(row['params'])
        emit_json(row)
    return EXIT_OK
