import json
from datetime import datetime
from typing import Dict, List, Optional

import aiosqlite

import config


class RunStore:
    """History of verify and bench runs, one row per run plus one per recorded trial"""

    def __init__(self, db_path: str = config.DATABASE_PATH):
        self.db_path = db_path

    async def init_db(self):
        """Initialize database with required tables"""
        async with aiosqlite.connect(self.db_path) as db:
            async def _column_exists(table: str, column: str) -> bool:
                async with db.execute(f"PRAGMA table_info({table})") as cursor:
                    rows = await cursor.fetchall()
                return any(row[1] == column for row in rows)

            async def _ensure_column(table: str, column: str, definition: str):
                if not await _column_exists(table, column):
                    await db.execute(f"ALTER TABLE {table} ADD COLUMN {column} {definition}")

            await db.execute('''
                CREATE TABLE IF NOT EXISTS runs (
                    id INTEGER PRIMARY KEY AUTOINCREMENT,
                    command TEXT NOT NULL,
                    seed INTEGER,
                    params TEXT,
                    trials INTEGER DEFAULT 0,
                    failures INTEGER DEFAULT 0,
                    status TEXT,
                    created_date TEXT
                )
            ''')

            await db.execute('''
                CREATE TABLE IF NOT EXISTS trials (
                    id INTEGER PRIMARY KEY AUTOINCREMENT,
                    run_id INTEGER NOT NULL,
                    trial_index INTEGER,
                    trial_seed INTEGER,
                    n INTEGER,
                    m INTEGER,
                    matching_size INTEGER,
                    phases INTEGER,
                    edge_scans INTEGER,
                    ddfs_steps INTEGER,
                    elapsed_ms REAL,
                    failure TEXT,
                    FOREIGN KEY (run_id) REFERENCES runs(id)
                )
            ''')

            # Columns added after the first schema
            await _ensure_column('runs', 'finished_date', 'TEXT')
            await _ensure_column('trials', 'reference_size', 'INTEGER')

            await db.commit()

    async def add_run(self, command: str, seed: Optional[int], params: Dict) -> int:
        """Open a run and return its id"""
        async with aiosqlite.connect(self.db_path) as db:
            cursor = await db.execute(
                '''INSERT INTO runs (command, seed, params, status, created_date)
                   VALUES (?, ?, ?, ?, ?)''',
                (command, seed, json.dumps(params, sort_keys=True), 'running', datetime.now().isoformat())
            )
            await db.commit()
            return cursor.lastrowid

    async def finish_run(self, run_id: int, trials: int, failures: int):
        async with aiosqlite.connect(self.db_path) as db:
            await db.execute(
                '''UPDATE runs SET trials = ?, failures = ?, status = ?, finished_date = ?
                   WHERE id = ?''',
                (trials, failures, 'failed' if failures else 'ok', datetime.now().isoformat(), run_id)
            )
            await db.commit()

    async def add_trials(self, run_id: int, trials: List[Dict]):
        """Store per-trial rows in one transaction"""
        async with aiosqlite.connect(self.db_path) as db:
            await db.executemany(
                '''INSERT INTO trials
                   (run_id, trial_index, trial_seed, n, m, matching_size, reference_size,
                    phases, edge_scans, ddfs_steps, elapsed_ms, failure)
                   VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?)''',
                [
                    (
                        run_id,
                        trial.get('index'),
                        trial.get('seed'),
                        trial.get('n'),
                        trial.get('m'),
                        trial.get('size'),
                        trial.get('reference_size'),
                        trial.get('phases'),
                        trial.get('edge_scans'),
                        trial.get('ddfs_steps'),
                        trial.get('elapsed_ms'),
                        trial.get('failure'),
                    )
                    for trial in trials
                ]
            )
            await db.commit()

    async def get_run(self, run_id: int) -> Optional[Dict]:
        """Get run by id"""
        async with aiosqlite.connect(self.db_path) as db:
            db.row_factory = aiosqlite.Row
            async with db.execute(
                "SELECT * FROM runs WHERE id = ?",
                (run_id,)
            ) as cursor:
                row = await cursor.fetchone()
                return dict(row) if row else None

    async def get_recent_runs(self, limit: int = 10) -> List[Dict]:
        """Latest runs first"""
        async with aiosqlite.connect(self.db_path) as db:
            db.row_factory = aiosqlite.Row
            async with db.execute(
                "SELECT * FROM runs ORDER BY id DESC LIMIT ?",
                (limit,)
            ) as cursor:
                rows = await cursor.fetchall()
                return [dict(row) for row in rows]

    async def get_trials(self, run_id: int) -> List[Dict]:
        async with aiosqlite.connect(self.db_path) as db:
            db.row_factory = aiosqlite.Row
            async with db.execute(
                "SELECT * FROM trials WHERE run_id = ? ORDER BY trial_index",
                (run_id,)
            ) as cursor:
                rows = await cursor.fetchall()
                return [dict(row) for row in rows]
