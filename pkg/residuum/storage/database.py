import json
import sqlite3
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

from ..defaults import DB_PATH
from ..models.results import VerificationReport


class ReportStore:
    """SQLite history of verification runs and their reports"""

    def __init__(self, db_path: str = DB_PATH):
        self.db_path = db_path
        self._init_database()

    def _init_database(self):
        """Initialize database tables"""
        with sqlite3.connect(self.db_path) as conn:
            conn.execute("""
                CREATE TABLE IF NOT EXISTS verification_runs (
                    run_id INTEGER PRIMARY KEY AUTOINCREMENT,
                    timestamp TIMESTAMP DEFAULT CURRENT_TIMESTAMP,
                    suite TEXT NOT NULL,
                    catalog_version TEXT,
                    passed INTEGER,
                    failed INTEGER,
                    not_applicable INTEGER
                )
            """)

            conn.execute("""
                CREATE TABLE IF NOT EXISTS verification_reports (
                    run_id INTEGER,
                    position INTEGER,
                    name TEXT,
                    status TEXT,
                    abs_gap REAL,
                    tolerance REAL,
                    lhs_re REAL,
                    lhs_im REAL,
                    rhs_re REAL,
                    rhs_im REAL,
                    report TEXT, -- JSON
                    PRIMARY KEY (run_id, position),
                    FOREIGN KEY(run_id) REFERENCES verification_runs(run_id)
                )
            """)

            conn.commit()

    def save_run(self, reports: Sequence[VerificationReport], suite: str, catalog_version: Optional[str] = None,
                 timestamp: Optional[datetime] = None) -> int:
        """Store one run and its reports in order; returns the run id"""
        counts = {status: sum(1 for r in reports if r.status == status) for status in ("pass", "fail", "not_applicable")}
        with sqlite3.connect(self.db_path) as conn:
            cursor = conn.cursor()
            cursor.execute("""
                INSERT INTO verification_runs (timestamp, suite, catalog_version, passed, failed, not_applicable)
                VALUES (?, ?, ?, ?, ?, ?)
            """, (
                (timestamp or datetime.now(timezone.utc)).isoformat(),
                suite,
                catalog_version,
                counts["pass"],
                counts["fail"],
                counts["not_applicable"],
            ))
            run_id = cursor.lastrowid

            rows = []
            for position, r in enumerate(reports):
                rows.append((
                    run_id,
                    position,
                    r.name,
                    r.status,
                    r.abs_gap,
                    r.tolerance,
                    r.lhs.real,
                    r.lhs.imag,
                    r.rhs.real,
                    r.rhs.imag,
                    r.model_dump_json(by_alias=True),
                ))
            cursor.executemany("""
                INSERT OR REPLACE INTO verification_reports (
                    run_id, position, name, status, abs_gap, tolerance, lhs_re, lhs_im, rhs_re, rhs_im, report
                ) VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?)
            """, rows)
            conn.commit()
        return run_id

    def list_runs(self) -> List[Dict[str, Any]]:
        with sqlite3.connect(self.db_path) as conn:
            conn.row_factory = sqlite3.Row
            cursor = conn.execute("SELECT * FROM verification_runs ORDER BY run_id")
            return [dict(row) for row in cursor.fetchall()]

    def get_reports(self, run_id: int) -> List[VerificationReport]:
        with sqlite3.connect(self.db_path) as conn:
            cursor = conn.execute(
                "SELECT report FROM verification_reports WHERE run_id = ? ORDER BY position", (run_id,))
            return [VerificationReport.model_validate(json.loads(row[0])) for row in cursor.fetchall()]

    def load_reports_dataframe(self, run_id: Optional[int] = None) -> pd.DataFrame:
        """Report rows of one run, or of every run, as a DataFrame"""
        query = "SELECT run_id, position, name, status, abs_gap, tolerance, lhs_re, lhs_im, rhs_re, rhs_im " \
                "FROM verification_reports"
        with sqlite3.connect(self.db_path) as conn:
            if run_id is None:
                return pd.read_sql_query(query + " ORDER BY run_id, position", conn)
            return pd.read_sql_query(query + " WHERE run_id = ? ORDER BY position", conn, params=(run_id,))
