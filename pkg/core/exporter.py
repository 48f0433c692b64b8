"""
Export service for ToriCount.

Renders experiment results as byte-stable JSON for stdout and as CSV
tables (one row per report) for series of counts.
"""

from __future__ import annotations

import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, List, Optional, Sequence

import pandas as pd

from core.config import ToriCountConfig, get_config
from core.types import CountReport, LangWeilReport, fraction_text

logger = logging.getLogger(__name__)

TABLE_COLUMNS = ["label", "p", "T", "exact", "main_term", "upper_bound", "lower_bound", "ratio", "method", "passed"]


def to_jsonable(value: Any) -> Any:
    """
    Convert a result into plain JSON types.

    Fractions become "n/d" strings, tuples become lists, integer dict keys
    become strings and objects with to_dict() are expanded.
    """
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict())
    if isinstance(value, Fraction):
        return fraction_text(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return value


class Exporter:
    """
    Service for exporting results.

    JSON layout (indent, key order) comes from the report section of the
    configuration.
    """

    def __init__(self, config: Optional[ToriCountConfig] = None):
        """
        Initialize the exporter.

        Args:
            config: Configuration instance. If None, uses global config.
        """
        self.config = config if config is not None else get_config()
        logger.debug(f"Exporter initialized (indent={self.config.report.indent})")

    def to_json(self, result: Any, include_config: bool = True) -> str:
        """
        Render a result as JSON.

        Args:
            result: Report, dict or list of reports
            include_config: Echo the resolved configuration under "config"

        Returns:
            JSON text; identical inputs give identical bytes
        """
        data = to_jsonable(result)
        if include_config:
            if not isinstance(data, dict):
                data = {"result": data}
            data = dict(data, config=self.config.to_dict())
        return json.dumps(data, indent=self.config.report.indent, sort_keys=self.config.report.sort_keys, ensure_ascii=False)

    def to_table(self, reports: Sequence[CountReport]) -> pd.DataFrame:
        """Return one row per report with the columns in TABLE_COLUMNS."""
        rows = [
            {
                "label": r.label,
                "p": r.params.get("p"),
                "T": r.params.get("T"),
                "exact": r.exact,
                "main_term": r.main_term,
                "upper_bound": r.upper_bound,
                "lower_bound": r.lower_bound,
                "ratio": r.ratio,
                "method": str(r.method),
                "passed": r.passed,
            }
            for r in reports
        ]
        logger.debug(f"Built table with {len(rows)} rows")
        return pd.DataFrame(rows, columns=TABLE_COLUMNS)

    def lang_weil_table(self, report: LangWeilReport) -> pd.DataFrame:
        return pd.DataFrame(
            [{"l": row.l, "q": row.q, "count": row.count, "deviation": row.deviation} for row in report.rows],
            columns=["l", "q", "count", "deviation"],
        )

    def save_table(self, table: pd.DataFrame, output_path: Path) -> Path:
        """
        Write a table as CSV.

        Args:
            table: DataFrame from to_table or lang_weil_table
            output_path: Target file; parent directories are created

        Returns:
            Path to saved file
        """
        output_path.parent.mkdir(parents=True, exist_ok=True)
        table.to_csv(output_path, index=False)
        logger.info(f"Table saved to: {output_path}")
        return output_path

    def series(self, reports: Sequence[CountReport]) -> List[tuple]:
        """Return the (T, exact) pairs of a report series."""
        return [(r.params["T"], r.exact) for r in reports]
