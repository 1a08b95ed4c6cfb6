import os
import logging
from datetime import datetime
from typing import List, Optional

import pandas as pd

from models import IterationStep

logger = logging.getLogger(__name__)

TRACE_COLUMNS = [
    "timestamp", "n", "m", "truncation", "measure_s", "measure_u", "measure_tau_u",
    "measure_r", "measure_changed", "change_bound", "measure_x", "x_bound",
    "packs", "address_matches", "boxes",
]


class IterationTracer:
    """Records iteration steps in a CSV file, one row per step."""

    def __init__(self, results_dir: str, filename: str = "iteration_trace.csv"):
        self.results_dir = results_dir
        self.csv_path = os.path.join(results_dir, filename)
        self.rows: List[dict] = []
        os.makedirs(results_dir, exist_ok=True)

    def record(self, step: IterationStep):
        """
        Append one step to the trace and flush the CSV.

        Args:
            step: the finished iteration step
        """
        row = {"timestamp": datetime.now().isoformat()}
        row.update(step.model_dump())
        self.rows.append(row)
        self.to_frame().to_csv(self.csv_path, index=False)
        logger.info(f"Traced step {step.n}: m={step.m}, |S|={step.measure_s}")

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=TRACE_COLUMNS)

    def load(self) -> Optional[pd.DataFrame]:
        """Read a previously written trace, or None if nothing was recorded."""
        if not os.path.exists(self.csv_path):
            return None
        return pd.read_csv(self.csv_path)
