"""
Data Export Functionality

CSV and JSON writers shared by every command. CSV tables go through pandas
with one fixed float format; each written file is registered with the logger.
"""

import json
from pathlib import Path
from typing import Any, Dict, Union

import numpy as np
import pandas as pd

from core.errors import ExperimentError

# Shortest float format that round-trips float64; keeps repeated runs byte-identical
FLOAT_FORMAT = "%.17g"

TRACE_COLUMNS = ['iter', 'energy', 'gap', 'primal_res', 'dual_res']
SWEEP_COLUMNS = ['delta', 'tau', 'err_vs_udagger', 'err_vs_utrue', 'iters']


def require_written(result, file_path):
    """Raise ExperimentError when an exporter or writer reported failure"""
    if result is False or result is None:
        raise ExperimentError(f"could not write {file_path}")
    return result


def _to_builtin(value):
    """json.dump fallback for numpy scalars and arrays"""
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    return str(value)


class DataExporter:
    """Writes result tables and metric files, tracking each one with the logger"""

    def __init__(self, logger=None):
        self.logger = logger

    def export_to_csv(
        self,
        data: pd.DataFrame,
        file_path: Union[str, Path],
        description: str = None,
        header_line: str = None
    ) -> bool:
        """
        Export DataFrame to CSV with error handling.

        Args:
            data: DataFrame to export
            file_path: Path where CSV should be saved
            description: Optional description for logging
            header_line: Optional free-form first line written before the table

        Returns:
            bool: True if export successful, False otherwise
        """
        try:
            file_path = Path(file_path)

            # Ensure directory exists
            file_path.parent.mkdir(parents=True, exist_ok=True)

            with open(file_path, 'w', encoding='utf-8', newline='') as f:
                if header_line is not None:
                    f.write(header_line + "\n")
                data.to_csv(f, index=False, header=header_line is None,
                            float_format=FLOAT_FORMAT, lineterminator="\n")

            if self.logger:
                self.logger.track_file_created(file_path)
                self.logger.debug(f"💾 {description or 'CSV export'}: {file_path.name}")

            return True

        except Exception as e:
            if self.logger:
                self.logger.error(f"❌ CSV Export failed: {file_path} - {e}")
            return False

    def export_to_json(
        self,
        data: Dict[str, Any],
        file_path: Union[str, Path],
        description: str = None
    ) -> bool:
        """
        Export dictionary to JSON with error handling.

        Args:
            data: Dictionary to export
            file_path: Path where JSON should be saved
            description: Optional description for logging

        Returns:
            bool: True if export successful, False otherwise
        """
        try:
            file_path = Path(file_path)
            file_path.parent.mkdir(parents=True, exist_ok=True)

            with open(file_path, 'w', encoding='utf-8') as f:
                json.dump(data, f, indent=2, sort_keys=True, default=_to_builtin)

            if self.logger:
                self.logger.track_file_created(file_path)
                self.logger.debug(f"💾 {description or 'JSON export'}: {file_path.name}")

            return True

        except Exception as e:
            if self.logger:
                self.logger.error(f"❌ JSON Export failed: {file_path} - {e}")
            return False

    def export_trace(self, trace, file_path: Union[str, Path]) -> bool:
        """
        Export a SolverTrace with columns iter,energy,gap,primal_res,dual_res.

        Args:
            trace: SolverTrace (anything with a to_frame() method)
            file_path: Destination CSV path

        Returns:
            bool: True if export successful
        """
        frame = trace.to_frame()[TRACE_COLUMNS]
        return self.export_to_csv(frame, file_path, "Solver Trace")

    def export_sweep(self, table: pd.DataFrame, file_path: Union[str, Path]) -> bool:
        """
        Export a convergence sweep with columns delta,tau,err_vs_udagger,err_vs_utrue,iters
        (err_vs_udagger is absent when no dense oracle was available).

        Args:
            table: Sweep DataFrame
            file_path: Destination CSV path

        Returns:
            bool: True if export successful
        """
        columns = [c for c in SWEEP_COLUMNS if c in table.columns]
        return self.export_to_csv(table[columns], file_path, "Convergence Sweep")

    def export_sinogram(self, sinogram, file_path: Union[str, Path]) -> bool:
        """
        Export a Sinogram: header `angles=<n>,offsets=<m>,smax=<v>`, then angle-major rows.

        Args:
            sinogram: Sinogram container
            file_path: Destination CSV path

        Returns:
            bool: True if export successful
        """
        header = f"angles={sinogram.n_angles},offsets={sinogram.n_offsets},smax={sinogram.s_max!r}"
        return self.export_to_csv(pd.DataFrame(sinogram.data), file_path, "Sinogram", header_line=header)

