"""
Deterministic JSON rendering of census reports.
"""

import json
from pathlib import Path
from typing import Any, Dict, Union

from .csv_reporter import Report
from ..models.reports import OracleReport, VerifyRun
from ..utils.file_handler import FileHandler
from ..utils.logger import CensusLogger


class JSONReporter:
    """
    JSON report generator.

    Output is sorted, indented and newline-terminated; it contains no
    timestamps, so identical runs give identical bytes. Wall-clock
    timings appear only when include_timing is set.
    """

    def __init__(self, include_timing: bool = False):
        """Initialize JSON reporter; include_timing adds wall_time to oracle entries."""
        self.logger = CensusLogger(self.__class__.__name__)
        self.include_timing = include_timing
        self.file_handler = FileHandler()

    def to_dict(self, report: Report, precision: int) -> Dict[str, Any]:
        """JSON-ready dictionary for any report type."""
        if isinstance(report, (OracleReport, VerifyRun)):
            data = report.to_dict(self.include_timing)
            data['precision'] = precision
            return data
        return report.to_dict(precision)

    def render(self, report: Report, precision: int) -> str:
        """Render a report as JSON text."""
        return json.dumps(self.to_dict(report, precision), indent=2, sort_keys=True) + "\n"

    def write(self, report: Report, output_path: Union[str, Path], precision: int) -> bool:
        """
        Write a report to a JSON file.

        Returns:
            True if successful
        """
        success = self.file_handler.write_text_file(self.render(report, precision), output_path)
        if success:
            self.logger.info(f"JSON report written: {output_path}")
        return success
