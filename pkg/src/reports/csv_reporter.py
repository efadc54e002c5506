"""
CSV report generator for census results.

Column order is fixed per report type and documented in
docs/OUTPUT_FORMATS.md.
"""

from pathlib import Path
from typing import Union

import pandas as pd

from ..models.reports import (
    CountReport,
    EmpiricalReport,
    LimitReport,
    OracleReport,
    TableReport,
    VerifyRun,
)
from ..utils.file_handler import FileHandler
from ..utils.logger import CensusLogger

COUNT_COLUMNS = ['q', 'n', 'r', 'count', 'total', 'probability_exact', 'probability', 'precision']
LIMIT_COLUMNS = ['q', 'parity', 'r', 'p_limit_exact', 'p_limit', 'eps', 'kmax', 'precision']
SAMPLE_COLUMNS = [
    'q', 'n', 'r', 'observed', 'expected', 'probability', 'num_samples', 'seed',
    'chi_square', 'dof', 'p_value', 'precision'
]
VERIFY_COLUMNS = ['q', 'n', 'r', 'enumerated', 'formula', 'agrees', 'total_matrices', 'method']

Report = Union[CountReport, LimitReport, EmpiricalReport, OracleReport, TableReport, VerifyRun]


class CSVReporter:
    """
    CSV report generator for census reports.

    Builds a pandas DataFrame per report and renders it with "\\n"
    line endings and no index column.
    """

    def __init__(self):
        """Initialize CSV reporter."""
        self.logger = CensusLogger(self.__class__.__name__)
        self.file_handler = FileHandler()

    def to_frame(self, report: Report, precision: int) -> pd.DataFrame:
        """
        Tabulate a report.

        Args:
            report: Any census report
            precision: Decimal places of rendered probabilities

        Returns:
            DataFrame with the documented column order
        """
        if isinstance(report, CountReport):
            return pd.DataFrame(report.to_rows(precision), columns=COUNT_COLUMNS)
        if isinstance(report, LimitReport):
            return pd.DataFrame(report.to_rows(precision), columns=LIMIT_COLUMNS)
        if isinstance(report, EmpiricalReport):
            return pd.DataFrame(report.to_rows(precision), columns=SAMPLE_COLUMNS)
        if isinstance(report, (OracleReport, VerifyRun)):
            return pd.DataFrame(report.to_rows(), columns=VERIFY_COLUMNS)
        if isinstance(report, TableReport):
            columns = ['q', 'n'] + [f'p_{r}' for r in report.r_values] + ['sum_exact', 'precision']
            return pd.DataFrame(report.to_rows(precision), columns=columns)
        raise TypeError(f"Unsupported report type: {type(report).__name__}")

    def render(self, report: Report, precision: int) -> str:
        """Render a report as CSV text."""
        frame = self.to_frame(report, precision)
        return frame.to_csv(index=False, lineterminator='\n')

    def write(self, report: Report, output_path: Union[str, Path], precision: int) -> bool:
        """
        Write a report to a CSV file.

        Returns:
            True if successful
        """
        success = self.file_handler.write_text_file(self.render(report, precision), output_path)
        if success:
            self.logger.info(f"CSV report written: {output_path}")
        return success
