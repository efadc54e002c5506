"""
Homology Census Package

Exact counts, limit probabilities, uniform sampling and brute-force
verification for random chain complexes (V, D), D^2 = 0, over finite
fields.
"""

__version__ = "1.0.0"

from .core.census_runner import CensusRunner
from .core.exact_count import count_report, limit_probs
from .models.reports import CountReport, LimitReport

__all__ = [
    "CensusRunner",
    "count_report",
    "limit_probs",
    "CountReport",
    "LimitReport"
]
