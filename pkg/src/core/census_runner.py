"""
Census runner: loads configuration, merges run settings and dispatches
each command to the library.
"""

import copy
import os
from pathlib import Path
from typing import Any, Dict, Optional, Union

from .exact_count import count_report, limit_probs
from .exceptions import ValidationError
from .oracle import verify_all
from .sampler import monte_carlo
from ..models.reports import TableReport, TableRow, VerifyRun
from ..reports.csv_reporter import CSVReporter, Report
from ..reports.json_reporter import JSONReporter
from ..utils.file_handler import FileHandler
from ..utils.logger import CensusLogger
from ..utils.validation import InputValidator, RunConfig

WORKERS_ENV = "HOMOLOGY_CENSUS_WORKERS"
DEFAULT_CONFIG_PATH = Path(__file__).parent.parent.parent / "config" / "census_config.yaml"
CONFIG_EXTENSIONS = [".yaml", ".yml"]

BUILTIN_DEFAULTS: Dict[str, Dict[str, Any]] = {
    'defaults': {
        'eps': '1e-9',
        'r_cap': 8,
        'precision': 12,
        'seed': 0,
        'num_samples': 100000,
        'workers': 1,
        'format': 'json'
    },
    'oracle': {
        'max_cost': 2 ** 25,
        'chunk_size': 2 ** 18,
        'method': 'auto'
    },
    'sampler': {
        'max_gl_attempts': 10000,
        'pool_threshold': 5,
        'significance': 0.001
    },
    'logging': {
        'level': 'INFO',
        'console_logging': True,
        'file_logging': False,
        'log_file': None,
        'max_file_size_mb': 50,
        'backup_count': 5
    }
}


def merge_config(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    """Section-wise merge; values in override win."""
    merged = copy.deepcopy(base)
    for section, values in (override or {}).items():
        if isinstance(values, dict) and isinstance(merged.get(section), dict):
            merged[section].update(values)
        else:
            merged[section] = values
    return merged


class CensusRunner:
    """
    Orchestrates census commands.

    Resolves settings with the precedence CLI flag > environment >
    config file > built-in default, validates them and runs the
    requested computation.
    """

    def __init__(self, config_path: Optional[Union[str, Path]] = None):
        """
        Initialize census runner.

        Args:
            config_path: Path to a YAML configuration file; the shipped
                config/census_config.yaml is used when omitted

        Raises:
            ValidationError: the configuration cannot be read or is invalid
        """
        self.logger = CensusLogger(self.__class__.__name__)
        self.file_handler = FileHandler()
        self.validator = InputValidator()

        file_config: Dict[str, Any] = {}
        if config_path is not None:
            is_valid, message = self.validator.validate_file_path(config_path, allowed_extensions=CONFIG_EXTENSIONS)
            if not is_valid:
                raise ValidationError(message)
            loaded = self.file_handler.read_yaml(config_path)
            if loaded is None:
                raise ValidationError(f"cannot read configuration file {config_path}")
            file_config = loaded
            self.logger.info(f"Loaded configuration from {config_path}")
        elif DEFAULT_CONFIG_PATH.exists():
            file_config = self.file_handler.read_yaml(DEFAULT_CONFIG_PATH) or {}
            self.logger.debug(f"Loaded default configuration from {DEFAULT_CONFIG_PATH}")

        is_valid, errors = self.validator.validate_config_structure(file_config)
        if not is_valid:
            raise ValidationError("; ".join(errors))
        self.config = merge_config(BUILTIN_DEFAULTS, file_config)

    def _env_workers(self) -> Optional[int]:
        """Worker count from HOMOLOGY_CENSUS_WORKERS, or None when unset."""
        raw = os.environ.get(WORKERS_ENV)
        if raw is None or raw == "":
            return None
        try:
            return int(raw)
        except ValueError as e:
            raise ValidationError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from e

    def build_run_config(self, command: str, **overrides: Any) -> RunConfig:
        """
        Merge config defaults, environment and explicit overrides.

        Args:
            command: Subcommand name
            **overrides: RunConfig fields given explicitly; None means unset

        Returns:
            RunConfig (not yet validated)
        """
        defaults = self.config['defaults']
        oracle = self.config['oracle']
        sampler = self.config['sampler']
        settings: Dict[str, Any] = {
            'eps': defaults['eps'],
            'r_cap': defaults['r_cap'],
            'precision': defaults['precision'],
            'seed': defaults['seed'],
            'num_samples': defaults['num_samples'],
            'workers': defaults['workers'],
            'fmt': defaults['format'],
            'max_cost': oracle['max_cost'],
            'chunk_size': oracle['chunk_size'],
            'method': oracle['method'],
            'max_gl_attempts': sampler['max_gl_attempts'],
            'pool_threshold': sampler['pool_threshold'],
            'significance': sampler['significance']
        }
        env_workers = self._env_workers()
        if env_workers is not None:
            settings['workers'] = env_workers
        settings.update({key: value for key, value in overrides.items() if value is not None})
        return RunConfig(command=command, **settings)

    def run(self, cfg: RunConfig) -> Report:
        """
        Validate and execute one command.

        Args:
            cfg: Run configuration

        Returns:
            The command's report

        Raises:
            ValidationError: invalid settings (all problems in one message)
        """
        errors = self.validator.validate_run_config(cfg)
        if errors:
            raise ValidationError("; ".join(errors))
        self.logger.debug(f"Running {cfg.command} with {cfg.to_dict()}")

        if cfg.command == "count":
            return count_report(cfg.q, cfg.n)
        if cfg.command == "limit":
            return limit_probs(cfg.q, cfg.parity, cfg.eps_fraction, cfg.r_cap)
        if cfg.command == "sample":
            return monte_carlo(
                cfg.q, cfg.n, cfg.num_samples,
                seed=cfg.seed,
                workers=cfg.workers,
                pool_threshold=cfg.pool_threshold,
                significance=cfg.significance,
                track_matrices=cfg.track_matrices,
                max_gl_attempts=cfg.max_gl_attempts
            )
        if cfg.command == "verify":
            reports = verify_all(
                cfg.q, cfg.max_n,
                max_cost=cfg.max_cost,
                method=cfg.method,
                workers=cfg.workers,
                chunk_size=cfg.chunk_size,
                logger=self.logger
            )
            return VerifyRun(q=cfg.q, max_n=cfg.max_n, reports=reports)
        return TableReport([
            TableRow(q, n, count_report(q, n).probs) for q in cfg.q_list for n in cfg.n_list
        ])

    def reporter(self, cfg: RunConfig) -> Union[CSVReporter, JSONReporter]:
        """Reporter for the configured output format."""
        if cfg.fmt == "csv":
            return CSVReporter()
        return JSONReporter(include_timing=cfg.timing)

    def render(self, report: Report, cfg: RunConfig) -> str:
        """Render a report in the configured format."""
        return self.reporter(cfg).render(report, cfg.precision)

    def write_report(self, report: Report, cfg: RunConfig) -> Optional[str]:
        """
        Write a report to cfg.output, or return the text when no path is set.

        Raises:
            ValidationError: the output file cannot be written
        """
        reporter = self.reporter(cfg)
        if cfg.output is None:
            return reporter.render(report, cfg.precision)
        if not reporter.write(report, cfg.output, cfg.precision):
            raise ValidationError(f"cannot write output file {cfg.output}")
        return None
