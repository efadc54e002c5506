"""
Run configuration and input validation for census commands.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from ..core.exceptions import ValidationError
from ..core.finite_field import ff_from_order
from ..models.reports import Parity, ScanMethod
from .logger import CensusLogger

COMMANDS = ("count", "limit", "sample", "verify", "table")
FORMATS = ("json", "csv")
PARITIES = tuple(p.value for p in Parity)
METHODS = tuple(m.value for m in ScanMethod)


@dataclass
class RunConfig:
    """
    Fully merged settings for one command invocation.

    Attributes mirror the CLI flags; values not relevant to the
    command are ignored.
    """
    command: str
    q: Optional[int] = None
    n: Optional[int] = None
    q_list: List[int] = field(default_factory=list)
    n_list: List[int] = field(default_factory=list)
    parity: str = "even"
    eps: Union[str, Fraction] = "1e-9"
    r_cap: int = 8
    num_samples: int = 100000
    seed: int = 0
    workers: int = 1
    fmt: str = "json"
    output: Optional[Path] = None
    precision: int = 12
    max_n: Optional[int] = None
    max_cost: int = 2 ** 25
    chunk_size: int = 2 ** 18
    method: str = "auto"
    timing: bool = False
    track_matrices: bool = False
    pool_threshold: float = 5
    significance: float = 0.001
    max_gl_attempts: int = 10000

    @property
    def eps_fraction(self) -> Fraction:
        """eps as an exact rational (a decimal string is read exactly)."""
        if isinstance(self.eps, float):
            return Fraction(str(self.eps))
        return Fraction(self.eps)

    def to_dict(self) -> Dict[str, Any]:
        """Convert run config to a loggable dictionary."""
        data = dict(self.__dict__)
        data['output'] = str(self.output) if self.output else None
        data['eps'] = str(self.eps)
        return data


class InputValidator:
    """
    Utility class for validating configuration files and run settings.

    Validation methods collect every problem and return a list of
    messages instead of raising on the first one.
    """

    def __init__(self):
        """Initialize input validator."""
        self.logger = CensusLogger(self.__class__.__name__)

    def validate_config_structure(self, config: Dict[str, Any]) -> Tuple[bool, List[str]]:
        """
        Validate the census YAML configuration.

        Args:
            config: Configuration dictionary

        Returns:
            Tuple of (is_valid, list_of_errors)
        """
        errors = []
        if not isinstance(config, dict):
            return False, ["configuration must be a mapping"]

        known_sections = ('defaults', 'oracle', 'sampler', 'logging')
        for section in config:
            if section not in known_sections:
                errors.append(f"Unknown configuration section: {section}")
        for section in known_sections:
            if section in config and not isinstance(config[section], dict):
                errors.append(f"{section} must be a dictionary")

        defaults = config.get('defaults') or {}
        if isinstance(defaults, dict):
            errors.extend(self._validate_defaults(defaults))

        oracle = config.get('oracle') or {}
        if isinstance(oracle, dict):
            for key in ('max_cost', 'chunk_size'):
                if key in oracle and not self._positive_int(oracle[key]):
                    errors.append(f"oracle.{key} must be a positive integer")
            if 'method' in oracle and oracle['method'] not in METHODS:
                errors.append(f"oracle.method must be one of {', '.join(METHODS)}")

        sampler = config.get('sampler') or {}
        if isinstance(sampler, dict):
            if 'max_gl_attempts' in sampler and not self._positive_int(sampler['max_gl_attempts']):
                errors.append("sampler.max_gl_attempts must be a positive integer")
            if 'pool_threshold' in sampler and not self._positive_number(sampler['pool_threshold']):
                errors.append("sampler.pool_threshold must be positive")
            significance = sampler.get('significance', 0.001)
            if not self._positive_number(significance) or significance >= 1:
                errors.append("sampler.significance must lie in (0, 1)")

        logging_config = config.get('logging') or {}
        if isinstance(logging_config, dict) and 'level' in logging_config:
            if str(logging_config['level']).upper() not in ('DEBUG', 'INFO', 'WARNING', 'ERROR'):
                errors.append(f"Unknown logging level: {logging_config['level']}")

        return len(errors) == 0, errors

    def _validate_defaults(self, defaults: Dict[str, Any]) -> List[str]:
        """Validate the defaults section."""
        errors = []
        for key in ('r_cap', 'num_samples', 'workers'):
            if key in defaults and not self._positive_int(defaults[key]):
                errors.append(f"defaults.{key} must be a positive integer")
        if 'precision' in defaults:
            precision = defaults['precision']
            if not isinstance(precision, int) or isinstance(precision, bool) or precision < 0:
                errors.append("defaults.precision must be a non-negative integer")
        if 'seed' in defaults:
            seed = defaults['seed']
            if not isinstance(seed, int) or isinstance(seed, bool) or not 0 <= seed < 2 ** 64:
                errors.append("defaults.seed must be an integer in [0, 2^64)")
        if 'format' in defaults and defaults['format'] not in FORMATS:
            errors.append(f"defaults.format must be one of {', '.join(FORMATS)}")
        if 'eps' in defaults:
            errors.extend(self._validate_eps(defaults['eps'], "defaults.eps"))
        return errors

    def validate_run_config(self, cfg: RunConfig) -> List[str]:
        """
        Validate a merged run configuration before dispatch.

        Args:
            cfg: Run configuration

        Returns:
            List of error messages (empty if valid)
        """
        errors = []
        if cfg.command not in COMMANDS:
            return [f"unknown command {cfg.command!r}"]

        if cfg.fmt not in FORMATS:
            errors.append(f"format must be one of {', '.join(FORMATS)}")
        if not isinstance(cfg.precision, int) or cfg.precision < 0:
            errors.append("precision must be a non-negative integer")
        if not self._positive_int(cfg.workers):
            errors.append("workers must be a positive integer")

        if cfg.command == "table":
            if not cfg.q_list:
                errors.append("q-list must not be empty")
            if not cfg.n_list:
                errors.append("n-list must not be empty")
            for q in cfg.q_list:
                errors.extend(self._validate_q(q))
            for n in cfg.n_list:
                if not self._positive_int(n):
                    errors.append(f"n must be a positive integer, got {n}")
            return errors

        if cfg.q is None:
            errors.append("--q is required")
        else:
            errors.extend(self._validate_q(cfg.q))

        if cfg.command in ("count", "sample"):
            if cfg.n is None:
                errors.append("--n is required")
            elif not self._positive_int(cfg.n):
                errors.append(f"n must be a positive integer, got {cfg.n}")

        if cfg.command == "limit":
            if cfg.parity not in PARITIES:
                errors.append(f"parity must be one of {', '.join(PARITIES)}")
            errors.extend(self._validate_eps(cfg.eps, "eps"))
            if not isinstance(cfg.r_cap, int) or cfg.r_cap < (0 if cfg.parity == Parity.EVEN.value else 1):
                errors.append(f"rmax must be at least {0 if cfg.parity == Parity.EVEN.value else 1}")

        if cfg.command == "sample":
            if not self._positive_int(cfg.num_samples):
                errors.append("num must be a positive integer")
            if not isinstance(cfg.seed, int) or not 0 <= cfg.seed < 2 ** 64:
                errors.append("seed must be an integer in [0, 2^64)")

        if cfg.command == "verify":
            if cfg.max_n is None:
                errors.append("--max-n is required")
            elif not self._positive_int(cfg.max_n):
                errors.append(f"max-n must be a positive integer, got {cfg.max_n}")
            if not self._positive_int(cfg.max_cost):
                errors.append("max-cost must be a positive integer")
            if cfg.method not in METHODS:
                errors.append(f"method must be one of {', '.join(METHODS)}")

        if errors:
            self.logger.debug(f"Run config rejected: {errors}")
        return errors

    def validate_file_path(self, filepath: Union[str, Path],
                           must_exist: bool = True,
                           allowed_extensions: Optional[List[str]] = None) -> Tuple[bool, str]:
        """
        Validate file path.

        Args:
            filepath: Path to validate
            must_exist: Whether file must exist
            allowed_extensions: List of allowed file extensions

        Returns:
            Tuple of (is_valid, error_message)
        """
        path = Path(filepath)
        if must_exist and not path.is_file():
            return False, f"File does not exist: {filepath}"
        if allowed_extensions and path.suffix.lower() not in allowed_extensions:
            return False, f"Invalid file extension {path.suffix}, expected one of {allowed_extensions}"
        return True, ""

    def _validate_q(self, q: Any) -> List[str]:
        """Errors for a q that is not a supported prime power."""
        if not isinstance(q, int) or isinstance(q, bool):
            return [f"q must be an integer, got {q!r}"]
        try:
            ff_from_order(q)
        except ValidationError as e:
            return [f"{type(e).__name__}: {e}"]
        return []

    @staticmethod
    def _validate_eps(eps: Any, name: str) -> List[str]:
        """Errors for an eps outside (0, 1)."""
        try:
            value = Fraction(str(eps)) if isinstance(eps, float) else Fraction(eps)
        except (ValueError, TypeError, ZeroDivisionError):
            return [f"{name} is not a number: {eps!r}"]
        if not 0 < value < 1:
            return [f"{name} must lie in (0, 1), got {eps}"]
        return []

    @staticmethod
    def _positive_int(value: Any) -> bool:
        """True for ints > 0, excluding bool."""
        return isinstance(value, int) and not isinstance(value, bool) and value > 0

    @staticmethod
    def _positive_number(value: Any) -> bool:
        """True for ints or floats > 0, excluding bool."""
        return isinstance(value, (int, float)) and not isinstance(value, bool) and value > 0
