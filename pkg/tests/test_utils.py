"""
Tests for utility components.
"""

import logging
import shutil
import sys
import tempfile
import unittest
from fractions import Fraction
from pathlib import Path

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.utils.file_handler import FileHandler
from src.utils.logger import CensusLogger, setup_logger
from src.utils.validation import InputValidator, RunConfig


class TestUtils(unittest.TestCase):
    """Test cases for utility components."""

    def setUp(self):
        """Set up test fixtures."""
        self.file_handler = FileHandler()
        self.validator = InputValidator()

        # Create temporary directory for file operations
        self.temp_dir = tempfile.mkdtemp()
        self.temp_path = Path(self.temp_dir)

    def tearDown(self):
        """Clean up test fixtures."""
        if self.temp_path.exists():
            shutil.rmtree(self.temp_path)

    def test_file_handler_yaml(self):
        """Test YAML reading, including empty and missing files."""
        yaml_file = self.temp_path / "census.yaml"
        yaml_file.write_text("defaults:\n  seed: 3\n", encoding="utf-8")
        self.assertEqual(self.file_handler.read_yaml(yaml_file), {'defaults': {'seed': 3}})

        empty = self.temp_path / "empty.yaml"
        empty.write_text("", encoding="utf-8")
        self.assertEqual(self.file_handler.read_yaml(empty), {})

        self.assertIsNone(self.file_handler.read_yaml(self.temp_path / "missing.yaml"))

        broken = self.temp_path / "broken.yaml"
        broken.write_text("defaults: [unclosed\n", encoding="utf-8")
        self.assertIsNone(self.file_handler.read_yaml(broken))

    def test_file_handler_text(self):
        """Test text files keep "\\n" line endings and nested directories are created."""
        text_file = self.temp_path / "nested" / "out.csv"
        self.assertTrue(self.file_handler.write_text_file("a,b\n1,2\n", text_file))
        self.assertEqual(text_file.read_bytes(), b"a,b\n1,2\n")
        self.assertFalse(self.file_handler.write_text_file("x", text_file / "below_a_file.csv"))

    def test_config_structure(self):
        """Test validation of the shipped and broken configurations."""
        shipped = self.file_handler.read_yaml(project_root / "config" / "census_config.yaml")
        is_valid, errors = self.validator.validate_config_structure(shipped)
        self.assertTrue(is_valid, errors)

        broken = {
            'defaults': {'precision': -1, 'workers': 0, 'eps': '2'},
            'oracle': {'method': 'gpu'},
            'sampler': {'significance': 1.5},
            'logging': {'level': 'LOUD'},
            'extras': {}
        }
        is_valid, errors = self.validator.validate_config_structure(broken)
        self.assertFalse(is_valid)
        self.assertEqual(len(errors), 7)

        self.assertFalse(self.validator.validate_config_structure([])[0])

    def test_run_config_validation(self):
        """Test per-command validation of merged settings."""
        self.assertEqual(self.validator.validate_run_config(RunConfig("count", q=9, n=2)), [])
        self.assertEqual(
            self.validator.validate_run_config(RunConfig("table", q_list=[2, 4], n_list=[1, 5])),
            []
        )
        errors = self.validator.validate_run_config(RunConfig("count", q=None, n=None))
        self.assertEqual(errors, ["--q is required", "--n is required"])
        errors = self.validator.validate_run_config(RunConfig("limit", q=2, parity="odd", r_cap=0, eps="0"))
        self.assertEqual(len(errors), 2)
        errors = self.validator.validate_run_config(RunConfig("verify", q=2, method="gpu"))
        self.assertEqual(len(errors), 2)
        errors = self.validator.validate_run_config(RunConfig("sample", q=2, n=2, seed=-1, fmt="xml"))
        self.assertEqual(len(errors), 2)
        self.assertEqual(self.validator.validate_run_config(RunConfig("plot")), ["unknown command 'plot'"])

    def test_run_config_eps(self):
        """Test eps is read exactly from decimal strings."""
        self.assertEqual(RunConfig("limit", eps="1e-9").eps_fraction, Fraction(1, 10 ** 9))
        self.assertEqual(RunConfig("limit", eps=0.25).eps_fraction, Fraction(1, 4))
        self.assertEqual(RunConfig("limit", eps="1e-9").to_dict()['eps'], "1e-9")

    def test_file_path_validation(self):
        """Test file path checks."""
        existing = self.temp_path / "census.yaml"
        existing.write_text("{}", encoding="utf-8")
        self.assertEqual(self.validator.validate_file_path(existing, allowed_extensions=['.yaml']), (True, ""))
        self.assertFalse(self.validator.validate_file_path(self.temp_path / "no.yaml")[0])
        self.assertFalse(self.validator.validate_file_path(existing, allowed_extensions=['.json'])[0])

    def test_setup_logger_file(self):
        """Test a named logger writes to a rotating log file."""
        log_file = self.temp_path / "logs" / "census.log"
        logger = setup_logger("census_test_file", level="DEBUG", log_file=log_file,
                              console_logging=False, file_logging=True)
        logger.debug("written to file")
        for handler in logger.handlers:
            handler.flush()
        self.assertIn("written to file", log_file.read_text(encoding="utf-8"))
        self.assertIs(setup_logger("census_test_file", level="WARNING"), logger)
        self.assertEqual(logger.level, logging.WARNING)
        for handler in list(logger.handlers):
            handler.close()
            logger.removeHandler(handler)

    def test_census_logger_timing(self):
        """Test operation timing on the monotonic clock."""
        logger = CensusLogger("census_test_timing")
        self.assertEqual(logger.elapsed_seconds(), 0.0)
        logger.start_operation("scan", 100)
        for i in range(1, 101):
            logger.log_progress(i, 100)
        self.assertGreaterEqual(logger.complete_operation("scan"), 0.0)


if __name__ == "__main__":
    unittest.main()
