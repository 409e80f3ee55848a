"""Configuration, suites, reports and command line of the verification harness."""

from .config import ConfigError, ExperimentConfig, load_config
from .report import RatioReport, SuiteReport, emit_report
from .suites import run_suite
from .theorem import theorem_experiment
