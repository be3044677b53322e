from .checks import DEFAULT_CONFIG, SUITES, build_suite, merge_config
from .runner import CheckResult, emit_report, exit_code, run_suite

__all__ = ["CheckResult", "DEFAULT_CONFIG", "SUITES", "build_suite", "emit_report", "exit_code", "merge_config", "run_suite"]
