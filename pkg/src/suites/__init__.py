# Suites package initialization
from src.suites.suite_manager import RunContext, SuiteManager, gather_checks
