# Reporting package initialization
from src.reporting.report import CheckRecord, Report, emit, render_text
