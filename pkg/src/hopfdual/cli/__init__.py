"""Batch front end for session files."""

from .runner import RunReport, TaskResult, run_tasks
from .session import SessionSpec, parse_session
from .syntax import parse_text, print_statements

__all__ = ["RunReport", "TaskResult", "run_tasks", "SessionSpec", "parse_session", "parse_text", "print_statements"]
