import inspect
import logging
import sys
import time
from datetime import datetime
from functools import wraps
from typing import Any, Optional

from rich.console import Console
from rich.table import Table
from rich.text import Text

# rich styles per log category
STYLES = {
    "SUITE": "bold yellow",
    "RESULT": "bold magenta",
    "PASS": "bold green",
    "FAIL": "bold red",
    "CONVENTION": "bold cyan",
    "REPORT": "bold blue",
    "ERROR": "bold bright_red",
    "SYSTEM": "bold white",
    "UTIL": "cyan",
}


def check_tally(report) -> str:
    """One-line pass/fail count of a report's gating checks, naming the first failure."""
    gating = [line for line in report.lines if not line.informational]
    failing = [line for line in gating if not line.passed]
    text = f"{len(gating) - len(failing)}/{len(gating)} checks passed"
    info = len(report.lines) - len(gating)
    if info:
        text = f"{text}, {info} informational"
    if failing:
        text = f"{text}; first failure: {failing[0].id}"
    if getattr(report, "exploratory", False):
        text = f"{text} (exploratory)"
    return text


def check_row(line) -> Text:
    """A single report line as a styled `ok | info | FAIL` row."""
    if line.passed:
        mark, style = "ok  ", STYLES["PASS"]
    elif line.informational:
        mark, style = "info", "dim"
    else:
        mark, style = "FAIL", STYLES["FAIL"]
    row = Text(mark, style=style)
    row.append(f" {line.id}")
    if not line.passed and line.witness:
        row.append(f"  witness={line.witness}", style="dim")
    return row


class LabLogger:
    """
    Logger singleton for verification runs.

    Everything goes to stderr: stdout and --out files are reserved for the
    JSON artifacts so that identical runs produce identical bytes.
    """

    def __init__(self, level=logging.INFO):
        self.logger = logging.getLogger("lctspin")
        self.logger.setLevel(level)
        self.logger.handlers = []
        self.logger.propagate = False

        self.console = Console(stderr=True, highlight=False)
        handler = logging.StreamHandler(sys.stderr)
        handler.setLevel(level)
        handler.setFormatter(logging.Formatter("%(message)s"))
        self.logger.addHandler(handler)

    def set_level(self, level):
        self.logger.setLevel(level)
        for handler in self.logger.handlers:
            handler.setLevel(level)

    def _render(self, renderable) -> str:
        with self.console.capture() as capture:
            self.console.print(renderable, soft_wrap=True)
        return capture.get().rstrip()

    def _format_message(self, category: str, message, style: Optional[str] = None) -> str:
        head = Text(f"[{datetime.now().strftime('%H:%M:%S.%f')[:-3]}] ", style="dim")
        head.append(f"[{category.upper()}]", style=style or STYLES.get(category.upper(), "bold"))
        head.append(" ")
        head.append(message if isinstance(message, Text) else Text(str(message)))
        return self._render(head)

    def log_suite_call(self, suite_name, params):
        if not self.logger.isEnabledFor(logging.INFO):
            return
        args = ", ".join(f"{k}={v}" for k, v in params.items()) if isinstance(params, dict) else str(params)
        self.logger.info(self._format_message("SUITE", f"{suite_name}({args})"))

    def log_suite_result(self, suite_name, result, elapsed: float):
        if not self.logger.isEnabledFor(logging.INFO):
            return
        if hasattr(result, "lines"):
            category = "PASS" if result.passed else "FAIL"
            body = f"{suite_name}: {check_tally(result)} in {elapsed:.3f}s"
        else:
            outcome = getattr(result, "winner", None) or type(result).__name__
            category, body = "RESULT", f"{suite_name} -> {outcome} in {elapsed:.3f}s"
        self.logger.info(self._format_message(category, body))

    def log_line_failure(self, suite_name, line_id, witness):
        self.logger.warning(self._format_message("FAIL", f"{suite_name} :: {line_id} -> {witness}"))

    def log_convention(self, name, value, evidence=None):
        message = f"{name} = {value}"
        if evidence:
            details = ", ".join(f"{k}={v}" for k, v in sorted(evidence.items()))
            message = f"{message}  ({details})"
        self.logger.info(self._format_message("CONVENTION", message))

    def log_report_table(self, report):
        """Per-check rows of a report, rendered through rich at debug level."""
        if not self.logger.isEnabledFor(logging.DEBUG):
            return
        table = Table(title=f"{report.suite}: {check_tally(report)}", show_header=False, box=None)
        table.add_column("check", overflow="fold")
        for line in report.lines:
            table.add_row(check_row(line))
        self.logger.debug(self._format_message("REPORT", self._render(table)))

    def log_error(self, message, exc_info=None):
        self.logger.error(self._format_message("ERROR", message), exc_info=exc_info)

    def log_system(self, message):
        self.logger.info(self._format_message("SYSTEM", message))


logger = LabLogger()


def _loggable(value: Any) -> Any:
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    tag = getattr(value, "tag", None)
    if isinstance(tag, str):
        return tag
    return repr(value) if len(repr(value)) < 80 else f"<{type(value).__name__}>"


def log_suite_execution(func):
    """
    Log a suite or oracle call with its arguments, then its check tally and timing.

    Usage:
    @log_suite_execution
    def product_table_1d(c):
        ...
    """

    @wraps(func)
    def wrapper(*args, **kwargs):
        bound = inspect.signature(func).bind(*args, **kwargs)
        bound.apply_defaults()
        logger.log_suite_call(func.__name__, {k: _loggable(v) for k, v in bound.arguments.items()})

        start = time.perf_counter()
        try:
            result = func(*args, **kwargs)
        except Exception as e:
            logger.log_error(f"{func.__name__} raised {type(e).__name__}: {e}")
            raise
        logger.log_suite_result(func.__name__, result, time.perf_counter() - start)
        return result

    return wrapper


def log_lab_util(message: str, title: str = "UTIL", style: Optional[str] = None):
    """Bookkeeping line from the pipeline or the ledger (suite expansion, caps, errata)."""
    logger.logger.info(logger._format_message(title, message, style))
