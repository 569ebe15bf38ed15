import logging
from datetime import datetime

from rich.console import Console
from rich.logging import RichHandler
from rich.text import Text

from utils.formatting import format_timestamp


def _stamp(moment: datetime) -> Text:
    return Text(f"[{format_timestamp(moment)}]")


def setup_logging(verbose: bool = False) -> logging.Logger:
    """Route all loggers to stderr through rich; stdout is kept for reports."""
    handler = RichHandler(
        console=Console(stderr=True),
        show_path=verbose,
        markup=False,
        log_time_format=_stamp,
    )
    root = logging.getLogger()
    for old in list(root.handlers):
        root.removeHandler(old)
    root.addHandler(handler)
    root.setLevel(logging.DEBUG if verbose else logging.INFO)
    return root
