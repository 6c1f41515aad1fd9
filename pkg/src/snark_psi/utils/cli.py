import logging

from rich.console import Console
from rich.logging import RichHandler
from rich.theme import Theme

logger = logging.getLogger(__name__)

THEME = Theme(
    {
        "tag": "white on #007166",
        "result": "grey85",
        "pass": "bold green",
        "fail": "bold red",
        "error": "red",
    }
)


def get_console() -> Console:
    """Diagnostics console; standard output is kept for JSON and graph6."""
    return Console(stderr=True, theme=THEME, highlight=False)


def setup_logging(console: Console, verbose: bool = False) -> None:
    handler = RichHandler(console=console, show_path=False, show_time=verbose)
    root = logging.getLogger("snark_psi")
    root.handlers[:] = [handler]
    root.setLevel(logging.DEBUG if verbose else logging.WARNING)
    root.propagate = False
