"""
Secure-Domination Digraph Laboratory - Main Entry Point

Configures structured logging and hands control to the click command group.
Run with `python -m src.main <command> ...`.
"""

from src.api.cli import cli
from src.core.config import settings
from src.core.monitoring import log_event, setup_logging


def main() -> None:
    setup_logging()
    log_event("lab_started", {"app": settings.APP_NAME, "version": settings.VERSION, "environment": settings.ENVIRONMENT})
    cli(prog_name="secdom")


if __name__ == "__main__":
    main()
