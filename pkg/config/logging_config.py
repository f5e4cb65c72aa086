"""
Logging configuration using Loguru.
Console output goes to stderr so stdout stays clean for JSON results.
"""
import sys
from pathlib import Path
from loguru import logger
from config.settings import settings


def setup_logging(level: str = None, log_dir: str = None):
    """Configure Loguru sinks; file sinks are only added when a log directory is set."""
    level = (level or settings.log_level).upper()
    log_dir = log_dir or settings.log_dir

    # Remove default handler
    logger.remove()

    logger.add(
        sys.stderr,
        level=level,
        format="<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{extra[component]}</cyan>:<cyan>{function}</cyan> | <level>{message}</level>",
        colorize=True,
        backtrace=True,
        diagnose=False,
    )

    if log_dir:
        logs_dir = Path(log_dir)
        logs_dir.mkdir(parents=True, exist_ok=True)

        logger.add(
            logs_dir / "curves_{time:YYYY-MM-DD}.log",
            level=level,
            format="{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {extra[component]}:{function}:{line} | {message}",
            rotation="00:00",
            retention="30 days",
            compression="zip",
        )

        logger.add(
            logs_dir / "errors_{time:YYYY-MM-DD}.log",
            level="ERROR",
            format="{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {extra[component]}:{function}:{line} | {message}",
            rotation="00:00",
            retention="90 days",
            compression="zip",
        )

        # Census runs get their own file
        logger.add(
            logs_dir / "census_{time:YYYY-MM-DD}.log",
            level="INFO",
            format="{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {message}",
            rotation="00:00",
            retention="30 days",
            compression="zip",
            filter=lambda record: record["extra"].get("component") == "census",
        )


logger.configure(extra={"component": "root"})


def get_logger(name: str = None):
    """Get a logger instance with optional name binding."""
    if name:
        return logger.bind(component=name)
    return logger


# Initialize logging when module is imported
setup_logging()
