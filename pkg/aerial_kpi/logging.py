"""aerial_kpi.logging"""
from logging import FileHandler, Formatter, NullHandler, StreamHandler, getLogger
from typing import Union

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s %(message)s"

logger = getLogger("aerial_kpi")
logger.addHandler(NullHandler())


def enable_basic_logging(file: Union[str, bool] = False, level: str = "info") -> None:
    """
    Enable opinionated logging for aerial_kpi

    Args:
        file: True to log to "aerial_kpi.log", a string to log to that path, False for no file
        level: string name of the logging level for the package logger

    Returns:
        N/A  # noqa: DAR202

    Raises:
        N/A

    """
    logger.setLevel(level.upper())
    formatter = Formatter(fmt=LOG_FORMAT)

    stream_handler = StreamHandler()
    stream_handler.setFormatter(formatter)
    logger.addHandler(stream_handler)

    if file:
        filename = file if isinstance(file, str) else "aerial_kpi.log"
        file_handler = FileHandler(filename=filename, mode="a")
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)
