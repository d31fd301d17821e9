import logging

import pytest

from aerial_kpi.logging import enable_basic_logging, logger


@pytest.fixture
def clean_logger():
    handlers, level = list(logger.handlers), logger.level
    yield logger
    for handler in logger.handlers[len(handlers) :]:
        handler.close()
    logger.handlers = handlers
    logger.setLevel(level)


def test_library_logger_is_silent_by_default():
    assert any(isinstance(h, logging.NullHandler) for h in logger.handlers)


def test_enable_basic_logging_to_file(clean_logger, tmp_path):
    path = tmp_path / "run.log"
    enable_basic_logging(file=str(path), level="debug")
    logging.getLogger("aerial_kpi.geo").debug("hello %s", "there")

    assert clean_logger.level == logging.DEBUG
    assert "DEBUG aerial_kpi.geo hello there" in path.read_text()
