# -*- coding: utf-8 -*-
import logging
import os.path
import re
import tempfile

import pytest

from qapga.custom_log import LogFormatter, prepare_logger


@pytest.fixture
def logger_name(request):
    name = 'qapga.tests.%s' % (request.node.name)
    yield name
    logger = logging.getLogger(name)
    for handler in list(logger.handlers):
        handler.close()
        logger.removeHandler(handler)


def test_handlers_and_levels(logger_name, tmp_path):
    logger = prepare_logger(logger_name, 'bench.py', log_dir=str(tmp_path))
    assert logger.propagate is False
    assert len(logger.handlers) == 3

    info, err, stream = logger.handlers
    assert info.baseFilename == os.path.join(str(tmp_path), 'bench.py.info.log')
    assert err.baseFilename == os.path.join(str(tmp_path), 'bench.py.err.log')
    assert err.level == logging.ERROR
    assert stream.level == logging.WARNING


def test_second_call_keeps_handlers(logger_name, tmp_path):
    first = prepare_logger(logger_name, 'cli.py', log_dir=str(tmp_path))
    second = prepare_logger(logger_name, 'cli.py', log_dir=str(tmp_path / 'other'))
    assert first is second
    assert len(second.handlers) == 3
    assert not (tmp_path / 'other').exists()


def test_missing_log_dir_is_created(logger_name, tmp_path):
    log_dir = tmp_path / 'logs' / 'nested'
    prepare_logger(logger_name, 'oracle.py', log_dir=str(log_dir))
    assert log_dir.is_dir()


def test_uncreatable_log_dir_falls_back_to_tempdir(logger_name, tmp_path):
    blocker = tmp_path / 'blocker'
    blocker.write_text("not a directory")

    with pytest.warns(Warning, match="No Log Dir"):
        logger = prepare_logger(logger_name, 'app.py', log_dir=str(blocker / 'logs'))

    file_handlers = [h for h in logger.handlers if isinstance(h, logging.FileHandler)]
    assert len(file_handlers) == 2
    assert all(os.path.dirname(h.baseFilename) == os.path.abspath(tempfile.gettempdir()) for h in file_handlers)


def test_formatter_millisecond_timestamp():
    record = logging.LogRecord('qapga', logging.INFO, __file__, 1, "done", None, None)
    formatted = LogFormatter(fmt='%(asctime)s %(message)s').format(record)
    assert re.match(r"^\d{4}-\d{2}-\d{2} \d{2}:\d{2}:\d{2}\.\d{3} done$", formatted)
