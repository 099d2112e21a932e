# -*- coding: utf-8 -*-
import logging
import os.path
import sys
import tempfile
import warnings
from datetime import datetime

from qapga import config


class LogFormatter(logging.Formatter):
    """Log Formatter with millisecond timestamps"""
    converter = datetime.fromtimestamp

    def formatTime(self, record, datefmt=None):
        ct = self.converter(record.created)
        if datefmt:
            return ct.strftime(datefmt)
        return "%s.%03d" % (ct.strftime("%Y-%m-%d %H:%M:%S"), record.msecs)


def prepare_logger(name, filename, log_dir=None):
    """Generate Logger.

    Writes `<module>.info.log` and `<module>.err.log` into `log_dir` and
    echoes warnings to stderr. Safe to call repeatedly for the same name.
    """
    logger = logging.getLogger(name)
    if logger.handlers:
        return logger

    log_dir = log_dir or config.LOG_DIR
    if not os.path.isdir(log_dir):
        try:
            os.makedirs(log_dir)
        except OSError:
            warnings.warn("No Log Dir: '%s' found" % (log_dir), Warning)
            log_dir = tempfile.gettempdir()

    base_name = os.path.basename(filename)
    log_formatter = LogFormatter(fmt='%%(asctime)s - "%s" - %%(levelname)s - %%(message)s' % (
        base_name,
        ))

    logger.setLevel(getattr(logging, config.LOG_LEVEL, logging.INFO))
    logger.propagate = False

    # -------------------------------------------------------------------------
    # Info Logging
    # -------------------------------------------------------------------------
    fh = logging.FileHandler(os.path.join(log_dir, '%s.info.log' % (base_name)), delay=True)
    fh.setFormatter(log_formatter)
    logger.addHandler(fh)

    # -------------------------------------------------------------------------
    # Error Logging
    # -------------------------------------------------------------------------
    efh = logging.FileHandler(os.path.join(log_dir, '%s.err.log' % (base_name)), delay=True)
    efh.setFormatter(log_formatter)
    efh.setLevel(logging.ERROR)
    logger.addHandler(efh)

    # -------------------------------------------------------------------------
    # Diagnostics on stderr
    # -------------------------------------------------------------------------
    sh = logging.StreamHandler(sys.stderr)
    sh.setFormatter(logging.Formatter('%(levelname)s: %(message)s'))
    sh.setLevel(logging.WARNING)
    logger.addHandler(sh)

    return logger
