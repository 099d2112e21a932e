# -*- coding: utf-8 -*-
import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from qapga.instance import Instance, render_qaplib  # noqa: E402


# -------------------------------------------------------------------------
# Shared instances
# -------------------------------------------------------------------------
THREE_FLOW = [[0, 1, 2], [1, 0, 3], [2, 3, 0]]
THREE_DIST = [[0, 4, 5], [4, 0, 6], [5, 6, 0]]
THREE_COSTS = {
    (0, 1, 2): 64,
    (0, 2, 1): 62,
    (1, 0, 2): 62,
    (1, 2, 0): 58,
    (2, 0, 1): 58,
    (2, 1, 0): 56,
}


@pytest.fixture
def tiny1():
    return Instance('tiny1', [[3]], [[5]])


@pytest.fixture
def two():
    return Instance('two', [[0, 1], [1, 0]], [[0, 3], [3, 0]])


@pytest.fixture
def three():
    return Instance('three', THREE_FLOW, THREE_DIST)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def write_dat(tmp_path):
    """Write an instance (or raw text) as `<name>.dat` under tmp_path"""
    def writer(inst_or_text, name=None, directory=None):
        directory = directory or tmp_path
        if isinstance(inst_or_text, Instance):
            name = name or inst_or_text.name
            text = render_qaplib(inst_or_text)
        else:
            text = inst_or_text
        fpath = os.path.join(str(directory), '%s.dat' % (name))
        with open(fpath, 'w') as dat:
            dat.write(text)
        return fpath
    return writer
