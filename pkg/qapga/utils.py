# -*- coding: utf-8 -*-
import os.path
import re
from math import ceil

# -------------------------------------------------------------------------
# Pre-Compiled Regexp
# -------------------------------------------------------------------------
SEED_RANGE_REGEXP = re.compile(r'^\s*(-?[0-9]+)\s*\.\.\s*(-?[0-9]+)\s*$')
CLEAN_NAME_REGEXP = re.compile(r'[^a-z0-9_.-]')


def validate_path(fpath):
    """Check is file path is a file"""
    if not fpath or not os.path.isfile(fpath):
        raise IOError("Could not find %s" % (fpath))
    return os.path.abspath(fpath)


def validate_dir(dpath):
    """Check is path is a directory"""
    if not dpath or not os.path.isdir(dpath):
        raise IOError("Could not find directory %s" % (dpath))
    return os.path.abspath(dpath)


def clean_instance_name(value):
    """Lower-cased instance name without extension or special characters"""
    base = os.path.basename(str(value).strip())
    if base.lower().endswith('.dat'):
        base = base[:-4]
    return CLEAN_NAME_REGEXP.sub('', base.lower())


def parse_seeds(value):
    """Parse a seed list: `7`, `1,4,9` or the inclusive range `1..10`"""
    match = SEED_RANGE_REGEXP.match(value)
    if match:
        start, stop = int(match.group(1)), int(match.group(2))
        if stop < start:
            raise ValueError("Empty seed range: %s" % (value))
        return list(range(start, stop + 1))

    seeds = [int(part) for part in value.split(',') if part.strip()]
    if not seeds:
        raise ValueError("No seeds in %r" % (value))
    return seeds


def calc_percentage(part, total, round_whole=False):
    percentage = (float(part) / float(total)) * 100.0
    if round_whole:
        percentage = int(ceil(percentage))
    return percentage
