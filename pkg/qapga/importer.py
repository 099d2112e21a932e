# -*- coding: utf-8 -*-
import codecs
import glob
import os.path
from collections import namedtuple

from qapga import utils
from qapga.custom_log import prepare_logger
from qapga.instance import QapDataException, parse_qaplib


logger = prepare_logger(__name__, __file__)


InstanceFile = namedtuple('InstanceFile', 'name path')


def read_qaplib(fpath, name=None):
    """Read a QAPLIB .dat file. The instance is named after the file stem unless `name` is given"""
    fpath = utils.validate_path(fpath)
    with codecs.open(fpath, 'r', 'utf-8') as datasrc:
        return parse_qaplib(datasrc.read(), name=name or utils.clean_instance_name(fpath))


def list_instance_files(dir_path):
    """List `*.dat` files in `dir_path`, sorted by instance name"""
    dir_path = utils.validate_dir(dir_path)
    files = [
        InstanceFile(utils.clean_instance_name(fpath), fpath)
        for fpath in glob.glob(os.path.join(dir_path, '*'))
        if fpath.lower().endswith('.dat') and os.path.isfile(fpath)
    ]
    return sorted(files, key=lambda f: f.name)


def find_instance_file(dir_path, name):
    """Find the .dat file of instance `name` (case-insensitive)"""
    wanted = utils.clean_instance_name(name)
    for instance_file in list_instance_files(dir_path):
        if instance_file.name == wanted:
            return instance_file
    raise IOError("No instance '%s' in %s" % (name, dir_path))


def import_directory(dir_path, names=None, strict=False):
    """Import QAPLIB instances from a directory.

    params:
        - dir_path: directory holding `*.dat` files
        - names: optional instance names to restrict the import to
        - strict: raise QapDataException naming every file that failed

    Files that fail to parse are logged and skipped unless `strict` is set.
    Returns the parsed instances ordered by name.
    """
    instance_files = list_instance_files(dir_path)
    if names is not None:
        wanted = set(utils.clean_instance_name(name) for name in names)
        instance_files = [f for f in instance_files if f.name in wanted]
        missing = wanted - set(f.name for f in instance_files)
        if missing:
            raise IOError("Instances not found in %s: %s" % (dir_path, ", ".join(sorted(missing))))

    logger.info("Start importing %s instance files from %s" % (len(instance_files), dir_path))

    instances = []
    failures = []
    ok, failed = 0, 0
    for i, instance_file in enumerate(instance_files, start=1):
        try:
            instances.append(read_qaplib(instance_file.path, name=instance_file.name))
            ok = ok + 1
        except (QapDataException, IOError, UnicodeDecodeError) as e:
            failed = failed + 1
            failures.append(instance_file.path)
            logger.error("Skipping %s: %s" % (instance_file.path, e))

        logger.debug("Import @ file %s of %s [%s%%] (ok:%s / fail:%s)" % (
            i,
            len(instance_files),
            utils.calc_percentage(i, len(instance_files), round_whole=True),
            ok,
            failed,
            ))

    logger.info("Finished importing %s: ok: %s failed: %s total: %s" % (
        dir_path, ok, failed, ok + failed))

    if strict and failures:
        raise QapDataException("Unreadable instance files: %s" % (", ".join(failures)))
    return instances
