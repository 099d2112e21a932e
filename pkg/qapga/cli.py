# -*- coding: utf-8 -*-
import re
import sys

from docopt import DocoptExit, docopt

from qapga import config, utils
from qapga.bench import (REPORT_FORMATS, emit_report, format_gap,
                         read_baselines, run_suite)
from qapga.custom_log import prepare_logger
from qapga.ga_engine import GaConfig, run
from qapga.importer import import_directory, read_qaplib
from qapga.instance import QapDataException
from qapga.oracle import exhaustive_optimum


logger = prepare_logger(__name__, __file__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2

# -------------------------------------------------------------------------
# Defaults are rendered from `qapga.config` so help text and GaConfig agree
# -------------------------------------------------------------------------
USAGE = """QAP genetic algorithm solver.

Usage:
  qapga solve <instance> [options]
  qapga bench [--dir=<dir>] [--baselines=<csv>] [--seeds=<seeds>] [--jobs=<n>] [--format=<fmt>] [--out=<file>] [options]
  qapga oracle <instance> [--limit=<n>]
  qapga -h | --help

GA options:
  -h --help             Show this screen.
  --pop=<n>             Population size [default: %(pop)s].
  --generations=<n>     Maximum number of generations [default: %(generations)s].
  --cx-rate=<p>         Crossover probability [default: %(cx_rate)s].
  --mut-rate=<p>        Per-chromosome mutation probability [default: %(mut_rate)s].
  --elitism=<n>         Survivors copied unchanged [default: %(elitism)s].
  --seed=<seed>         RNG seed for solve [default: %(seed)s].
  --target=<cost>       Stop once the best cost is <= target.
  --time-limit-s=<s>    Stop after this many seconds.
  --init=<method>       Initialisation, shuffle or rejection [default: %(init)s].
  --config=<file>       Read GA parameters from a `key = value` file; flags win.

Bench options:
  --dir=<dir>           Directory of QAPLIB .dat files [default: %(qaplib_dir)s].
  --baselines=<csv>     Best-known values CSV [default: %(baselines)s].
  --seeds=<seeds>       Seeds as `1..10` or `1,2,3` [default: %(seeds)s].
  --jobs=<n>            Parallel runs [default: %(jobs)s].
  --format=<fmt>        Report format, csv or json [default: %(format)s].
  --out=<file>          Write the report here instead of stdout.

Oracle options:
  --limit=<n>           Largest n the oracle accepts [default: %(limit)s].
""" % {
    "pop": config.POPULATION_SIZE,
    "generations": config.MAX_GENERATIONS,
    "cx_rate": config.CROSSOVER_RATE,
    "mut_rate": config.MUTATION_RATE,
    "elitism": config.ELITISM_COUNT,
    "seed": config.RNG_SEED,
    "init": config.INIT_METHOD,
    "qaplib_dir": config.QAPLIB_DIR,
    "baselines": config.BASELINES_FILEPATH,
    "seeds": config.BENCH_SEEDS,
    "jobs": config.BENCH_JOBS,
    "format": config.REPORT_FORMAT,
    "limit": config.ORACLE_LIMIT,
}


# -------------------------------------------------------------------------
# GaConfig field, flag, type
# -------------------------------------------------------------------------
FLAG_FIELDS = [
    ('population_size', '--pop', int),
    ('max_generations', '--generations', int),
    ('crossover_rate', '--cx-rate', float),
    ('mutation_rate', '--mut-rate', float),
    ('elitism_count', '--elitism', int),
    ('rng_seed', '--seed', int),
    ('target_cost', '--target', int),
    ('time_limit', '--time-limit-s', float),
    ('init_method', '--init', str),
]


class UsageException(Exception):
    pass


def _number(args, flag, cast):
    value = args.get(flag)
    if value is None:
        return None
    try:
        return cast(value)
    except ValueError:
        raise UsageException("%s expects %s, got %r" % (flag, cast.__name__, value))


# USAGE with no defaults: options parse to None unless given on the command line
BARE_USAGE = re.sub(r'\s*\[default: [^\]]*\]', '', USAGE)


def _given_flags(argv):
    """Long options present in argv, resolved by docopt (abbreviations included)"""
    args = docopt(BARE_USAGE, argv=argv, help=False)
    return set(key for key, value in args.items() if key.startswith('--') and value not in (None, False))


def build_ga_config(args):
    """GaConfig from defaults, then --config file, then explicit flags"""
    config_file = args.get('--config')
    base = GaConfig.from_file(config_file) if config_file else GaConfig()
    given = args.get('_given', set())

    overrides = {}
    for field, flag, cast in FLAG_FIELDS:
        # docopt defaults must not mask values read from --config
        if config_file and flag not in given:
            continue
        overrides[field] = _number(args, flag, cast)

    try:
        return base.replace(**overrides)
    except QapDataException as e:
        raise UsageException(str(e))


# -------------------------------------------------------------------------
# Sub Commands
# -------------------------------------------------------------------------
def cmd_solve(args, out):
    inst = read_qaplib(args['<instance>'])
    cfg = build_ga_config(args)
    result = run(inst, cfg)

    out.write("instance: %s (n=%d)\n" % (inst.name, inst.n))
    out.write("permutation: %s\n" % (" ".join(str(v) for v in result.best.perm.to_labels())))
    out.write("cost: %d\n" % (result.best.cost))
    out.write("generations: %d\n" % (result.generations_run))
    out.write("time_s: %.3f\n" % (result.wall_time))
    return EXIT_OK


def cmd_bench(args, out):
    fmt = args['--format']
    if fmt not in REPORT_FORMATS:
        raise UsageException("--format must be one of %s, got %r" % (", ".join(REPORT_FORMATS), fmt))
    try:
        seeds = utils.parse_seeds(args['--seeds'])
    except ValueError as e:
        raise UsageException("--seeds: %s" % (e))
    jobs = _number(args, '--jobs', int)
    if jobs < 1:
        raise UsageException("--jobs must be >= 1, got %d" % (jobs))

    cfg = build_ga_config(args)
    baselines = read_baselines(args['--baselines'])
    instances = import_directory(args['--dir'], strict=True)
    if not instances:
        raise QapDataException("No instances found in %s" % (args['--dir']))

    rows = run_suite(instances, baselines, cfg, seeds, jobs=jobs)
    report = emit_report(rows, fmt)

    if args.get('--out'):
        with open(args['--out'], 'w') as report_file:
            report_file.write(report)
        for row in rows:
            logger.info("%s gap %s" % (row.instance_name, format_gap(row.gap)))
    else:
        out.write(report)
    return EXIT_OK


def cmd_oracle(args, out):
    limit = _number(args, '--limit', int)
    inst = read_qaplib(args['<instance>'])
    result = exhaustive_optimum(inst, limit=limit)

    out.write("instance: %s (n=%d)\n" % (inst.name, inst.n))
    out.write("optimum: %d\n" % (result.optimum))
    out.write("argmin: %s\n" % (" ".join(str(v) for v in result.argmin.to_labels())))
    out.write("explored: %d\n" % (result.explored))
    return EXIT_OK


def main(argv=None, out=None, err=None):
    """Command line entry point. Returns the exit status"""
    argv = sys.argv[1:] if argv is None else list(argv)
    out = out or sys.stdout
    err = err or sys.stderr

    try:
        args = docopt(USAGE, argv=argv, help=False)
    except DocoptExit:
        err.write(USAGE)
        return EXIT_USAGE

    if args['--help']:
        out.write(USAGE)
        return EXIT_OK

    args['_given'] = _given_flags(argv)
    try:
        if args['solve']:
            return cmd_solve(args, out)
        if args['bench']:
            return cmd_bench(args, out)
        return cmd_oracle(args, out)
    except UsageException as e:
        err.write("error: %s\n\n%s" % (e, USAGE))
        return EXIT_USAGE
    except (QapDataException, IOError, UnicodeDecodeError) as e:
        logger.info("Exit %d: %s" % (EXIT_DATA, e))
        err.write("error: %s\n" % (e))
        return EXIT_DATA


if __name__ == '__main__':
    sys.exit(main())
