# -*- coding: utf-8 -*-
"""Benchmark harness: GA runs over QAPLIB instances, gap to best-known values.

Best-known values are data (`name,best_known,source` CSV), never code. A row
aggregates all seeds of one instance with best-of-seeds; the gap is the
exact fraction (best_found - best_known) / best_known.
"""
import csv
import io
import json
import math
from collections import namedtuple
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from qapga import utils
from qapga.custom_log import prepare_logger
from qapga.ga_engine import run
from qapga.instance import QapDataException


logger = prepare_logger(__name__, __file__)

BASELINE_HEADER = ['name', 'best_known', 'source']
REPORT_HEADER = ['instance', 'seeds', 'best_found', 'best_known', 'gap', 'generations', 'total_time_s']
REPORT_FORMATS = ('csv', 'json')


class BaselineException(QapDataException):
    pass


class MissingBaselineException(BaselineException):
    pass


class ReportFormatException(QapDataException):
    pass


BaselineRecord = namedtuple('BaselineRecord', 'instance_name best_known source')

BenchRow = namedtuple('BenchRow', [
    'instance_name',
    'seeds_run',
    'best_found',
    'best_known',
    'gap',
    'generations',
    'total_time_s',
    'seed_times_s',
])


# -------------------------------------------------------------------------
# Baselines
# -------------------------------------------------------------------------
def load_baselines(text):
    """Parse the baselines CSV. Names are unique case-insensitively, values positive"""
    if hasattr(text, 'read'):
        text = text.read()

    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or [h.strip() for h in header] != BASELINE_HEADER:
        raise BaselineException("Baselines header must be %r, got %r" % (",".join(BASELINE_HEADER), header))

    records = []
    seen = {}
    for row in reader:
        line_no = reader.line_num
        if not any(field.strip() for field in row):
            continue
        if len(row) != len(BASELINE_HEADER):
            raise BaselineException("line %d: expected %d fields, got %d" % (
                line_no, len(BASELINE_HEADER), len(row)))

        name, value, source = [field.strip() for field in row]
        key = utils.clean_instance_name(name)
        if not key:
            raise BaselineException("line %d: empty instance name" % (line_no))
        try:
            best_known = int(value)
        except ValueError:
            raise BaselineException("line %d: best_known %r is not an integer" % (line_no, value))
        if best_known <= 0:
            raise BaselineException("line %d: best_known for %s must be positive, got %d" % (
                line_no, name, best_known))
        if key in seen:
            raise BaselineException("line %d: duplicate baseline %r (first on line %d)" % (
                line_no, name, seen[key]))

        seen[key] = line_no
        records.append(BaselineRecord(key, best_known, source))
    return records


def read_baselines(fpath):
    with open(utils.validate_path(fpath), 'r') as src:
        return load_baselines(src.read())


def baseline_index(baselines):
    return dict((record.instance_name, record) for record in baselines)


def compute_gap(best_found, best_known):
    """Exact relative excess over the best-known value, as a Fraction"""
    if best_known <= 0:
        raise BaselineException("best_known must be positive, got %s" % (best_known))
    return Fraction(int(best_found) - int(best_known), int(best_known))


def format_gap(gap):
    return "%.6f" % (float(gap))


# -------------------------------------------------------------------------
# Suite
# -------------------------------------------------------------------------
def _ceil_ms(seconds):
    """Round a duration up to whole milliseconds; a measured run never reports 0"""
    return math.ceil(seconds * 1000.0) / 1000.0


def _run_seed(inst, cfg, seed):
    return run(inst, cfg.replace(rng_seed=seed))


def run_suite(instances, baselines, cfg, seeds, jobs=1):
    """Run the GA on every instance once per seed.

    Rows come back in input order whatever the completion order with `jobs` > 1.
    """
    seeds = list(seeds)
    if not seeds:
        raise QapDataException("Benchmark needs at least one seed")

    index = baseline_index(baselines)
    missing = [inst.name for inst in instances if utils.clean_instance_name(inst.name) not in index]
    if missing:
        raise MissingBaselineException("No baseline for: %s" % (", ".join(missing)))

    tasks = [(idx, inst, seed) for idx, inst in enumerate(instances) for seed in seeds]
    results = {}
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            futures = dict(((idx, seed), executor.submit(_run_seed, inst, cfg, seed)) for idx, inst, seed in tasks)
            for key, future in futures.items():
                results[key] = future.result()
    else:
        for idx, inst, seed in tasks:
            results[(idx, seed)] = _run_seed(inst, cfg, seed)
            logger.info("[%s] seed %s done: best %s" % (inst.name, seed, results[(idx, seed)].best.cost))

    rows = []
    for idx, inst in enumerate(instances):
        seed_results = [results[(idx, seed)] for seed in seeds]
        best = min(seed_results, key=lambda r: r.best.cost)
        best_known = index[utils.clean_instance_name(inst.name)].best_known
        seed_times = tuple(_ceil_ms(r.wall_time) for r in seed_results)

        rows.append(BenchRow(
            instance_name=inst.name,
            seeds_run=len(seeds),
            best_found=best.best.cost,
            best_known=best_known,
            gap=compute_gap(best.best.cost, best_known),
            generations=best.generations_run,
            total_time_s=_ceil_ms(sum(r.wall_time for r in seed_results)),
            seed_times_s=seed_times,
        ))
        logger.info("[%s] best %s known %s gap %s" % (inst.name, rows[-1].best_found, best_known, format_gap(rows[-1].gap)))
    return rows


# -------------------------------------------------------------------------
# Reports
# -------------------------------------------------------------------------
def emit_report(rows, fmt='csv'):
    """Render rows as CSV (REPORT_HEADER columns) or a JSON array"""
    if fmt == 'csv':
        out = io.StringIO()
        writer = csv.writer(out, lineterminator='\n')
        writer.writerow(REPORT_HEADER)
        for row in rows:
            writer.writerow([
                row.instance_name,
                row.seeds_run,
                row.best_found,
                row.best_known,
                format_gap(row.gap),
                row.generations,
                "%.3f" % (row.total_time_s),
            ])
        return out.getvalue()

    if fmt == 'json':
        data = [{
            "instance": row.instance_name,
            "seeds": row.seeds_run,
            "best_found": row.best_found,
            "best_known": row.best_known,
            "gap": round(float(row.gap), 6),
            "generations": row.generations,
            "total_time_s": round(row.total_time_s, 3),
            "seed_times_s": [round(t, 3) for t in row.seed_times_s],
        } for row in rows]
        return json.dumps(data, indent=2) + "\n"

    raise ReportFormatException("Unknown report format %r, expected one of %s" % (fmt, ", ".join(REPORT_FORMATS)))


def _make_row(instance_name, seeds_run, best_found, best_known, generations, total_time_s, seed_times_s):
    # -------------------------------------------------------------------------
    # Gap is recomputed exactly; the printed one is rounded
    # -------------------------------------------------------------------------
    return BenchRow(
        instance_name=instance_name,
        seeds_run=int(seeds_run),
        best_found=int(best_found),
        best_known=int(best_known),
        gap=compute_gap(int(best_found), int(best_known)),
        generations=int(generations),
        total_time_s=float(total_time_s),
        seed_times_s=tuple(float(t) for t in seed_times_s),
    )


def parse_report(text, fmt='csv'):
    """Inverse of `emit_report`. CSV carries no per-seed times, those come back empty"""
    try:
        if fmt == 'csv':
            reader = csv.reader(io.StringIO(text))
            header = next(reader, None)
            if header != REPORT_HEADER:
                raise ReportFormatException("Report header must be %r, got %r" % (",".join(REPORT_HEADER), header))
            return [
                _make_row(name, seeds, found, known, generations, total, ())
                for name, seeds, found, known, _gap, generations, total in reader
            ]

        if fmt == 'json':
            return [
                _make_row(item['instance'], item['seeds'], item['best_found'], item['best_known'],
                          item['generations'], item['total_time_s'], item.get('seed_times_s', ()))
                for item in json.loads(text)
            ]
    except (ValueError, KeyError, TypeError) as error:
        if isinstance(error, ReportFormatException):
            raise
        raise ReportFormatException("Malformed %s report: %s" % (fmt, error))

    raise ReportFormatException("Unknown report format %r, expected one of %s" % (fmt, ", ".join(REPORT_FORMATS)))
