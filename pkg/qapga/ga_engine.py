# -*- coding: utf-8 -*-
"""Genetic algorithm for the QAP.

Chromosomes are permutations (gene `i` = location of facility `i`) carrying
their cost. One generation keeps the `elitism_count` best chromosomes and
fills the rest with offspring:

    roulette-select two parents
    with probability `crossover_rate` apply two-point order crossover,
    otherwise copy the parents
    mutate each child with probability `mutation_rate` (one random swap)

RNG draw order per offspring pair, which replays depend on:
    parent 1 spin, parent 2 spin, crossover coin, [two cut points],
    then per child: mutation coin, [two swap positions]

Every run owns its `numpy.random.Generator`; there is no module-level state.
"""
import json
import time
from collections import Counter, namedtuple
from operator import attrgetter

import numpy as np

from qapga import config
from qapga.custom_log import prepare_logger
from qapga.instance import (QapDataException, Permutation, evaluate_cost,
                            is_bijection, swap_delta)


logger = prepare_logger(__name__, __file__)

INIT_METHODS = ('shuffle', 'rejection')


class GaConfigException(QapDataException):
    pass


class GaInvariantException(RuntimeError):
    """A chromosome broke the bijection or cached-cost invariant"""
    pass


Chromosome = namedtuple('Chromosome', 'perm cost')


# -------------------------------------------------------------------------
# Configuration
# -------------------------------------------------------------------------
_GaConfigBase = namedtuple('GaConfig', [
    'population_size',
    'crossover_rate',
    'mutation_rate',
    'max_generations',
    'target_cost',
    'time_limit',
    'elitism_count',
    'rng_seed',
    'init_method',
])

# -------------------------------------------------------------------------
# Field coercion for `key = value` config files. Optional fields accept "none"
# -------------------------------------------------------------------------
CONFIG_FIELD_TYPES = {
    'population_size': (int, False),
    'crossover_rate': (float, False),
    'mutation_rate': (float, False),
    'max_generations': (int, False),
    'target_cost': (int, True),
    'time_limit': (float, True),
    'elitism_count': (int, False),
    'rng_seed': (int, False),
    'init_method': (str, False),
}


def _is_int(value):
    return isinstance(value, (int, np.integer)) and not isinstance(value, bool)


class GaConfig(_GaConfigBase):
    """Immutable GA parameters. Defaults come from `qapga.config`"""
    __slots__ = ()

    def __new__(cls,
                population_size=config.POPULATION_SIZE,
                crossover_rate=config.CROSSOVER_RATE,
                mutation_rate=config.MUTATION_RATE,
                max_generations=config.MAX_GENERATIONS,
                target_cost=config.TARGET_COST,
                time_limit=config.TIME_LIMIT_S,
                elitism_count=config.ELITISM_COUNT,
                rng_seed=config.RNG_SEED,
                init_method=config.INIT_METHOD):
        self = super(GaConfig, cls).__new__(
            cls, population_size, crossover_rate, mutation_rate, max_generations,
            target_cost, time_limit, elitism_count, rng_seed, init_method)
        self.validate()
        return self

    def validate(self):
        """Raise GaConfigException on the first invalid field"""
        if not _is_int(self.population_size) or self.population_size < 2:
            raise GaConfigException("population_size must be an integer >= 2, got %r" % (self.population_size, ))
        for field in ('crossover_rate', 'mutation_rate'):
            rate = getattr(self, field)
            if isinstance(rate, bool) or not isinstance(rate, (int, float)) or not 0.0 <= rate <= 1.0:
                raise GaConfigException("%s must be a probability in [0, 1], got %r" % (field, rate))
        if not _is_int(self.max_generations) or self.max_generations < 1:
            raise GaConfigException("max_generations must be a positive integer, got %r" % (self.max_generations, ))
        if self.target_cost is not None and (not _is_int(self.target_cost) or self.target_cost < 0):
            raise GaConfigException("target_cost must be a non-negative integer, got %r" % (self.target_cost, ))
        if self.time_limit is not None and (isinstance(self.time_limit, bool) or
                                            not isinstance(self.time_limit, (int, float)) or
                                            self.time_limit < 0):
            raise GaConfigException("time_limit must be a non-negative duration, got %r" % (self.time_limit, ))
        if not _is_int(self.elitism_count) or not 0 <= self.elitism_count <= self.population_size:
            raise GaConfigException("elitism_count must be in [0, population_size], got %r" % (self.elitism_count, ))
        if not _is_int(self.rng_seed) or not 0 <= self.rng_seed < 2 ** 64:
            raise GaConfigException("rng_seed must be an unsigned 64-bit integer, got %r" % (self.rng_seed, ))
        if self.init_method not in INIT_METHODS:
            raise GaConfigException("init_method must be one of %s, got %r" % (
                ", ".join(INIT_METHODS), self.init_method))

    def replace(self, **overrides):
        """Validated copy with `overrides` applied; None values are ignored"""
        values = self._asdict()
        values.update((k, v) for k, v in overrides.items() if v is not None)
        return GaConfig(**values)

    @classmethod
    def from_text(cls, text, base=None):
        """Parse `key = value` lines on top of `base` (defaults when omitted)"""
        overrides = {}
        for line_no, raw_line in enumerate(text.splitlines(), start=1):
            line = raw_line.split('#', 1)[0].strip()
            if not line:
                continue
            if '=' not in line:
                raise GaConfigException("line %d: expected 'key = value', got %r" % (line_no, raw_line))
            key, value = [part.strip() for part in line.split('=', 1)]
            if key not in CONFIG_FIELD_TYPES:
                raise GaConfigException("line %d: unknown config key %r" % (line_no, key))

            cast, optional = CONFIG_FIELD_TYPES[key]
            if optional and value.lower() == 'none':
                overrides[key] = None
                continue
            try:
                overrides[key] = cast(value)
            except ValueError:
                raise GaConfigException("line %d: %s expects %s, got %r" % (line_no, key, cast.__name__, value))

        values = (base or cls())._asdict()
        values.update(overrides)
        return cls(**values)

    @classmethod
    def from_file(cls, fpath, base=None):
        with open(fpath, 'r') as cfg_file:
            return cls.from_text(cfg_file.read(), base=base)


# -------------------------------------------------------------------------
# Result
# -------------------------------------------------------------------------
class GaResult(namedtuple('GaResult', 'best generations_run evaluations wall_time history')):
    """Outcome of `run`. `history[g]` is the best-so-far cost after generation g"""
    __slots__ = ()

    def to_dict(self, include_time=True):
        data = {
            "best": {
                "perm": self.best.perm.to_labels(),
                "cost": int(self.best.cost),
            },
            "generations_run": self.generations_run,
            "evaluations": self.evaluations,
            "history": [int(c) for c in self.history],
        }
        if include_time:
            data["wall_time"] = self.wall_time
        return data

    def to_json(self, include_time=True):
        return json.dumps(self.to_dict(include_time=include_time), sort_keys=True)


# -------------------------------------------------------------------------
# Operators
# -------------------------------------------------------------------------
def _rejection_permutation(n, rng):
    """Fill locations in order, drawing facilities until an unassigned one comes up"""
    free = np.ones(n, dtype=bool)
    assign = np.empty(n, dtype=np.int64)
    for location in range(n):
        while True:
            facility = int(rng.integers(n))
            if free[facility]:
                break
        free[facility] = False
        assign[facility] = location
    return assign


def init_population(inst, size, rng, method='shuffle', stats=None):
    """Random initial population of `size` chromosomes, uniform over permutations"""
    if size < 2:
        raise GaConfigException("Population size must be >= 2, got %s" % (size))
    if method not in INIT_METHODS:
        raise GaConfigException("Unknown init method %r" % (method, ))

    population = []
    for _ in range(size):
        if method == 'shuffle':
            assign = rng.permutation(inst.n).astype(np.int64)
        else:
            assign = _rejection_permutation(inst.n, rng)
        perm = Permutation._wrap(assign)
        population.append(Chromosome(perm, evaluate_cost(inst, perm)))

    if stats is not None:
        stats['evaluations'] += size
    return population


def _check_cuts(n, cut1, cut2):
    if not 0 <= cut1 <= cut2 <= n:
        raise QapDataException("Cut points must satisfy 0 <= cut1 <= cut2 <= %d, got (%s, %s)" % (n, cut1, cut2))


def _order_child(fixed, order, cut1, cut2):
    """Keep `fixed[cut1:cut2]`, fill the other positions left to right in `order`'s order"""
    n = len(fixed)
    child = np.empty(n, dtype=np.int64)
    segment = fixed[cut1:cut2]
    child[cut1:cut2] = segment

    in_segment = np.zeros(n, dtype=bool)
    in_segment[segment] = True
    rest = order[~in_segment[order]]
    child[:cut1] = rest[:cut1]
    child[cut2:] = rest[cut1:]
    return Permutation._wrap(child)


def order_crossover_two_point(p1, p2, cut1, cut2):
    """Two-point order crossover.

    child1 keeps p1 on [cut1, cut2) and takes the remaining genes in p2's
    order; child2 keeps p2's segment and follows p1's order.
    """
    if len(p1) != len(p2):
        raise QapDataException("Parents differ in length: %d vs %d" % (len(p1), len(p2)))
    _check_cuts(len(p1), cut1, cut2)
    return (_order_child(p1.assign, p2.assign, cut1, cut2),
            _order_child(p2.assign, p1.assign, cut1, cut2))


def _draw_swap(n, rng):
    """Two distinct positions, uniform over all pairs"""
    i = int(rng.integers(n))
    k = int(rng.integers(n - 1))
    if k >= i:
        k = k + 1
    return i, k


def swap_mutation(p, rng):
    """Exchange two distinct, uniformly chosen genes"""
    if len(p) < 2:
        logger.info("Degenerate mutation: permutation of length %d left unchanged" % (len(p)))
        return p
    i, k = _draw_swap(len(p), rng)
    return p.swapped(i, k)


def selection_weights(costs):
    """Roulette weights for minimisation: w_i ~ C_max + C_min - C_i, normalised.

    Equal costs give uniform weights. When C_min is 0 the offset becomes 1 so
    the worst chromosome keeps a positive weight.
    """
    if len(costs) == 0:
        raise QapDataException("Cannot weight an empty population")
    costs = [int(c) for c in costs]
    c_min, c_max = min(costs), max(costs)
    if c_min < 0:
        raise QapDataException("Costs must be non-negative, got %d" % (c_min))
    if c_min == c_max:
        return np.full(len(costs), 1.0 / len(costs))

    ceiling = c_max + max(c_min, 1)
    raw = np.array([ceiling - c for c in costs], dtype=float)
    return raw / raw.sum()


def _spin(cumulative, rng):
    index = int(np.searchsorted(cumulative, rng.random() * cumulative[-1], side='right'))
    return min(index, len(cumulative) - 1)


def roulette_select(population, weights, rng):
    """Draw one chromosome with probability proportional to its weight"""
    if len(population) != len(weights):
        raise QapDataException("Population has %d members but %d weights" % (len(population), len(weights)))
    if not len(population):
        raise QapDataException("Cannot select from an empty population")
    return population[_spin(np.cumsum(weights), rng)]


def _check_closure(inst, population, exhaustive):
    """Validate every chromosome (exhaustive) or the newest one"""
    for chromosome in (population if exhaustive else population[-1:]):
        if not is_bijection(chromosome.perm.assign, inst.n):
            raise GaInvariantException("Chromosome is not a permutation: %r" % (chromosome.perm, ))
        if exhaustive and chromosome.cost != evaluate_cost(inst, chromosome.perm):
            raise GaInvariantException("Cached cost %s out of date for %r" % (chromosome.cost, chromosome.perm))


def evolve_step(inst, population, cfg, rng, stats=None):
    """Produce the next generation from `population`"""
    size = cfg.population_size
    if len(population) != size:
        raise QapDataException("Population has %d members, config expects %d" % (len(population), size))

    stats = Counter() if stats is None else stats
    n = inst.n
    costs = [c.cost for c in population]
    cumulative = np.cumsum(selection_weights(costs))

    # -------------------------------------------------------------------------
    # Elites survive unchanged, in their current order
    # -------------------------------------------------------------------------
    elite_idx = sorted(np.argsort(costs, kind='stable')[:cfg.elitism_count])
    next_gen = [population[i] for i in elite_idx]

    while len(next_gen) < size:
        parent1 = population[_spin(cumulative, rng)]
        parent2 = population[_spin(cumulative, rng)]

        if rng.random() < cfg.crossover_rate:
            cut1, cut2 = sorted(int(c) for c in rng.integers(0, n + 1, size=2))
            child1, child2 = order_crossover_two_point(parent1.perm, parent2.perm, cut1, cut2)
            children = [(child1, None), (child2, None)]
        else:
            children = [(parent1.perm, parent1.cost), (parent2.perm, parent2.cost)]

        for perm, cost in children:
            if rng.random() < cfg.mutation_rate:
                if n < 2:
                    perm = swap_mutation(perm, rng)
                else:
                    i, k = _draw_swap(n, rng)
                    if cost is not None:
                        # -------------------------------------------------------------------------
                        # Copied parent: the swap is the only change
                        # -------------------------------------------------------------------------
                        cost = swap_delta(inst, perm, cost, i, k)
                        stats['delta_evaluations'] += 1
                        stats['evaluations'] += 1
                    perm = perm.swapped(i, k)

            if cost is None:
                cost = evaluate_cost(inst, perm)
                stats['evaluations'] += 1

            if len(next_gen) < size:
                next_gen.append(Chromosome(perm, cost))

    _check_closure(inst, next_gen, exhaustive=config.DEBUG)
    return next_gen


# -------------------------------------------------------------------------
# Generation loop
# -------------------------------------------------------------------------
def run(inst, cfg):
    """Run the GA until max_generations, target_cost or time_limit.

    Returns the best chromosome ever seen, not just the final generation's.
    """
    rng = np.random.default_rng(cfg.rng_seed)
    stats = Counter()
    start = time.perf_counter()

    logger.info("Start GA on %s (n=%d) seed=%s pop=%s generations=%s" % (
        inst.name, inst.n, cfg.rng_seed, cfg.population_size, cfg.max_generations))

    population = init_population(inst, cfg.population_size, rng, method=cfg.init_method, stats=stats)
    best = min(population, key=attrgetter('cost'))
    history = [best.cost]

    generations = 0
    while generations < cfg.max_generations:
        # -------------------------------------------------------------------------
        # Termination: single permutation, target reached, time limit
        # -------------------------------------------------------------------------
        if inst.n == 1:
            break
        if cfg.target_cost is not None and best.cost <= cfg.target_cost:
            break
        if cfg.time_limit is not None and time.perf_counter() - start >= cfg.time_limit:
            break

        population = evolve_step(inst, population, cfg, rng, stats=stats)
        generations = generations + 1

        generation_best = min(population, key=attrgetter('cost'))
        if generation_best.cost < best.cost:
            best = generation_best
        history.append(best.cost)

        if generations % config.LOG_EVERY == 0:
            logger.debug("[%s] generation %s best %s" % (inst.name, generations, best.cost))

    wall_time = time.perf_counter() - start
    logger.info("Finished GA on %s seed=%s: best %s after %s generations (%.3fs)" % (
        inst.name, cfg.rng_seed, best.cost, generations, wall_time))

    return GaResult(
        best=best,
        generations_run=generations,
        evaluations=stats['evaluations'],
        wall_time=wall_time,
        history=tuple(history),
    )
