# -*- coding: utf-8 -*-
"""Exact reference solver and random instances for small problems"""
import itertools
from collections import namedtuple

import numpy as np

from qapga import config
from qapga.custom_log import prepare_logger
from qapga.instance import (QapDataException, Instance, Permutation,
                            evaluate_cost)


logger = prepare_logger(__name__, __file__)


class OracleLimitException(QapDataException):
    pass


OracleResult = namedtuple('OracleResult', 'optimum argmin explored')


def assignment_matrix_cost(inst, p):
    """Cost through the 0/1 assignment matrix: sum f_ik * d_jl * x_ij * x_kl over i, j, k, l"""
    n = inst.n
    x = np.zeros((n, n), dtype=np.int64)
    x[np.arange(n), p.assign] = 1
    return int(np.einsum('ik,jl,ij,kl->', inst.flow, inst.dist, x, x))


def _batched_minimum(inst, batch_size):
    """Vectorised enumeration in lexicographic order; first minimum wins"""
    n = inst.n
    optimum, argmin, explored = None, None, 0
    permutations = itertools.permutations(range(n))
    while True:
        chunk = list(itertools.islice(permutations, batch_size))
        if not chunk:
            break
        perms = np.array(chunk, dtype=np.int64)
        costs = (inst.flow[None, :, :] * inst.dist[perms[:, :, None], perms[:, None, :]]).sum(axis=(1, 2))
        j = int(np.argmin(costs))
        if optimum is None or costs[j] < optimum:
            optimum, argmin = int(costs[j]), perms[j].copy()
        explored = explored + len(chunk)
    return optimum, argmin, explored


def _sequential_minimum(inst):
    optimum, argmin, explored = None, None, 0
    for perm in itertools.permutations(range(inst.n)):
        cost = evaluate_cost(inst, Permutation(perm))
        if optimum is None or cost < optimum:
            optimum, argmin = cost, np.array(perm, dtype=np.int64)
        explored = explored + 1
    return optimum, argmin, explored


def exhaustive_optimum(inst, limit=None):
    """Enumerate all n! assignments.

    Returns the minimum cost and the lexicographically smallest permutation
    reaching it. Refuses instances larger than `limit`.
    """
    limit = config.ORACLE_LIMIT if limit is None else limit
    if inst.n > limit:
        logger.warning("Oracle refused %s: n=%d exceeds limit %d" % (inst.name, inst.n, limit))
        raise OracleLimitException("Instance %s has n=%d, oracle limit is %d" % (inst.name, inst.n, limit))

    if inst.fits_int64:
        optimum, argmin, explored = _batched_minimum(inst, config.ORACLE_BATCH_SIZE)
    else:
        optimum, argmin, explored = _sequential_minimum(inst)

    logger.debug("Oracle %s: optimum %s over %s permutations" % (inst.name, optimum, explored))
    return OracleResult(optimum=optimum, argmin=Permutation(argmin), explored=explored)


def random_instance(n, max_entry, symmetric=False, zero_diagonal=False, rng=None, name=None):
    """Random instance with entries uniform in [0, max_entry].

    `rng` is a seed or a numpy Generator. `symmetric` mirrors the upper
    triangle, `zero_diagonal` clears both diagonals.
    """
    if n < 1:
        raise QapDataException("Instance size must be >= 1, got %s" % (n))
    if max_entry < 0:
        raise QapDataException("max_entry must be >= 0, got %s" % (max_entry))

    rng = np.random.default_rng(rng)

    def matrix():
        m = rng.integers(0, max_entry + 1, size=(n, n), dtype=np.int64)
        if symmetric:
            m = np.triu(m) + np.triu(m, 1).T
        if zero_diagonal:
            np.fill_diagonal(m, 0)
        return m

    flow = matrix()
    dist = matrix()
    return Instance(name or 'rand%d' % (n), flow, dist)
