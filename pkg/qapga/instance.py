# -*- coding: utf-8 -*-
"""QAP problem instances, permutations and the assignment cost.

An instance holds a flow matrix `A` (facility x facility) and a distance
matrix `B` (location x location). A solution is a permutation `p` where
`p[i]` is the location of facility `i` and its cost is

    sum_i sum_k A[i][k] * B[p[i]][p[k]]

Diagonal terms are part of the sum and neither matrix is assumed symmetric.
Everything is 0-based in here; 1-based labels only appear at the I/O edges
(`Permutation.to_labels` / `Permutation.from_labels`).
"""
import re

import numpy as np

INT64_MAX = int(np.iinfo(np.int64).max)

# -------------------------------------------------------------------------
# Pre-Compiled Regexp
# -------------------------------------------------------------------------
TOKEN_REGEXP = re.compile(r'\S+')
INTEGER_REGEXP = re.compile(r'[+-]?[0-9]+\Z')


class QapDataException(ValueError):
    """Invalid problem data: instance files, permutations, configs, baselines"""
    pass


class QaplibFormatException(QapDataException):
    """Malformed QAPLIB text. Carries the 1-based line/column of the offending token"""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = "line %s, column %s: %s" % (line, column, message)
        super(QaplibFormatException, self).__init__(message)


class DimensionMismatchException(QapDataException):
    pass


class CostOverflowException(QapDataException):
    pass


def is_bijection(values, n=None):
    """Check `values` holds every integer of 0..n-1 exactly once"""
    arr = np.asarray(values)
    n = len(arr) if n is None else n
    if arr.ndim != 1 or len(arr) != n:
        return False
    if n == 0:
        return True
    if arr.dtype.kind not in 'iu':
        return False
    seen = np.zeros(n, dtype=bool)
    if arr.min() < 0 or arr.max() >= n:
        return False
    seen[arr] = True
    return bool(seen.all())


class Permutation(object):
    """Immutable assignment of facilities to locations.

    `assign[i]` is the location of facility `i`.
    """
    __slots__ = ('_assign', )

    def __init__(self, assign):
        values = list(assign)
        if any(isinstance(v, bool) or not isinstance(v, (int, np.integer)) for v in values):
            raise QapDataException("Not an integer sequence: %r" % (values, ))
        try:
            arr = np.array(values, dtype=np.int64)
        except OverflowError:
            raise QapDataException("Not a permutation: %r" % (values, ))
        if arr.ndim != 1 or not is_bijection(arr):
            raise QapDataException("Not a permutation of 0..%d: %s" % (len(arr) - 1, list(assign)))
        arr.setflags(write=False)
        self._assign = arr

    @classmethod
    def _wrap(cls, arr):
        """Wrap an int64 array known to be a bijection, skipping validation"""
        perm = cls.__new__(cls)
        arr.setflags(write=False)
        perm._assign = arr
        return perm

    @classmethod
    def identity(cls, n):
        return cls._wrap(np.arange(n, dtype=np.int64))

    @classmethod
    def from_labels(cls, labels):
        """Build from 1-based location labels"""
        return cls([int(label) - 1 for label in labels])

    @property
    def assign(self):
        return self._assign

    def to_labels(self):
        """1-based location labels"""
        return [int(v) + 1 for v in self._assign]

    def tolist(self):
        return [int(v) for v in self._assign]

    def swapped(self, i, k):
        """Copy with the locations of facilities `i` and `k` exchanged"""
        arr = self._assign.copy()
        arr[i], arr[k] = arr[k], arr[i]
        return Permutation._wrap(arr)

    def __len__(self):
        return len(self._assign)

    def __getitem__(self, index):
        return int(self._assign[index])

    def __iter__(self):
        return iter(self.tolist())

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return np.array_equal(self._assign, other._assign)

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash(tuple(self.tolist()))

    def __repr__(self):
        return "Permutation(%s)" % (self.tolist(), )


def _as_matrix(values, label):
    """Convert `values` into a read-only square int64 matrix"""
    try:
        matrix = np.array(values, dtype=np.int64)
    except OverflowError:
        raise QapDataException("%s matrix has an entry outside the 64-bit range" % (label))
    except (TypeError, ValueError) as error:
        raise QapDataException("%s matrix is not an integer matrix: %s" % (label, error))

    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionMismatchException("%s matrix must be square, got shape %s" % (
            label, matrix.shape))
    if matrix.size and matrix.min() < 0:
        raise QapDataException("%s matrix has negative entries" % (label))
    matrix.setflags(write=False)
    return matrix


class Instance(object):
    """QAP instance: `flow` (A) between facilities, `dist` (B) between locations"""

    def __init__(self, name, flow, dist):
        flow = _as_matrix(flow, 'flow')
        dist = _as_matrix(dist, 'distance')

        # -------------------------------------------------------------------------
        # Equal facility and location counts only. Padding with dummy facilities
        # is not supported
        # -------------------------------------------------------------------------
        if flow.shape != dist.shape:
            raise DimensionMismatchException(
                "%s facilities but %s locations: unequal counts are not supported" % (
                    flow.shape[0], dist.shape[0]))
        if flow.shape[0] < 1:
            raise DimensionMismatchException("Instance needs at least one facility")

        self.name = name
        self.n = flow.shape[0]
        self.flow = flow
        self.dist = dist

        # -------------------------------------------------------------------------
        # Upper bound of any assignment cost, in Python integers. When it fits
        # in int64 the vectorised evaluation can never wrap around
        # -------------------------------------------------------------------------
        self.cost_bound = int(flow.astype(object).sum()) * int(dist.max())

    @property
    def fits_int64(self):
        return self.cost_bound <= INT64_MAX

    @property
    def is_symmetric(self):
        return bool(np.array_equal(self.flow, self.flow.T) and np.array_equal(self.dist, self.dist.T))

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return (self.name == other.name and self.n == other.n and
                np.array_equal(self.flow, other.flow) and np.array_equal(self.dist, other.dist))

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None

    def __repr__(self):
        return "Instance(name=%r, n=%d)" % (self.name, self.n)


# -------------------------------------------------------------------------
# QAPLIB .dat format
# -------------------------------------------------------------------------
def _position(text, offset):
    """1-based (line, column) of a character offset"""
    line = text.count('\n', 0, offset) + 1
    column = offset - (text.rfind('\n', 0, offset) + 1) + 1
    return line, column


def _parse_int(text, match, what):
    token = match.group(0)
    if not INTEGER_REGEXP.match(token):
        line, column = _position(text, match.start())
        raise QaplibFormatException("malformed %s %r, expected an integer" % (what, token), line, column)
    return int(token)


def parse_qaplib(text, name=''):
    """Parse QAPLIB text: `n` followed by the n*n flow and n*n distance entries.

    `text` is a string or a readable stream. Tokens may be separated by any
    whitespace. Raises QaplibFormatException with the position of the first
    problem found.
    """
    if hasattr(text, 'read'):
        text = text.read()

    tokens = TOKEN_REGEXP.finditer(text)
    first = next(tokens, None)
    if first is None:
        raise QaplibFormatException("empty input, expected the instance size", *_position(text, len(text)))

    n = _parse_int(text, first, 'size')
    if n <= 0:
        raise QaplibFormatException("instance size must be positive, got %d" % (n), *_position(text, first.start()))

    expected = 2 * n * n
    entries = []
    for match in tokens:
        if len(entries) == expected:
            raise QaplibFormatException("trailing garbage %r after %d matrix entries" % (
                match.group(0), expected), *_position(text, match.start()))
        value = _parse_int(text, match, 'matrix entry')
        if value < 0:
            raise QaplibFormatException("negative matrix entry %d" % (value), *_position(text, match.start()))
        entries.append(value)

    if len(entries) < expected:
        raise QaplibFormatException("expected %d matrix entries, found %d integers (%d matrix entries)" % (
            expected, len(entries) + 1, len(entries)), *_position(text, len(text)))

    size = n * n
    flow = [entries[row * n:(row + 1) * n] for row in range(n)]
    dist = [entries[size + row * n:size + (row + 1) * n] for row in range(n)]
    return Instance(name, flow, dist)


def render_qaplib(inst):
    """Canonical QAPLIB text: n, blank line, flow rows, blank line, distance rows"""
    def rows(matrix):
        return "\n".join(" ".join(str(int(v)) for v in row) for row in matrix)

    return "%d\n\n%s\n\n%s\n" % (inst.n, rows(inst.flow), rows(inst.dist))


# -------------------------------------------------------------------------
# Cost evaluation
# -------------------------------------------------------------------------
def _check_dimensions(inst, p):
    if len(p) != inst.n:
        raise DimensionMismatchException("Permutation has %d genes but instance %s has n=%d" % (
            len(p), inst.name, inst.n))


def _check_range(value):
    if value > INT64_MAX:
        raise CostOverflowException("Cost %d exceeds the signed 64-bit range" % (value))
    return value


def evaluate_cost(inst, p):
    """Exact cost of assignment `p`, diagonal terms included"""
    _check_dimensions(inst, p)
    assign = p.assign
    permuted_dist = inst.dist[np.ix_(assign, assign)]

    if inst.fits_int64:
        return int(np.multiply(inst.flow, permuted_dist).sum())

    # -------------------------------------------------------------------------
    # Bound not provable: sum in Python integers and check the result
    # -------------------------------------------------------------------------
    exact = int(np.multiply(inst.flow.astype(object), permuted_dist.astype(object)).sum())
    return _check_range(exact)


def swap_delta(inst, p, current, i, k):
    """Cost of `p` with facilities `i` and `k` swapped, given `current` = cost of `p`.

    O(n): only the rows and columns of `i` and `k` change.
    """
    _check_dimensions(inst, p)
    n = inst.n
    if not (0 <= i < n and 0 <= k < n):
        raise QapDataException("Facility index out of range: (%s, %s) for n=%d" % (i, k, n))
    if i == k:
        raise QapDataException("Swap needs two distinct facilities, got %s twice" % (i))

    if not inst.fits_int64:
        return evaluate_cost(inst, p.swapped(i, k))

    a, b, x = inst.flow, inst.dist, p.assign
    r, s = x[i], x[k]

    # -------------------------------------------------------------------------
    # Terms with exactly one of the pair (i, k) as endpoint
    # -------------------------------------------------------------------------
    row = (a[i, :] - a[k, :]) * (b[s, x] - b[r, x])
    col = (a[:, i] - a[:, k]) * (b[x, s] - b[x, r])
    delta = int(row.sum() - row[i] - row[k]) + int(col.sum() - col[i] - col[k])

    # -------------------------------------------------------------------------
    # Terms with both endpoints in the pair
    # -------------------------------------------------------------------------
    delta += int(
        a[i, i] * (b[s, s] - b[r, r]) + a[k, k] * (b[r, r] - b[s, s]) +
        a[i, k] * (b[s, r] - b[r, s]) + a[k, i] * (b[r, s] - b[s, r]))

    return _check_range(int(current) + delta)
