#!/usr/bin/env python3
#
# Copyright (c) 2021 Roberto Riggio
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing,
# software distributed under the License is distributed on an
# "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
# KIND, either express or implied. See the License for the
# specific language governing permissions and limitations
# under the License.

"""Exact solution counts for translation-dilation invariant systems."""

import itertools
import logging
import math

from fractions import Fraction

from binform_core.budget import get_budget
from binform_core.errors import DimensionMismatch
from binform_core.errors import ModulusMismatch
from binform_core.linalg import integer_determinant

LOG = logging.getLogger(__name__)


class DistributionMap:
    """Sparse table of exact counts keyed by integer vectors."""

    def __init__(self, dimension, table=None, modulus=None):

        if modulus is not None and modulus < 1:
            raise ValueError("Modulus must be positive, got %s" % modulus)

        self._dimension = dimension
        self._modulus = modulus
        self._table = {}

        for key, count in (table or {}).items():
            self.add(key, count)

    @classmethod
    def delta(cls, key, modulus=None):
        """Return the unit mass at key."""

        return cls(len(key), {tuple(key): 1}, modulus)

    @property
    def dimension(self):
        """Return the key length N."""

        return self._dimension

    @property
    def modulus(self):
        """Return modulus, None over Z^N."""

        return self._modulus

    @property
    def table(self):
        """Return the underlying dict."""

        return self._table

    @property
    def mass(self):
        """Return the total count."""

        return sum(self._table.values())

    @property
    def support(self):
        """Return the number of keys with positive count."""

        return len(self._table)

    def reduce(self, key):
        """Return key reduced by the modulus."""

        if self._modulus is None:
            return tuple(key)

        return tuple(value % self._modulus for value in key)

    def add(self, key, count=1):
        """Add count at key."""

        if len(key) != self._dimension:
            raise DimensionMismatch("Key of length %u in a %u-dimensional "
                                    "distribution" % (len(key),
                                                      self._dimension))

        key = self.reduce(key)
        self._table[key] = self._table.get(key, 0) + count

    def negate(self):
        """Return the distribution of -key."""

        return DistributionMap(self._dimension,
                               {tuple(-v for v in key): count
                                for key, count in self._table.items()},
                               self._modulus)

    def project(self, coordinates):
        """Return the marginal on the given coordinates."""

        projected = DistributionMap(len(coordinates), modulus=self._modulus)

        for key, count in self._table.items():
            projected.add(tuple(key[i] for i in coordinates), count)

        return projected

    def __getitem__(self, key):

        return self._table.get(self.reduce(key), 0)

    def __len__(self):

        return len(self._table)

    def items(self):
        """Return (key, count) pairs in sorted key order."""

        return sorted(self._table.items())

    def to_dict(self):
        """Return JSON representation."""

        return {
            "modulus": self._modulus,
            "dimension": self._dimension,
            "table": [[list(key), count] for key, count in self.items()]
        }


class CoefficientTuple:
    """A tuple c of non-zero integers."""

    def __init__(self, c):

        c = tuple(int(value) for value in c)

        if not c:
            raise ValueError("Coefficient tuple is empty")

        if not all(c):
            raise ValueError("Coefficients must be non-zero, got %s" %
                             (c, ))

        self._c = c

    @property
    def c(self):
        """Return coefficients."""

        return self._c

    @property
    def s(self):
        """Return the number of variables."""

        return len(self._c)

    @property
    def zero_sum(self):
        """Return True iff the coefficients sum to zero."""

        return sum(self._c) == 0

    def __iter__(self):

        return iter(self._c)

    def __len__(self):

        return len(self._c)

    def __repr__(self):

        return "CoefficientTuple(%s)" % (self._c, )


class PointSet:
    """A finite set of integer points of the plane."""

    def __init__(self, points):

        self._points = tuple(sorted(set(tuple(p) for p in points)))

    @classmethod
    def box(cls, X):
        """Return [X]^2."""

        return cls(itertools.product(range(1, int(X) + 1), repeat=2))

    @property
    def points(self):
        """Return the points in sorted order."""

        return self._points

    def transform(self, scale, shift):
        """Return scale * A + shift."""

        return PointSet((scale * x + shift[0], scale * y + shift[1])
                        for x, y in self._points)

    def __contains__(self, point):

        return tuple(point) in set(self._points)

    def __iter__(self):

        return iter(self._points)

    def __len__(self):

        return len(self._points)

    def to_rows(self):
        """Return CSV rows (x, y)."""

        return [list(p) for p in self._points]

    def to_dict(self):
        """Return JSON representation."""

        return {"size": len(self._points),
                "points": [list(p) for p in self._points]}


class BoundedCount:
    """An exact count reported against a bound."""

    def __init__(self, count, bound, **inputs):

        self.count = count
        self.bound = bound
        self.inputs = inputs

    @property
    def ratio(self):
        """Return count / bound."""

        return float(Fraction(self.count) / Fraction(self.bound))

    def to_dict(self):
        """Return JSON representation."""

        out = dict(self.inputs)
        out.update({"count": self.count, "bound": self.bound,
                    "ratio": self.ratio})

        return out


def form_distribution(basis, X=None, scalar=1, modulus=None, points=None,
                      budget=None):
    """Return the census of scalar * F(x).

    Points range over [X]^2, over (Z/q)^2 when a modulus q is given, or over
    an explicit point set.
    """

    if scalar == 0:
        raise ValueError("Scalar must be non-zero")

    budget = get_budget(budget)

    if points is None:
        if modulus is not None:
            points = itertools.product(range(modulus), repeat=2)
        else:
            points = itertools.product(range(1, int(X) + 1), repeat=2)

    points = list(points)

    budget.charge("census points", len(points))

    distribution = DistributionMap(basis.N, modulus=modulus)

    for point in points:
        distribution.add(tuple(scalar * v for v in basis.evaluate(point)))

    return distribution


def _check_compatible(d1, d2):

    if d1.modulus != d2.modulus:
        raise ModulusMismatch("Moduli %s and %s differ" %
                              (d1.modulus, d2.modulus))

    if d1.dimension != d2.dimension:
        raise DimensionMismatch("Dimensions %u and %u differ" %
                                (d1.dimension, d2.dimension))


def convolve(d1, d2, budget=None):
    """Return the distribution of key sums."""

    _check_compatible(d1, d2)

    budget = get_budget(budget)
    budget.charge("convolution support", len(d1) * len(d2))

    result = DistributionMap(d1.dimension, modulus=d1.modulus)
    table = result.table
    modulus = d1.modulus

    for key1, count1 in d1.table.items():
        for key2, count2 in d2.table.items():
            if modulus is None:
                key = tuple(a + b for a, b in zip(key1, key2))
            else:
                key = tuple((a + b) % modulus for a, b in zip(key1, key2))
            table[key] = table.get(key, 0) + count1 * count2

    return result


def convolve_power(distribution, s, budget=None):
    """Return the s-fold convolution, by repeated squaring."""

    if s < 1:
        raise ValueError("Convolution power must be positive, got %s" % s)

    result = None
    square = distribution

    while s:

        if s & 1:
            result = square if result is None else \
                convolve(result, square, budget)

        s >>= 1

        if s:
            square = convolve(square, square, budget)

    return result


def _fold(distributions, budget):

    result = distributions[0]

    for distribution in distributions[1:]:
        result = convolve(result, distribution, budget)

    return result


def _count_at(left, right, target):
    """Return #{(u, w) : u + w = target} weighted by counts."""

    _check_compatible(left, right)

    total = 0

    for key, count in left.table.items():
        other = right[tuple(t - v for t, v in zip(target, key))]
        if other:
            total += count * other

    return total


def _zero_solutions(distributions, budget):
    """Return the number of ways the keys sum to zero, meeting in the middle."""

    if len(distributions) == 1:
        return distributions[0][(0, ) * distributions[0].dimension]

    half = len(distributions) // 2

    left = _fold(distributions[:half], budget)
    right = _fold(distributions[half:], budget)

    return _count_at(left, right, (0, ) * left.dimension)


def _target(basis, m):

    if m is None:
        return (0, ) * basis.N

    if len(m) != basis.N:
        raise DimensionMismatch("Target has %u entries, basis has %u" %
                                (len(m), basis.N))

    return tuple(m)


def count_J(basis, s, X, m=None, naive=False, budget=None):
    """Return J_{s,Phi}(X; m)."""

    target = _target(basis, m)
    budget = get_budget(budget)

    if naive:
        return _naive_J(basis, s, X, target, budget)

    r_s = convolve_power(form_distribution(basis, X, budget=budget), s,
                         budget)

    return _count_at(r_s, r_s.negate(), target)


def _naive_J(basis, s, X, target, budget):

    values = [basis.evaluate(p)
              for p in itertools.product(range(1, X + 1), repeat=2)]

    budget.charge("X^(4s)", len(values) ** (2 * s))

    count = 0

    for tup in itertools.product(values, repeat=2 * s):
        diff = tuple(sum(v[i] for v in tup[:s]) - sum(v[i] for v in tup[s:])
                     for i in range(basis.N))
        if diff == target:
            count += 1

    return count


def J_distribution(basis, s, X, budget=None):
    """Return the map m -> J_{s,Phi}(X; m)."""

    budget = get_budget(budget)

    r_s = convolve_power(form_distribution(basis, X, budget=budget), s,
                         budget)

    return convolve(r_s, r_s.negate(), budget)


def count_J_prime(basis, s, X, m=None, budget=None):
    """Return the count for the system without the degree-k equation."""

    budget = get_budget(budget)

    coordinates = [i for i, d in enumerate(basis.degrees) if d < basis.k]
    target = tuple(m) if m is not None else (0, ) * len(coordinates)

    if len(target) != len(coordinates):
        raise DimensionMismatch("Target has %u entries, reduced system has "
                                "%u" % (len(target), len(coordinates)))

    census = form_distribution(basis, X, budget=budget).project(coordinates)
    r_s = convolve_power(census, s, budget)

    return _count_at(r_s, r_s.negate(), target)


def count_R(basis, c, A, naive=False, budget=None):
    """Return R_{c,Phi}(A), the s-tuples of A solving sum c_j F(x_j) = 0."""

    c = c if isinstance(c, CoefficientTuple) else CoefficientTuple(c)
    budget = get_budget(budget)
    points = list(A)

    if naive:
        return _naive_zero_count(basis, c, points, None, budget)

    cache = {}

    for value in set(c):
        cache[value] = form_distribution(basis, scalar=value, points=points,
                                         budget=budget)

    return _zero_solutions([cache[value] for value in c], budget)


def count_M_mod(basis, c, q, naive=False, budget=None):
    """Return M(q), the solutions mod q of sum c_j F(x_j) = 0."""

    c = c if isinstance(c, CoefficientTuple) else CoefficientTuple(c)
    budget = get_budget(budget)

    if q < 1:
        raise ValueError("Modulus must be positive, got %s" % q)

    if naive:
        points = list(itertools.product(range(q), repeat=2))
        return _naive_zero_count(basis, c, points, q, budget)

    cache = {}

    for value in set(c):
        cache[value] = form_distribution(basis, scalar=value, modulus=q,
                                         budget=budget)

    return _zero_solutions([cache[value] for value in c], budget)


def _naive_zero_count(basis, c, points, modulus, budget):

    budget.charge("|A|^s", len(points) ** len(c))

    values = [basis.evaluate(p) for p in points]
    count = 0

    for tup in itertools.product(values, repeat=len(c)):
        total = [sum(cj * v[i] for cj, v in zip(c, tup))
                 for i in range(basis.N)]
        if modulus is not None:
            total = [t % modulus for t in total]
        if not any(total):
            count += 1

    return count


def count_B_sigma(basis, p, sigma, m=None, xi=(0, 0), budget=None):
    """Return |B^sigma_p(m; xi)| with the bound k_1...k_N p^(2Mk - K).

    Tuples x_1..x_M mod p^k with sum_j sigma_j F_i(x_j - xi) = m_i mod p^k_i
    for every i and Delta(x_1..x_M) non-zero mod p. Delta is a polynomial,
    so its value mod p depends on the points mod p only.
    """

    M, k = basis.M, basis.k

    if len(sigma) != M or any(v not in (1, -1) for v in sigma):
        raise ValueError("Sign vector must have %u entries in {1, -1}" % M)

    target = _target(basis, m)
    budget = get_budget(budget)

    modulus = p ** k
    moduli = [p ** d for d in basis.degrees]

    budget.charge("p^(2Mk)", modulus ** (2 * M))

    grid = list(itertools.product(range(modulus), repeat=2))
    values = {point: tuple(basis.evaluate((point[0] - xi[0],
                                           point[1] - xi[1])))
              for point in grid}

    def residue(vector):
        return tuple(v % q for v, q in zip(vector, moduli))

    last = {}

    for point in grid:
        key = residue([sigma[-1] * v for v in values[point]])
        last.setdefault(key, []).append(point)

    deltas = {}

    def delta_mod_p(points):
        key = tuple((x % p, y % p) for x, y in points)
        if key not in deltas:
            columns = []
            for x, y in key:
                columns.append([dx(x, y) for dx, _ in basis.gradients])
                columns.append([dy(x, y) for _, dy in basis.gradients])
            rows = [[col[i] for col in columns[:basis.N]]
                    for i in range(basis.N)]
            deltas[key] = integer_determinant(rows) % p
        return deltas[key]

    count = 0

    for head in itertools.product(grid, repeat=M - 1):
        partial = [sum(sigma[j] * values[x][i] for j, x in enumerate(head))
                   for i in range(basis.N)]
        need = residue([t - v for t, v in zip(target, partial)])
        for point in last.get(need, ()):
            if delta_mod_p(head + (point, )):
                count += 1

    bound = math.prod(basis.degrees) * p ** (2 * M * k - basis.K)

    return BoundedCount(count, bound, p=p, sigma=list(sigma),
                        m=list(target), xi=list(xi))


def is_diagonal(points):
    """Return True iff all points lie on one affine line."""

    distinct = list(dict.fromkeys(tuple(p) for p in points))

    if not distinct:
        raise ValueError("Empty tuple")

    if len(distinct) <= 2:
        return True

    (x0, y0), (x1, y1) = distinct[0], distinct[1]
    dx, dy = x1 - x0, y1 - y0

    return all(dx * (y - y0) - dy * (x - x0) == 0 for x, y in distinct[2:])


def nondiagonal_solutions(basis, c, A, limit=10, budget=None):
    """Return (count, witnesses) of non-diagonal solutions in A^s."""

    c = c if isinstance(c, CoefficientTuple) else CoefficientTuple(c)
    budget = get_budget(budget)

    points = list(A)
    values = {point: basis.evaluate(point) for point in points}

    budget.charge("|A|^(s-1)", len(points) ** (len(c) - 1))

    last = {}

    for point in points:
        last.setdefault(tuple(c.c[-1] * v for v in values[point]),
                        []).append(point)

    count = 0
    witnesses = []

    for head in itertools.product(points, repeat=len(c) - 1):
        need = tuple(-sum(cj * values[x][i] for cj, x in zip(c, head))
                     for i in range(basis.N))
        for point in last.get(need, ()):
            tup = head + (point, )
            if not is_diagonal(tup):
                count += 1
                if len(witnesses) < limit:
                    witnesses.append(tup)

    return count, witnesses


def admissible_exponent(basis, s):
    """Return Delta_s = K (1 - 1/k)^floor(s/M)."""

    if s < 0:
        raise ValueError("s must be non-negative, got %s" % s)

    return basis.K * Fraction(basis.k - 1, basis.k) ** (s // basis.M)


def alternative_exponents(basis, s):
    """Return the companion exponents and the variable threshold."""

    k, N, K = basis.k, basis.N, basis.K
    step = math.ceil((N - 1) / 2)

    reduced = None

    if k >= 2 and step:
        reduced = (K - k) * Fraction(k - 2, k - 1) ** (s // step)

    return {
        "admissible": admissible_exponent(basis, s),
        "exponential": K * math.exp(-(2 * s // (N + 1)) / k),
        "reduced": reduced,
        "threshold": k * N * (math.log(K) + math.log(math.log(K)) + 26)
    }


def diagonal_bound(A, s):
    """Return |A| + sum over lines L with |L & A| >= 2 of |L & A|^s."""

    points = list(A)
    lines = {}

    for (x0, y0), (x1, y1) in itertools.combinations(points, 2):

        dx, dy = x1 - x0, y1 - y0
        g = math.gcd(dx, dy)
        dx, dy = dx // g, dy // g

        if dx < 0 or (dx == 0 and dy < 0):
            dx, dy = -dx, -dy

        line = (dx, dy, dy * x0 - dx * y0)
        lines.setdefault(line, set()).update([(x0, y0), (x1, y1)])

    return len(points) + sum(len(on) ** s for on in lines.values())


def mean_value_diagnostics(basis, s, X_list, budget=None):
    """Return growth rows of J_{s,Phi}(X) against the exponent envelopes."""

    budget = get_budget(budget)
    delta_s = admissible_exponent(basis, s)
    rows = []

    for X in X_list:

        r_s = convolve_power(form_distribution(basis, X, budget=budget), s,
                             budget)

        J = sum(count * count for count in r_s.table.values())
        lower = Fraction(r_s.mass ** 2, r_s.support)

        rows.append({
            "X": X,
            "J": J,
            "exponent": math.log(J) / math.log(X) if X > 1 else None,
            "lower_exponent": 4 * s - basis.K,
            "upper_exponent": float(4 * s - basis.K + delta_s),
            "cauchy_schwarz": float(lower)
        })

        LOG.debug("J_%u(%u) = %u", s, X, J)

    return rows
