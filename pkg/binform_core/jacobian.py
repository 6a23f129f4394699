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

"""Jacobian determinants and singular tuples."""

import itertools
import logging
import math
import random

import sympy

from binform_core.budget import get_budget
from binform_core.errors import WrongPointCount
from binform_core.errors import ZeroPolynomial
from binform_core.linalg import integer_determinant

LEX_PROBES = 4096
RANDOM_PROBES = 256

LOG = logging.getLogger(__name__)


class JacobianEvaluation:
    """Jac(x_1..x_M) and its leading N x N minor."""

    def __init__(self, points, matrix, delta):

        self.points = tuple(tuple(p) for p in points)
        self.matrix = tuple(tuple(row) for row in matrix)
        self.delta = delta

    def to_dict(self):
        """Return JSON representation."""

        return {
            "points": [list(p) for p in self.points],
            "matrix": [list(row) for row in self.matrix],
            "delta": self.delta
        }


def _gradient_columns(basis, point):
    """Return the two columns (F_i^{1,0}(x), F_i^{0,1}(x)) of one point."""

    x, y = point

    return ([dx(x, y) for dx, _ in basis.gradients],
            [dy(x, y) for _, dy in basis.gradients])


def _delta(basis, columns):
    """Return the determinant of the first N of the given columns."""

    size = basis.N
    rows = [[column[i] for column in columns[:size]] for i in range(size)]

    return integer_determinant(rows)


def jacobian_matrix(basis, points):
    """Return the N x 2M Jacobian at M points with its determinant.

    Column 2j holds the x-derivatives at the j-th point and column 2j + 1 the
    y-derivatives (0-based). When N is odd only the x column of the last point
    enters the determinant.
    """

    if len(points) != basis.M:
        raise WrongPointCount("Jacobian needs %u points, got %u" %
                              (basis.M, len(points)))

    columns = []

    for point in points:
        columns.extend(_gradient_columns(basis, point))

    matrix = [[column[i] for column in columns] for i in range(basis.N)]

    return JacobianEvaluation(points, matrix, _delta(basis, columns))


def is_delta_nonzero(basis, budget=None):
    """Return (True, witness) if Delta is not identically zero.

    The grid {0..2(K-N)+1}^(2M) exceeds the degree of Delta in every variable,
    so an exhaustive sweep that finds no non-zero value proves Delta = 0.
    Tuples with a repeated point are skipped: Delta vanishes on them.
    """

    budget = get_budget(budget)

    side = 2 * (basis.K - basis.N) + 2
    grid = list(itertools.product(range(side), repeat=2))
    columns = {point: _gradient_columns(basis, point) for point in grid}

    def probe(points):
        cols = []
        for point in points:
            cols.extend(columns[point])
        return _delta(basis, cols) != 0

    tuples = itertools.permutations(grid, basis.M)

    for points in itertools.islice(tuples, LEX_PROBES):
        if probe(points):
            return True, points

    rng = random.Random(0)

    for _ in range(RANDOM_PROBES):
        points = tuple(rng.sample(grid, basis.M))
        if probe(points):
            return True, points

    remaining = math.perm(len(grid), basis.M) - LEX_PROBES

    if remaining > 0:

        budget.charge("delta sweep", remaining)

        LOG.debug("Full Delta sweep over %u tuples", remaining)

        for points in tuples:
            if probe(points):
                return True, points

    return False, None


def delta_polynomial(basis):
    """Return Delta as a sympy Poly in x_1, y_1, ..., x_M, y_M."""

    gens = sympy.symbols("x1:%u y1:%u" % (basis.M + 1, basis.M + 1))
    xs, ys = gens[:basis.M], gens[basis.M:]
    ordered = [g for pair in zip(xs, ys) for g in pair]

    columns = []

    for x, y in zip(xs, ys):
        columns.append([dx.to_sympy(x, y) for dx, _ in basis.gradients])
        columns.append([dy.to_sympy(x, y) for _, dy in basis.gradients])

    matrix = sympy.Matrix(columns[:basis.N]).T
    delta = sympy.expand(matrix.det(method="berkowitz"))

    return sympy.Poly(delta, *ordered)


def count_polynomial_zeros(poly, values, budget=None):
    """Return (zeros of poly on values^m, (a_1 + ... + a_m)|A|^(m-1))."""

    if poly.is_zero:
        raise ZeroPolynomial("Zero count of the zero polynomial")

    budget = get_budget(budget)

    values = list(values)
    gens = poly.gens
    size = len(values) ** len(gens)

    budget.charge("polynomial zeros", size)

    evaluate = sympy.lambdify(gens, poly.as_expr(), modules="math")

    zeros = sum(1 for args in itertools.product(values, repeat=len(gens))
                if evaluate(*args) == 0)

    bound = sum(poly.degree(gen) for gen in gens) * \
        len(values) ** (len(gens) - 1)

    return zeros, bound


def is_singular_tuple(basis, points):
    """Return True iff Delta vanishes on every M points drawn from points.

    Maps h that repeat an index give a repeated column, so only injective
    maps are tested; with fewer than M points the tuple is singular.
    """

    columns = [_gradient_columns(basis, point) for point in points]

    for h in itertools.permutations(range(len(points)), basis.M):
        cols = []
        for index in h:
            cols.extend(columns[index])
        if _delta(basis, cols) != 0:
            return False

    return True


class SingularCensus:
    """|S_t(X)| with its bound M t^M (2k)^t X^(t+M-1)."""

    def __init__(self, t, X, count, bound):

        self.t = t
        self.X = X
        self.count = count
        self.bound = bound

    @property
    def ratio(self):
        """Return count / bound."""

        return self.count / self.bound

    def to_dict(self):
        """Return JSON representation."""

        return {"t": self.t, "X": self.X, "count": self.count,
                "bound": self.bound, "ratio": self.ratio}


def count_singular_tuples(basis, t, X, budget=None):
    """Return the exact size of S_t(X) by exhaustion."""

    if t < 1 or X < 1:
        raise ValueError("t and X must be positive")

    budget = get_budget(budget)

    points = list(itertools.product(range(1, X + 1), repeat=2))
    budget.charge("X^(2t)", len(points) ** t)

    columns = [_gradient_columns(basis, point) for point in points]
    nonsingular = set()

    for h in itertools.permutations(range(len(points)), basis.M):
        cols = []
        for index in h:
            cols.extend(columns[index])
        if _delta(basis, cols) != 0:
            nonsingular.add(h)

    count = 0

    for tup in itertools.product(range(len(points)), repeat=t):
        if not any(h in nonsingular
                   for h in itertools.permutations(tup, basis.M)):
            count += 1

    M, k = basis.M, basis.k
    bound = M * t ** M * (2 * k) ** t * X ** (t + M - 1)

    LOG.debug("S_%u(%u) = %u (bound %u)", t, X, count, bound)

    return SingularCensus(t, X, count, bound)
