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

"""Level-set partitions, well-spaced sets and density increments."""

import bisect
import collections
import itertools
import logging
import math
import random

from fractions import Fraction

import numpy as np

from scipy import optimize

from binform_core.budget import get_budget
from binform_core.census import CoefficientTuple
from binform_core.census import PointSet
from binform_core.census import is_diagonal
from binform_core.census import nondiagonal_solutions
from binform_core.errors import DepthBudgetExceeded
from binform_core.errors import DimensionMismatch
from binform_core.errors import MissingShiftStructure
from binform_core.linalg import distance_to_integer

ORDERS = ("row", "diagonal", "random")

DEFAULT_SPACING_CONSTANT = 1
DEFAULT_Q_MAX = 8
DEFAULT_SEARCH_EXPONENT = 0.5
DEFAULT_MIN_CELL = 2

LOG = logging.getLogger(__name__)


class LatticeSquare:
    """Half-open square anchor + (0, side]^2 and its integer points."""

    def __init__(self, anchor, side):

        side = Fraction(side)

        if side <= 0:
            raise ValueError("Side must be positive, got %s" % side)

        self._anchor = (Fraction(anchor[0]), Fraction(anchor[1]))
        self._side = side

    @property
    def anchor(self):
        """Return anchor."""

        return self._anchor

    @property
    def side(self):
        """Return side."""

        return self._side

    def _range(self, start):

        return range(math.floor(start) + 1,
                     math.floor(start + self._side) + 1)

    def points(self):
        """Return the integer points in lexicographic order."""

        return [(x, y) for x in self._range(self._anchor[0])
                for y in self._range(self._anchor[1])]

    def __len__(self):

        return len(self._range(self._anchor[0])) * \
            len(self._range(self._anchor[1]))

    def to_dict(self):
        """Return JSON representation."""

        return {"anchor": [str(v) for v in self._anchor],
                "side": str(self._side)}

    def __repr__(self):

        return "LatticeSquare(%s, %s)" % (self._anchor, self._side)


class PartitionCell:
    """The set r + q [Q] inside a partitioned square."""

    def __init__(self, r, q, square, depth, diameter=None):

        self.r = tuple(r)
        self.q = q
        self.square = square
        self.depth = depth
        self.diameter = diameter

    def points(self):
        """Return the points of the cell."""

        return [(self.r[0] + self.q * x, self.r[1] + self.q * y)
                for x, y in self.square.points()]

    def __len__(self):

        return len(self.square)

    def to_dict(self):
        """Return JSON representation."""

        out = {"r": list(self.r), "q": self.q, "depth": self.depth}
        out.update(self.square.to_dict())
        out["diameter"] = None if self.diameter is None else \
            float(self.diameter)

        return out


class Partition:
    """Cells of a level-set partition with their measured diameters."""

    def __init__(self, square, cells, depth_diameters):

        self.square = square
        self.cells = cells
        self.depth_diameters = depth_diameters

    @property
    def max_diameter(self):
        """Return the largest measured cell diameter."""

        return max((cell.diameter for cell in self.cells), default=0)

    def to_dict(self):
        """Return JSON representation."""

        return {
            "square": self.square.to_dict(),
            "cells": len(self.cells),
            "max_diameter": float(self.max_diameter),
            "depth_diameters": [float(d) for d in self.depth_diameters]
        }


def simultaneous_approx(values, k, Y):
    """Return (q, errors) minimising max ||q^k value|| over 1 <= q <= Y."""

    if Y < 1:
        raise ValueError("Y must be at least 1, got %s" % Y)

    best = None
    q = 1

    while q <= Y:

        errors = tuple(distance_to_integer(q ** k * v) for v in values)
        worst = max(errors, default=0)

        if best is None or worst < best[0]:
            best = (worst, q, errors)

        if worst == 0:
            break

        q += 1

    return best[1], best[2]


def _reduce(poly):
    """Return poly with coefficients mod 1 and zero terms removed."""

    out = {}

    for monomial, coeff in poly.items():
        coeff = coeff - math.floor(coeff)
        if coeff:
            out[monomial] = coeff

    return out


def _degree(poly):

    return max((i + j for i, j in poly), default=-1)


def _compose(poly, b, q):
    """Return the polynomial x -> poly(b + q x)."""

    out = collections.defaultdict(Fraction)

    for (i, j), coeff in poly.items():
        for u in range(i + 1):
            cu = coeff * math.comb(i, u) * b[0] ** (i - u) * q ** u
            for v in range(j + 1):
                out[(u, v)] += cu * math.comb(j, v) * b[1] ** (j - v) * \
                    q ** v

    return _reduce(out)


def _phase(poly, point):

    x, y = point

    return sum((coeff * x ** i * y ** j for (i, j), coeff in poly.items()),
               Fraction(0))


def phase_diameter(phases):
    """Return max ||a - b|| over pairs of the given phases."""

    fracs = sorted(set(p - math.floor(p) for p in phases))

    if len(fracs) < 2:
        return Fraction(0)

    best = Fraction(0)

    for value in fracs:

        target = value + Fraction(1, 2)
        target -= math.floor(target)
        index = bisect.bisect_left(fracs, target)

        for other in (fracs[index % len(fracs)], fracs[index - 1]):
            best = max(best, distance_to_integer(value - other))

    return best


def _polynomial(basis, alpha):
    """Return alpha . F as {(i, j): coeff} for the monomial x^i y^j."""

    poly = collections.defaultdict(Fraction)

    for coeff, form in zip(alpha, basis.forms):
        d = form.degree
        for l, a in enumerate(form.coeffs):
            if a:
                poly[(d - l, l)] += coeff * a

    return _reduce(poly)


def level_set_partition(basis, alpha, square, depth_budget=None,
                        exponent=None, budget=None):
    """Partition [Q] into cells r + q [Q_i] on which alpha . F varies little.

    Follows the inductive construction: approximate the top-degree part of
    the phase, split by residue classes mod q, cut into t^2 sub-squares and
    recurse on the lower-degree remainder. exponent overrides sigma_k/(4k)
    in t = ceil(X^(1 - exponent) / q).
    """

    if len(alpha) != basis.N:
        raise DimensionMismatch("Frequency has %u entries, basis has %u" %
                                (len(alpha), basis.N))

    budget = get_budget(budget)
    budget.charge("|[Q]|", len(square))

    alpha = [Fraction(a) for a in alpha]
    phase = _polynomial(basis, alpha)
    depth_budget = basis.k + 1 if depth_budget is None else depth_budget

    values = {}
    depth_diameters = []

    def measure(points):
        for point in points:
            if point not in values:
                values[point] = _phase(phase, point)
        return phase_diameter(values[p] for p in points)

    def record(depth, points):
        diameter = measure(points)
        while len(depth_diameters) <= depth:
            depth_diameters.append(Fraction(0))
        depth_diameters[depth] = max(depth_diameters[depth], diameter)

    def split(poly, inner, depth, origin, scale):

        if depth > depth_budget:
            raise DepthBudgetExceeded("depth", depth, depth_budget)

        k = _degree(poly)

        if k <= 0 or len(inner) <= 1:
            return [((0, 0), 1, inner, depth)]

        top = [coeff for (i, j), coeff in poly.items() if i + j == k]
        side = inner.side

        q, _ = simultaneous_approx(top, k, math.isqrt(math.floor(side)) or 1)

        if exponent is None:
            spread = float(Fraction(1, 6 * k * 2 ** k) / (4 * k))
        else:
            spread = float(exponent)

        t = max(1, math.ceil(float(side) ** (1 - spread) / q))
        sub_side = side / (q * t)

        LOG.debug("Depth %u: degree %u, q=%u, t=%u", depth, k, q, t)

        pieces = []

        for r in itertools.product(range(1, q + 1), repeat=2):

            anchor = ((inner.anchor[0] - r[0]) / q,
                      (inner.anchor[1] - r[1]) / q)

            for i, j in itertools.product(range(t), repeat=2):

                sub = LatticeSquare((anchor[0] + i * sub_side,
                                     anchor[1] + j * sub_side), sub_side)
                points = sub.points()

                if not points:
                    continue

                a = points[0]
                shifted = LatticeSquare((sub.anchor[0] - a[0],
                                         sub.anchor[1] - a[1]), sub_side)
                b = (r[0] + q * a[0], r[1] + q * a[1])

                child_origin = (origin[0] + scale * b[0],
                                origin[1] + scale * b[1])
                child_scale = scale * q

                record(depth + 1,
                       [(child_origin[0] + child_scale * x,
                         child_origin[1] + child_scale * y)
                        for x, y in shifted.points()])

                composed = _compose(poly, b, q)
                remainder = {m: c for m, c in composed.items()
                             if sum(m) < k}

                for s, qi, cell, level in split(remainder, shifted,
                                                depth + 1,
                                                child_origin, child_scale):
                    pieces.append(((b[0] + q * s[0], b[1] + q * s[1]),
                                   q * qi, cell, level))

        return pieces

    record(0, square.points())

    cells = []

    for r, q, inner, level in split(phase, square, 0, (0, 0), 1):
        cell = PartitionCell(r, q, inner, depth=level)
        cell.diameter = measure(cell.points())
        cells.append(cell)

    return Partition(square, cells, depth_diameters)


def check_partition(cells, square):
    """Return True iff the cells cover [Q] exactly once."""

    covered = collections.Counter()

    for cell in cells:
        covered.update(cell.points())

    return covered == collections.Counter(square.points())


class SpacedSet:
    """An independent set of the closeness graph on [X]."""

    def __init__(self, points, D, X):

        self.points = tuple(points)
        self.D = D
        self.X = X

    @property
    def certified(self):
        """Return True iff |S| D >= X."""

        return len(self.points) * self.D >= self.X

    def to_dict(self):
        """Return JSON representation."""

        return {"X": self.X, "D": self.D, "size": len(self.points),
                "points": list(self.points), "certified": self.certified}


def well_spaced_set(basis, structure, alpha, X, axis,
                    constant=DEFAULT_SPACING_CONSTANT):
    """Return a greedy independent set of the closeness graph on [X].

    y ~ z iff ||L alpha_i (y - z)|| <= C X^(1 - k_i) for every i in I_axis.
    """

    if structure is None or axis not in structure.index_sets:
        raise MissingShiftStructure("No shift structure for axis %s" % axis)

    if len(alpha) != basis.N:
        raise DimensionMismatch("Frequency has %u entries, basis has %u" %
                                (len(alpha), basis.N))

    alpha = [Fraction(a) for a in alpha]
    constant = Fraction(constant)
    L = structure.L
    indices = structure.index_sets[axis]

    thresholds = {i: constant * Fraction(X) ** (1 - basis.degrees[i])
                  for i in indices}

    close = [False] * X

    for d in range(1, X):
        close[d] = all(distance_to_integer(L * alpha[i] * d) <= thresholds[i]
                       for i in indices)

    prefix = [0] * (X + 1)

    for d in range(1, X):
        prefix[d + 1] = prefix[d] + int(close[d])

    # prefix[n] counts close differences in 1..n-1
    degree = max(prefix[y] + prefix[X - y + 1] for y in range(1, X + 1))

    chosen = []

    for y in range(1, X + 1):
        if not any(close[y - z] for z in chosen):
            chosen.append(y)

    return SpacedSet(chosen, 1 + degree, X)


class IncrementResult:
    """Best frequency, partition cell and density gain of a search."""

    def __init__(self, alpha, correlation, delta, cell, density, cells):

        self.alpha = tuple(alpha)
        self.correlation = correlation
        self.delta = delta
        self.cell = cell
        self.density = density
        self.cells = cells

    @property
    def gain(self):
        """Return density - delta."""

        return self.density - self.delta

    @property
    def degenerate(self):
        """Return True if the best cell is a single point."""

        return len(self.cell) <= 1

    def to_dict(self):
        """Return JSON representation."""

        return {
            "alpha": [float(a) for a in self.alpha],
            "correlation": self.correlation,
            "delta": float(self.delta),
            "density": float(self.density),
            "gain": float(self.gain),
            "cells": self.cells,
            "size": len(self.cell),
            "degenerate": self.degenerate,
            "cell": self.cell.to_dict()
        }


def _frequency_grid(N, q_max):
    """Return the distinct vectors a/q, q <= q_max, a in [q]^N."""

    seen = set()

    for q in range(1, q_max + 1):
        for a in itertools.product(range(q), repeat=N):
            vector = tuple(Fraction(v, q) for v in a)
            if vector not in seen:
                seen.add(vector)
                yield vector


def increment_search(basis, c, A, square, q_max=DEFAULT_Q_MAX, refine=True,
                     exponent=DEFAULT_SEARCH_EXPONENT,
                     min_cell=DEFAULT_MIN_CELL, budget=None):
    """Return the densest partition cell at the best balanced frequency.

    Cells have side about X^exponent; exponent=None uses sigma_k/(4k), whose
    cells are single points at desk scale. Cells smaller than min_cell are
    skipped.
    """

    c = c if isinstance(c, CoefficientTuple) else CoefficientTuple(c)

    if not c.zero_sum:
        raise ValueError("Increment search needs a zero-sum tuple")

    budget = get_budget(budget)

    domain = square.points()
    members = set(tuple(p) for p in A)

    if not domain:
        raise ValueError("Square %s has no integer points" % (square, ))

    if not members <= set(domain):
        raise ValueError("A must lie inside [Q]")

    delta = Fraction(len(members), len(domain))

    grid_size = sum(q ** basis.N for q in range(1, q_max + 1))
    budget.charge("frequency grid", grid_size * len(domain))

    values = np.array([basis.evaluate(p) for p in domain], dtype=float).T
    weights = np.array([float((p in members) - delta) for p in domain])

    def correlation(vector):
        phases = np.asarray(vector, dtype=float) @ values
        return float(abs(np.dot(weights, np.exp(2j * np.pi * phases))))

    best_alpha, best_value = None, -1.0

    for vector in _frequency_grid(basis.N, q_max):
        value = correlation(vector)
        if value > best_value + 1e-12:
            best_alpha, best_value = list(vector), value

    if refine:

        width = 1.0 / (2 * q_max ** 2)

        for i in range(basis.N):

            def objective(t, i=i):
                trial = list(best_alpha)
                trial[i] = t
                return -correlation(trial)

            centre = float(best_alpha[i])
            result = optimize.minimize_scalar(
                objective, bounds=(centre - width, centre + width),
                method="bounded")

            if -result.fun > best_value + 1e-9:
                best_alpha[i] = Fraction(float(result.x))
                best_value = -result.fun

    partition = level_set_partition(basis, best_alpha, square,
                                    exponent=exponent, budget=budget)

    best_cell, best_density = None, Fraction(-1)

    for cell in partition.cells:

        if len(cell) < min_cell:
            continue

        density = Fraction(sum(1 for p in cell.points() if p in members),
                           len(cell))

        if density > best_density:
            best_cell, best_density = cell, density

    if best_cell is None:
        raise ValueError("No partition cell has at least %u points" %
                         min_cell)

    if len(best_cell) <= 1:
        LOG.warning("Increment search: best cell is a single point")

    LOG.info("Increment search: delta=%s density=%s over %u cells", delta,
             best_density, len(partition.cells))

    return IncrementResult(best_alpha, best_value, delta, best_cell,
                           best_density, len(partition.cells))


def _scan_order(X, order, seed):

    points = [(x, y) for y in range(1, X + 1) for x in range(1, X + 1)]

    if order == "row":
        return points

    if order == "diagonal":
        return sorted(points, key=lambda p: (p[0] + p[1], p[0]))

    if order == "random":
        random.Random(seed).shuffle(points)
        return points

    raise ValueError("Unknown order '%s', expected one of %s" %
                     (order, ", ".join(ORDERS)))


def _creates_nondiagonal(basis, c, chosen, values, point):
    """Return True iff some non-diagonal solution uses point."""

    s = len(c)
    pool = chosen + [point]

    for j in range(s):

        free = [i for i in range(s) if i != j]
        resolved = free[-1]

        lookup = {}
        for x in pool:
            key = tuple(c.c[resolved] * v for v in values[x])
            lookup.setdefault(key, []).append(x)

        fixed = [c.c[j] * v for v in values[point]]

        for others in itertools.product(pool, repeat=s - 2):

            need = tuple(-(fixed[i] + sum(c.c[l] * values[x][i]
                                          for l, x in zip(free, others)))
                         for i in range(basis.N))

            for x in lookup.get(need, ()):
                tup = [None] * s
                tup[j] = point
                for l, y in zip(free, others):
                    tup[l] = y
                tup[resolved] = x
                if not is_diagonal(tup):
                    return True

    return False


def greedy_diagonal_free_set(basis, c, X, order="row", seed=0, budget=None):
    """Return (A, certificate) for a greedily built diagonal-only set.

    The certificate is the independent count of non-diagonal solutions in
    A^s, zero by construction.
    """

    c = c if isinstance(c, CoefficientTuple) else CoefficientTuple(c)
    budget = get_budget(budget)

    chosen = []
    values = {}

    for point in _scan_order(X, order, seed):

        values[point] = basis.evaluate(point)

        if len(c) >= 2:
            budget.charge("|A|^(s-2)",
                          len(c) * (len(chosen) + 1) ** (len(c) - 2))
            if _creates_nondiagonal(basis, c, chosen, values, point):
                continue

        chosen.append(point)

    points = PointSet(chosen)
    certificate, _ = nondiagonal_solutions(basis, c, points, limit=0,
                                           budget=budget)

    LOG.info("Greedy %s order: %u points, certificate %u", order,
             len(points), certificate)

    return points, certificate
