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

"""Density increment tests."""

import itertools
import random
import unittest

from fractions import Fraction

from binform_core.census import nondiagonal_solutions
from binform_core.errors import DepthBudgetExceeded
from binform_core.errors import MissingShiftStructure
from binform_core.forms import shift_structure
from binform_core.increment import LatticeSquare
from binform_core.increment import check_partition
from binform_core.increment import greedy_diagonal_free_set
from binform_core.increment import increment_search
from binform_core.increment import level_set_partition
from binform_core.increment import phase_diameter
from binform_core.increment import simultaneous_approx
from binform_core.increment import well_spaced_set
from binform_core.linalg import distance_to_integer

from .common import BaseTest


class TestSquares(BaseTest):
    """Half-open squares."""

    def test_points(self):
        """[Q] in lexicographic order."""

        square = LatticeSquare((0, 0), 3)

        self.assertEqual(square.points(),
                         list(itertools.product(range(1, 4), repeat=2)))
        self.assertEqual(len(square), 9)

    def test_fractional_anchor(self):
        """Half-open at the anchor, closed at the far side."""

        square = LatticeSquare((Fraction(1, 2), 0), 2)

        self.assertEqual(square.points(), [(1, 1), (1, 2), (2, 1), (2, 2)])

    def test_positive_side(self):
        """Empty squares are rejected."""

        with self.assertRaises(ValueError):
            LatticeSquare((0, 0), 0)


class TestApproximation(BaseTest):
    """Diophantine helpers."""

    def test_simultaneous_approx(self):
        """Exact denominators are found."""

        q, errors = simultaneous_approx([Fraction(1, 3), Fraction(2, 3)], 1,
                                        5)

        self.assertEqual(q, 3)
        self.assertEqual(errors, (0, 0))

    def test_phase_diameter(self):
        """Diameters are measured on the circle."""

        self.assertEqual(phase_diameter([Fraction(0), Fraction(1, 2)]),
                         Fraction(1, 2))
        self.assertEqual(phase_diameter([Fraction(1, 10), Fraction(9, 10)]),
                         Fraction(1, 5))
        self.assertEqual(phase_diameter([Fraction(3, 7)]), 0)


class TestPartition(BaseTest):
    """Level-set partitions."""

    def test_exact(self):
        """Cells partition [Q] exactly."""

        rng = random.Random(23)

        for text in ("x*y", "x^2+y^2"):

            basis = self.basis(text)

            for _ in range(5):

                alpha = [Fraction(rng.randint(0, 6), rng.randint(1, 7))
                         for _ in range(basis.N)]
                square = LatticeSquare((rng.randint(-3, 3),
                                        rng.randint(-3, 3)),
                                       rng.randint(4, 24))
                exponent = rng.choice((None, 0.5))

                partition = level_set_partition(basis, alpha, square,
                                                exponent=exponent)

                self.assertTrue(check_partition(partition.cells, square))
                self.assertGreaterEqual(len(partition.depth_diameters), 1)

    def test_rational_zero_diameter(self):
        """A denominator dividing q leaves constant phases on every cell."""

        basis = self.basis("x*y")
        square = LatticeSquare((0, 0), 16)
        alpha = (Fraction(1, 2), Fraction(1, 2), 0)

        partition = level_set_partition(basis, alpha, square, exponent=0.5)

        self.assertTrue(check_partition(partition.cells, square))
        self.assertEqual(partition.max_diameter, 0)
        self.assertTrue(all(cell.q == 2 for cell in partition.cells))
        self.assertTrue(all(len(cell) == 16 for cell in partition.cells))

    def test_diameters_shrink(self):
        """Linear phases spread over [0, 1) narrow after one cut."""

        basis = self.basis("x*y")
        square = LatticeSquare((0, 0), 16)

        for alpha in ((0, 0, Fraction(1, 16)),
                      (0, Fraction(1, 32), Fraction(1, 32))):

            partition = level_set_partition(basis, alpha, square,
                                            exponent=0.5)
            diameters = partition.depth_diameters

            self.assertTrue(check_partition(partition.cells, square))
            self.assertEqual(diameters[0], Fraction(1, 2))
            self.assertGreaterEqual(len(diameters), 2)
            self.assertLessEqual(diameters[1], Fraction(1, 4))

    def test_depth_budget(self):
        """Recursion deeper than allowed fails."""

        basis = self.basis("x*y")
        alpha = (Fraction(1, 3), Fraction(1, 5), Fraction(1, 7))

        with self.assertRaises(DepthBudgetExceeded):
            level_set_partition(basis, alpha, LatticeSquare((0, 0), 8),
                                depth_budget=0)

    def test_check_partition(self):
        """Overlaps and gaps are detected."""

        basis = self.basis("x*y")
        square = LatticeSquare((0, 0), 4)
        partition = level_set_partition(basis, (0, 0, 0), square)

        self.assertTrue(check_partition(partition.cells, square))
        self.assertFalse(check_partition(partition.cells * 2, square))
        self.assertFalse(check_partition([], square))


class TestSpacing(BaseTest):
    """Well-spaced sets."""

    def test_certificate(self):
        """|S| D >= X and no two elements are close."""

        basis = self.basis("x*y")
        structure = shift_structure(basis)
        rng = random.Random(29)

        for _ in range(20):

            alpha = [Fraction(rng.randint(0, 999), 1000)
                     for _ in range(basis.N)]
            X = rng.randint(2, 200)
            axis = rng.choice((1, 2))

            spaced = well_spaced_set(basis, structure, alpha, X, axis)

            self.assertTrue(spaced.certified)

            indices = structure.index_sets[axis]

            for y, z in itertools.combinations(spaced.points, 2):
                self.assertFalse(all(
                    distance_to_integer(structure.L * alpha[i] * (z - y)) <=
                    Fraction(X) ** (1 - basis.degrees[i])
                    for i in indices))

    def test_missing_structure(self):
        """A structure is required."""

        with self.assertRaises(MissingShiftStructure):
            well_spaced_set(self.basis("x*y"), None, (0, 0, 0), 10, 1)


class TestIncrement(BaseTest):
    """Increment search and diagonal-free sets."""

    def test_increment_search(self):
        """The densest cell is at least as dense as A."""

        basis = self.basis("x*y")
        square = LatticeSquare((0, 0), 9)
        members = [p for p in square.points() if (p[0] * p[1]) % 3 == 0]

        result = increment_search(basis, (1, 1, -1, -1), members, square,
                                  q_max=2)

        self.assertEqual(result.delta, Fraction(5, 9))
        self.assertGreaterEqual(result.gain, 0)
        self.assertGreaterEqual(result.correlation, 0)
        self.assertGreaterEqual(len(result.cell), 2)
        self.assertFalse(result.degenerate)
        self.assertEqual(len(result.alpha), basis.N)

    def test_increment_gain(self):
        """A missing row leaves a denser cell of several points."""

        basis = self.basis("x*y")
        square = LatticeSquare((0, 0), 9)
        members = [p for p in square.points() if p[0] != 5]

        result = increment_search(basis, (1, -1), members, square, q_max=2)

        self.assertEqual(result.delta, Fraction(8, 9))
        self.assertEqual(result.density, 1)
        self.assertEqual(result.gain, Fraction(1, 9))
        self.assertGreaterEqual(len(result.cell), 2)
        self.assertTrue(all(p[0] != 5 for p in result.cell.points()))

    def test_increment_single_points(self):
        """The sigma_k/(4k) exponent cuts [Q] into single points."""

        basis = self.basis("x*y")
        square = LatticeSquare((0, 0), 9)
        members = [p for p in square.points() if p[0] != 5]

        result = increment_search(basis, (1, -1), members, square, q_max=2,
                                  exponent=None, min_cell=1)

        self.assertTrue(result.degenerate)
        self.assertEqual(result.cells, 81)
        self.assertTrue(result.to_dict()["degenerate"])

        with self.assertRaises(ValueError):
            increment_search(basis, (1, -1), members, square, q_max=2,
                             exponent=None)

    def test_increment_empty_square(self):
        """A square without integer points is rejected."""

        square = LatticeSquare((Fraction(1, 4), 0), Fraction(1, 2))

        with self.assertRaises(ValueError):
            increment_search(self.basis("x*y"), (1, -1), [], square)

    def test_increment_zero_sum(self):
        """Coefficients must sum to zero."""

        square = LatticeSquare((0, 0), 3)

        with self.assertRaises(ValueError):
            increment_search(self.basis("x*y"), (1, 1), square.points()[:2],
                             square)

    def test_greedy_diagonal_free(self):
        """Greedy sets pass the independent non-diagonal check."""

        basis = self.basis("x*y")
        c = (1, 1, -1, -1)

        for X, order in ((6, "row"), (4, "diagonal"), (4, "random")):

            points, certificate = greedy_diagonal_free_set(basis, c, X,
                                                           order=order,
                                                           seed=3)
            count, _ = nondiagonal_solutions(basis, c, points)

            self.assertEqual(certificate, 0)
            self.assertEqual(count, 0)
            self.assertGreater(len(points), 0)

    def test_greedy_regression(self):
        """Row-order greedy set for xy at X = 4."""

        basis = self.basis("x*y")
        c = (1, 1, -1, -1)

        points, certificate = greedy_diagonal_free_set(basis, c, 4)

        expected = {(x, y) for y in (1, 2) for x in range(1, 5)}
        expected |= {(1, 3), (4, 3), (1, 4), (4, 4)}

        self.assertEqual(certificate, 0)
        self.assertEqual(len(points), 12)
        self.assertEqual(set(points), expected)

        for X in (3, 4, 5):
            points, _ = greedy_diagonal_free_set(basis, c, X)
            self.assertGreaterEqual(len(points), X)
            self.assertTrue({(x, 1) for x in range(1, X + 1)} <= set(points))

    def test_greedy_order(self):
        """Unknown orders are rejected."""

        with self.assertRaises(ValueError):
            greedy_diagonal_free_set(self.basis("x*y"), (1, -1), 3,
                                     order="spiral")


if __name__ == '__main__':
    unittest.main()
