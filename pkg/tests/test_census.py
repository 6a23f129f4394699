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

"""Solution count tests."""

import itertools
import random
import unittest

from fractions import Fraction

from binform_core.budget import Budget
from binform_core.census import CoefficientTuple
from binform_core.census import DistributionMap
from binform_core.census import PointSet
from binform_core.census import admissible_exponent
from binform_core.census import alternative_exponents
from binform_core.census import convolve
from binform_core.census import count_B_sigma
from binform_core.census import count_J
from binform_core.census import count_J_prime
from binform_core.census import count_M_mod
from binform_core.census import count_R
from binform_core.census import diagonal_bound
from binform_core.census import form_distribution
from binform_core.census import is_diagonal
from binform_core.census import J_distribution
from binform_core.census import mean_value_diagnostics
from binform_core.census import nondiagonal_solutions
from binform_core.errors import DimensionMismatch
from binform_core.errors import ModulusMismatch
from binform_core.errors import TooLarge

from .common import BaseTest

ORACLE_FORMS = ("x*y", "x^2+y^2", "x^3+y^3")


class TestDistributionMap(BaseTest):
    """Sparse count tables."""

    def test_add_and_mass(self):
        """Counts accumulate, moduli reduce keys."""

        dist = DistributionMap(2, modulus=3)
        dist.add((4, -1))
        dist.add((1, 2), 2)

        self.assertEqual(dist[(1, 2)], 3)
        self.assertEqual(dist.mass, 3)
        self.assertEqual(dist.support, 1)

    def test_convolve(self):
        """Convolution adds keys and multiplies counts."""

        d1 = DistributionMap(1, {(0, ): 1, (1, ): 2})
        d2 = DistributionMap(1, {(1, ): 3})

        result = convolve(d1, d2)

        self.assertEqual(result.items(), [((1, ), 3), ((2, ), 6)])

    def test_mismatch(self):
        """Incompatible tables are rejected."""

        with self.assertRaises(ModulusMismatch):
            convolve(DistributionMap(1, modulus=2),
                     DistributionMap(1, modulus=3))

        with self.assertRaises(DimensionMismatch):
            convolve(DistributionMap(1), DistributionMap(2))

    def test_form_distribution(self):
        """Census of F over [2]^2."""

        dist = form_distribution(self.basis("x*y"), 2)

        self.assertEqual(dist.mass, 4)
        self.assertEqual(dist[(4, 2, 2)], 1)


class TestCounts(BaseTest):
    """J, R and M."""

    def test_count_J_xy(self):
        """J_1(2) for xy counts the diagonal."""

        basis = self.basis("x*y")

        self.assertEqual(count_J(basis, 1, 2), 4)
        self.assertEqual(count_J(basis, 1, 2, naive=True), 4)

    def test_count_M_xy(self):
        """M(2) for xy with c = (1, -1)."""

        self.assertEqual(count_M_mod(self.basis("x*y"), (1, -1), 2), 4)

    def test_count_J_prime(self):
        """Dropping the quadratic equation of xy."""

        basis = self.basis("x*y")

        self.assertEqual(count_J_prime(basis, 1, 2), 4)
        self.assertEqual(count_J_prime(basis, 2, 2), 36)

    def test_oracles(self):
        """Fast counts agree with exhaustive enumeration."""

        rng = random.Random(11)
        instances = 0

        for text in ORACLE_FORMS:

            basis = self.basis(text)

            for _ in range(6):
                s = rng.randint(1, 2)
                X = rng.randint(1, 3)
                m = None if rng.random() < 0.5 else \
                    tuple(rng.randint(-2, 2) for _ in range(basis.N))
                self.assertEqual(count_J(basis, s, X, m),
                                 count_J(basis, s, X, m, naive=True))
                instances += 1

            for _ in range(6):
                c = [rng.choice((-2, -1, 1, 2))
                     for _ in range(rng.randint(1, 3))]
                A = rng.sample(list(itertools.product(range(1, 4),
                                                      repeat=2)),
                               rng.randint(1, 9))
                self.assertEqual(count_R(basis, c, A),
                                 count_R(basis, c, A, naive=True))
                instances += 1

            for _ in range(6):
                c = [rng.choice((-2, -1, 1, 2))
                     for _ in range(rng.randint(1, 3))]
                q = rng.randint(1, 4)
                self.assertEqual(count_M_mod(basis, c, q),
                                 count_M_mod(basis, c, q, naive=True))
                instances += 1

        self.assertGreaterEqual(instances, 50)

    def test_translation_dilation(self):
        """R(lambda A + xi) = R(A) for zero-sum coefficients."""

        rng = random.Random(13)
        square = list(itertools.product(range(1, 5), repeat=2))

        for text in ORACLE_FORMS:

            basis = self.basis(text)

            for c in ((1, -1), (1, 1, -1, -1), (2, -1, -1)):

                A = PointSet(rng.sample(square, 6))
                count = count_R(basis, c, A)

                for scale in (2, -1, 3):
                    shift = (rng.randint(-5, 5), rng.randint(-5, 5))
                    image = A.transform(scale, shift)
                    self.assertEqual(len(image), len(A))
                    self.assertEqual(count_R(basis, c, image), count)

    def test_mass_and_symmetry(self):
        """sum_m J(X; m) = X^(4s) and J(X; m) = J(X; -m)."""

        for text in ORACLE_FORMS:
            basis = self.basis(text)
            for s, X in ((1, 3), (2, 2), (2, 3)):
                dist = J_distribution(basis, s, X)
                self.assertEqual(dist.mass, X ** (4 * s))
                for key, count in dist.items():
                    self.assertEqual(dist[tuple(-v for v in key)], count)

    def test_budget(self):
        """Oversized requests fail before enumerating."""

        with self.assertRaises(TooLarge) as ctx:
            count_J(self.basis("x*y"), 2, 3, naive=True, budget=Budget(100))

        self.assertEqual(ctx.exception.parameter, "X^(4s)")

    def test_coefficients(self):
        """Coefficient tuples are non-empty and non-zero."""

        self.assertTrue(CoefficientTuple((1, -1)).zero_sum)

        with self.assertRaises(ValueError):
            CoefficientTuple((1, 0))

        with self.assertRaises(ValueError):
            CoefficientTuple(())


class TestCongruences(BaseTest):
    """Non-singular congruence counts."""

    def test_bound_value(self):
        """k_1...k_N p^(2Mk - K) for xy at p = 2."""

        result = count_B_sigma(self.basis("x*y"), 2, (1, -1))

        self.assertEqual(result.bound, 32)
        self.assertLessEqual(result.count, result.bound)

    def test_bound(self):
        """|B^sigma_p(m; xi)| respects its bound."""

        basis = self.basis("x*y")
        rng = random.Random(5)

        for p in (2, 3):
            targets = [tuple(rng.randrange(p ** d) for d in basis.degrees)
                       for _ in range(10)]
            for sigma in itertools.product((1, -1), repeat=basis.M):
                for m in targets:
                    for xi in itertools.product((0, 1), repeat=2):
                        result = count_B_sigma(basis, p, sigma, m, xi)
                        self.assertLessEqual(result.count, result.bound)

    def test_sign_vector(self):
        """Sign vectors have M entries in {1, -1}."""

        with self.assertRaises(ValueError):
            count_B_sigma(self.basis("x*y"), 2, (1, 2))


class TestDiagonal(BaseTest):
    """Diagonal tuples and solutions."""

    def test_is_diagonal(self):
        """Collinear tuples are diagonal."""

        self.assertTrue(is_diagonal([(1, 1), (2, 2), (3, 3)]))
        self.assertTrue(is_diagonal([(1, 1), (5, 2)]))
        self.assertTrue(is_diagonal([(1, 1), (1, 1), (1, 4)]))
        self.assertFalse(is_diagonal([(1, 1), (2, 2), (3, 4)]))

    def test_nondiagonal_solutions(self):
        """Parallelograms solve x_1 + x_2 = x_3 + x_4 for xy."""

        basis = self.basis("x*y")
        count, witnesses = nondiagonal_solutions(
            basis, (1, 1, -1, -1), PointSet.box(3), limit=3)

        self.assertGreater(count, 0)
        self.assertEqual(len(witnesses), 3)

        for tup in witnesses:
            self.assertFalse(is_diagonal(tup))
            total = [sum(cj * v for cj, v in
                         zip((1, 1, -1, -1), [basis.evaluate(x)[i]
                                              for x in tup]))
                     for i in range(basis.N)]
            self.assertEqual(total, [0] * basis.N)

    def test_diagonal_bound(self):
        """Three collinear points."""

        self.assertEqual(diagonal_bound([(1, 1), (2, 2), (3, 3)], 2), 12)


class TestExponents(BaseTest):
    """Admissible exponents and diagnostics."""

    def test_admissible_exponent(self):
        """K (1 - 1/k)^floor(s/M) for xy."""

        basis = self.basis("x*y")

        self.assertEqual(admissible_exponent(basis, 2), 2)
        self.assertEqual(admissible_exponent(basis, 4), 1)
        self.assertEqual(admissible_exponent(basis, 1), 4)

    def test_alternative_exponents(self):
        """Companion exponents are positive and decreasing in s."""

        basis = self.basis("x^3+y^3")
        small = alternative_exponents(basis, 3)
        large = alternative_exponents(basis, 12)

        self.assertEqual(set(small), {"admissible", "exponential", "reduced",
                                      "threshold"})
        self.assertGreater(small["admissible"], large["admissible"])
        self.assertGreater(small["exponential"], large["exponential"])
        self.assertGreaterEqual(small["reduced"], large["reduced"])
        self.assertIsInstance(small["admissible"], Fraction)

    def test_mean_value_diagnostics(self):
        """Rows agree with count_J and bound it below."""

        basis = self.basis("x*y")
        rows = mean_value_diagnostics(basis, 1, [2, 3])

        for row in rows:
            self.assertEqual(row["J"], count_J(basis, 1, row["X"]))
            self.assertGreaterEqual(row["J"], row["cauchy_schwarz"])


if __name__ == '__main__':
    unittest.main()
