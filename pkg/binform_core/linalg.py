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

"""Exact integer helpers used in the inner loops."""

import math

from fractions import Fraction


def integer_determinant(matrix):
    """Return the determinant of a square integer matrix.

    Fraction-free Bareiss elimination; every intermediate value is an exact
    integer.
    """

    size = len(matrix)

    if size == 0:
        return 1

    rows = [list(row) for row in matrix]
    sign = 1
    previous = 1

    for pivot in range(size - 1):

        if rows[pivot][pivot] == 0:

            for swap in range(pivot + 1, size):
                if rows[swap][pivot] != 0:
                    rows[pivot], rows[swap] = rows[swap], rows[pivot]
                    sign = -sign
                    break
            else:
                return 0

        head = rows[pivot][pivot]

        for i in range(pivot + 1, size):
            row = rows[i]
            lead = row[pivot]
            for j in range(pivot + 1, size):
                row[j] = (head * row[j] - lead * rows[pivot][j]) // previous

        previous = head

    return sign * rows[-1][-1]


def valuation(value, prime):
    """Return the p-adic valuation of a non-zero integer."""

    if value == 0:
        raise ValueError("Valuation of zero is infinite")

    value = abs(value)
    count = 0

    while value % prime == 0:
        value //= prime
        count += 1

    return count


def denominator_lcm(values):
    """Return the least common multiple of the denominators."""

    result = 1

    for value in values:
        result = math.lcm(result, Fraction(value).denominator)

    return result


def distance_to_integer(value):
    """Return ||value||, the distance to the nearest integer."""

    frac = value - math.floor(value)

    return min(frac, 1 - frac)
