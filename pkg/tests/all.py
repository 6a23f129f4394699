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

"""Full unit test suite."""

import unittest

from .test_census import TestCongruences
from .test_census import TestCounts
from .test_census import TestDiagonal
from .test_census import TestDistributionMap
from .test_census import TestExponents
from .test_circle import TestArcs
from .test_circle import TestDensities
from .test_circle import TestHensel
from .test_circle import TestIntegrals
from .test_circle import TestKernels
from .test_circle import TestSums
from .test_forms import TestCorpus
from .test_forms import TestDegenerate
from .test_forms import TestDerivatives
from .test_forms import TestParse
from .test_forms import TestShiftStructure
from .test_forms import TestTranslation
from .test_increment import TestApproximation
from .test_increment import TestIncrement
from .test_increment import TestPartition
from .test_increment import TestSpacing
from .test_increment import TestSquares
from .test_jacobian import TestJacobian
from .test_jacobian import TestZeros
from .test_lab import TestBatch
from .test_lab import TestLauncher
from .test_lab import TestRunManager

CASES = [
    TestParse, TestDerivatives, TestDegenerate, TestCorpus, TestTranslation,
    TestShiftStructure, TestJacobian, TestZeros, TestDistributionMap,
    TestCounts, TestCongruences, TestDiagonal, TestExponents, TestSums,
    TestIntegrals, TestArcs, TestDensities, TestKernels, TestHensel,
    TestSquares, TestApproximation, TestPartition, TestSpacing,
    TestIncrement, TestRunManager, TestBatch, TestLauncher
]


def full_suite():
    """Full unit test suite."""

    loader = unittest.TestLoader()
    suite = unittest.TestSuite()

    for case in CASES:
        suite.addTests(loader.loadTestsFromTestCase(case))

    return suite


if __name__ == '__main__':
    unittest.TextTestRunner().run(full_suite())
