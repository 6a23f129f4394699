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

"""Base-class for unit Tests."""

import cmath
import unittest

from binform_core.forms import derivative_basis
from binform_core.forms import parse_form


class BaseTest(unittest.TestCase):
    """Base-class for unit Tests."""

    def basis(self, text):
        """Return the derivative basis of a form given as text."""

        return derivative_basis(parse_form(text))

    def assertClose(self, first, second, rel=1e-9, abs_tol=1e-12,
                    msg=None):
        """Fail unless first and second agree to the given tolerances."""

        if not cmath.isclose(first, second, rel_tol=rel, abs_tol=abs_tol):
            self.fail(msg or "%r != %r (rel %g, abs %g)" %
                      (first, second, rel, abs_tol))
