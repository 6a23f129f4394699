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

"""Exceptions."""


class FormSyntaxError(ValueError):
    """Malformed form text."""


class NotHomogeneous(ValueError):
    """Polynomial mixes total degrees."""


class ZeroForm(ValueError):
    """All coefficients are zero."""


class DegreeTooSmall(ValueError):
    """Form degree below what the operation needs."""


class DegenerateForm(ValueError):
    """Form is a multiple of a power of a linear form."""


class BasisTransformRequired(ValueError):
    """No index sets I_1, I_2 exist for the basis, even after reduction."""


class WrongPointCount(ValueError):
    """Jacobian evaluated at the wrong number of points."""


class ZeroPolynomial(ValueError):
    """Zero count requested for the zero polynomial."""


class ModulusMismatch(ValueError):
    """Distributions over different moduli."""


class DimensionMismatch(ValueError):
    """Distributions or vectors of different lengths."""


class MissingShiftStructure(ValueError):
    """Shift structure unavailable for the requested axis."""


class ConfigError(ValueError):
    """Invalid run configuration."""

    def __init__(self, message, section=None, field=None, line=None):

        self.section = section
        self.field = field
        self.line = line

        where = []

        if section:
            where.append("section [%s]" % section)

        if field:
            where.append("field '%s'" % field)

        if line:
            where.append("line %u" % line)

        if where:
            message = "%s: %s" % (", ".join(where), message)

        super().__init__(message)


class TooLarge(ValueError):
    """Enumeration larger than the configured budget."""

    def __init__(self, parameter, required, limit):

        self.parameter = parameter
        self.required = required
        self.limit = limit

        super().__init__("%s requires %s work units, budget is %s" %
                         (parameter, required, limit))


class QuadratureBudgetExceeded(TooLarge):
    """Quadrature did not converge within its panel budget."""


class BudgetExceeded(TooLarge):
    """Sampling budget exceeded."""


class DepthBudgetExceeded(TooLarge):
    """Recursion deeper than allowed."""
