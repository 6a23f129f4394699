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

"""A generic experiment."""

import json
import logging
import time

from fractions import Fraction

import numpy as np

from empower_core.serialize import serialize

from binform_core.budget import Budget
from binform_core.budget import DEFAULT_BUDGET
from binform_core.census import CoefficientTuple
from binform_core.forms import BinaryForm
from binform_core.forms import derivative_basis
from binform_core.forms import parse_form


def parse_ints(text):
    """Parse '1,-1,2' into a tuple of ints."""

    if isinstance(text, (list, tuple)):
        return tuple(int(v) for v in text)

    return tuple(int(v) for v in str(text).split(",") if v.strip())


def parse_rationals(text):
    """Parse '1/2, 0.25' into a tuple of Fractions."""

    if isinstance(text, (list, tuple)):
        return tuple(Fraction(v) for v in text)

    return tuple(Fraction(v.strip()) for v in str(text).split(",")
                 if v.strip())


def parse_points(text):
    """Parse '1,2; 3,4' into a tuple of integer pairs."""

    if isinstance(text, (list, tuple)):
        return tuple(tuple(int(v) for v in p) for p in text)

    points = []

    for chunk in str(text).split(";"):

        if not chunk.strip():
            continue

        pair = parse_ints(chunk)

        if len(pair) != 2:
            raise ValueError("Point '%s' is not a pair" % chunk.strip())

        points.append(pair)

    return tuple(points)


PARSERS = {
    "int": int,
    "float": float,
    "str": str,
    "choice": str,
    "form": lambda v: v if isinstance(v, BinaryForm) else parse_form(v),
    "ints": parse_ints,
    "rationals": parse_rationals,
    "points": parse_points
}


class ReportEncoder(json.JSONEncoder):
    """JSON encoder for the exact and numpy leaves of a report."""

    def default(self, o):

        if hasattr(o, "to_dict"):
            return o.to_dict()

        if isinstance(o, Fraction):
            return str(o) if o.denominator != 1 else o.numerator

        if isinstance(o, complex):
            return [o.real, o.imag]

        if isinstance(o, np.generic):
            return o.item()

        if isinstance(o, np.ndarray):
            return o.tolist()

        if isinstance(o, (set, frozenset)):
            return sorted(o)

        return super().default(o)


class Experiment:
    """A runnable operation over one binary form."""

    OPERATION = None
    HEADER = []

    def __init__(self, form=None, budget=DEFAULT_BUDGET, seed=0, **kwargs):

        self.params = {}
        self.log = logging.getLogger("%s.%s" % (self.__class__.__module__,
                                                self.__class__.__name__))

        self._basis = None
        self.result = None
        self.wall_time = None

        self.form = form
        self.budget = budget
        self.seed = seed

        for key, value in kwargs.items():
            self.params[key] = value

    @property
    def form(self):
        """Return form."""

        return self.params["form"]

    @form.setter
    def form(self, value):
        """Set form."""

        if value is not None and not isinstance(value, BinaryForm):
            value = parse_form(value)

        self.params["form"] = value
        self._basis = None

    @property
    def basis(self):
        """Return the derivative basis of the form."""

        if self._basis is None:
            self._basis = derivative_basis(self.form)

        return self._basis

    @property
    def budget(self):
        """Return budget."""

        return self.params["budget"]

    @budget.setter
    def budget(self, value):
        """Set budget."""

        if not isinstance(value, Budget):
            value = Budget(int(value))

        self.params["budget"] = value

    @property
    def seed(self):
        """Return seed."""

        return self.params["seed"]

    @seed.setter
    def seed(self, value):
        """Set seed."""

        self.params["seed"] = int(value)

    def coefficients(self, key="c"):
        """Return params[key] as a CoefficientTuple."""

        return CoefficientTuple(self.params[key])

    def run(self):
        """Compute and return the result."""

        raise NotImplementedError()

    def rows(self):
        """Return CSV rows for the result."""

        return []

    def execute(self):
        """Run, timing the call."""

        self.log.info("Running %s on %s", self.OPERATION, self.form or "-")

        start = time.perf_counter()
        self.result = self.run()
        self.wall_time = time.perf_counter() - start

        self.log.info("%s done in %.3fs, budget %u/%u", self.OPERATION,
                      self.wall_time, self.budget.used, self.budget.limit)

        return self.result

    def to_dict(self):
        """Return JSON representation."""

        config = {key: value for key, value in self.params.items()
                  if key != "budget"}
        config["form"] = None if self.form is None else str(self.form)

        return {
            "operation": self.OPERATION,
            "config": serialize(config),
            "budget": self.budget.to_dict(),
            "wall_time": self.wall_time,
            "result": serialize(self.result)
        }
