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

"""Counting experiments."""

import itertools
import math

from binform_core.census import PointSet
from binform_core.census import admissible_exponent
from binform_core.census import alternative_exponents
from binform_core.census import count_B_sigma
from binform_core.census import count_J
from binform_core.census import count_J_prime
from binform_core.census import count_M_mod
from binform_core.census import count_R
from binform_core.census import diagonal_bound
from binform_core.census import nondiagonal_solutions
from binform_core.experiment import Experiment


class CountJ(Experiment):
    """Mean value counts."""

    OPERATION = "count-j"
    HEADER = ["s", "X", "count", "exponent", "lower_exponent",
              "upper_exponent"]

    @property
    def s(self):
        """Return s."""

        return self.params["s"]

    def run(self):
        """Return one record per X."""

        basis = self.basis
        s = self.s
        m = self.params.get("m")
        reduced = bool(self.params.get("reduced"))

        delta_s = admissible_exponent(basis, s)
        lower = 4 * s - (basis.K - basis.k if reduced else basis.K)

        records = []

        for X in self.params["X"]:

            if reduced:
                count = count_J_prime(basis, s, X, m, budget=self.budget)
            else:
                count = count_J(basis, s, X, m,
                                naive=bool(self.params.get("naive")),
                                budget=self.budget)

            exponent = math.log(count) / math.log(X) \
                if X > 1 and count > 0 else None

            records.append({"s": s, "X": X, "count": count,
                            "exponent": exponent,
                            "lower_exponent": lower,
                            "upper_exponent": float(lower + delta_s)})

        return {"records": records,
                "exponents": alternative_exponents(basis, s)}

    def rows(self):
        """One row per X."""

        return [[r[key] for key in self.HEADER]
                for r in self.result["records"]]


class CountR(Experiment):
    """Solutions in a point set."""

    OPERATION = "count-r"
    HEADER = ["size", "count", "nondiagonal", "diagonal_bound"]

    @property
    def points(self):
        """Return the point set A."""

        if self.params.get("points"):
            return PointSet(self.params["points"])

        if self.params.get("X"):
            return PointSet.box(self.params["X"])

        raise ValueError("count-r needs either X or points")

    def run(self):
        """Return counts for A."""

        c = self.coefficients()
        A = self.points

        count = count_R(self.basis, c, A,
                        naive=bool(self.params.get("naive")),
                        budget=self.budget)
        nondiagonal, witnesses = nondiagonal_solutions(
            self.basis, c, A, limit=self.params.get("limit", 10),
            budget=self.budget)

        return {"size": len(A), "count": count, "nondiagonal": nondiagonal,
                "witnesses": witnesses,
                "diagonal_bound": diagonal_bound(A, len(c))}

    def rows(self):
        """A single row."""

        return [[self.result[key] for key in self.HEADER]]


class CountM(Experiment):
    """Solutions modulo q."""

    OPERATION = "count-m"
    HEADER = ["q", "count"]

    def run(self):
        """Return one record per modulus."""

        c = self.coefficients()

        return [{"q": q,
                 "count": count_M_mod(self.basis, c, q,
                                      naive=bool(self.params.get("naive")),
                                      budget=self.budget)}
                for q in self.params["q"]]

    def rows(self):
        """One row per modulus."""

        return [[r["q"], r["count"]] for r in self.result]


class CountB(Experiment):
    """Congruence counts with non-singular Jacobian."""

    OPERATION = "count-b"
    HEADER = ["p", "sigma", "count", "bound", "ratio"]

    def run(self):
        """Return one count per sign vector."""

        sigmas = [self.params["sigma"]] if self.params.get("sigma") else \
            list(itertools.product((1, -1), repeat=self.basis.M))

        return [count_B_sigma(self.basis, self.params["p"], sigma,
                              self.params.get("m"),
                              self.params.get("xi") or (0, 0),
                              budget=self.budget)
                for sigma in sigmas]

    def rows(self):
        """One row per sign vector."""

        return [[r.inputs["p"], ",".join("%d" % v for v in r.inputs["sigma"]),
                 r.count, r.bound, r.ratio] for r in self.result]


OPERATIONS = {
    "count-j": CountJ,
    "count-r": CountR,
    "count-m": CountM,
    "count-b": CountB
}


def launch(operation, **params):
    """ Initialize the experiment. """

    return OPERATIONS[operation](**params)
