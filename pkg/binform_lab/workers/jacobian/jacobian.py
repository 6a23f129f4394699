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

"""Delta certification and singular tuples."""

from binform_core.experiment import Experiment
from binform_core.forms import is_degenerate
from binform_core.jacobian import count_singular_tuples
from binform_core.jacobian import is_delta_nonzero
from binform_core.jacobian import jacobian_matrix


def format_points(points):
    """Return 'x,y; x,y'."""

    if points is None:
        return None

    return "; ".join("%d,%d" % tuple(p) for p in points)


class Delta(Experiment):
    """Is Delta the zero polynomial."""

    OPERATION = "delta"
    HEADER = ["nonzero", "witness", "degenerate", "points", "delta"]

    def run(self):
        """Return the certificate and the optional evaluation."""

        nonzero, witness = is_delta_nonzero(self.basis, self.budget)

        out = {"nonzero": nonzero, "witness": witness,
               "degenerate": is_degenerate(self.form), "evaluation": None}

        if self.params.get("points"):
            out["evaluation"] = jacobian_matrix(self.basis,
                                                self.params["points"])

        return out

    def rows(self):
        """A single row."""

        evaluation = self.result["evaluation"]

        return [[self.result["nonzero"],
                 format_points(self.result["witness"]),
                 self.result["degenerate"],
                 format_points(evaluation.points) if evaluation else None,
                 evaluation.delta if evaluation else None]]


class SingularCensus(Experiment):
    """Sizes of S_t(X)."""

    OPERATION = "singular-census"
    HEADER = ["t", "X", "count", "bound", "ratio"]

    def run(self):
        """Return one census per (t, X)."""

        return [count_singular_tuples(self.basis, t, X, self.budget)
                for t in self.params["t"] for X in self.params["X"]]

    def rows(self):
        """One row per census."""

        return [[r.t, r.X, r.count, r.bound, r.ratio] for r in self.result]


OPERATIONS = {
    "delta": Delta,
    "singular-census": SingularCensus
}


def launch(operation, **params):
    """ Initialize the experiment. """

    return OPERATIONS[operation](**params)
