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

"""Partition, spacing and increment experiments."""

from binform_core.experiment import Experiment
from binform_core.forms import shift_structure
from binform_core.increment import DEFAULT_MIN_CELL
from binform_core.increment import DEFAULT_SEARCH_EXPONENT
from binform_core.increment import LatticeSquare
from binform_core.increment import check_partition
from binform_core.increment import greedy_diagonal_free_set
from binform_core.increment import increment_search
from binform_core.increment import level_set_partition
from binform_core.increment import well_spaced_set


class Partition(Experiment):
    """Level-set partition of a square."""

    OPERATION = "partition"
    HEADER = ["r_x", "r_y", "q", "anchor_x", "anchor_y", "side", "size",
              "depth", "diameter"]

    @property
    def square(self):
        """Return Q."""

        anchor = self.params.get("anchor") or (0, 0)

        return LatticeSquare(anchor, self.params["X"])

    def run(self):
        """Return the partition and its exactness check."""

        square = self.square
        partition = level_set_partition(
            self.basis, self.params["alpha"], square,
            depth_budget=self.params.get("depth_budget"),
            exponent=self.params.get("exponent"), budget=self.budget)

        exact = check_partition(partition.cells, square)

        if not exact:
            self.log.error("Cells do not partition %s", square)

        return {"partition": partition, "exact": exact}

    def rows(self):
        """One row per cell."""

        return [[cell.r[0], cell.r[1], cell.q, str(cell.square.anchor[0]),
                 str(cell.square.anchor[1]), str(cell.square.side),
                 len(cell), cell.depth, float(cell.diameter)]
                for cell in self.result["partition"].cells]


class SpacedSet(Experiment):
    """Well-spaced subset of [X]."""

    OPERATION = "spaced-set"
    HEADER = ["y"]

    def run(self):
        """Return the set with its certificate."""

        structure = shift_structure(self.basis)

        return well_spaced_set(self.basis, structure, self.params["alpha"],
                               self.params["X"],
                               self.params.get("axis", 1),
                               self.params.get("spacing_constant", 1))

    def rows(self):
        """One row per element."""

        return [[y] for y in self.result.points]


class Increment(Experiment):
    """Empirical density increment."""

    OPERATION = "increment"
    HEADER = ["delta", "density", "gain", "correlation", "r_x", "r_y",
              "q", "size"]

    def members(self, square):
        """Return A."""

        if self.params.get("points"):
            return self.params["points"]

        modulus = self.params.get("modulus", 3)
        first = self.basis.forms[0]

        return [p for p in square.points() if first(*p) % modulus == 0]

    def run(self):
        """Return the best cell."""

        square = LatticeSquare((0, 0), self.params["X"])

        return increment_search(
            self.basis, self.coefficients(), self.members(square), square,
            q_max=self.params.get("q_max", 8),
            exponent=self.params.get("exponent", DEFAULT_SEARCH_EXPONENT),
            min_cell=self.params.get("min_cell", DEFAULT_MIN_CELL),
            budget=self.budget)

    def rows(self):
        """A single row."""

        r = self.result

        return [[float(r.delta), float(r.density), float(r.gain),
                 r.correlation, r.cell.r[0], r.cell.r[1], r.cell.q,
                 len(r.cell)]]


class GreedySet(Experiment):
    """Diagonal-free set built greedily."""

    OPERATION = "greedy-set"
    HEADER = ["x", "y"]

    def run(self):
        """Return the set and its certificate."""

        points, certificate = greedy_diagonal_free_set(
            self.basis, self.coefficients(), self.params["X"],
            order=self.params.get("order", "row"), seed=self.seed,
            budget=self.budget)

        return {"points": points, "size": len(points),
                "certificate": certificate}

    def rows(self):
        """One row per point."""

        return self.result["points"].to_rows()


OPERATIONS = {
    "partition": Partition,
    "spaced-set": SpacedSet,
    "increment": Increment,
    "greedy-set": GreedySet
}


def launch(operation, **params):
    """ Initialize the experiment. """

    return OPERATIONS[operation](**params)
