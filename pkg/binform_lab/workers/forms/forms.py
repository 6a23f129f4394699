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

"""Derivative bases, degeneracy and corpora."""

from fractions import Fraction

from binform_core.errors import BasisTransformRequired
from binform_core.experiment import Experiment
from binform_core.forms import corpus
from binform_core.forms import degenerate_factorization
from binform_core.forms import derivative_basis
from binform_core.forms import derivative_counts
from binform_core.forms import shift_structure


class Basis(Experiment):
    """Derivative basis of a form."""

    OPERATION = "basis"
    HEADER = ["index", "degree", "form", "u", "v"]

    def run(self):
        """Return basis, degree counts and shift structure."""

        basis = self.basis
        degenerate = degenerate_factorization(self.form) is not None

        out = {
            "basis": basis,
            "counts": derivative_counts(basis),
            "degenerate": degenerate,
            "shift_structure": None
        }

        if not degenerate:
            try:
                out["shift_structure"] = shift_structure(basis)
            except BasisTransformRequired as ex:
                self.log.warning("%s", ex)

        return out

    def rows(self):
        """One row per basis form."""

        basis = self.result["basis"]
        origins = basis.origins or [(None, None)] * basis.N

        return [[i + 1, form.degree, str(form), u, v]
                for i, (form, (u, v)) in enumerate(zip(basis.forms, origins))]


class Degenerate(Experiment):
    """Degeneracy test."""

    OPERATION = "degenerate"
    HEADER = ["form", "degenerate", "a", "b", "c"]

    def run(self):
        """Return the factorization, None when non-degenerate."""

        factors = degenerate_factorization(self.form)

        return {"degenerate": factors is not None, "factorization": factors}

    def rows(self):
        """A single row."""

        factors = self.result["factorization"] or (None, None, None)

        return [[str(self.form), self.result["degenerate"]] + list(factors)]


class Corpus(Experiment):
    """Primitive forms with N, K, M."""

    OPERATION = "corpus"
    HEADER = ["form", "degree", "degenerate", "N", "K", "M",
              "K_over_k_ok"]

    @property
    def degrees(self):
        """Return degrees."""

        return self.params["degrees"]

    @property
    def bound(self):
        """Return bound."""

        return self.params["bound"]

    def run(self):
        """Return one record per corpus form."""

        records = []

        for form in corpus(self.degrees, self.bound):

            record = {"form": form, "degree": form.degree,
                      "degenerate": degenerate_factorization(form)
                      is not None}

            if form.degree >= 2:
                basis = derivative_basis(form)
                record.update({"N": basis.N, "K": basis.K, "M": basis.M})
                record["K_over_k_ok"] = record["degenerate"] or \
                    Fraction(basis.K, basis.k) <= basis.M + Fraction(1, 2)

            records.append(record)

        self.log.info("Corpus of %u forms", len(records))

        return records

    def rows(self):
        """One row per form."""

        return [[str(r["form"]), r["degree"], r["degenerate"], r.get("N"),
                 r.get("K"), r.get("M"), r.get("K_over_k_ok")]
                for r in self.result]


OPERATIONS = {
    "basis": Basis,
    "degenerate": Degenerate,
    "corpus": Corpus
}


def launch(operation, **params):
    """ Initialize the experiment. """

    return OPERATIONS[operation](**params)
