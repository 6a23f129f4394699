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

"""Circle method experiments."""

from binform_core.circle import A_of_q
from binform_core.circle import arc_dissect
from binform_core.circle import asymptotic_report
from binform_core.circle import compare_f_V
from binform_core.circle import complete_sum_record
from binform_core.circle import euler_product
from binform_core.circle import exp_sum_f
from binform_core.circle import hensel_census
from binform_core.circle import local_density
from binform_core.circle import real_density
from binform_core.circle import series_doublings
from binform_core.circle import singular_series
from binform_core.experiment import Experiment


class Arcs(Experiment):
    """Arc dissection of one frequency."""

    OPERATION = "arcs"
    HEADER = ["kind", "q", "a", "residual", "f_abs", "V_abs", "ratio"]

    def run(self):
        """Return the label, f and, on the major arcs, V."""

        alpha = self.params["alpha"]
        X = self.params["X"]

        self.budget.charge("X^2", X * X)

        label = arc_dissect(self.basis, alpha, X)
        out = {"label": label, "f": exp_sum_f(self.basis, alpha, X),
               "comparison": None}

        if label.is_major:
            quadrature = {key: self.params[key] for key in
                          ("panels", "nodes", "max_panels", "rtol")
                          if key in self.params}
            out["comparison"] = compare_f_V(self.basis, alpha, label.q,
                                            label.a, X, **quadrature)

        return out

    def rows(self):
        """A single row."""

        label = self.result["label"]
        comparison = self.result["comparison"] or {}
        V = comparison.get("V")

        return [[label.kind, label.q, ",".join("%d" % v for v in label.a),
                 float(max(label.residual)), abs(self.result["f"]),
                 abs(V) if V is not None else None,
                 comparison.get("ratio")]]


class CompleteSum(Experiment):
    """Complete sums and the q^(2 - 1/k) diagnostic."""

    OPERATION = "complete-sum"
    HEADER = ["q", "a", "S_real", "S_imag", "S_abs", "ratio"]

    def run(self):
        """Return one record per modulus."""

        return [complete_sum_record(self.basis, q, self.params.get("a"),
                                    self.budget)
                for q in self.params["q"]]

    def rows(self):
        """One row per modulus."""

        return [[r["q"], ",".join("%d" % v for v in r["a"]), r["S"].real,
                 r["S"].imag, abs(r["S"]), r["ratio"]] for r in self.result]


class Series(Experiment):
    """Singular series partial sums."""

    OPERATION = "series"
    HEADER = ["q", "A_real", "A_imag", "sum_real", "sum_imag"]

    def run(self):
        """Return the density report, the A(q) and the Euler product."""

        c = self.coefficients()
        report = singular_series(self.basis, c, self.params["Q_max"],
                                 self.budget)

        values = [A_of_q(self.basis, c, q, self.budget)
                  for q in range(1, self.params["Q_max"] + 1)]

        out = {"report": report, "A": values,
               "doublings": series_doublings(report), "euler": None}

        if self.params.get("P_max"):
            product, factors = euler_product(self.basis, c,
                                             self.params["P_max"],
                                             self.params.get("H", 1),
                                             self.budget)
            out["euler"] = {"product": product, "factors": factors}

        return out

    def rows(self):
        """One row per modulus."""

        sums = self.result["report"].sigma_series

        return [[q, value.real, value.imag, total.real, total.imag]
                for value, (q, total) in zip(self.result["A"], sums)]


class LocalDensity(Experiment):
    """p-adic densities and Hensel growth."""

    OPERATION = "local-density"
    HEADER = ["p", "H", "via_M", "via_A", "residual", "hensel_count",
              "hensel_next", "hensel_ratio"]

    def run(self):
        """Return one record per depth."""

        c = self.coefficients()
        p = self.params["p"]
        h = self.params.get("h", -1)

        records = []

        for H in self.params["H"]:

            via_M, via_A, residual = local_density(self.basis, c, p, H,
                                                   self.budget)
            record = {"p": p, "H": H, "via_M": via_M, "via_A": via_A,
                      "residual": residual, "hensel": None}

            if h is not None and h >= 0:
                record["hensel"] = hensel_census(self.basis, c, p, h, H,
                                                 self.budget)

            records.append(record)

        return records

    def rows(self):
        """One row per depth."""

        out = []

        for r in self.result:
            hensel = r["hensel"] or {}
            out.append([r["p"], r["H"], r["via_M"], r["via_A"],
                        r["residual"], hensel.get("count"),
                        hensel.get("count_next"), hensel.get("ratio")])

        return out


class RealDensity(Experiment):
    """mu_T over a grid of T."""

    OPERATION = "real-density"
    HEADER = ["T", "mu", "standard_error"]

    def run(self):
        """Return (T, mu_T, error) triples."""

        c = self.coefficients()
        records = []

        for T in self.params["T"]:
            mu, error = real_density(
                self.basis, c, float(T),
                samples=self.params.get("samples", 16384),
                blocks=self.params.get("blocks", 16), seed=self.seed,
                budget=self.budget)
            records.append((float(T), mu, error))

        return records

    def rows(self):
        """One row per T."""

        return [list(r) for r in self.result]


class Asymptotic(Experiment):
    """Diagnostic comparison of R(X) with the main term."""

    OPERATION = "asymptotic"
    HEADER = ["X", "R", "predicted", "ratio"]

    def run(self):
        """Return rows and the density report."""

        rows, report = asymptotic_report(
            self.basis, self.coefficients(), self.params["X"],
            self.params.get("Q_max", 6), self.params.get("T", 8.0),
            self.params.get("H", 1),
            samples=self.params.get("samples", 16384),
            blocks=self.params.get("blocks", 16), seed=self.seed,
            budget=self.budget)

        return {"rows": rows, "report": report}

    def rows(self):
        """One row per X."""

        return [[r[key] for key in self.HEADER]
                for r in self.result["rows"]]


OPERATIONS = {
    "arcs": Arcs,
    "complete-sum": CompleteSum,
    "series": Series,
    "local-density": LocalDensity,
    "real-density": RealDensity,
    "asymptotic": Asymptotic
}


def launch(operation, **params):
    """ Initialize the experiment. """

    return OPERATIONS[operation](**params)
