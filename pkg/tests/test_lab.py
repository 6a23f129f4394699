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

"""Experiment driver tests."""

import csv
import json
import os
import tempfile
import unittest

from fractions import Fraction

import numpy as np

from binform_core.errors import ConfigError
from binform_core.errors import TooLarge
from binform_core.experiment import Experiment
from binform_core.experiment import ReportEncoder
from binform_lab.launcher import EXIT_ERROR
from binform_lab.launcher import EXIT_OK
from binform_lab.launcher import EXIT_TOO_LARGE
from binform_lab.launcher import main
from binform_lab.managers.runmanager.runmanager import RunManager
from binform_lab.managers.runmanager.runmanager import version

from .common import BaseTest

BATCH = """\
[general]
seed = 4

[first]
operation = count-j
form = x*y
s = 1
X = 2

[second]
operation = count-m
form = x*y
c = 1,-1
q = 2,3

[third]
operation = basis
form = x^3+y^3
"""

SMOKE = {
    "basis": {"form": "x^3+y^3"},
    "degenerate": {"form": "(x+y)^2"},
    "corpus": {"degrees": "2", "bound": "1"},
    "delta": {"form": "x*y", "points": "1,2; 3,4"},
    "singular-census": {"form": "x*y", "t": "2", "X": "2"},
    "count-j": {"form": "x*y", "s": "1", "X": "2,3", "reduced": "1"},
    "count-r": {"form": "x*y", "c": "1,1,-1,-1", "X": "3"},
    "count-m": {"form": "x*y", "c": "1,-1", "q": "2", "naive": "1"},
    "count-b": {"form": "x*y", "p": "2"},
    "arcs": {"form": "x*y", "alpha": "1/2,0,0", "X": "16"},
    "complete-sum": {"form": "x*y", "q": "2,3"},
    "series": {"form": "x*y", "c": "1,-1", "Q_max": "3", "P_max": "3"},
    "local-density": {"form": "x*y", "c": "1,1,1", "p": "2", "H": "1",
                      "h": "0"},
    "real-density": {"form": "x*y", "c": "1,-1", "T": "2, 1/2",
                     "samples": "256", "blocks": "4"},
    "asymptotic": {"form": "x*y", "c": "1,-1", "X": "2,3", "Q_max": "2",
                   "T": "2", "samples": "256", "blocks": "4"},
    "partition": {"form": "x*y", "alpha": "1/2,1/2,0", "X": "8",
                  "exponent": "0.5"},
    "spaced-set": {"form": "x*y", "alpha": "1/3,1/5,1/7", "X": "20"},
    "increment": {"form": "x*y", "c": "1,-1", "X": "9", "q_max": "2"},
    "greedy-set": {"form": "x*y", "c": "1,1,-1,-1", "X": "3"}
}


class LabTest(BaseTest):
    """Tests writing reports to a scratch directory."""

    def setUp(self):
        """Create the report directory."""

        self.scratch = tempfile.TemporaryDirectory()
        self.output = self.scratch.name

    def tearDown(self):
        """Remove the report directory."""

        self.scratch.cleanup()

    def manager(self, **kwargs):
        """Return a run manager writing to the scratch directory."""

        return RunManager(output=self.output, **kwargs)

    def write(self, name, text):
        """Write a file in the scratch directory."""

        path = os.path.join(self.output, name)

        with open(path, "w") as fout:
            fout.write(text)

        return path

    def read_csv(self, name):
        """Return the rows of a report."""

        with open(os.path.join(self.output, "%s.csv" % name)) as fin:
            return list(csv.reader(fin))

    def read_json(self, name):
        """Return the sidecar of a report."""

        with open(os.path.join(self.output, "%s.json" % name)) as fin:
            return json.load(fin)


class TestRunManager(LabTest):
    """Validation, execution and reports."""

    def test_count_j_report(self):
        """count-j for xy, s = 1, X = 2 writes a row with count 4."""

        manager = self.manager()
        request = manager.request("count-j", {"form": "x*y", "s": "1",
                                              "X": "2"})
        outcome = manager.execute(request)

        self.assertTrue(outcome.ok)

        rows = self.read_csv("count-j")

        self.assertEqual(rows[0][:3], ["s", "X", "count"])
        self.assertEqual(rows[1][:3], ["1", "2", "4"])

        sidecar = self.read_json("count-j")

        self.assertEqual(sidecar["schema"], 1)
        self.assertEqual(sidecar["operation"], "count-j")
        self.assertEqual(sidecar["config"]["form"], "x*y")
        self.assertEqual(sidecar["version"], version())
        self.assertIn("used", sidecar["budget"])
        self.assertGreaterEqual(sidecar["wall_time"], 0)

    def test_exact_sidecar(self):
        """Exact values and nested reports survive the JSON sidecar."""

        class Exact(Experiment):
            """Returns exact values."""

            OPERATION = "exact"
            HEADER = ["ratio"]

            def run(self):
                return {"ratio": Fraction(1, 3),
                        "ratios": [Fraction(1, 2), Fraction(3, 4)],
                        "budget": self.budget}

            def rows(self):
                return [[str(self.result["ratio"])]]

        experiment = Exact(form="x*y", budget=100)
        experiment.execute()
        self.manager().write_report("exact", experiment)

        sidecar = self.read_json("exact")

        self.assertEqual(sidecar["operation"], "exact")
        self.assertEqual(sidecar["config"]["form"], "x*y")
        self.assertEqual(sidecar["result"]["ratio"], "1/3")
        self.assertEqual(sidecar["result"]["ratios"], ["1/2", "3/4"])
        self.assertEqual(sidecar["result"]["budget"],
                         {"limit": 100, "used": 0})

    def test_report_encoder(self):
        """Leaves json cannot encode are written exactly."""

        text = json.dumps({"z": complex(1, 2), "n": np.int64(5),
                           "r": Fraction(6, 2), "f": Fraction(-1, 4)},
                          cls=ReportEncoder)

        self.assertEqual(json.loads(text), {"z": [1.0, 2.0], "n": 5,
                                            "r": 3, "f": "-1/4"})

    def test_every_operation(self):
        """Each operation runs at desk scale and reports."""

        manager = self.manager()

        self.assertEqual(sorted(SMOKE), manager.operations())

        for operation, raw in sorted(SMOKE.items()):
            request = manager.request(operation, raw)
            outcome = manager.execute(request)
            self.assertTrue(outcome.ok, "%s: %s" % (operation,
                                                    outcome.error))
            self.assertTrue(os.path.isfile(outcome.paths[0]))
            self.assertEqual(self.read_json(operation)["operation"],
                             operation)

    def test_reproducible(self):
        """Exact operations give identical results."""

        manager = self.manager()

        for name in ("one", "two"):
            request = manager.request("count-m", {"form": "x*y",
                                                  "c": "1,-1", "q": "2,3"},
                                      name=name)
            manager.execute(request)

        self.assertEqual(self.read_csv("one"), self.read_csv("two"))
        self.assertEqual(self.read_json("one")["result"],
                         self.read_json("two")["result"])

    def test_validation(self):
        """Bad parameters raise ConfigError naming the field."""

        manager = self.manager()

        with self.assertRaises(ConfigError) as ctx:
            manager.request("count-j", {"form": "x*y", "s": "one",
                                        "X": "2"})

        self.assertEqual(ctx.exception.field, "s")

        with self.assertRaises(ConfigError) as ctx:
            manager.request("count-j", {"form": "x*y", "X": "2"})

        self.assertEqual(ctx.exception.field, "s")

        with self.assertRaises(ConfigError):
            manager.request("count-j", {"form": "x*y", "s": "1", "X": "2",
                                        "colour": "red"})

        with self.assertRaises(ConfigError):
            manager.request("count-q", {})

        with self.assertRaises(ConfigError):
            manager.request("greedy-set", {"form": "x*y", "c": "1,-1",
                                           "X": "3", "order": "spiral"})

        with self.assertRaises(ConfigError):
            manager.request("count-j", {"form": "x^2+y", "s": "1",
                                        "X": "2"})

    def test_negative_budget(self):
        """Budgets must be positive."""

        with self.assertRaises(ValueError):
            self.manager(budget=-1)

        with self.assertRaises(ConfigError) as ctx:
            self.manager().request("count-j", {"form": "x*y", "s": "1",
                                               "X": "2", "budget": "-5"})

        self.assertEqual(ctx.exception.field, "budget")

    def test_too_large(self):
        """Budget overflows are reported as TooLarge."""

        manager = self.manager(budget=10)
        request = manager.request("count-j", {"form": "x*y", "s": "2",
                                              "X": "3"})
        outcome = manager.execute(request)

        self.assertFalse(outcome.ok)
        self.assertIsInstance(outcome.error, TooLarge)
        self.assertFalse(os.path.exists(os.path.join(self.output,
                                                     "count-j.csv")))

    def test_runtime_defaults(self):
        """Runtime sections override manifest defaults."""

        manager = self.manager(defaults={"circle": {"samples": "64"},
                                         "increment": {"q_max": "3"}})

        request = manager.request("real-density", {"form": "x*y",
                                                   "c": "1,-1", "T": "2"})
        self.assertEqual(request.params["samples"], 64)
        self.assertEqual(request.params["blocks"], 16)

        request = manager.request("increment", {"form": "x*y",
                                                "c": "1,-1", "X": "4",
                                                "q_max": "2"})
        self.assertEqual(request.params["q_max"], 2)


class TestBatch(LabTest):
    """Batch files."""

    def test_batch(self):
        """Three configurations give three reports in file order."""

        path = self.write("batch.cfg", BATCH)

        for jobs in (1, 2):

            manager = self.manager(jobs=jobs)
            outcomes = manager.run_batch(path)

            self.assertEqual([o.request.name for o in outcomes],
                             ["first", "second", "third"])
            self.assertTrue(all(o.ok for o in outcomes))
            self.assertEqual(manager.seed, 4)

        self.assertEqual(self.read_csv("first")[1][2], "4")
        self.assertEqual(self.read_csv("second")[1], ["2", "4"])

    def test_line_numbers(self):
        """Errors carry the section, field and line."""

        path = self.write("bad.cfg", BATCH.replace("s = 1", "s = one"))

        with self.assertRaises(ConfigError) as ctx:
            self.manager().run_batch(path)

        self.assertEqual(ctx.exception.section, "first")
        self.assertEqual(ctx.exception.field, "s")
        self.assertEqual(ctx.exception.line, 7)

    def test_missing_operation(self):
        """Every run section names its operation."""

        path = self.write("bad.cfg", "[lonely]\nform = x*y\n")

        with self.assertRaises(ConfigError) as ctx:
            self.manager().run_batch(path)

        self.assertEqual(ctx.exception.line, 1)

    def test_general_budget(self):
        """The general section is validated too."""

        path = self.write("bad.cfg", "[general]\nbudget = -3\n" +
                          BATCH.split("\n", 2)[2])

        with self.assertRaises(ConfigError) as ctx:
            self.manager().run_batch(path)

        self.assertEqual((ctx.exception.field, ctx.exception.line),
                         ("budget", 2))


class TestLauncher(LabTest):
    """Command line entry point."""

    def run_main(self, *args):
        """Run the launcher against the scratch directory."""

        return main(["--output", self.output] + list(args))

    def test_success(self):
        """Exit code 0 and a report."""

        code = self.run_main("count-j", "--form", "x*y", "--s", "1",
                             "--X", "2")

        self.assertEqual(code, EXIT_OK)
        self.assertEqual(self.read_csv("count-j")[1][2], "4")

    def test_report_name(self):
        """--name picks the report name."""

        code = self.run_main("--name", "quadratic", "degenerate", "--form",
                             "x^2 + 2*x*y + y^2")

        self.assertEqual(code, EXIT_OK)
        self.assertEqual(self.read_csv("quadratic")[1][1], "True")

    def test_negative_budget(self):
        """A negative budget is a validation error."""

        code = self.run_main("--budget", "-5", "count-j", "--form", "x*y",
                             "--s", "1", "--X", "2")

        self.assertEqual(code, EXIT_ERROR)

    def test_too_large(self):
        """Budget overflows exit with 2."""

        code = self.run_main("--budget", "10", "count-j", "--form", "x*y",
                             "--s", "2", "--X", "3")

        self.assertEqual(code, EXIT_TOO_LARGE)

    def test_runtime_error(self):
        """Other failures exit with 1."""

        code = self.run_main("increment", "--form", "x*y", "--c", "1,1",
                             "--X", "3")

        self.assertEqual(code, EXIT_ERROR)

    def test_batch(self):
        """run --config executes a batch file."""

        path = self.write("batch.cfg", BATCH)

        self.assertEqual(self.run_main("run", "--config", path), EXIT_OK)
        self.assertTrue(os.path.isfile(os.path.join(self.output,
                                                    "third.json")))


if __name__ == '__main__':
    unittest.main()
