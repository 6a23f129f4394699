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

"""Run manager."""

import configparser
import csv
import functools
import importlib
import json
import logging
import os
import re
import subprocess
import tempfile

from concurrent.futures import ThreadPoolExecutor

from binform_core.budget import Budget
from binform_core.budget import DEFAULT_BUDGET
from binform_core.errors import ConfigError
from binform_core.experiment import PARSERS
from binform_core.experiment import ReportEncoder

from binform_lab.workers import FAMILIES

SCHEMA = 1
DEFAULT_OUTPUT = "reports"
DEFAULT_JOBS = 1
GENERAL = "general"
RESERVED = ("operation", "budget", "seed")
OVERRIDES = ("budget", "seed", "jobs", "output")

SECTION = re.compile(r"^\s*\[([^\]]+)\]")
OPTION = re.compile(r"^\s*([^=:\s][^=:]*?)\s*[=:]")

LOG = logging.getLogger(__name__)


@functools.lru_cache(maxsize=None)
def version():
    """Return the git describe of the working tree, 'unknown' outside git."""

    here = os.path.dirname(os.path.abspath(__file__))

    try:
        out = subprocess.run(["git", "describe", "--always", "--dirty"],
                             cwd=here, capture_output=True, text=True,
                             timeout=10, check=True)
    except (OSError, subprocess.SubprocessError):
        return "unknown"

    return out.stdout.strip() or "unknown"


def line_numbers(path):
    """Return {(section, option): line} for an INI file."""

    lines = {}
    section = None

    with open(path) as fin:

        for number, text in enumerate(fin, start=1):

            if text.lstrip().startswith(("#", ";")):
                continue

            match = SECTION.match(text)

            if match:
                section = match.group(1).strip()
                lines[(section, None)] = number
                continue

            match = OPTION.match(text)

            if match and section:
                lines[(section, match.group(1).strip())] = number

    return lines


def build_index():
    """Return {operation: (family, descriptor)} over all worker families."""

    index = {}

    for family in FAMILIES:

        package = importlib.import_module("binform_lab.workers.%s" % family)

        for operation, desc in package.MANIFEST["operations"].items():
            index[operation] = (family, desc)

    return index


class RunRequest:
    """One validated run: operation, parsed params, budget and seed."""

    def __init__(self, name, operation, family, params, budget, seed):

        self.name = name
        self.operation = operation
        self.family = family
        self.params = params
        self.budget = budget
        self.seed = seed


class RunOutcome:
    """The experiment of a request, or the error it raised."""

    def __init__(self, request, experiment=None, error=None, paths=None):

        self.request = request
        self.experiment = experiment
        self.error = error
        self.paths = paths or []

    @property
    def ok(self):
        """Return True if the run completed."""

        return self.error is None


class RunManager:
    """Validates run configurations, executes them and writes reports."""

    def __init__(self, output=DEFAULT_OUTPUT, budget=DEFAULT_BUDGET, seed=0,
                 jobs=DEFAULT_JOBS, defaults=None):

        self.params = {}
        self.log = logging.getLogger(__name__)
        self.index = build_index()

        self.output = output
        self.budget = budget
        self.seed = seed
        self.jobs = jobs
        self.defaults = defaults or {}

    @property
    def output(self):
        """Return output."""

        return self.params["output"]

    @output.setter
    def output(self, value):
        """Set output."""

        self.params["output"] = str(value)

    @property
    def budget(self):
        """Return budget."""

        return self.params["budget"]

    @budget.setter
    def budget(self, value):
        """Set budget."""

        if int(value) <= 0:
            raise ValueError("budget must be positive, got %s" % value)

        self.params["budget"] = int(value)

    @property
    def seed(self):
        """Return seed."""

        return self.params["seed"]

    @seed.setter
    def seed(self, value):
        """Set seed."""

        self.params["seed"] = int(value)

    @property
    def jobs(self):
        """Return jobs."""

        return self.params["jobs"]

    @jobs.setter
    def jobs(self, value):
        """Set jobs."""

        if int(value) < 1:
            raise ValueError("jobs must be at least 1, got %s" % value)

        self.params["jobs"] = int(value)

    def operations(self):
        """Return the sorted operation names."""

        return sorted(self.index)

    def _parse(self, kind, value, desc, section, field, line):
        """Parse a single value, wrapping failures in a ConfigError."""

        try:
            value = PARSERS[kind](value)
        except (ValueError, TypeError, ArithmeticError) as ex:
            raise ConfigError(str(ex), section, field, line) from ex

        if kind == "choice" and value not in desc["choices"]:
            raise ConfigError("'%s' not in %s" % (value, desc["choices"]),
                              section, field, line)

        return value

    def request(self, operation, raw, name=None, section=None, lines=None):
        """Validate raw string params into a RunRequest."""

        lines = lines or {}
        section = section or name

        if operation not in self.index:
            raise ConfigError("unknown operation '%s'" % operation, section,
                              "operation", lines.get((section, "operation")))

        family, descriptor = self.index[operation]
        manifest = descriptor["params"]
        defaults = self.defaults.get(family, {})

        for key in raw:
            if key not in manifest and key not in RESERVED:
                raise ConfigError("unknown parameter for %s" % operation,
                                  section, key, lines.get((section, key)))

        params = {}

        for key, desc in manifest.items():

            line = lines.get((section, key))

            if raw.get(key) is not None:
                value = raw[key]
            elif key in defaults:
                value = defaults[key]
            elif desc["mandatory"]:
                raise ConfigError("missing mandatory parameter", section,
                                  key, lines.get((section, None)))
            else:
                value = desc.get("default")

            if value is None:
                params[key] = None
                continue

            params[key] = self._parse(desc["type"], value, desc, section,
                                      key, line)

        budget = raw.get("budget", self.budget)

        try:
            budget = Budget(int(budget))
        except ValueError as ex:
            raise ConfigError(str(ex), section, "budget",
                              lines.get((section, "budget"))) from ex

        seed = self._parse("int", raw.get("seed", self.seed), {}, section,
                           "seed", lines.get((section, "seed")))

        return RunRequest(name or operation, operation, family, params,
                          budget, seed)

    def launch(self, request):
        """Return the experiment object of a request."""

        module = importlib.import_module("binform_lab.workers.%s.%s" %
                                         (request.family, request.family))

        return module.launch(request.operation, budget=request.budget,
                             seed=request.seed, **request.params)

    def execute(self, request):
        """Run a request and write its reports."""

        try:
            experiment = self.launch(request)
            experiment.execute()
        except Exception as ex:
            self.log.error("Run %s failed: %s", request.name, ex)
            return RunOutcome(request, error=ex)

        paths = self.write_report(request.name, experiment)

        return RunOutcome(request, experiment, paths=paths)

    def _atomic(self, path, write):
        """Write through a temporary file renamed onto path."""

        handle, tmp = tempfile.mkstemp(dir=os.path.dirname(path),
                                       prefix=".%s." % os.path.basename(path))

        try:
            with os.fdopen(handle, "w", newline="") as fout:
                write(fout)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def write_report(self, name, experiment):
        """Write <name>.csv and <name>.json, return both paths."""

        os.makedirs(self.output, exist_ok=True)

        csv_path = os.path.join(self.output, "%s.csv" % name)
        json_path = os.path.join(self.output, "%s.json" % name)

        def write_csv(fout):
            writer = csv.writer(fout)
            writer.writerow(experiment.HEADER)
            for row in experiment.rows():
                writer.writerow(["" if v is None else v for v in row])

        report = experiment.to_dict()
        report["schema"] = SCHEMA
        report["name"] = name
        report["version"] = version()

        def write_json(fout):
            json.dump(report, fout, indent=2, sort_keys=True,
                      cls=ReportEncoder)
            fout.write("\n")

        self._atomic(csv_path, write_csv)
        self._atomic(json_path, write_json)

        self.log.info("Report written to %s and %s", csv_path, json_path)

        return [csv_path, json_path]

    def read_batch(self, path):
        """Return the validated RunRequests of a batch file, in file order."""

        if not os.path.isfile(path):
            raise ConfigError("no such file %s" % path)

        config = configparser.ConfigParser(interpolation=None)
        config.optionxform = str

        try:
            config.read(path)
        except configparser.Error as ex:
            raise ConfigError(str(ex), line=getattr(ex, "lineno", None)) \
                from ex

        lines = line_numbers(path)

        if config.has_section(GENERAL):

            general = config[GENERAL]

            for key in general:

                line = lines.get((GENERAL, key))

                if key not in OVERRIDES:
                    raise ConfigError("unknown general option", GENERAL, key,
                                      line)

                try:
                    setattr(self, key, general[key])
                except ValueError as ex:
                    raise ConfigError(str(ex), GENERAL, key, line) from ex

        requests = []

        for section in config.sections():

            if section == GENERAL:
                continue

            raw = dict(config[section])

            if "operation" not in raw:
                raise ConfigError("missing operation", section, "operation",
                                  lines.get((section, None)))

            requests.append(self.request(raw["operation"], raw, name=section,
                                         section=section, lines=lines))

        if not requests:
            raise ConfigError("batch file declares no runs")

        return requests

    def run_batch(self, path):
        """Run every configuration of a batch file.

        Outcomes are returned in file order whatever the number of jobs.
        """

        requests = self.read_batch(path)

        self.log.info("Batch %s: %u runs, %u jobs", path, len(requests),
                      self.jobs)

        if self.jobs == 1:
            return [self.execute(request) for request in requests]

        with ThreadPoolExecutor(max_workers=self.jobs) as pool:
            return list(pool.map(self.execute, requests))


def launch(output=DEFAULT_OUTPUT, budget=DEFAULT_BUDGET, seed=0,
           jobs=DEFAULT_JOBS, defaults=None):
    """ Initialize the module. """

    return RunManager(output, budget, seed, jobs, defaults)
