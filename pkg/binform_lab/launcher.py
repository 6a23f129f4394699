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

"""Command line launcher."""

import argparse
import configparser
import logging
import logging.config
import os

from binform_core.errors import ConfigError
from binform_core.errors import TooLarge

from binform_lab.managers.runmanager.runmanager import GENERAL
from binform_lab.managers.runmanager.runmanager import build_index
from binform_lab.managers.runmanager.runmanager import launch

FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

CONFIG_DIR = os.path.join(
    os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "conf")

RUNTIME = "runtime.cfg"

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_TOO_LARGE = 2

LOG = logging.getLogger(__name__)


def parser(index=None):
    """Return the argument parser with one subcommand per operation."""

    index = index or build_index()

    out = argparse.ArgumentParser(
        description="Binary forms and circle-method experiments")

    out.add_argument("--config-dir", default=CONFIG_DIR,
                     help="Directory holding runtime.cfg (default: %s)" %
                     CONFIG_DIR)
    out.add_argument("--output", default=None,
                     help="Report directory")
    out.add_argument("--budget", default=None,
                     help="Work-unit budget per run")
    out.add_argument("--seed", default=None, help="Random seed")
    out.add_argument("--name", default=None,
                     help="Report name (default: the operation)")
    out.add_argument("--jobs", default=None,
                     help="Concurrent runs in batch mode")

    subparsers = out.add_subparsers(dest="operation", metavar="operation")
    subparsers.required = True

    run = subparsers.add_parser("run", help="Run a batch file")
    run.add_argument("--config", required=True,
                     help="INI file, one section per run")

    for operation in sorted(index):

        _, desc = index[operation]
        sub = subparsers.add_parser(operation, help=desc["desc"])

        for key, param in desc["params"].items():

            text = param["desc"]

            if not param["mandatory"] and param.get("default") is not None:
                text = "%s (default: %s)" % (text, param["default"])

            sub.add_argument("--%s" % key, dest=key, default=None,
                             required=param["mandatory"], help=text)

    return out


def read_runtime(config_dir):
    """Return the runtime configuration, empty when the file is missing."""

    config = configparser.ConfigParser(interpolation=None)
    config.optionxform = str
    config.read(os.path.join(config_dir, RUNTIME))

    return config


def setup_logging(runtime, config_dir):
    """Configure logging from the file named in [general] logging."""

    path = runtime.get(GENERAL, "logging", fallback=None)

    if path and not os.path.isabs(path):
        path = os.path.join(config_dir, path)

    if path and os.path.isfile(path):
        logging.config.fileConfig(path, disable_existing_loggers=False)
        return

    logging.basicConfig(level=logging.INFO, format=FORMAT)


def exit_code(outcomes):
    """Return the process exit code of a list of run outcomes."""

    errors = [outcome.error for outcome in outcomes if not outcome.ok]

    if not errors:
        return EXIT_OK

    if all(isinstance(error, TooLarge) for error in errors):
        return EXIT_TOO_LARGE

    return EXIT_ERROR


def main(argv=None):
    """Parse the command line, run, and return the exit code."""

    index = build_index()
    args = parser(index).parse_args(argv)

    runtime = read_runtime(args.config_dir)
    setup_logging(runtime, args.config_dir)

    general = dict(runtime[GENERAL]) if runtime.has_section(GENERAL) else {}
    general.pop("logging", None)

    for key in ("output", "budget", "seed", "jobs"):
        if getattr(args, key) is not None:
            general[key] = getattr(args, key)

    defaults = {section: dict(runtime[section])
                for section in runtime.sections() if section != GENERAL}

    try:

        try:
            manager = launch(defaults=defaults, **general)
        except (TypeError, ValueError) as ex:
            raise ConfigError(str(ex), GENERAL) from ex

        if args.operation == "run":
            outcomes = manager.run_batch(args.config)
        else:
            _, desc = index[args.operation]
            raw = {key: getattr(args, key) for key in desc["params"]}
            request = manager.request(args.operation, raw, name=args.name,
                                      section=args.operation)
            outcomes = [manager.execute(request)]

    except ConfigError as ex:
        LOG.error("Invalid configuration: %s", ex)
        return EXIT_ERROR

    return exit_code(outcomes)
