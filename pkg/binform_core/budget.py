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

"""Work budgets for exhaustive enumerations."""

import logging
import threading

from binform_core.errors import TooLarge

DEFAULT_BUDGET = 10 ** 8

LOG = logging.getLogger(__name__)


class Budget:
    """A work-unit counter shared by the operations of one run.

    Every enumeration announces its size through charge() before it starts.
    An overflow raises TooLarge naming the parameter.
    """

    def __init__(self, limit=DEFAULT_BUDGET):

        if limit <= 0:
            raise ValueError("Budget must be positive, got %s" % limit)

        self._limit = int(limit)
        self._used = 0
        self._lock = threading.Lock()

    @property
    def limit(self):
        """Return limit."""

        return self._limit

    @property
    def used(self):
        """Return the units charged so far."""

        return self._used

    def charge(self, parameter, units, error=TooLarge):
        """Consume units, raising before anything is consumed on overflow."""

        units = int(units)

        with self._lock:

            if self._used + units > self._limit:
                raise error(parameter, self._used + units, self._limit)

            self._used += units

        LOG.debug("Charged %u units for %s (%u/%u)", units, parameter,
                  self._used, self._limit)

    def to_dict(self):
        """Return JSON representation."""

        return {"limit": self._limit, "used": self._used}


def get_budget(budget):
    """Return budget, or a fresh default one when None."""

    if budget is None:
        return Budget()

    return budget
