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

"""Binary form algebra workers."""

FORM = {
    "desc": "The binary form, e.g. 'x^3 + y^3'.",
    "mandatory": True,
    "type": "form"
}

MANIFEST = {
    "label": "Binary form algebra",
    "desc": "Derivative bases, degeneracy and test corpora",
    "operations": {
        "basis": {
            "desc": "Derivative basis, invariants N, K, M and shift "
                    "structure",
            "params": {
                "form": FORM
            }
        },
        "degenerate": {
            "desc": "Decide whether the form is a(bx + cy)^k",
            "params": {
                "form": FORM
            }
        },
        "corpus": {
            "desc": "Enumerate primitive forms with their invariants",
            "params": {
                "degrees": {
                    "desc": "Comma-separated degrees.",
                    "mandatory": False,
                    "default": "2",
                    "type": "ints"
                },
                "bound": {
                    "desc": "Largest absolute coefficient.",
                    "mandatory": False,
                    "default": 1,
                    "type": "int"
                }
            }
        }
    }
}
