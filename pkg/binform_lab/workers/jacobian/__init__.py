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

"""Jacobian workers."""

FORM = {
    "desc": "The binary form, e.g. 'x*y'.",
    "mandatory": True,
    "type": "form"
}

MANIFEST = {
    "label": "Jacobian determinants",
    "desc": "Non-vanishing of Delta and singular tuple censuses",
    "operations": {
        "delta": {
            "desc": "Certify Delta != 0 and evaluate it at given points",
            "params": {
                "form": FORM,
                "points": {
                    "desc": "M points 'x,y; x,y' to evaluate Delta at.",
                    "mandatory": False,
                    "default": None,
                    "type": "points"
                }
            }
        },
        "singular-census": {
            "desc": "Exact |S_t(X)| against M t^M (2k)^t X^(t+M-1)",
            "params": {
                "form": FORM,
                "t": {
                    "desc": "Comma-separated tuple sizes.",
                    "mandatory": True,
                    "type": "ints"
                },
                "X": {
                    "desc": "Comma-separated box sizes.",
                    "mandatory": True,
                    "type": "ints"
                }
            }
        }
    }
}
