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

"""Density increment workers."""

FORM = {
    "desc": "The binary form, e.g. 'x*y'.",
    "mandatory": True,
    "type": "form"
}

COEFFS = {
    "desc": "Comma-separated non-zero coefficients c_1..c_s.",
    "mandatory": True,
    "type": "ints"
}

ALPHA = {
    "desc": "Frequency as 'p/q' or decimals.",
    "mandatory": True,
    "type": "rationals"
}

SIDE = {
    "desc": "Side of the square.",
    "mandatory": True,
    "type": "int"
}

EXPONENT = {
    "desc": "Override of the sub-square exponent sigma_k/(4k).",
    "mandatory": False,
    "default": None,
    "type": "float"
}

SEARCH_EXPONENT = {
    "desc": "Sub-square exponent of the search partition.",
    "mandatory": False,
    "default": 0.5,
    "type": "float"
}

MANIFEST = {
    "label": "Density increment",
    "desc": "Level-set partitions, spaced sets and diagonal-free sets",
    "operations": {
        "partition": {
            "desc": "Partition [Q] into cells of small phase diameter",
            "params": {
                "form": FORM,
                "alpha": ALPHA,
                "X": SIDE,
                "anchor": {
                    "desc": "Integer anchor of Q.",
                    "mandatory": False,
                    "default": "0,0",
                    "type": "ints"
                },
                "exponent": EXPONENT,
                "depth_budget": {
                    "desc": "Largest recursion depth, k + 1 by default.",
                    "mandatory": False,
                    "default": None,
                    "type": "int"
                }
            }
        },
        "spaced-set": {
            "desc": "Greedy independent set of the closeness graph",
            "params": {
                "form": FORM,
                "alpha": ALPHA,
                "X": SIDE,
                "axis": {
                    "desc": "Index set I_1 or I_2.",
                    "mandatory": False,
                    "default": 1,
                    "type": "int"
                },
                "spacing_constant": {
                    "desc": "The closeness constant C.",
                    "mandatory": False,
                    "default": 1.0,
                    "type": "float"
                }
            }
        },
        "increment": {
            "desc": "Search a frequency and a denser cell",
            "params": {
                "form": FORM,
                "c": COEFFS,
                "X": SIDE,
                "points": {
                    "desc": "Explicit set A as 'x,y; x,y'.",
                    "mandatory": False,
                    "default": None,
                    "type": "points"
                },
                "modulus": {
                    "desc": "Without points, A = {x : F_1(x) = 0 mod this}.",
                    "mandatory": False,
                    "default": 3,
                    "type": "int"
                },
                "q_max": {
                    "desc": "Largest denominator of the frequency grid.",
                    "mandatory": False,
                    "default": 8,
                    "type": "int"
                },
                "exponent": SEARCH_EXPONENT,
                "min_cell": {
                    "desc": "Smallest cell considered.",
                    "mandatory": False,
                    "default": 2,
                    "type": "int"
                }
            }
        },
        "greedy-set": {
            "desc": "Greedy set with diagonal solutions only",
            "params": {
                "form": FORM,
                "c": COEFFS,
                "X": SIDE,
                "order": {
                    "desc": "Scan order: row, diagonal or random.",
                    "mandatory": False,
                    "default": "row",
                    "type": "choice",
                    "choices": ["row", "diagonal", "random"]
                }
            }
        }
    }
}
