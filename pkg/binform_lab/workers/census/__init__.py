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

"""Census workers."""

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

NAIVE = {
    "desc": "1 to count by exhaustive enumeration instead.",
    "mandatory": False,
    "default": 0,
    "type": "int"
}

MANIFEST = {
    "label": "Exact counts",
    "desc": "Solution counts of translation-dilation invariant systems",
    "operations": {
        "count-j": {
            "desc": "J_{s,Phi}(X; m) with growth exponents",
            "params": {
                "form": FORM,
                "s": {
                    "desc": "Number of variables on each side.",
                    "mandatory": True,
                    "type": "int"
                },
                "X": {
                    "desc": "Comma-separated box sizes.",
                    "mandatory": True,
                    "type": "ints"
                },
                "m": {
                    "desc": "Target vector, zero by default.",
                    "mandatory": False,
                    "default": None,
                    "type": "ints"
                },
                "reduced": {
                    "desc": "1 to drop the degree-k equation.",
                    "mandatory": False,
                    "default": 0,
                    "type": "int"
                },
                "naive": NAIVE
            }
        },
        "count-r": {
            "desc": "R_{c,Phi}(A) and its non-diagonal part",
            "params": {
                "form": FORM,
                "c": COEFFS,
                "X": {
                    "desc": "Use A = [X]^2.",
                    "mandatory": False,
                    "default": None,
                    "type": "int"
                },
                "points": {
                    "desc": "Explicit set A as 'x,y; x,y'.",
                    "mandatory": False,
                    "default": None,
                    "type": "points"
                },
                "limit": {
                    "desc": "Non-diagonal witnesses to keep.",
                    "mandatory": False,
                    "default": 10,
                    "type": "int"
                },
                "naive": NAIVE
            }
        },
        "count-m": {
            "desc": "M(q), solutions modulo q",
            "params": {
                "form": FORM,
                "c": COEFFS,
                "q": {
                    "desc": "Comma-separated moduli.",
                    "mandatory": True,
                    "type": "ints"
                },
                "naive": NAIVE
            }
        },
        "count-b": {
            "desc": "|B^sigma_p(m; xi)| against k_1...k_N p^(2Mk-K)",
            "params": {
                "form": FORM,
                "p": {
                    "desc": "The prime.",
                    "mandatory": True,
                    "type": "int"
                },
                "sigma": {
                    "desc": "Sign vector; every sign vector when omitted.",
                    "mandatory": False,
                    "default": None,
                    "type": "ints"
                },
                "m": {
                    "desc": "Target vector, zero by default.",
                    "mandatory": False,
                    "default": None,
                    "type": "ints"
                },
                "xi": {
                    "desc": "Shift point.",
                    "mandatory": False,
                    "default": "0,0",
                    "type": "ints"
                }
            }
        }
    }
}
