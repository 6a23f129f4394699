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

"""Circle method workers."""

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

QUADRATURE = {
    "panels": {
        "desc": "Initial quadrature panels per axis.",
        "mandatory": False,
        "default": 4,
        "type": "int"
    },
    "nodes": {
        "desc": "Gauss-Legendre nodes per panel.",
        "mandatory": False,
        "default": 8,
        "type": "int"
    },
    "max_panels": {
        "desc": "Panel budget per axis.",
        "mandatory": False,
        "default": 512,
        "type": "int"
    },
    "rtol": {
        "desc": "Relative agreement of successive refinements.",
        "mandatory": False,
        "default": 1e-8,
        "type": "float"
    }
}

SAMPLING = {
    "samples": {
        "desc": "Total Sobol samples.",
        "mandatory": False,
        "default": 16384,
        "type": "int"
    },
    "blocks": {
        "desc": "Independently scrambled blocks.",
        "mandatory": False,
        "default": 16,
        "type": "int"
    }
}

MANIFEST = {
    "label": "Circle method",
    "desc": "Arcs, singular series, local and real densities",
    "operations": {
        "arcs": {
            "desc": "Major/minor arc label of alpha with f and V",
            "params": dict({
                "form": FORM,
                "alpha": {
                    "desc": "Frequency as 'p/q' or decimals.",
                    "mandatory": True,
                    "type": "rationals"
                },
                "X": {
                    "desc": "Box size.",
                    "mandatory": True,
                    "type": "int"
                }
            }, **QUADRATURE)
        },
        "complete-sum": {
            "desc": "Complete sums S(q, a) against q^(2 - 1/k)",
            "params": {
                "form": FORM,
                "q": {
                    "desc": "Comma-separated moduli.",
                    "mandatory": True,
                    "type": "ints"
                },
                "a": {
                    "desc": "Integer vector a, or the worst a with "
                            "(q, a) = 1 when omitted.",
                    "mandatory": False,
                    "default": None,
                    "type": "ints"
                }
            }
        },
        "series": {
            "desc": "Partial sums of the singular series",
            "params": {
                "form": FORM,
                "c": COEFFS,
                "Q_max": {
                    "desc": "Largest modulus.",
                    "mandatory": True,
                    "type": "int"
                },
                "P_max": {
                    "desc": "Largest prime of the Euler product, 0 to skip.",
                    "mandatory": False,
                    "default": 0,
                    "type": "int"
                },
                "H": {
                    "desc": "Prime power depth of the Euler factors.",
                    "mandatory": False,
                    "default": 1,
                    "type": "int"
                }
            }
        },
        "local-density": {
            "desc": "p-adic density via M(p^H) and via A(p^h)",
            "params": {
                "form": FORM,
                "c": COEFFS,
                "p": {
                    "desc": "The prime.",
                    "mandatory": True,
                    "type": "int"
                },
                "H": {
                    "desc": "Comma-separated depths.",
                    "mandatory": True,
                    "type": "ints"
                },
                "h": {
                    "desc": "Valuation for the Hensel census, -1 to skip.",
                    "mandatory": False,
                    "default": -1,
                    "type": "int"
                }
            }
        },
        "real-density": {
            "desc": "mu_T by randomised quasi-Monte Carlo",
            "params": dict({
                "form": FORM,
                "c": COEFFS,
                "T": {
                    "desc": "Comma-separated kernel widths.",
                    "mandatory": True,
                    "type": "rationals"
                }
            }, **SAMPLING)
        },
        "asymptotic": {
            "desc": "Exact R(X) against the predicted main term",
            "params": dict({
                "form": FORM,
                "c": COEFFS,
                "X": {
                    "desc": "Comma-separated box sizes.",
                    "mandatory": True,
                    "type": "ints"
                },
                "Q_max": {
                    "desc": "Largest modulus of the singular series.",
                    "mandatory": False,
                    "default": 6,
                    "type": "int"
                },
                "T": {
                    "desc": "Kernel width of the real density.",
                    "mandatory": False,
                    "default": 8.0,
                    "type": "float"
                },
                "H": {
                    "desc": "Depth of the p-adic densities.",
                    "mandatory": False,
                    "default": 1,
                    "type": "int"
                }
            }, **SAMPLING)
        }
    }
}
