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

"""Binary forms, derivative bases and translation structure."""

import itertools
import logging
import math
import re

from fractions import Fraction
from tokenize import TokenError

import numpy as np
import sympy

from sympy.parsing.sympy_parser import convert_xor
from sympy.parsing.sympy_parser import parse_expr
from sympy.parsing.sympy_parser import standard_transformations
from sympy.polys.polyerrors import BasePolynomialError

from binform_core.errors import BasisTransformRequired
from binform_core.errors import DegenerateForm
from binform_core.errors import DegreeTooSmall
from binform_core.errors import DimensionMismatch
from binform_core.errors import FormSyntaxError
from binform_core.errors import NotHomogeneous
from binform_core.errors import ZeroForm
from binform_core.linalg import denominator_lcm

X, Y = sympy.symbols("x y")

FORM_TEXT = re.compile(r"^[\sxy0-9+\-*^()]+$")

TRANSFORMATIONS = standard_transformations + (convert_xor,)

LOG = logging.getLogger(__name__)


class BinaryForm:
    """A binary form sum_i a_i x^(k-i) y^i with integer coefficients."""

    __slots__ = ("_degree", "_coeffs")

    def __init__(self, degree, coeffs):

        coeffs = tuple(int(coeff) for coeff in coeffs)

        if degree < 0:
            raise ValueError("Degree must be non-negative, got %s" % degree)

        if len(coeffs) != degree + 1:
            raise DimensionMismatch("Degree %u form needs %u coefficients, "
                                    "got %u" % (degree, degree + 1,
                                                len(coeffs)))

        self._degree = int(degree)
        self._coeffs = coeffs

    @classmethod
    def zero(cls, degree=0):
        """Return the zero form of the given degree."""

        return cls(degree, [0] * (degree + 1))

    @property
    def degree(self):
        """Return degree."""

        return self._degree

    @property
    def coeffs(self):
        """Return coefficients, highest power of x first."""

        return self._coeffs

    @property
    def is_zero(self):
        """Return True for the zero form."""

        return not any(self._coeffs)

    @property
    def content(self):
        """Return the gcd of the coefficients."""

        return math.gcd(*self._coeffs)

    @property
    def is_pure_x(self):
        """Return True if the form is a multiple of x^k."""

        return not any(self._coeffs[1:])

    @property
    def is_pure_y(self):
        """Return True if the form is a multiple of y^k."""

        return not any(self._coeffs[:-1])

    def __call__(self, x, y):

        k = self._degree

        return sum(coeff * x ** (k - i) * y ** i
                   for i, coeff in enumerate(self._coeffs) if coeff)

    def evaluate_array(self, x, y):
        """Evaluate on numpy arrays."""

        k = self._degree
        result = np.zeros(np.broadcast(x, y).shape)

        for i, coeff in enumerate(self._coeffs):
            if coeff:
                result = result + coeff * np.power(x, k - i) * \
                    np.power(y, i)

        return result

    def derivative(self, u, v):
        """Return the derivative d^(u+v) / dx^u dy^v."""

        if u < 0 or v < 0:
            raise ValueError("Derivative orders must be non-negative")

        k = self._degree

        if u + v > k:
            return BinaryForm.zero()

        coeffs = [0] * (k - u - v + 1)

        for i, coeff in enumerate(self._coeffs):

            if i < v or k - i < u:
                continue

            coeffs[i - v] = coeff * math.perm(k - i, u) * math.perm(i, v)

        return BinaryForm(k - u - v, coeffs)

    def scale(self, factor):
        """Return factor times the form."""

        return BinaryForm(self._degree, [factor * c for c in self._coeffs])

    def primitive(self):
        """Return the form with coprime coefficients, leading one positive."""

        if self.is_zero:
            return self

        content = self.content
        lead = next(c for c in self._coeffs if c)

        if lead < 0:
            content = -content

        return BinaryForm(self._degree, [c // content for c in self._coeffs])

    def to_sympy(self, x=X, y=Y):
        """Return a sympy expression in the given symbols."""

        k = self._degree

        return sum((coeff * x ** (k - i) * y ** i
                    for i, coeff in enumerate(self._coeffs)),
                   sympy.Integer(0))

    def to_dict(self):
        """Return JSON representation."""

        return {"degree": self._degree, "coeffs": list(self._coeffs)}

    def __eq__(self, other):

        if not isinstance(other, BinaryForm):
            return NotImplemented

        return self._degree == other.degree and self._coeffs == other.coeffs

    def __hash__(self):

        return hash((self._degree, self._coeffs))

    def __repr__(self):

        return "BinaryForm(%u, %s)" % (self._degree, list(self._coeffs))

    def __str__(self):

        k = self._degree
        terms = []

        for i, coeff in enumerate(self._coeffs):

            if not coeff:
                continue

            powers = []

            if k - i:
                powers.append("x" if k - i == 1 else "x^%u" % (k - i))

            if i:
                powers.append("y" if i == 1 else "y^%u" % i)

            if not powers:
                term = str(abs(coeff))
            elif abs(coeff) == 1:
                term = "*".join(powers)
            else:
                term = "*".join([str(abs(coeff))] + powers)

            if not terms:
                terms.append(term if coeff > 0 else "-" + term)
            else:
                terms.append(("+ " if coeff > 0 else "- ") + term)

        return " ".join(terms) if terms else "0"


def parse_form(text):
    """Parse an integer binary form written in x, y with + - * ^."""

    if not isinstance(text, str) or not text.strip():
        raise FormSyntaxError("Empty form text")

    if not FORM_TEXT.match(text):
        raise FormSyntaxError("Unexpected characters in '%s'" % text)

    try:
        expr = parse_expr(text, local_dict={"x": X, "y": Y},
                          transformations=TRANSFORMATIONS)
        poly = sympy.Poly(expr, X, Y)
    except (SyntaxError, TokenError, TypeError, AttributeError,
            BasePolynomialError) as ex:
        raise FormSyntaxError("Unable to parse '%s': %s" % (text, ex)) \
            from ex

    if not poly.domain.is_ZZ:
        raise FormSyntaxError("Non-integer coefficients in '%s'" % text)

    if poly.is_zero:
        raise ZeroForm("Form '%s' is zero" % text)

    if not poly.is_homogeneous:
        raise NotHomogeneous("Form '%s' mixes total degrees" % text)

    degree = poly.total_degree()
    coeffs = [int(poly.coeff_monomial(X ** (degree - i) * Y ** i))
              for i in range(degree + 1)]

    return BinaryForm(degree, coeffs)


def partial_derivative(form, u, v):
    """Return the derivative d^(u+v) form / dx^u dy^v."""

    return form.derivative(u, v)


def degenerate_factorization(form):
    """Return (a, b, c) with form = a (bx + cy)^k, or None.

    The coefficient vector of a degenerate form is a multiple of the binomial
    expansion of (bx + cy)^k, so the ratio a_1/(k a_0) fixes c/b and every
    other coefficient must follow from it.
    """

    if form.is_zero:
        raise ZeroForm("The zero form has no factorization")

    k = form.degree
    coeffs = form.coeffs

    if k == 0:
        return coeffs[0], 0, 0

    if coeffs[0] == 0:

        if any(coeffs[:-1]):
            return None

        return coeffs[-1], 0, 1

    ratio = Fraction(coeffs[1], k * coeffs[0])

    for i, coeff in enumerate(coeffs):
        if coeff != coeffs[0] * math.comb(k, i) * ratio ** i:
            return None

    b, c = ratio.denominator, ratio.numerator

    return coeffs[0] // b ** k, b, c


def is_degenerate(form):
    """Return True iff form = a (bx + cy)^k for integers a, b, c."""

    return degenerate_factorization(form) is not None


def _rank(rows):
    """Return the exact rank of a list of integer or rational rows."""

    if not rows:
        return 0

    return sympy.Matrix(rows).rank()


class DerivativeBasis:
    """An ordered maximal independent set F_1..F_N of derivatives."""

    def __init__(self, form, forms, origins=None):

        self._form = form
        self._forms = tuple(forms)
        self._origins = tuple(origins) if origins else None

        degrees = [f.degree for f in self._forms]

        if any(d1 < d2 for d1, d2 in zip(degrees, degrees[1:])):
            raise ValueError("Basis forms must have decreasing degrees")

        self._degrees = tuple(degrees)
        self._gradients = None
        self._taylor = None

    @property
    def form(self):
        """Return the form the basis was derived from."""

        return self._form

    @property
    def forms(self):
        """Return forms."""

        return self._forms

    @property
    def origins(self):
        """Return the (u, v) of each form, or None after a transform."""

        return self._origins

    @property
    def degrees(self):
        """Return degrees."""

        return self._degrees

    @property
    def k(self):
        """Return degree of the underlying form."""

        return self._form.degree

    @property
    def N(self):
        """Return the differential dimension."""

        return len(self._forms)

    @property
    def K(self):
        """Return the differential degree."""

        return sum(self._degrees)

    @property
    def M(self):
        """Return ceil(N/2)."""

        return (self.N + 1) // 2

    @property
    def gradients(self):
        """Return the pairs (F_i^{1,0}, F_i^{0,1})."""

        if self._gradients is None:
            self._gradients = tuple((f.derivative(1, 0), f.derivative(0, 1))
                                    for f in self._forms)

        return self._gradients

    def evaluate(self, point):
        """Return (F_1(x), ..., F_N(x))."""

        x, y = point

        return tuple(f(x, y) for f in self._forms)

    def block(self, degree):
        """Return the indices of the forms of the given degree."""

        return [i for i, d in enumerate(self._degrees) if d == degree]

    def express(self, form):
        """Return the rational coordinates of form in the basis.

        Forms of distinct degrees are independent, so the solve only involves
        the block of basis forms sharing the degree of the input.
        """

        coords = [Fraction(0)] * self.N

        if form.is_zero:
            return tuple(coords)

        block = self.block(form.degree)

        if not block:
            raise ValueError("%s is not in the span of the basis" % form)

        matrix = sympy.Matrix([list(self._forms[i].coeffs)
                               for i in block]).T
        target = sympy.Matrix(list(form.coeffs))

        try:
            solution, params = matrix.gauss_jordan_solve(target)
        except ValueError as ex:
            raise ValueError("%s is not in the span of the basis" % form) \
                from ex

        if params.shape[0]:
            raise ValueError("Basis forms are not independent")

        for i, value in zip(block, solution):
            coords[i] = Fraction(int(value.p), int(value.q))

        return tuple(coords)

    @property
    def taylor_coordinates(self):
        """Return, per form, the coordinates of its non-constant derivatives.

        Entry i maps (u, v) with 1 <= u + v < k_i to the coordinates of
        F_i^{u,v}.
        """

        if self._taylor is None:

            taylor = []

            for form in self._forms:
                entry = {}
                for order in range(1, form.degree):
                    for u in range(order + 1):
                        entry[(u, order - u)] = \
                            self.express(form.derivative(u, order - u))
                taylor.append(entry)

            self._taylor = tuple(taylor)

        return self._taylor

    def to_dict(self):
        """Return JSON representation."""

        return {
            "form": self._form.to_dict(),
            "forms": [f.to_dict() for f in self._forms],
            "N": self.N,
            "K": self.K,
            "M": self.M
        }

    def __repr__(self):

        return "DerivativeBasis(%s, N=%u, K=%u)" % (self._form, self.N,
                                                    self.K)


def derivative_basis(form):
    """Return the derivative basis of a form of degree at least two.

    Derivatives are generated in (u + v, u) order and a derivative is kept iff
    it raises the rank of its degree block; kept forms are made primitive.
    """

    if form.is_zero:
        raise ZeroForm("The zero form has no derivative basis")

    if form.degree < 2:
        raise DegreeTooSmall("Derivative basis needs degree >= 2, got %u" %
                             form.degree)

    forms = []
    origins = []

    for order in range(form.degree):

        rows = []

        for u in range(order + 1):

            derivative = form.derivative(u, order - u)

            if derivative.is_zero:
                continue

            candidate = rows + [list(derivative.coeffs)]

            if _rank(candidate) > len(rows):
                rows = candidate
                forms.append(derivative.primitive())
                origins.append((u, order - u))

    basis = DerivativeBasis(form, forms, origins)

    LOG.debug("Basis of %s: N=%u K=%u", form, basis.N, basis.K)

    return basis


def derivative_counts(basis):
    """Return the number of basis forms of each degree."""

    counts = {}

    for degree in basis.degrees:
        counts[degree] = counts.get(degree, 0) + 1

    return counts


def evaluate_F(basis, point):
    """Return (F_1(x), ..., F_N(x))."""

    return basis.evaluate(point)


def translation_matrix(basis, xi, verify=True):
    """Return (Xi, F(xi)) with F(x + xi) = Xi F(x) + F(xi).

    Column-vector convention: row i expresses F_i(x + xi). Entries off the
    diagonal vanish unless the column degree is lower than the row degree.
    """

    xi1, xi2 = xi
    size = basis.N
    matrix = [[Fraction(int(i == j)) for j in range(size)]
              for i in range(size)]

    for i, entry in enumerate(basis.taylor_coordinates):
        for (u, v), coords in entry.items():
            weight = Fraction(xi1 ** u * xi2 ** v,
                              math.factorial(u) * math.factorial(v))
            for j, coord in enumerate(coords):
                if coord:
                    matrix[i][j] += weight * coord

    matrix = tuple(tuple(row) for row in matrix)
    shift = basis.evaluate(xi)

    if verify:
        _verify_translation(basis, xi, matrix, shift)

    return matrix, shift


def _verify_translation(basis, xi, matrix, shift):
    """Check the translation identity symbolically."""

    for i, form in enumerate(basis.forms):

        lhs = form.to_sympy(X + xi[0], Y + xi[1])
        rhs = sum((sympy.Rational(entry.numerator, entry.denominator) *
                   basis.forms[j].to_sympy()
                   for j, entry in enumerate(matrix[i]) if entry),
                  sympy.Integer(shift[i]))

        if sympy.expand(lhs - rhs) != 0:
            raise ArithmeticError("Translation identity fails for F_%u" %
                                  (i + 1))


def gamma_values(basis, alpha, y):
    """Return (gamma_2, ..., gamma_N) for frequency alpha and shift y.

    gamma_j = sum_{i<j} alpha_i Xi_y[i][j], so that
    alpha . (F(x + y) - F(x) - F(y)) = sum_{j>=2} gamma_j F_j(x).
    """

    if len(alpha) != basis.N:
        raise DimensionMismatch("Frequency has %u entries, basis has %u" %
                                (len(alpha), basis.N))

    matrix, _ = translation_matrix(basis, y, verify=False)

    return tuple(sum(alpha[i] * matrix[i][j] for i in range(j))
                 for j in range(1, basis.N))


def shift_identity_holds(basis, alpha, y):
    """Check the shift identity symbolically for a rational alpha."""

    alpha = [Fraction(a) for a in alpha]
    gammas = gamma_values(basis, alpha, y)

    def rational(value):
        return sympy.Rational(value.numerator, value.denominator)

    lhs = sum((rational(a) * (f.to_sympy(X + y[0], Y + y[1]) -
                              f.to_sympy() - f(*y))
               for a, f in zip(alpha, basis.forms)), sympy.Integer(0))
    rhs = sum((rational(g) * f.to_sympy()
               for g, f in zip(gammas, basis.forms[1:])), sympy.Integer(0))

    return sympy.expand(lhs - rhs) == 0


class ShiftStructure:
    """Derivative coefficients, index sets and inversion blocks."""

    def __init__(self, basis, lambda_x, lambda_y, index_sets, blocks, L1,
                 L2):

        self._basis = basis
        self._lambda_x = lambda_x
        self._lambda_y = lambda_y
        self._index_sets = index_sets
        self._blocks = blocks
        self._L1 = L1
        self._L2 = L2

    @property
    def basis(self):
        """Return the basis the structure refers to."""

        return self._basis

    @property
    def lambda_x(self):
        """Return {(r, i, j): lambda_ij^{r,0}}."""

        return self._lambda_x

    @property
    def lambda_y(self):
        """Return {(r, i, j): lambda_ij^{0,r}}."""

        return self._lambda_y

    @property
    def index_sets(self):
        """Return {1: I_1, 2: I_2} as tuples of 0-based indices."""

        return self._index_sets

    @property
    def blocks(self):
        """Return {axis: {d: (rows, columns, A_d, B_d)}}."""

        return self._blocks

    @property
    def L1(self):
        """Return the lambda denominator lcm."""

        return self._L1

    @property
    def L2(self):
        """Return the B_d denominator lcm."""

        return self._L2

    @property
    def L(self):
        """Return L = L2 L1 k!."""

        return self._L2 * self._L1 * math.factorial(self._basis.k)

    def lambdas(self, axis):
        """Return the lambda tensor for axis 1 (x) or 2 (y)."""

        return self._lambda_x if axis == 1 else self._lambda_y

    def to_dict(self):
        """Return JSON representation."""

        def fmt(value):
            return str(value)

        return {
            "basis": self._basis.to_dict(),
            "I_1": list(self._index_sets[1]),
            "I_2": list(self._index_sets[2]),
            "L1": self._L1,
            "L2": self._L2,
            "L": self.L,
            "lambda_x": {"%u,%u,%u" % key: fmt(value)
                         for key, value in self._lambda_x.items()},
            "lambda_y": {"%u,%u,%u" % key: fmt(value)
                         for key, value in self._lambda_y.items()}
        }


def _derivative_lambdas(basis, axis):
    """Return {(r, i, j): lambda} expressing F_i^{r,0} (or F_i^{0,r})."""

    lambdas = {}

    for i, form in enumerate(basis.forms):
        for r in range(1, form.degree):
            derivative = form.derivative(r, 0) if axis == 1 else \
                form.derivative(0, r)
            coords = basis.express(derivative)
            for j, coord in enumerate(coords):
                if coord:
                    lambdas[(r, i, j)] = coord

    return lambdas


def _index_set(basis, axis):
    """Return I_axis for the basis as it stands, or None.

    For axis 1 the complement must consist of pure y powers and the span of
    the set must avoid Q[y]; forms of distinct degrees are independent so the
    span test runs per degree block. Axis 2 is the mirror image.
    """

    indices = []

    for i, form in enumerate(basis.forms):

        if form.degree < 2:
            continue

        pure = form.is_pure_y if axis == 1 else form.is_pure_x

        if not pure:
            indices.append(i)

    for degree in set(basis.degrees[i] for i in indices):

        rows = [list(basis.forms[i].coeffs) for i in indices
                if basis.degrees[i] == degree]
        monomial = [0] * (degree + 1)
        monomial[-1 if axis == 1 else 0] = 1

        if _rank(rows + [monomial]) == _rank(rows):
            return None

    return tuple(indices)


def _inversion_blocks(basis, lambdas, indices):
    """Return {d: (rows, columns, A_d, B_d)} with A_d B_d = (I | 0)."""

    blocks = {}

    for degree in sorted(set(basis.degrees[i] for i in indices)):

        rows = [i for i in indices if basis.degrees[i] == degree]
        others = [i for i in basis.block(degree) if i not in rows]
        columns = basis.block(degree - 1)

        matrix = sympy.Matrix([[lambdas.get((1, i, j), 0) for j in columns]
                               for i in rows])

        if matrix.rank() < len(rows):
            return None

        inverse = matrix.T * (matrix * matrix.T).inv()
        padded = inverse.row_join(sympy.zeros(len(columns), len(others)))

        as_fractions = tuple(tuple(Fraction(int(e.p), int(e.q)) for e in row)
                             for row in padded.tolist())
        a_matrix = tuple(tuple(Fraction(e) for e in row)
                         for row in matrix.tolist())

        blocks[degree] = (tuple(rows), tuple(columns), a_matrix,
                          as_fractions)

    return blocks


def _try_structure(basis):
    """Return a ShiftStructure for the basis as it stands, or None."""

    lambda_x = _derivative_lambdas(basis, 1)
    lambda_y = _derivative_lambdas(basis, 2)

    index_sets = {}
    blocks = {}

    for axis, lambdas in ((1, lambda_x), (2, lambda_y)):

        indices = _index_set(basis, axis)

        if indices is None:
            return None

        axis_blocks = _inversion_blocks(basis, lambdas, indices)

        if axis_blocks is None:
            return None

        index_sets[axis] = indices
        blocks[axis] = axis_blocks

    L1 = denominator_lcm(itertools.chain(lambda_x.values(),
                                         lambda_y.values()))
    L2 = denominator_lcm(entry
                         for axis_blocks in blocks.values()
                         for _, _, _, inverse in axis_blocks.values()
                         for row in inverse for entry in row)

    return ShiftStructure(basis, lambda_x, lambda_y, index_sets, blocks, L1,
                          L2)


def _echelon_basis(basis):
    """Return the basis with each block in reduced echelon form.

    Columns are ordered by decreasing x-exponent, which is the coefficient
    order of BinaryForm.
    """

    forms = []

    for degree in sorted(set(basis.degrees), reverse=True):

        block = [basis.forms[i] for i in basis.block(degree)]

        if degree < 2:
            forms.extend(block)
            continue

        reduced, _ = sympy.Matrix([list(f.coeffs) for f in block]).rref()

        for row in reduced.tolist():

            if not any(row):
                continue

            scale = denominator_lcm(Fraction(int(e.p), int(e.q))
                                    for e in row)
            coeffs = [int(e * scale) for e in row]
            forms.append(BinaryForm(degree, coeffs).primitive())

    return DerivativeBasis(basis.form, forms)


def shift_structure(basis):
    """Return the shift structure of the basis of a non-degenerate form."""

    if is_degenerate(basis.form):
        raise DegenerateForm("%s is degenerate" % basis.form)

    structure = _try_structure(basis)

    if structure is None:

        LOG.info("Index sets unavailable for %s, reducing basis blocks",
                 basis.form)

        structure = _try_structure(_echelon_basis(basis))

        if structure is None:
            raise BasisTransformRequired("No index sets I_1, I_2 for %s" %
                                         basis.form)

    return structure


def corpus(degrees, bound):
    """Return the primitive forms with given degrees and coefficient bound.

    Forms are listed degree by degree in lexicographic coefficient order; the
    sign is fixed by making the first non-zero coefficient positive.
    """

    forms = []

    for degree in degrees:
        for coeffs in itertools.product(range(-bound, bound + 1),
                                        repeat=degree + 1):

            if not any(coeffs) or math.gcd(*coeffs) != 1:
                continue

            if next(c for c in coeffs if c) < 0:
                continue

            forms.append(BinaryForm(degree, coeffs))

    return forms
