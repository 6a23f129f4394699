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

"""Circle method quantities: sums, integrals, arcs and densities."""

import functools
import itertools
import logging
import math

from fractions import Fraction

import numpy as np
import sympy

from scipy import integrate
from scipy.stats import qmc

from binform_core.budget import get_budget
from binform_core.census import CoefficientTuple
from binform_core.census import PointSet
from binform_core.census import count_M_mod
from binform_core.census import count_R
from binform_core.errors import BudgetExceeded
from binform_core.errors import DimensionMismatch
from binform_core.errors import QuadratureBudgetExceeded
from binform_core.linalg import integer_determinant
from binform_core.linalg import valuation

MAJOR = "major"
MINOR = "minor"

DEFAULT_PANELS = 4
DEFAULT_NODES = 8
DEFAULT_MAX_PANELS = 512
DEFAULT_RTOL = 1e-8
DEFAULT_SAMPLES = 16384
DEFAULT_BLOCKS = 16

IMAG_TOLERANCE = 1e-9

CHUNK = 4096
BLOCK = 2 ** 20

LOG = logging.getLogger(__name__)


def _csum(values):
    """Return the compensated sum of an array of complex numbers."""

    values = np.asarray(values)

    return complex(math.fsum(values.real), math.fsum(values.imag))


def _check_alpha(basis, alpha):

    if len(alpha) != basis.N:
        raise DimensionMismatch("Frequency has %u entries, basis has %u" %
                                (len(alpha), basis.N))


def _check_real(name, value):

    if abs(value.imag) > IMAG_TOLERANCE * max(1.0, abs(value)):
        LOG.warning("%s has imaginary part %g", name, value.imag)


def parse_rational(text):
    """Return a Fraction from 'p/q' or a decimal."""

    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as ex:
        raise ValueError("Invalid rational '%s'" % text) from ex


def exp_sum_f(basis, alpha, X):
    """Return f(alpha) = sum over x in [X]^2 of e(alpha . F(x))."""

    _check_alpha(basis, alpha)

    X = int(X)
    coeffs = [(float(coeff), form) for coeff, form in zip(alpha, basis.forms)
              if coeff]

    side = np.arange(1, X + 1, dtype=float)
    rows = max(1, BLOCK // max(X, 1))
    partials = []

    for start in range(1, X + 1, rows):

        block = np.arange(start, min(X, start + rows - 1) + 1, dtype=float)
        x, y = np.meshgrid(block, side, indexing="ij")
        phase = np.zeros_like(x)

        for coeff, form in coeffs:
            phase = np.mod(phase + coeff * form.evaluate_array(x, y), 1.0)

        partials.append(_csum(np.exp(2j * np.pi * phase).ravel()))

    return _csum(partials)


@functools.lru_cache(maxsize=64)
def _residue_table(basis, q):
    """Return F_i(z) mod q for z in [q]^2, as an N x q^2 array."""

    points = itertools.product(range(q), repeat=2)
    columns = [[v % q for v in basis.evaluate(point)] for point in points]

    return np.array(columns, dtype=np.int64).T


def _roots(q):

    return np.exp(2j * np.pi * np.arange(q) / q)


def complete_sum_S(basis, q, a):
    """Return S(q, a) = sum over z in [q]^2 of e(a . F(z) / q)."""

    if q < 1:
        raise ValueError("q must be positive, got %s" % q)

    _check_alpha(basis, a)

    vector = np.array([int(v) % q for v in a], dtype=np.int64)
    phases = (vector @ _residue_table(basis, q)) % q

    return _csum(_roots(q)[phases])


def complete_sum_ratio(basis, q, a):
    """Return |S(q, a)| / q^(2 - 1/k)."""

    return abs(complete_sum_S(basis, q, a)) / q ** (2 - 1 / basis.k)


def _all_complete_sums(basis, q, budget):
    """Return S(q, a) for every a in [q]^N, indexed in mixed radix q."""

    budget.charge("q^N", q ** basis.N)

    table = _residue_table(basis, q)
    roots = _roots(q)
    total = q ** basis.N
    sums = np.empty(total, dtype=complex)

    for start in range(0, total, CHUNK):
        stop = min(total, start + CHUNK)
        vectors = _index_vectors(np.arange(start, stop), q, basis.N)
        phases = (vectors @ table) % q
        sums[start:stop] = roots[phases].sum(axis=1)

    return sums


def _index_vectors(indices, q, size):
    """Return the base-q digit vectors of the given indices."""

    digits = np.empty((len(indices), size), dtype=np.int64)
    rest = np.array(indices, dtype=np.int64)

    for position in range(size - 1, -1, -1):
        digits[:, position] = rest % q
        rest = rest // q

    return digits


def complete_sum_record(basis, q, a=None, budget=None):
    """Return {q, a, S, ratio} with ratio = |S(q, a)| / q^(2 - 1/k).

    Without a, the record is the maximum over a in [q]^N with (q, a) = 1.
    """

    if q < 1:
        raise ValueError("q must be positive, got %s" % q)

    budget = get_budget(budget)

    if a is None:

        sums = _all_complete_sums(basis, q, budget)
        best, index = -1.0, 0

        for start in range(0, len(sums), CHUNK):
            stop = min(len(sums), start + CHUNK)
            vectors = _index_vectors(np.arange(start, stop), q, basis.N)
            common = np.gcd(np.gcd.reduce(vectors, axis=1), q)
            values = np.where(common == 1, np.abs(sums[start:stop]), -1.0)
            position = int(np.argmax(values))
            if values[position] > best:
                best, index = float(values[position]), start + position

        a = _index_vectors([index], q, basis.N)[0]

    else:
        budget.charge("q^2", q * q)

    a = tuple(int(v) for v in a)

    return {"q": q, "a": a, "S": complete_sum_S(basis, q, a),
            "ratio": complete_sum_ratio(basis, q, a)}


def complete_sum_profile(basis, q_max, budget=None):
    """Return the records of q = 1..q_max."""

    budget = get_budget(budget)

    return [complete_sum_record(basis, q, budget=budget)
            for q in range(1, q_max + 1)]


def integral_I(basis, beta, X, panels=DEFAULT_PANELS, nodes=DEFAULT_NODES,
               max_panels=DEFAULT_MAX_PANELS, rtol=DEFAULT_RTOL):
    """Return (I(beta; X), error estimate).

    After the substitution gamma = X t the phase is sum beta_i X^k_i F_i(t)
    on the unit square. Tensor Gauss-Legendre panels are doubled until two
    successive estimates agree to rtol.
    """

    _check_alpha(basis, beta)

    if X <= 0:
        raise ValueError("X must be positive, got %s" % X)

    scaled = [float(b) * float(X) ** k for b, k in zip(beta, basis.degrees)]
    count = max(panels, int(math.ceil(1 + sum(abs(b) for b in scaled))))

    if count > max_panels:
        raise QuadratureBudgetExceeded("panels", count, max_panels)

    base_nodes, base_weights = np.polynomial.legendre.leggauss(nodes)

    def estimate(panels):
        edges = np.linspace(0.0, 1.0, panels + 1)
        half = np.diff(edges) / 2
        mid = (edges[:-1] + edges[1:]) / 2
        t = (mid[:, None] + half[:, None] * base_nodes[None, :]).ravel()
        w = (half[:, None] * base_weights[None, :]).ravel()
        x, y = np.meshgrid(t, t, indexing="ij")
        phase = np.zeros_like(x)
        for coeff, form in zip(scaled, basis.forms):
            if coeff:
                phase = phase + coeff * form.evaluate_array(x, y)
        values = np.exp(2j * np.pi * phase) * np.outer(w, w)
        return _csum(values.ravel())

    previous = estimate(count)

    while True:

        if 2 * count > max_panels:
            raise QuadratureBudgetExceeded("panels", 2 * count, max_panels)

        count *= 2
        current = estimate(count)
        error = abs(current - previous)

        LOG.debug("I: %u panels, change %g", count, error)

        if error <= rtol * max(abs(current), 1e-300) or error == 0.0:
            scale = float(X) ** 2
            return current * scale, error * scale

        previous = current


def major_arc_approx_V(basis, alpha, q, a, X, **quadrature):
    """Return V(alpha; q, a) = q^-2 S(q, a) I(alpha - a/q; X)."""

    _check_alpha(basis, alpha)

    beta = [Fraction(al) - Fraction(ai, q) if isinstance(al, (int, Fraction))
            else float(al) - ai / q for al, ai in zip(alpha, a)]
    value, _ = integral_I(basis, beta, X, **quadrature)

    return complete_sum_S(basis, q, a) * value / q ** 2


def compare_f_V(basis, alpha, q, a, X, **quadrature):
    """Return f, V, |f - V| and the envelope X (q + sum |q a_i - a_i| X^k_i)."""

    f = exp_sum_f(basis, alpha, X)
    V = major_arc_approx_V(basis, alpha, q, a, X, **quadrature)

    envelope = X * (q + sum(abs(q * float(al) - ai) * X ** k
                            for al, ai, k in zip(alpha, a, basis.degrees)))

    return {"X": X, "q": q, "f": f, "V": V, "difference": abs(f - V),
            "envelope": envelope, "ratio": abs(f - V) / envelope}


class ArcLabel:
    """Major or minor arc certificate of a frequency."""

    def __init__(self, kind, q, a, residual):

        self.kind = kind
        self.q = q
        self.a = tuple(a)
        self.residual = tuple(residual)

    @property
    def is_major(self):
        """Return True on the major arcs."""

        return self.kind == MAJOR

    def to_dict(self):
        """Return JSON representation."""

        return {"kind": self.kind, "q": self.q, "a": list(self.a),
                "residual": [float(r) for r in self.residual]}

    def __repr__(self):

        return "ArcLabel(%s, q=%u, a=%s)" % (self.kind, self.q, self.a)


def arc_dissect(basis, alpha, X):
    """Classify alpha as major or minor at height X.

    Scans q <= X^(1/4) and rounds q alpha_i to the nearest integer; the
    membership test |q alpha_i - a_i| <= X^(1/4 - k_i) is made exact by
    raising both sides to the fourth power.
    """

    _check_alpha(basis, alpha)

    alpha = [Fraction(v) for v in alpha]
    X = Fraction(X)

    if X < 1:
        raise ValueError("X must be at least 1, got %s" % X)

    best = None
    q = 1

    while Fraction(q) ** 4 <= X:

        a = [math.floor(q * v + Fraction(1, 2)) for v in alpha]
        residual = [abs(q * v - ai) for v, ai in zip(alpha, a)]

        if math.gcd(q, *a) == 1:

            if all(r ** 4 * X ** (4 * k - 1) <= 1
                   for r, k in zip(residual, basis.degrees)):
                return ArcLabel(MAJOR, q, a, residual)

            score = max(float(r) * float(X) ** (k - 0.25)
                        for r, k in zip(residual, basis.degrees))

            if best is None or score < best[0]:
                best = (score, q, a, residual)

        q += 1

    _, q, a, residual = best

    return ArcLabel(MINOR, q, a, residual)


def A_of_q(basis, c, q, budget=None):
    """Return A(q) = q^-2s sum over (q, a) = 1 of S(q, c_1 a)...S(q, c_s a)."""

    c = c if isinstance(c, CoefficientTuple) else CoefficientTuple(c)
    budget = get_budget(budget)

    if q == 1:
        return complex(1.0)

    sums = _all_complete_sums(basis, q, budget)
    radix = q ** np.arange(basis.N - 1, -1, -1, dtype=np.int64)

    total = []

    for start in range(0, len(sums), CHUNK):

        indices = np.arange(start, min(len(sums), start + CHUNK))
        vectors = _index_vectors(indices, q, basis.N)
        coprime = np.gcd.reduce(np.column_stack(
            [vectors, np.full(len(vectors), q)]), axis=1) == 1

        product = np.ones(len(vectors), dtype=complex)

        for cj in c:
            product = product * sums[((cj * vectors) % q) @ radix]

        total.append(product[coprime])

    value = _csum(np.concatenate(total)) / float(q) ** (2 * len(c))

    _check_real("A(%u)" % q, value)

    return value


class DensityReport:
    """Partial singular series, p-adic densities and real densities."""

    def __init__(self):

        self.sigma_series = []
        self.tail_exponent = None
        self.sigma_p = {}
        self.mu_T = []

    @property
    def series_value(self):
        """Return the last partial sum of the singular series."""

        return self.sigma_series[-1][1] if self.sigma_series else None

    def to_dict(self):
        """Return JSON representation."""

        return {
            "sigma_series": [[q, value.real, value.imag]
                             for q, value in self.sigma_series],
            "tail_exponent": self.tail_exponent,
            "sigma_p": {str(p): entry for p, entry in self.sigma_p.items()},
            "mu_T": [list(entry) for entry in self.mu_T]
        }


def singular_series(basis, c, Q_max, budget=None, report=None):
    """Return a DensityReport with the partial sums of the singular series.

    The tail label N - s/k is the exponent suggested by the complete sum
    bound; it is reported, never checked.
    """

    if Q_max < 1:
        raise ValueError("Q_max must be at least 1, got %s" % Q_max)

    c = c if isinstance(c, CoefficientTuple) else CoefficientTuple(c)
    budget = get_budget(budget)
    report = report or DensityReport()

    total = complex(0.0)

    for q in range(1, Q_max + 1):
        total += A_of_q(basis, c, q, budget)
        report.sigma_series.append((q, total))

    report.tail_exponent = basis.N - len(c) / basis.k

    _check_real("Singular series", total)

    return report


def series_doublings(report):
    """Return |S(2Q) - S(Q)| for Q = 1, 2, 4, ... within the partial sums."""

    values = dict(report.sigma_series)
    out = []
    Q = 1

    while 2 * Q in values:
        out.append((Q, abs(values[2 * Q] - values[Q])))
        Q *= 2

    return out


def euler_product(basis, c, P_max, H, budget=None):
    """Return (product, factors) of sum_{h <= H} A(p^h) over p <= P_max."""

    budget = get_budget(budget)
    factors = {}
    product = 1.0

    for p in sympy.primerange(2, P_max + 1):
        factor = sum(A_of_q(basis, c, p ** h, budget)
                     for h in range(H + 1)).real
        factors[int(p)] = factor
        product *= factor

    return product, factors


def local_density(basis, c, p, H, budget=None):
    """Return (via_M, via_A, residual) for the p-adic density at level H."""

    c = c if isinstance(c, CoefficientTuple) else CoefficientTuple(c)
    budget = get_budget(budget)

    exponent = H * (2 * len(c) - basis.N)
    count = count_M_mod(basis, c, p ** H, budget=budget)

    via_M = float(Fraction(count) / Fraction(p) ** exponent)
    via_A = sum(A_of_q(basis, c, p ** h, budget).real
                for h in range(H + 1))

    residual = abs(via_M - via_A)

    if residual > 1e-6:
        LOG.warning("Local density identity off by %g at p=%u H=%u",
                    residual, p, H)

    return via_M, via_A, residual


def tent(T, y):
    """Return lambda_T(y) = T max(0, 1 - T|y|)."""

    return T * np.maximum(0.0, 1.0 - T * np.abs(y))


def real_density(basis, c, T, samples=DEFAULT_SAMPLES, blocks=DEFAULT_BLOCKS,
                 seed=0, budget=None):
    """Return (mu_T, standard error) by randomised Sobol sampling.

    Each block is an independently scrambled Sobol sequence; the standard
    error comes from the spread of the block means.
    """

    c = c if isinstance(c, CoefficientTuple) else CoefficientTuple(c)
    budget = get_budget(budget)

    if T <= 0:
        raise ValueError("T must be positive, got %s" % T)

    if blocks < 2:
        raise ValueError("At least two blocks are needed, got %s" % blocks)

    per_block = max(1, samples // blocks)
    power = max(0, int(math.floor(math.log2(per_block))))

    budget.charge("samples", blocks * 2 ** power, error=BudgetExceeded)

    seeds = np.random.SeedSequence(seed).spawn(blocks)
    dimension = 2 * len(c)
    means = []

    for block_seed in seeds:

        sampler = qmc.Sobol(d=dimension, scramble=True,
                            seed=np.random.default_rng(block_seed))
        gamma = sampler.random_base2(power)

        weight = np.ones(len(gamma))

        for form in basis.forms:
            value = np.zeros(len(gamma))
            for j, cj in enumerate(c):
                value = value + cj * form.evaluate_array(gamma[:, 2 * j],
                                                         gamma[:, 2 * j + 1])
            weight = weight * tent(T, value)

        means.append(math.fsum(weight) / len(weight))

    mean = math.fsum(means) / len(means)
    error = float(np.std(means, ddof=1)) / math.sqrt(len(means))

    return mean, error


def fejer_transform(T, y, cutoff=1000.0):
    """Return the Fourier transform of K_T at y by numerical integration.

    K_T(beta) = sinc(beta / T)^2; with beta = T u the transform equals
    2T times the cosine transform of sinc(u)^2 on the half line.
    """

    if T <= 0:
        raise ValueError("T must be positive, got %s" % T)

    def kernel(u):
        return np.sinc(u) ** 2

    frequency = 2 * np.pi * T * abs(y)

    if frequency == 0:
        head, _ = integrate.quad(kernel, 0.0, cutoff, limit=2000)
        tail = 1.0 / (2 * np.pi ** 2 * cutoff)
        return 2 * T * (head + tail)

    value, _ = integrate.quad(kernel, 0.0, np.inf, weight="cos",
                              wvar=frequency, limlst=200, limit=2000)

    return 2 * T * value


def kernel_deficit(beta, T):
    """Return (1 - prod K_T(beta_i)) / min(1, |beta|^2 / T^2)."""

    beta = np.asarray(beta, dtype=float)
    size = float(np.dot(beta, beta))

    if size == 0.0:
        return 0.0

    product = float(np.prod(np.sinc(beta / T) ** 2))

    return (1.0 - product) / min(1.0, size / T ** 2)


def image_contains_subgroup(matrix, p, H, budget=None):
    """Return (h, True iff A (Z/p^H)^n contains p^h (Z/p^H)^n).

    h is the exact power of p dividing det A; requires H >= h + 1.
    """

    budget = get_budget(budget)

    size = len(matrix)
    det = integer_determinant(matrix)

    if det == 0:
        raise ValueError("Singular matrix")

    h = valuation(det, p)

    if H < h + 1:
        raise ValueError("Need H >= h + 1, got H=%u h=%u" % (H, h))

    modulus = p ** H

    budget.charge("p^(Hn)", modulus ** size)

    image = set()

    for vector in itertools.product(range(modulus), repeat=size):
        image.add(tuple(sum(row[j] * vector[j] for j in range(size)) %
                        modulus for row in matrix))

    subgroup = {tuple((p ** h * v) % modulus for v in vector)
                for vector in itertools.product(range(modulus),
                                                repeat=size)}

    return h, subgroup <= image


def _hensel_count(basis, c, p, h, H, budget):
    """Return |B_h(p^H)|."""

    modulus = p ** H
    s = len(c)

    budget.charge("p^(2sH)", modulus ** (2 * s))

    grid = list(itertools.product(range(modulus), repeat=2))
    values = {point: basis.evaluate(point) for point in grid}
    gradients = {point: [(dx(*point), dy(*point))
                         for dx, dy in basis.gradients] for point in grid}

    last = {}

    for point in grid:
        key = tuple((c.c[-1] * v) % modulus for v in values[point])
        last.setdefault(key, []).append(point)

    subsets = list(itertools.combinations(range(2 * s), basis.N))
    count = 0

    for head in itertools.product(grid, repeat=s - 1):

        need = tuple(-sum(cj * values[x][i] for cj, x in zip(c, head))
                     % modulus for i in range(basis.N))

        for point in last.get(need, ()):

            tup = head + (point, )
            columns = []

            for cj, x in zip(c, tup):
                columns.append([cj * g[0] for g in gradients[x]])
                columns.append([cj * g[1] for g in gradients[x]])

            for subset in subsets:
                rows = [[columns[j][i] for j in subset]
                        for i in range(basis.N)]
                residue = integer_determinant(rows) % modulus
                if residue and valuation(residue, p) == h:
                    count += 1
                    break

    return count


def hensel_census(basis, c, p, h, H, budget=None):
    """Return |B_h(p^H)|, |B_h(p^(H+1))| and their ratio."""

    c = c if isinstance(c, CoefficientTuple) else CoefficientTuple(c)
    budget = get_budget(budget)

    base = _hensel_count(basis, c, p, h, H, budget)
    lifted = _hensel_count(basis, c, p, h, H + 1, budget)

    return {
        "p": p,
        "h": h,
        "H": H,
        "count": base,
        "count_next": lifted,
        "ratio": lifted / base if base else None,
        "expected": p ** (2 * len(c) - basis.N)
    }


def asymptotic_report(basis, c, X_list, Q_max, T, H, samples=DEFAULT_SAMPLES,
                      blocks=DEFAULT_BLOCKS, seed=0, budget=None):
    """Return (rows, DensityReport) comparing R(X) with the main term."""

    c = c if isinstance(c, CoefficientTuple) else CoefficientTuple(c)
    budget = get_budget(budget)

    report = singular_series(basis, c, Q_max, budget)

    for p in (2, 3):
        via_M, via_A, residual = local_density(basis, c, p, H, budget)
        report.sigma_p[p] = {"H": H, "via_M": via_M, "via_A": via_A,
                             "residual": residual}

    mu, error = real_density(basis, c, T, samples=samples, blocks=blocks,
                             seed=seed, budget=budget)
    report.mu_T.append((T, mu, error))

    exponent = 2 * len(c) - basis.K
    rows = []

    for X in X_list:

        exact = count_R(basis, c, PointSet.box(X), budget=budget)
        predicted = report.series_value.real * mu * float(X) ** exponent

        rows.append({"X": X, "R": exact, "predicted": predicted,
                     "ratio": exact / predicted if predicted else None})

    return rows, report
