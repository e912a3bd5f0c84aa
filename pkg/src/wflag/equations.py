"""Defining quadrics of the G2 and Gr(2,6) flag varieties, weighted
homogeneity, stratum restriction and a graded Hilbert function oracle."""

from __future__ import annotations

import hashlib
import itertools
import json
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from importlib import resources


class EquationError(ValueError):
    pass


class ResourceLimit(RuntimeError):
    pass


@dataclass(frozen=True)
class WeightedPolynomial:
    """Polynomial over x_1..x_N with rational coefficients.

    `terms` maps exponent tuples to nonzero Fractions.
    """
    terms: tuple  # ((exponents, Fraction), ...) sorted
    variable_weights: tuple

    @classmethod
    def from_dict(cls, terms, weights):
        items = tuple(sorted((tuple(e), Fraction(c)) for e, c in terms.items() if c))
        return cls(items, tuple(weights))

    def as_dict(self):
        return dict(self.terms)

    @property
    def nvars(self):
        return len(self.variable_weights)

    def monomial_degrees(self):
        return sorted({monomial_degree(e, self.variable_weights) for e, _ in self.terms})

    @property
    def degree(self):
        """Weighted degree; raises unless the polynomial is homogeneous."""
        degs = self.monomial_degrees()
        if len(degs) != 1:
            raise EquationError("not weighted-homogeneous: monomial degrees %s" % degs)
        return degs[0]

    def is_homogeneous(self):
        return len(self.monomial_degrees()) <= 1

    def evaluate(self, point):
        total = Fraction(0)
        for e, c in self.terms:
            term = c
            for x, k in zip(point, e):
                if k:
                    term *= Fraction(x) ** k
            total += term
        return total

    def format(self, names=None):
        names = names or ["x%d" % (i + 1) for i in range(self.nvars)]
        parts = []
        for e, c in self.terms:
            mono = "*".join(names[i] if k == 1 else "%s^%d" % (names[i], k)
                            for i, k in enumerate(e) if k)
            parts.append("%s*%s" % (c, mono) if mono else str(c))
        return " + ".join(parts).replace("+ -", "- ") or "0"


@dataclass(frozen=True)
class QuadricSet:
    polynomials: tuple
    variable_weights: tuple
    names: tuple

    def __len__(self):
        return len(self.polynomials)

    def __iter__(self):
        return iter(self.polynomials)

    def degrees(self):
        return [p.degree for p in self.polynomials]

    def to_json(self):
        polys = []
        for p in self.polynomials:
            polys.append([["%d/%d" % (c.numerator, c.denominator),
                           {self.names[i]: k for i, k in enumerate(e) if k}]
                          for e, c in p.terms])
        return {"schema": "wflag-quadrics/1", "variables": list(self.names),
                "weights": list(self.variable_weights), "polynomials": polys}

    @classmethod
    def from_json(cls, doc):
        if isinstance(doc, str):
            doc = json.loads(doc)
        names = tuple(doc["variables"])
        index = {n: i for i, n in enumerate(names)}
        weights = tuple(int(w) for w in doc["weights"])
        polys = []
        for terms in doc["polynomials"]:
            d = {}
            for coeff, mono in terms:
                e = [0] * len(names)
                for name, k in mono.items():
                    e[index[name]] += int(k)
                d[tuple(e)] = d.get(tuple(e), 0) + Fraction(coeff)
            polys.append(WeightedPolynomial.from_dict(d, weights))
        qs = cls(tuple(polys), weights, names)
        _check_homogeneous(qs)
        return qs


def monomial_degree(exps, weights):
    return sum(k * w for k, w in zip(exps, weights))


def _check_homogeneous(qs):
    for i, p in enumerate(qs.polynomials, 1):
        degs = p.monomial_degrees()
        if len(degs) > 1:
            raise EquationError("polynomial %d is not weighted-homogeneous: monomials of "
                                "degrees %s" % (i, degs))


def _unit(n, *idx):
    e = [0] * n
    for i in idx:
        e[i] += 1
    return tuple(e)


def skew_matrix_variables(n=6):
    """Map (i, j), i < j (0-based), to the variable index of the upper-triangular
    entry, numbered row by row."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return {p: k for k, p in enumerate(pairs)}


def pfaffians_gr26():
    """The 15 Pfaffians of the 4x4 principal blocks of the generic 6x6
    skew-symmetric matrix with entries x1..x15."""
    var = skew_matrix_variables(6)
    nv = len(var)
    polys = []
    for deleted in itertools.combinations(range(6), 2):
        i, j, k, l = [r for r in range(6) if r not in deleted]
        terms = {}
        for (a, b), (c, d), sign in (((i, j), (k, l), 1), ((i, k), (j, l), -1),
                                     ((i, l), (j, k), 1)):
            e = _unit(nv, var[a, b], var[c, d])
            terms[e] = terms.get(e, 0) + sign
        polys.append(WeightedPolynomial.from_dict(terms, (1,) * nv))
    # order: deleting {5,6} first, as the upper-left block
    polys.reverse()
    return QuadricSet(tuple(polys), (1,) * nv, tuple("x%d" % (k + 1) for k in range(nv)))


def load_quadrics(path=None, checksum=None):
    """Load a quadric set from JSON, verifying an optional sha256 and homogeneity."""
    if path is None:
        raw = resources.files("wflag.data").joinpath("g2_quadrics.json").read_bytes()
        checksum = (resources.files("wflag.data").joinpath("g2_quadrics.json.sha256")
                    .read_text().strip())
    else:
        with open(path, "rb") as fh:
            raw = fh.read()
    if checksum is not None and hashlib.sha256(raw).hexdigest() != checksum:
        raise EquationError("checksum mismatch for quadric data")
    return QuadricSet.from_json(raw.decode())


def g2_quadrics():
    return load_quadrics()


def assign_weights(qs, assignment):
    """Attach variable weights (a sequence, or a mapping by name or 1-based index)."""
    if isinstance(assignment, dict):
        weights = []
        for i, name in enumerate(qs.names):
            if name in assignment:
                weights.append(assignment[name])
            elif i + 1 in assignment:
                weights.append(assignment[i + 1])
            else:
                raise EquationError("no weight given for variable %s" % name)
    else:
        weights = list(assignment)
        if len(weights) != len(qs.names):
            raise EquationError("expected %d weights, got %d" % (len(qs.names), len(weights)))
    weights = tuple(int(w) for w in weights)
    if min(weights) < 1:
        raise EquationError("variable weights must be positive")
    polys = tuple(replace(p, variable_weights=weights) for p in qs.polynomials)
    out = QuadricSet(polys, weights, qs.names)
    _check_homogeneous(out)
    return out


def restrict_to_stratum(qs, r):
    """Set to zero every variable whose weight is not divisible by r.

    Returns the nonzero residual polynomials (still indexed over all
    variables) together with the surviving variable indices.
    """
    alive = tuple(i for i, w in enumerate(qs.variable_weights) if w % r == 0)
    if not alive:
        raise EquationError("no variable has weight divisible by %d" % r)
    polys = []
    for p in qs.polynomials:
        terms = {e: c for e, c in p.terms
                 if all(k == 0 or i in alive for i, k in enumerate(e))}
        if terms:
            polys.append(WeightedPolynomial.from_dict(terms, qs.variable_weights))
    return QuadricSet(tuple(polys), qs.variable_weights, qs.names), alive


def monomials_of_degree(weights, n):
    """Exponent tuples of weighted degree n, in a fixed deterministic order."""
    order = sorted(range(len(weights)), key=lambda i: (-weights[i], i))
    out = []
    exps = [0] * len(weights)

    def rec(pos, remaining):
        if pos == len(order):
            if remaining == 0:
                out.append(tuple(exps))
            return
        i = order[pos]
        w = weights[i]
        for k in range(remaining // w, -1, -1):
            exps[i] = k
            rec(pos + 1, remaining - k * w)
        exps[i] = 0

    rec(0, n)
    return out


def count_monomials(weights, n):
    """Number of monomials of weighted degree n (coefficient of the product
    of 1/(1 - t^w))."""
    counts = [1] + [0] * n
    for w in weights:
        for i in range(w, n + 1):
            counts[i] += counts[i - w]
    return counts[n]


def _integer_row(poly_terms):
    den = 1
    for c in poly_terms.values():
        den = den * c.denominator // math.gcd(den, c.denominator)
    row = {k: int(c * den) for k, c in poly_terms.items()}
    return _primitive(row)


def _primitive(row):
    g = 0
    for v in row.values():
        g = math.gcd(g, v)
        if g == 1:
            return row
    return {k: v // g for k, v in row.items()} if g > 1 else row


def exact_rank(rows):
    """Rank over the rationals of sparse rows {column: coefficient}, by
    fraction-free elimination on integer rows."""
    pivots = {}
    rank = 0
    for row in rows:
        row = _integer_row({k: Fraction(v) for k, v in row.items() if v})
        while row:
            col = min(row)
            piv = pivots.get(col)
            if piv is None:
                pivots[col] = row
                rank += 1
                break
            a, b = piv[col], row[col]
            g = math.gcd(a, b)
            a, b = a // g, b // g
            new = {k: a * v for k, v in row.items()}
            for k, v in piv.items():
                nv = new.get(k, 0) - b * v
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            row = _primitive(new)
    return rank


def graded_hilbert_function(qs, n_max, max_monomials=100000):
    """dim (k[x] / (qs))_n for n = 0..n_max, by ranks of multiplication matrices."""
    weights = qs.variable_weights
    degs = [p.degree for p in qs.polynomials]
    out = []
    for n in range(n_max + 1):
        total = count_monomials(weights, n)
        if total > max_monomials:
            raise ResourceLimit("%d monomials in degree %d exceeds the bound %d"
                                % (total, n, max_monomials))
        rows = []
        for p, d in zip(qs.polynomials, degs):
            if d > n:
                continue
            for m in monomials_of_degree(weights, n - d):
                rows.append({tuple(a + b for a, b in zip(m, e)): c for e, c in p.terms})
        if rows:
            cols = {m: i for i, m in enumerate(monomials_of_degree(weights, n))}
            rows = [{cols[k]: v for k, v in r.items()} for r in rows]
        out.append(total - exact_rank(rows))
    return out


def coefficient_rank(qs):
    """Rank of the polynomials as vectors in the space of monomials."""
    return exact_rank([dict(p.terms) for p in qs.polynomials])


# torus weights of x1..x14 in simple-root coordinates: the positive roots,
# their negatives, then the two zero weights of the adjoint representation
G2_VARIABLE_ROOTS = ((1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2),
                     (-1, 0), (0, -1), (-1, -1), (-2, -1), (-3, -1), (-3, -2),
                     (0, 0), (0, 0))

GR26_LAMBDA = (1, 1, 0, 0, 0, 0)
G2_LAMBDA = (3, 2)


def has_equations(group_type, lam):
    return (group_type, tuple(lam)) in (("G2", G2_LAMBDA), ("GL6", GR26_LAMBDA))


def quadrics_for(group_type, lam):
    if group_type == "G2" and tuple(lam) == G2_LAMBDA:
        return g2_quadrics()
    if group_type == "GL6" and tuple(lam) == GR26_LAMBDA:
        return pfaffians_gr26()
    raise EquationError("no equations available for %s with highest weight %r"
                        % (group_type, tuple(lam)))


def variable_weights(group_type, mu, u):
    """Weights <weight of x_i, mu> + u of the variables, in quadric-set order."""
    if group_type == "G2":
        return tuple(a * mu[0] + b * mu[1] + u for a, b in G2_VARIABLE_ROOTS)
    if group_type == "GL6":
        return tuple(mu[i] + mu[j] + u for (i, j) in sorted(skew_matrix_variables(6)))
    raise EquationError("no variable labelling for %s" % group_type)


def weighted_quadrics(group_type, lam, mu, u):
    return assign_weights(quadrics_for(group_type, lam), variable_weights(group_type, mu, u))


def extremal_variables(group_type):
    """Variables whose coordinate point lies on the variety: the extremal
    weights (long roots for G2, every Pluecker coordinate for Gr(2,6))."""
    if group_type == "G2":
        form = ((2, -3), (-3, 6))
        return tuple(i for i, r in enumerate(G2_VARIABLE_ROOTS)
                     if sum(r[a] * form[a][b] * r[b] for a in range(2) for b in range(2)) == 6)
    if group_type == "GL6":
        return tuple(range(15))
    raise EquationError("no variable labelling for %s" % group_type)


def tangent_characters(qs, i, r):
    """Characters of mu_r on the tangent space of the affine cone at the
    coordinate point e_i, as a list m with m[c] = multiplicity of c mod r.

    The Jacobian at e_i only involves the x_i x_j coefficients and splits
    into blocks by residue of the column weight.
    """
    weights = qs.variable_weights
    rows = []
    for p in qs.polynomials:
        row = {}
        for e, c in p.terms:
            if e[i] == 2:
                row[i] = row.get(i, 0) + 2 * c
                if sum(e) == 2:
                    raise EquationError("coordinate point x%d is not on the variety" % (i + 1))
            elif e[i] == 1 and sum(e) == 2:
                j = next(k for k, x in enumerate(e) if x and k != i)
                row[j] = row.get(j, 0) + c
        rows.append(row)
    out = []
    for c in range(r):
        cols = {j for j, w in enumerate(weights) if w % r == c}
        block = [{j: v for j, v in row.items() if j in cols} for row in rows]
        out.append(len(cols) - exact_rank([b for b in block if b]))
    return out
