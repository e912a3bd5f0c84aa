"""Exact polynomial and power-series arithmetic, and Hilbert series of
weighted flag varieties computed from the Weyl group sum."""

from __future__ import annotations

import json
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .lattice import act, pair, variety_dimension, weight_system, weyl_group


class PositivityError(ValueError):
    """A weight <w, mu> + u of the embedding is not positive."""

    def __init__(self, weight, value):
        self.weight = weight
        self.value = value
        super().__init__("weight %r of the representation gets degree %d <= 0"
                         % (weight, value))


class IntPolynomial:
    """Univariate polynomial with integer coefficients, stored sparsely."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            coeffs = {}
        elif not isinstance(coeffs, dict):
            coeffs = dict(enumerate(coeffs))
        for e in coeffs:
            if e < 0:
                raise ValueError("negative exponent %d" % e)
        self.coeffs = {e: int(c) for e, c in coeffs.items() if c}

    @classmethod
    def monomial(cls, exp, coeff=1):
        return cls({exp: coeff})

    @classmethod
    def one_minus_t(cls, w):
        """1 - t^w."""
        return cls({0: 1, w: -1}) if w else cls()

    @property
    def degree(self):
        return max(self.coeffs) if self.coeffs else -1

    @property
    def valuation(self):
        return min(self.coeffs) if self.coeffs else None

    def __getitem__(self, e):
        return self.coeffs.get(e, 0)

    def to_list(self):
        return [self[e] for e in range(self.degree + 1)]

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial({0: other})
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return IntPolynomial(out)

    def __neg__(self):
        return IntPolynomial({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial({e: c * other for e, c in self.coeffs.items()})
        out = defaultdict(int)
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] += c1 * c2
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __call__(self, x):
        return sum(c * x ** e for e, c in self.coeffs.items())

    def reciprocal(self):
        """t^deg * N(1/t)."""
        d = self.degree
        return IntPolynomial({d - e: c for e, c in self.coeffs.items()})

    def divide_one_minus_t(self):
        """Exact quotient by (1 - t); raises if t = 1 is not a root."""
        if self(1) != 0:
            raise ArithmeticError("polynomial does not vanish at t = 1")
        # N = (1 - t) Q  =>  Q_k = sum_{j <= k} N_j
        out, run = {}, 0
        for e in range(self.degree):
            run += self[e]
            if run:
                out[e] = run
        return IntPolynomial(out)

    def order_at_one(self):
        if not self:
            raise ArithmeticError("zero polynomial")
        k, p = 0, self
        while p(1) == 0:
            p = p.divide_one_minus_t()
            k += 1
        return k

    def __repr__(self):
        return "IntPolynomial(%s)" % self.format()

    def format(self, var="t", head=None, tail=None):
        """Render as '1-28t^2+105t^3...'; with head/tail, elide the middle."""
        items = sorted(self.coeffs.items())
        if not items:
            return "0"
        if head is not None and tail is not None and len(items) > head + tail:
            return (_render(items[:head], var, True) + "+..."
                    + _render(items[-tail:], var, False))
        return _render(items, var, True)


def _render(items, var, first):
    out = []
    for e, c in items:
        sign = "-" if c < 0 else ("" if first and not out else "+")
        a = abs(c)
        if e == 0:
            body = str(a)
        else:
            mono = var if e == 1 else "%s^%d" % (var, e)
            body = mono if a == 1 else "%d%s" % (a, mono)
        out.append(sign + body)
    return "".join(out)


def times_one_minus_t(series, w):
    """Multiply a truncated series by (1 - t^w) in place-free form."""
    return [c - (series[i - w] if i >= w else 0) for i, c in enumerate(series)]


def over_one_minus_t(series, w):
    """Divide a truncated series by (1 - t^w)."""
    out = list(series)
    for i in range(w, len(out)):
        out[i] += out[i - w]
    return out


@dataclass(frozen=True)
class GradedWeightList:
    weights: tuple
    source: tuple = None  # (group_type, lambda, mu, u)

    def __post_init__(self):
        if any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive: %r" % (self.weights,))
        object.__setattr__(self, "weights", tuple(sorted(self.weights)))

    def __len__(self):
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def notation(self):
        return weight_notation(self.weights)


def weight_notation(weights):
    """Exponent notation '1^2,2,3^2' for a weight multiset."""
    counts = sorted(Counter(weights).items())
    return ",".join(str(w) if k == 1 else "%d^%d" % (w, k) for w, k in counts)


@dataclass(frozen=True)
class HilbertSeries:
    numerator: IntPolynomial
    denominator_factors: GradedWeightList
    variety_dim: int
    gorenstein: bool = field(default=False, compare=False)

    @property
    def weights(self):
        return self.denominator_factors.weights

    def to_json(self):
        return {
            "numerator": [[e, str(c)] for e, c in sorted(self.numerator.coeffs.items())],
            "denominator_weights": list(self.weights),
            "dim": self.variety_dim,
        }

    @classmethod
    def from_json(cls, doc):
        if isinstance(doc, str):
            doc = json.loads(doc)
        num = IntPolynomial({int(e): int(c) for e, c in doc["numerator"]})
        return cls(num, GradedWeightList(tuple(doc["denominator_weights"])), int(doc["dim"]))

    def reduced(self):
        """Cancel factors (1 - t^w) dividing the numerator; a derived view."""
        num, kept = self.numerator, []
        for w in sorted(self.weights, reverse=True):
            q = _exact_div(num, IntPolynomial.one_minus_t(w))
            if q is None:
                kept.append(w)
            else:
                num = q
        return num, tuple(sorted(kept))


def _exact_div(a, b):
    """a / b when b divides a exactly over the integers (b monic up to sign)."""
    if not a:
        return IntPolynomial()
    lead = b[b.degree]
    rem = dict(a.coeffs)
    quo = {}
    db = b.degree
    for e in range(a.degree, db - 1, -1):
        c = rem.get(e, 0)
        if not c:
            continue
        if c % lead:
            return None
        q = c // lead
        quo[e - db] = q
        for eb, cb in b.coeffs.items():
            rem[e - db + eb] = rem.get(e - db + eb, 0) - q * cb
    if any(rem.get(e, 0) for e in range(db)):
        return None
    return IntPolynomial(quo)


def embedding_weights(rs, lam, mu, u):
    """Degrees <w_i, mu> + u over the weights of V_lambda, with multiplicity."""
    lam, mu = tuple(lam), tuple(mu)
    out = []
    for w, m in weight_system(rs, lam).entries:
        value = pair(w, mu) + u
        if value <= 0:
            raise PositivityError(w, value)
        out.extend([value] * m)
    return GradedWeightList(tuple(out), (rs.group_type, lam, mu, u))


def weyl_sum_series(rs, lam, mu, u, order):
    """Power series of the Weyl group sum expression for the Hilbert series,
    truncated at t^order.

    When mu pairs to zero with some roots both sums vanish identically.  We
    then deform mu along a regular coweight nu (a second variable z counting
    <., nu>) and take the limit z -> 1 with the operator (z d/dz)^k, where k
    is the number of positive roots orthogonal to mu.
    """
    lam, mu = tuple(lam), tuple(mu)
    nu = rs.dual_regular
    k = sum(1 for a in rs.positive_roots if pair(a, mu) == 0)
    # group Weyl elements by the exponents they contribute
    terms = Counter()
    for g in weyl_group(rs):
        wr, wl = act(g, rs.rho), act(g, lam)
        c = pair(wl, mu) + u
        if c <= 0:
            raise PositivityError(wl, c)
        terms[(pair(wr, mu), pair(wr, nu), c, pair(wl, nu))] += g.parity
    den = defaultdict(int)
    for (a, b, _, _), sign in terms.items():
        if sign:
            den[a] += sign * b ** k
    den = {e: c for e, c in den.items() if c}
    if not den:
        raise ArithmeticError("Weyl denominator vanishes after %d derivatives" % k)
    low = min(den)
    top = order + low
    num = defaultdict(int)
    for (a, b, c, d), sign in terms.items():
        if not sign:
            continue
        m = 0
        while a + m * c <= top:
            num[a + m * c] += sign * (b + m * d) ** k
            m += 1
    if any(num.get(e, 0) for e in range(min(num, default=low), low)):
        raise ArithmeticError("Weyl numerator has terms below the denominator valuation")
    lead = den[low]
    rest = sorted((e - low, c) for e, c in den.items() if e != low)
    out = []
    for n in range(order + 1):
        acc = num.get(n + low, 0)
        for j, c in rest:
            if j > n:
                break
            acc -= c * out[n - j]
        q, r = divmod(acc, lead)
        if r:
            raise ArithmeticError("non-integral Hilbert series coefficient at t^%d" % n)
        out.append(q)
    return out


def hilbert_series(rs, lam, mu, u):
    """Hilbert series N(t) / prod(1 - t^w_i) over the full embedding weights."""
    gw = embedding_weights(rs, lam, mu, u)
    bound = sum(gw.weights)
    order = bound + 2 * max(gw.weights)
    series = weyl_sum_series(rs, lam, mu, u, order)
    for w in gw.weights:
        series = times_one_minus_t(series, w)
    if any(series[bound + 1:]):
        raise ArithmeticError("Hilbert numerator did not stabilise below degree %d" % bound)
    num = IntPolynomial(series[:bound + 1])
    if num[0] != 1:
        raise ArithmeticError("Hilbert numerator has constant term %d" % num[0])
    dim = variety_dimension(rs, lam)
    return HilbertSeries(num, gw, dim, gorenstein=is_gorenstein_symmetric(num))


def is_gorenstein_symmetric(num):
    rev = num.reciprocal()
    return rev == num or rev == -num


def expand(hs, order):
    if order < 0:
        raise ValueError("order must be non-negative")
    out = [hs.numerator[e] for e in range(order + 1)]
    for w in hs.weights:
        out = over_one_minus_t(out, w)
    return out


def canonical_degree(hs):
    return hs.numerator.degree - sum(hs.weights)


def apply_section(hs, d):
    weights = list(hs.weights)
    if d not in weights:
        raise ValueError("section degree %d is not among the weights %s"
                         % (d, weight_notation(weights)))
    weights.remove(d)
    return replace(hs, denominator_factors=GradedWeightList(tuple(weights)),
                   variety_dim=hs.variety_dim - 1)


def apply_cone(hs, w=1):
    if w < 1:
        raise ValueError("cone weight must be positive")
    return replace(hs, denominator_factors=GradedWeightList(hs.weights + (w,)),
                   variety_dim=hs.variety_dim + 1)


def leading_degree(hs, dim=None):
    """Degree D^dim = lim (1-t)^(dim+1) P(t), exactly."""
    dim = hs.variety_dim if dim is None else dim
    m = len(hs.weights)
    expected = m - dim - 1
    if expected < 0:
        raise ArithmeticError("fewer denominator factors than dim + 1")
    q = hs.numerator
    for _ in range(expected):
        if q(1) != 0:
            raise ArithmeticError("numerator vanishes at t = 1 to order < %d" % expected)
        q = q.divide_one_minus_t()
    value = q(1)
    if value == 0:
        raise ArithmeticError("numerator vanishes at t = 1 to order > %d" % expected)
    return Fraction(value, math.prod(hs.weights))


def degree_D3(hs):
    if hs.variety_dim != 3:
        raise ArithmeticError("degree_D3 needs a threefold, got dimension %d" % hs.variety_dim)
    return leading_degree(hs, 3)


def _laurent_mul(a, b):
    out = defaultdict(int)
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] += c1 * c2
    return {e: c for e, c in out.items() if c}


def _laurent_sum(*parts):
    out = defaultdict(int)
    for sign, part in parts:
        for e, c in part.items():
            out[e] += sign * c
    return {e: c for e, c in out.items() if c}


def _powers(exps):
    out = defaultdict(int)
    for e in exps:
        out[e] += 1
    return dict(out)


def closed_form(rs, lam, mu, u):
    """Closed-form Hilbert series (numerator as {exp: coeff}, denominator
    weights) for the three embeddings that have one:

    * G2, omega1: (1 - t^2u) / ((1 - t^u) prod_short (1 - t^(<a,mu>+u)));
    * G2, omega2: (1 + t^u)(1 + t^u + sum_short t^(<a,mu>+u) + t^2u)
      / prod_long (1 - t^(<a,mu>+u));
    * GL6, e1+e2: the Q1..Q6 numerator over prod_{i<j} (1 - t^(a_i+a_j+u)).

    The GL6 sums are read as follows: Q2 and Q5 run over all 36 ordered
    pairs (i, j), diagonal included, before subtracting t^s (resp. t^2s);
    Q3 and Q4 over i <= j; Q1 and Q6 over i < j.  With mu = 0 these give
    the coefficients 15, 35, 21, 21, 35, 15 of the straight numerator.
    """
    lam, mu = tuple(lam), tuple(mu)
    if rs.group_type == "G2" and lam == rs.fundamental_weights[0]:
        short = [pair(a, mu) + u for a in rs.roots if not rs.is_long(a)]
        num = {0: 1, 2 * u: -1}
        return num, [u] + short
    if rs.group_type == "G2" and lam == rs.fundamental_weights[1]:
        short = [pair(a, mu) + u for a in rs.roots if not rs.is_long(a)]
        long_ = [pair(a, mu) + u for a in rs.roots if rs.is_long(a)]
        inner = _laurent_sum((1, {0: 1, u: 1, 2 * u: 1}), (1, _powers(short)))
        return _laurent_mul({0: 1, u: 1}, inner), long_
    if rs.group_type == "GL6" and lam == (1, 1, 0, 0, 0, 0):
        a, s, n = mu, sum(mu), 6
        lt = [(i, j) for i in range(n) for j in range(i + 1, n)]
        le = [(i, j) for i in range(n) for j in range(i, n)]
        ordered = [(i, j) for i in range(n) for j in range(n)]
        q1 = _powers(s - a[i] - a[j] + 2 * u for i, j in lt)
        q2 = _laurent_sum((1, _powers(s + a[i] - a[j] + 3 * u for i, j in ordered)),
                          (-1, {s + 3 * u: 1}))
        q3 = _powers(s + a[i] + a[j] + 4 * u for i, j in le)
        q4 = _powers(2 * s - a[i] - a[j] + 5 * u for i, j in le)
        q5 = _laurent_sum((1, _powers(2 * s + a[i] - a[j] + 6 * u for i, j in ordered)),
                          (-1, {2 * s + 6 * u: 1}))
        q6 = _powers(2 * s + a[i] + a[j] + 7 * u for i, j in lt)
        num = _laurent_sum((1, {0: 1}), (-1, q1), (1, q2), (-1, q3), (-1, q4), (1, q5),
                           (-1, q6), (1, {3 * s + 9 * u: 1}))
        return num, [a[i] + a[j] + u for i, j in lt]
    raise ValueError("no closed form for %s with highest weight %r" % (rs.group_type, lam))


def closed_form_check(rs, lam, mu, u):
    """True iff the closed form equals the Weyl-sum series as rational functions."""
    cnum, cden = closed_form(rs, lam, mu, u)
    hs = hilbert_series(rs, lam, mu, u)
    left = dict(cnum)
    for w in hs.weights:
        left = _laurent_mul(left, {0: 1, w: -1})
    right = dict(hs.numerator.coeffs)
    for w in cden:
        if w <= 0:
            return False
        right = _laurent_mul(right, {0: 1, w: -1})
    return left == right
