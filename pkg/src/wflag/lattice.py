"""Root systems, Weyl groups and weight systems for G2 and GL(n).

Weights are integer tuples.  G2 weights are written in the basis of simple
roots (alpha1 short, alpha2 long); GL(n) weights in the standard basis
e1..en.  Coweights are integer tuples in the dual basis, so the pairing is
the plain dot product.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

Weight = tuple
Coweight = tuple

SUPPORTED = ("G2",) + tuple("GL%d" % n for n in range(3, 9))


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class RootSystem:
    group_type: str
    rank: int
    simple_roots: tuple
    positive_roots: tuple
    long_roots: frozenset
    fundamental_weights: tuple
    rho: tuple
    # invariant symmetric form on weight coordinates
    form: tuple
    cartan_pairing: tuple = field(repr=False)

    @property
    def roots(self):
        return self.positive_roots + tuple(neg(a) for a in self.positive_roots)

    def is_long(self, root):
        return tuple(root) in self.long_roots

    def inner(self, x, y):
        return sum(x[i] * self.form[i][j] * y[j]
                   for i in range(self.rank) for j in range(self.rank)
                   if self.form[i][j])

    def coroot_pairing(self, x, alpha):
        """Integer <x, alpha^vee> = 2(x, alpha)/(alpha, alpha)."""
        num = 2 * self.inner(x, alpha)
        den = self.inner(alpha, alpha)
        if num % den:
            raise LatticeError("%r is not integral on the coroot of %r" % (x, alpha))
        return num // den

    def reflect(self, x, alpha):
        c = self.coroot_pairing(x, alpha)
        return tuple(xi - c * ai for xi, ai in zip(x, alpha))

    def is_dominant(self, x):
        return all(self.coroot_pairing(x, a) >= 0 for a in self.simple_roots)

    def dominant_conjugate(self, x):
        x = tuple(x)
        while True:
            for a in self.simple_roots:
                if self.coroot_pairing(x, a) < 0:
                    x = self.reflect(x, a)
                    break
            else:
                return x

    def simple_root_coords(self, x):
        """Coefficients of x in the simple roots, or None if x is outside
        their integer span."""
        if self.group_type == "G2":
            return tuple(x)
        if sum(x):
            return None
        return tuple(itertools.accumulate(x[:-1]))

    @property
    def dual_regular(self):
        """A coweight pairing positively with every positive root."""
        if self.group_type == "G2":
            return (1, 1)
        return tuple(range(self.rank - 1, -1, -1))


@dataclass(frozen=True)
class WeylElement:
    action: tuple  # integer matrix, rows act on column weight vectors
    parity: int

    def __call__(self, w):
        return act(self, w)

    def compose(self, other):
        """Return self * other (apply other first)."""
        return WeylElement(_matmul(self.action, other.action), self.parity * other.parity)


@dataclass(frozen=True)
class WeightSystem:
    entries: tuple  # ((weight, multiplicity), ...)

    @property
    def total_dim(self):
        return sum(m for _, m in self.entries)

    def as_counter(self):
        return Counter(dict(self.entries))

    def weights(self):
        """All weights repeated by multiplicity."""
        for w, m in self.entries:
            for _ in range(m):
                yield w


def neg(x):
    return tuple(-c for c in x)


def add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def scale(k, x):
    return tuple(k * c for c in x)


def _matmul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
                 for i in range(n))


def _identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _gl_unit(n, i):
    return tuple(int(k == i) for k in range(n))


@lru_cache(maxsize=None)
def build_root_system(group_type):
    if group_type == "G2":
        form = ((2, -3), (-3, 6))
        simple = ((1, 0), (0, 1))
        positive = ((1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2))
        long_ = frozenset(r for r in positive + tuple(neg(p) for p in positive)
                          if _form(form, r, r) == 6)
        fundamentals = ((2, 1), (3, 2))
        return _finish("G2", 2, simple, positive, long_, fundamentals, form)
    m = re.fullmatch(r"GL([3-8])", group_type or "")
    if not m:
        raise LatticeError("unsupported group type %r (expected one of %s)"
                           % (group_type, ", ".join(SUPPORTED)))
    n = int(m.group(1))
    e = [_gl_unit(n, i) for i in range(n)]
    simple = tuple(add(e[i], neg(e[i + 1])) for i in range(n - 1))
    positive = tuple(add(e[i], neg(e[j])) for i in range(n) for j in range(i + 1, n))
    # GL(n) fundamental weights e1 + ... + ei; rho is their sum over i < n
    fundamentals = tuple(tuple(int(k <= i) for k in range(n)) for i in range(n - 1))
    return _finish(group_type, n, simple, positive, frozenset(), fundamentals, _identity(n))


def _finish(group_type, rank, simple, positive, long_, fundamentals, form):
    rho = tuple(sum(c) for c in zip(*fundamentals))
    rs = RootSystem(group_type, rank, simple, positive, long_, fundamentals, rho,
                    form, _identity(rank))
    # for GL(n), 2 rho and the positive-root sum differ by a multiple of (1, ..., 1)
    twice = tuple(sum(c) for c in zip(*positive))
    gap = set(2 * r - t for r, t in zip(rho, twice))
    if any(rs.coroot_pairing(rho, a) != 1 for a in simple) or (
            len(gap) != 1 or (group_type == "G2" and gap != {0})):
        raise AssertionError("Weyl vector mismatch for %s" % group_type)
    return rs


def _form(form, x, y):
    return sum(x[i] * form[i][j] * y[j] for i in range(len(x)) for j in range(len(y)))


def pair(w, m):
    if len(w) != len(m):
        raise LatticeError("cannot pair weight of length %d with coweight of length %d"
                           % (len(w), len(m)))
    return sum(a * b for a, b in zip(w, m))


@lru_cache(maxsize=None)
def weyl_group(rs):
    """All Weyl group elements, by breadth-first closure over simple reflections."""
    n = rs.rank
    # coroot functional c with <x, alpha^vee> = x . c
    gens = []
    for a in rs.simple_roots:
        c = tuple(rs.coroot_pairing(_gl_unit(n, j), a) for j in range(n))
        gens.append((a, c))
    # elements are stored transposed (as a tuple of image columns) during the search
    start = _identity(n)
    seen = {start: 1}
    queue = deque([start])
    while queue:
        g = queue.popleft()
        p = seen[g]
        for a, c in gens:
            cols = []
            for col in g:
                k = sum(x * y for x, y in zip(col, c))
                cols.append(tuple(x - k * y for x, y in zip(col, a)) if k else col)
            h = tuple(cols)
            if h not in seen:
                seen[h] = -p
                queue.append(h)
    return tuple(WeylElement(tuple(zip(*g)), p) for g, p in seen.items())


def act(g, w):
    if len(w) != len(g.action):
        raise LatticeError("rank mismatch: element of rank %d on weight %r" % (len(g.action), w))
    return tuple(sum(r * c for r, c in zip(row, w)) for row in g.action)


def act_dual(g, m):
    """Transpose action on coweights: <act(g, w), m> = <w, act_dual(g, m)>."""
    n = len(g.action)
    if len(m) != n:
        raise LatticeError("rank mismatch: element of rank %d on coweight %r" % (n, m))
    return tuple(sum(g.action[i][j] * m[i] for i in range(n)) for j in range(n))


def weyl_dimension(rs, lam):
    num = Fraction(1)
    lr = add(lam, rs.rho)
    for a in rs.positive_roots:
        num *= Fraction(rs.inner(lr, a), rs.inner(rs.rho, a))
    return int(num)


def variety_dimension(rs, lam):
    """Dimension of the closed orbit G/P_lambda."""
    return sum(1 for a in rs.positive_roots if rs.inner(lam, a) != 0)


@lru_cache(maxsize=None)
def weight_system(rs, lam):
    """Weights of the irreducible representation with highest weight lam,
    with multiplicities from Freudenthal's recursion."""
    lam = tuple(lam)
    if len(lam) != rs.rank:
        raise LatticeError("highest weight %r has wrong length for %s" % (lam, rs.group_type))
    if not rs.is_dominant(lam):
        raise LatticeError("highest weight %r is not dominant" % (lam,))
    lowest = rs.dominant_conjugate(neg(lam))  # -w0(lam), so lam - w0 lam = lam + this
    depth = rs.simple_root_coords(add(lam, lowest))
    lr = add(lam, rs.rho)
    norm_top = rs.inner(lr, lr)
    mult = {lam: 1}
    simple = rs.simple_roots
    levels = sum(depth)
    for level in range(1, levels + 1):
        for ns in _compositions(level, len(simple), depth):
            beta = lam
            for k, a in zip(ns, simple):
                beta = add(beta, scale(-k, a))
            dom = rs.dominant_conjugate(beta)
            diff = rs.simple_root_coords(add(lam, neg(dom)))
            if diff is None or min(diff) < 0:
                continue
            if dom != beta and dom in mult:
                mult[beta] = mult[dom]
                continue
            br = add(beta, rs.rho)
            den = norm_top - rs.inner(br, br)
            total = 0
            for a in rs.positive_roots:
                k = 1
                while True:
                    up = add(beta, scale(k, a))
                    m = mult.get(up)
                    if m is None:
                        if not _below(rs, lam, up):
                            break
                    else:
                        total += m * rs.inner(up, a)
                    k += 1
            value = Fraction(2 * total, den)
            if value.denominator != 1:
                raise ArithmeticError("non-integral multiplicity at %r" % (beta,))
            if value:
                mult[beta] = int(value)
    entries = tuple(sorted(mult.items(), reverse=True))
    ws = WeightSystem(entries)
    if ws.total_dim != weyl_dimension(rs, lam):
        raise ArithmeticError("Freudenthal dimension %d disagrees with Weyl dimension %d"
                              % (ws.total_dim, weyl_dimension(rs, lam)))
    return ws


def _below(rs, lam, x):
    d = rs.simple_root_coords(add(lam, neg(x)))
    return d is not None and min(d) >= 0


def _compositions(total, parts, caps):
    """Tuples of `parts` non-negative ints summing to `total`, entry i <= caps[i]."""
    if parts == 1:
        if total <= caps[0]:
            yield (total,)
        return
    for first in range(min(total, caps[0]), -1, -1):
        for rest in _compositions(total - first, parts - 1, caps[1:]):
            yield (first,) + rest


def parse_weight(rs, text):
    """Parse 'omega2', '2omega1+omega2', 'e1+e2' or a comma list of coordinates."""
    text = text.replace(" ", "")
    if re.fullmatch(r"-?\d+(,-?\d+)*", text):
        coords = tuple(int(c) for c in text.split(","))
        if len(coords) != rs.rank:
            raise LatticeError("expected %d coordinates, got %r" % (rs.rank, text))
        return coords
    result = (0,) * rs.rank
    for sign, coef, name, idx in re.findall(r"([+-]?)(\d*)(omega|w|e|alpha)(\d+)", text):
        k = int(coef or 1) * (-1 if sign == "-" else 1)
        i = int(idx) - 1
        if name in ("omega", "w"):
            basis = rs.fundamental_weights
        elif name == "alpha":
            basis = rs.simple_roots
        else:
            if rs.group_type == "G2":
                raise LatticeError("e-coordinates are not available for G2")
            basis = tuple(_gl_unit(rs.rank, j) for j in range(rs.rank))
        if not 0 <= i < len(basis):
            raise LatticeError("index out of range in %r" % text)
        result = add(result, scale(k, basis[i]))
    if not re.fullmatch(r"([+-]?\d*(omega|w|e|alpha)\d+)+", text):
        raise LatticeError("cannot parse weight %r" % text)
    return result


def denominator_identity_sides(rs, mu):
    """Both sides of sum_w (-1)^w t^<w rho, mu> = t^<rho, mu> prod_{alpha > 0}
    (1 - t^-<alpha, mu>) as Laurent polynomials {exponent: coefficient}."""
    lhs = Counter()
    for g in weyl_group(rs):
        lhs[pair(act(g, rs.rho), mu)] += g.parity
    rhs = Counter({pair(rs.rho, mu): 1})
    for a in rs.positive_roots:
        s = -pair(a, mu)
        nxt = Counter()
        for e, c in rhs.items():
            nxt[e] += c
            nxt[e + s] -= c
        rhs = nxt
    clean = lambda d: {e: c for e, c in d.items() if c}
    return clean(lhs), clean(rhs)


def check_denominator_identity(rs, mu):
    lhs, rhs = denominator_identity_sides(rs, mu)
    return lhs == rhs
