"""Well-formedness and singular strata of weighted projective space."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce


def _gcd(values):
    return reduce(math.gcd, values, 0)


@dataclass(frozen=True)
class QuotientType:
    r: int
    b: tuple

    def __str__(self):
        return "1/%d(%s)" % (self.r, ",".join(map(str, self.b)))


@dataclass(frozen=True)
class StratumRecord:
    r: int
    variable_indices: tuple  # 0-based positions in the weight list
    dimension: int
    quotient_type: QuotientType

    def to_json(self):
        return {"r": self.r, "variables": list(self.variable_indices),
                "dimension": self.dimension, "type": str(self.quotient_type)}


def is_wellformed_wps(weights):
    """P[w_0..w_n] is well-formed when any n of the n+1 weights are coprime."""
    weights = list(weights)
    if not weights:
        raise ValueError("empty weight list")
    if len(weights) == 1:
        return weights[0] == 1
    for i in range(len(weights)):
        if _gcd(weights[:i] + weights[i + 1:]) != 1:
            return False
    return True


def quotient_type(stratum_r, transverse_weights):
    """Normalise 1/r(b_1..b_k) with 0 <= b_i < r; order is kept."""
    if stratum_r <= 1:
        raise ValueError("quotient type needs r >= 2, got %d" % stratum_r)
    return QuotientType(stratum_r, tuple(b % stratum_r for b in transverse_weights))


def stratum_record(weights, r, transverse_weights=None):
    """Stratum of index r with the given (or ambient) transverse weights."""
    idx = tuple(i for i, w in enumerate(weights) if w % r == 0)
    if not idx:
        raise ValueError("no weight is divisible by %d" % r)
    if transverse_weights is None:
        transverse_weights = [w for w in weights if w % r]
    return StratumRecord(r, idx, len(idx) - 1, quotient_type(r, transverse_weights))


def singular_strata(weights):
    """One record per r >= 2 that is the gcd of the weights it divides,
    over the maximal variable set; sorted by descending r."""
    weights = list(weights)
    candidates = set()
    for w in weights:
        candidates.update(d for d in range(2, w + 1) if w % d == 0)
    out = []
    for r in sorted(candidates, reverse=True):
        divisible = [w for w in weights if w % r == 0]
        if _gcd(divisible) == r:
            out.append(stratum_record(weights, r))
    return out


@dataclass(frozen=True)
class StratumFlag:
    r: int
    dimension: int
    codimension: int
    note: str


def subvariety_wellformed_report(weights, codim, strata=None):
    """Strata whose containment in a codimension-`codim` subvariety X would
    break well-formedness.

    X in P^n is well-formed when P is and X meets no singular stratum in
    codimension < 2 of X; a stratum S can do that only if
    dim S >= dim X - 1, i.e. codim S <= codim + 1.  Whether X actually
    contains S depends on the equations (see restrict_to_stratum), so each
    flag is advisory.
    """
    weights = list(weights)
    n = len(weights) - 1
    if strata is None:
        strata = singular_strata(weights)
    flags = []
    for s in strata:
        c = n - s.dimension
        if c <= codim + 1:
            kind = "codimension %d stratum" % c
            if c == codim + 1:
                kind += " (a divisor of X if contained)"
            flags.append(StratumFlag(s.r, s.dimension, c,
                                     kind + "; requires equation-level confirmation "
                                     "(restrict_to_stratum r=%d)" % s.r))
    return {"ambient_wellformed": is_wellformed_wps(weights), "codim": codim,
            "flags": flags, "confirmed_violations": []}


def is_terminal_quotient(qt):
    """Three-dimensional 1/r(a,b,c) is terminal iff, up to order, a + b = 0
    mod r with a and c prime to r (the terminal lemma)."""
    r, b = qt.r, qt.b
    if len(b) != 3:
        raise ValueError("terminal test needs three weights, got %r" % (b,))
    for x, y, z in ((b[0], b[1], b[2]), (b[0], b[2], b[1]), (b[1], b[2], b[0])):
        if (x + y) % r == 0 and math.gcd(x, r) == 1 and math.gcd(z, r) == 1:
            return True
    return False
