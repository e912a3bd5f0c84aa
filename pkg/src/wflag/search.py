"""Search for polarized threefolds as quasi-linear sections of weighted
flag varieties and cones over them."""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .lattice import act_dual, build_root_system, variety_dimension, weyl_group
from .series import (IntPolynomial, PositivityError, apply_cone, apply_section,
                     canonical_degree, degree_D3, expand,
                     hilbert_series, weight_notation)
from .equations import (extremal_variables, has_equations, tangent_characters,
                        weighted_quadrics)
from .wps import is_terminal_quotient, is_wellformed_wps, quotient_type, singular_strata

log = logging.getLogger(__name__)

SCHEMA = "wflag-candidate/1"


class SearchError(ValueError):
    pass


@dataclass(frozen=True)
class Target:
    """Required canonical degree of the threefold: 0 for Calabi-Yau,
    -index for Fano threefolds polarized by -K/index."""
    kind: str
    canonical: int

    @classmethod
    def cy3(cls):
        return cls("cy3", 0)

    @classmethod
    def fano(cls, index=1):
        if index < 1:
            raise SearchError("Fano index must be positive")
        return cls("fano", -index)

    @classmethod
    def parse(cls, text):
        text = text.lower()
        if text in ("cy", "cy3"):
            return cls.cy3()
        if text.startswith("fano"):
            rest = text[4:].lstrip(":=")
            return cls.fano(int(rest) if rest else 1)
        raise SearchError("unknown target %r (use cy3 or fano[:index])" % text)


@dataclass(frozen=True)
class Limits:
    max_cones: int = 2
    max_candidates: int = 10000
    # reject Fano candidates whose stratum evidence rules out isolated
    # terminal quotient points
    fano_screen: bool = True


@dataclass
class CandidateVariety:
    group_type: str
    lam: tuple
    mu: tuple
    u: int
    cone_count: int
    section_degrees: tuple
    ambient_weights: tuple
    ambient_canonical: int
    final_weights: tuple
    canonical_deg: int
    numerator: IntPolynomial
    d3: Fraction
    strata: list = field(default_factory=list)
    series: object = field(default=None, repr=False)
    evidence: list = None  # StratumEvidence records, None without equations

    @property
    def key(self):
        return (self.final_weights, tuple(sorted(self.numerator.coeffs.items())))

    def notation(self):
        return weight_notation(self.final_weights)


@dataclass(frozen=True)
class StratumEvidence:
    """Expected meeting of X with the mu_r-fixed component through the
    coordinate point of `variable`, for generic sections.

    verdict is one of: avoided, isolated-terminal, non-isolated,
    not-quasi-smooth, non-terminal.
    """
    r: int
    variable: int
    expected_dim: int
    local_type: object
    verdict: str

    @property
    def ok(self):
        return self.verdict in ("avoided", "isolated-terminal")

    def to_json(self):
        return {"r": self.r, "point": "P_x%d" % (self.variable + 1),
                "expected_dimension": self.expected_dim,
                "type": None if self.local_type is None else str(self.local_type),
                "verdict": self.verdict}


@dataclass
class SearchResult:
    candidates: list
    truncated: bool = False
    cells: int = 0
    admissible: int = 0


def normalize_mu(rs, mu, u, lam=None):
    """Canonical (mu, u) giving the same embedding weight multiset.

    G2: the dominant representative of the Weyl orbit of mu.  GL(n): sort
    mu decreasingly, then translate by a multiple of (1,..,1) (absorbing the
    change into u) so that sum(mu) lies in [0, n).
    """
    mu = tuple(mu)
    if rs.group_type == "G2":
        for g in weyl_group(rs):
            m = act_dual(g, mu)
            if all(c >= 0 for c in m):
                return m, u
        raise AssertionError("no dominant coweight in the orbit of %r" % (mu,))
    if lam is None:
        lam = rs.fundamental_weights[1] if rs.rank > 2 else rs.fundamental_weights[0]
    n = rs.rank
    m = tuple(sorted(mu, reverse=True))
    shift = sum(m) // n
    return tuple(c - shift for c in m), u + shift * sum(lam)


def _box(mu_box):
    ranges = [range(lo, hi + 1) for lo, hi in mu_box]
    return itertools.product(*ranges)


def section_multisets(weights, count, total):
    """Sub-multisets of `weights` of the given size and sum, in colex order."""
    avail = sorted(Counter(weights).items())
    out = []

    def rec(pos, left, remaining, chosen):
        if left == 0:
            if remaining == 0:
                out.append(tuple(chosen))
            return
        if pos < 0:
            return
        w, k = avail[pos]
        for take in range(min(k, left, remaining // w), -1, -1):
            rec(pos - 1, left - take, remaining - take * w, chosen + [w] * take)

    rec(len(avail) - 1, count, total, [])
    return sorted(out, key=lambda s: tuple(reversed(sorted(s))))


def _evaluate_cell(args):
    group_type, lam, mu, u, target, max_cones, fano_screen = args
    rs = build_root_system(group_type)
    try:
        hs = hilbert_series(rs, lam, mu, u)
    except PositivityError:
        return []
    dim = variety_dimension(rs, lam)
    k_amb = canonical_degree(hs)
    out = []
    for cones in range(max_cones + 1):
        cone_hs = hs
        for _ in range(cones):
            cone_hs = apply_cone(cone_hs, 1)
        nsec = dim + cones - 3
        if nsec < 0:
            continue
        need = target.canonical - k_amb + cones
        for secs in section_multisets(cone_hs.weights, nsec, need):
            cand = build_candidate(rs, lam, mu, u, cones, secs, hs)
            if cand is None or not passes_filters(cand, target):
                continue
            cand.evidence = stratum_evidence(cand)
            if (fano_screen and target.canonical < 0 and cand.evidence is not None
                    and not all(e.ok for e in cand.evidence)):
                continue
            out.append(cand)
    return out


def build_candidate(rs, lam, mu, u, cones, sections, ambient=None):
    ambient = ambient or hilbert_series(rs, lam, mu, u)
    s = ambient
    for _ in range(cones):
        s = apply_cone(s, 1)
    for d in sorted(sections, reverse=True):
        s = apply_section(s, d)
    try:
        d3 = degree_D3(s)
    except ArithmeticError:
        return None
    return CandidateVariety(
        rs.group_type, tuple(lam), tuple(mu), u, cones, tuple(sorted(sections, reverse=True)),
        ambient.weights, canonical_degree(ambient), s.weights, canonical_degree(s),
        s.numerator, d3, singular_strata(s.weights), s)


def _in_semigroup(d, gens):
    ok = [True] + [False] * d
    for i in range(1, d + 1):
        ok[i] = any(g <= i and ok[i - g] for g in gens)
    return ok[d]


@lru_cache(maxsize=4096)
def _characters(group_type, lam, mu, u, i, r):
    return tuple(tangent_characters(weighted_quadrics(group_type, lam, mu, u), i, r))


def stratum_evidence(c):
    """Evidence records for every coordinate point of the ambient variety
    with nontrivial stabiliser; None when no equations are available.

    Every mu_r-fixed component of the cone contains a torus-fixed coordinate
    point, and the mu_r characters of the tangent space are constant along
    the component, so it suffices to look at those points.  Sections whose
    degree is divisible by r cut the invariant directions (when the degree
    is reachable by the surviving weights); the others must each kill one
    tangent direction of matching character for X to be quasi-smooth there.
    """
    if not has_equations(c.group_type, c.lam):
        return None
    weights = weighted_quadrics(c.group_type, c.lam, c.mu, c.u).variable_weights
    out = []
    rs = sorted({d for w in weights for d in range(2, w + 1) if w % d == 0})
    for r in rs:
        alive = [w for w in weights if w % r == 0]
        for i in extremal_variables(c.group_type):
            if weights[i] % r:
                continue
            chars = list(_characters(c.group_type, c.lam, c.mu, c.u, i, r))
            chars[1 % r] += c.cone_count
            k0 = sum(1 for d in c.section_degrees if d % r == 0 and _in_semigroup(d, alive))
            dim = chars[0] - 1 - k0
            if dim < 0:
                out.append(StratumEvidence(r, i, dim, None, "avoided"))
                continue
            if dim > 0:
                out.append(StratumEvidence(r, i, dim, None, "non-isolated"))
                continue
            rest = Counter({k: v for k, v in enumerate(chars) if k and v})
            verdict = None
            for d in c.section_degrees:
                if d % r:
                    if rest[d % r] == 0:
                        verdict = "not-quasi-smooth"
                        break
                    rest[d % r] -= 1
            qt = None
            if verdict is None:
                left = sorted(rest.elements())
                if len(left) != 3:
                    verdict = "not-quasi-smooth"
                else:
                    qt = quotient_type(r, left)
                    verdict = "isolated-terminal" if is_terminal_quotient(qt) else "non-terminal"
            out.append(StratumEvidence(r, i, dim, qt, verdict))
    return out


def passes_filters(c, target):
    if c.canonical_deg != target.canonical:
        return False
    if c.d3 <= 0:
        return False
    if c.numerator.order_at_one() != len(c.final_weights) - 4:
        return False
    return is_wellformed_wps(c.final_weights)


def enumerate_candidates(rs, lam, mu_box, u_range, target, limits=Limits(), workers=1):
    """Candidate threefolds over a box of coweights and a range of u.

    Traversal is u ascending, mu lexicographic, cone count ascending and
    section multisets in colex order.  Embeddings are deduplicated by their
    normalized (mu, u); candidates by (final weights, Hilbert numerator),
    keeping the first one met.
    """
    lam = tuple(lam)
    u_values = list(u_range)
    mus = list(_box(mu_box)) if mu_box else []
    if not mus or not u_values:
        raise SearchError("empty search space")
    cells, seen_cells = [], set()
    for u in u_values:
        for mu in mus:
            key = normalize_mu(rs, mu, u, lam)
            if key in seen_cells:
                continue
            seen_cells.add(key)
            cells.append((rs.group_type, lam, key[0], key[1], target, limits.max_cones,
                          limits.fano_screen))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_evaluate_cell, cells, chunksize=4))
    else:
        results = map(_evaluate_cell, cells)
    out, keys = [], set()
    result = SearchResult(out, cells=len(cells))
    for cands in results:
        if cands:
            result.admissible += 1
        for c in cands:
            if c.key in keys:
                continue
            if len(out) >= limits.max_candidates:
                result.truncated = True
                log.warning("candidate limit %d reached; output truncated",
                            limits.max_candidates)
                return result
            keys.add(c.key)
            out.append(c)
    return result


def _frac(x):
    return "%d/%d" % (x.numerator, x.denominator)


def candidate_report(c, h0_order=10):
    """Deterministic report document for a candidate."""
    doc = {
        "schema": SCHEMA,
        "group": c.group_type,
        "lambda": list(c.lam),
        "mu": list(c.mu),
        "u": c.u,
        "ambient_weights": weight_notation(c.ambient_weights),
        "ambient_canonical_degree": c.ambient_canonical,
        "cone_count": c.cone_count,
        "section_degrees": list(c.section_degrees),
        "weights": c.notation(),
        "ambient": "P^%d[%s]" % (len(c.final_weights) - 1, c.notation()),
        "numerator": [[e, str(v)] for e, v in sorted(c.numerator.coeffs.items())],
        "numerator_text": c.numerator.format(),
        "canonical_degree": c.canonical_deg,
        "D3": _frac(c.d3),
        "h0": [str(v) for v in expand(c.series, h0_order)],
        "strata": [s.to_json() for s in c.strata],
        "singularity_analysis": "unverified",
    }
    if c.evidence is not None:
        doc["stratum_evidence"] = [e.to_json() for e in c.evidence]
    if not c.strata:
        doc["notes"] = ["smooth ambient strata"]
    if c.canonical_deg < 0:
        index = -c.canonical_deg
        # (-K)^3 = index^3 D^3; genus from 2g - 2 = (-K)^3 when integral
        kcube = index ** 3 * c.d3
        doc["minus_K_cubed"] = _frac(kcube)
        if kcube.denominator == 1 and kcube.numerator % 2 == 0:
            doc["genus"] = kcube.numerator // 2 + 1
    return doc


def format_report(doc):
    lines = [
        "%s  lambda=%s  mu=%s  u=%d" % (doc["group"], tuple(doc["lambda"]),
                                         tuple(doc["mu"]), doc["u"]),
        "  ambient        P[%s]  K=O(%d)" % (doc["ambient_weights"],
                                              doc["ambient_canonical_degree"]),
        "  cones          %d" % doc["cone_count"],
        "  sections       %s" % (",".join(map(str, doc["section_degrees"])) or "-"),
        "  threefold in   %s" % doc["ambient"],
        "  numerator      %s" % doc["numerator_text"],
        "  K              O(%d)" % doc["canonical_degree"],
        "  D^3            %s" % doc["D3"],
    ]
    if "minus_K_cubed" in doc:
        lines.append("  (-K)^3         %s" % doc["minus_K_cubed"])
    if "genus" in doc:
        lines.append("  genus          %d" % doc["genus"])
    lines.append("  h0(nD), n<=%d  %s" % (len(doc["h0"]) - 1, ",".join(doc["h0"])))
    if doc["strata"]:
        lines.append("  strata (r, dim, type): "
                     + "; ".join("%d, %d, %s" % (s["r"], s["dimension"], s["type"])
                                 for s in doc["strata"]))
    for note in doc.get("notes", []):
        lines.append("  note: " + note)
    for e in doc.get("stratum_evidence", []):
        lines.append("  evidence r=%d at %s: dim %d, %s%s"
                     % (e["r"], e["point"], e["expected_dimension"], e["verdict"],
                        " " + e["type"] if e["type"] else ""))
    lines.append("  singularity analysis: %s" % doc["singularity_analysis"])
    return "\n".join(lines)
