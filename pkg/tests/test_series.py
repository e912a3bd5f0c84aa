from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from wflag.lattice import build_root_system, pair, weight_system, weyl_dimension
from wflag.series import (GradedWeightList, HilbertSeries, IntPolynomial, PositivityError,
                          apply_cone, apply_section, canonical_degree, closed_form,
                          closed_form_check, degree_D3, embedding_weights, expand,
                          hilbert_series, is_gorenstein_symmetric, leading_degree,
                          weight_notation)

G2 = build_root_system("G2")
GL6 = build_root_system("GL6")
OM1, OM2 = (2, 1), (3, 2)
GR26 = (1, 1, 0, 0, 0, 0)


def coefficients_oracle(rs, lam, mu, u, order):
    """h^0 in degree k as a count of weights of V_{n lam} of degree k."""
    out = [0] * (order + 1)
    for n in range(order + 1):
        if n == 0:
            out[0] += 1
            continue
        for w, m in weight_system(rs, tuple(n * c for c in lam)).entries:
            k = pair(w, mu) + n * u
            if k <= order:
                out[k] += m
    return out


# ---------------------------------------------------------------- polynomials

def test_polynomial_basics():
    p = IntPolynomial([1, 0, -2, 1])
    assert p.degree == 3 and p.valuation == 0 and p(1) == 0
    assert p.divide_one_minus_t() * IntPolynomial.one_minus_t(1) == p
    assert p.reciprocal() == IntPolynomial([1, -2, 0, 1])
    assert IntPolynomial.one_minus_t(2).order_at_one() == 1
    assert IntPolynomial([1, -28, 105]).format() == "1-28t+105t^2"
    with pytest.raises(ArithmeticError):
        IntPolynomial([1, 1]).divide_one_minus_t()


def test_weight_notation():
    assert weight_notation([1, 1, 2, 3, 3, 4, 4, 4, 4, 5, 6, 7]) == "1^2,2,3^2,4^4,5,6,7"


# ---------------------------------------------------------------- numerators

def test_straight_g2_numerator():
    hs = hilbert_series(G2, OM2, (0, 0), 1)
    assert hs.numerator.to_list() == [1, 0, -28, 105, -162, 84, 84, -162, 105, -28, 0, 1]
    assert hs.weights == (1,) * 14


def test_negative_top_sign_of_straight_g2_is_inconsistent():
    # the displayed top term -t^11 cannot be right: N(1) must vanish
    printed = IntPolynomial([1, 0, -28, 105, -162, 84, 84, -162, 105, -28, 0, -1])
    assert printed(1) != 0
    assert hilbert_series(G2, OM2, (0, 0), 1).numerator(1) == 0


def test_g2_hypersurface():
    hs = hilbert_series(G2, OM1, (0, 0), 1)
    assert hs.numerator == IntPolynomial([1, 0, -1]) and hs.weights == (1,) * 7


def test_straight_gr26_numerator():
    hs = hilbert_series(GL6, GR26, (0,) * 6, 1)
    assert hs.numerator.to_list() == [1, 0, -15, 35, -21, -21, 35, -15, 0, 1]


def test_example_g2_weighted():
    hs = hilbert_series(G2, OM2, (2, -3), 4)
    text = hs.numerator.format()
    assert text.startswith("1-t^4-2t^5-4t^6-2t^7-t^8+")
    assert text.endswith("+t^44")
    assert weight_notation(hs.weights) == "1^2,2,3^2,4^4,5^2,6,7^2"
    assert canonical_degree(hs) == -12


def test_example_gr26_weighted():
    hs = hilbert_series(GL6, GR26, (2, 1, 0, 0, -1, -2), 4)
    text = hs.numerator.format()
    assert text.startswith("1-t^5-2t^6-3t^7-2t^8-t^9+")
    assert text.endswith("-3t^29-2t^30-t^31+t^36")
    assert weight_notation(hs.weights) == "1,2^2,3^3,4^3,5^3,6^2,7"
    assert canonical_degree(hs) == -24


@pytest.mark.parametrize("rs,lam,n", [(G2, OM2, 6), (G2, OM1, 6), (GL6, GR26, 5)])
def test_straight_series_equals_weyl_dimensions(rs, lam, n):
    hs = hilbert_series(rs, lam, (0,) * rs.rank, 1)
    assert expand(hs, n) == [weyl_dimension(rs, tuple(k * c for c in lam)) for k in range(n + 1)]


@settings(max_examples=12, deadline=None)
@given(st.integers(-2, 2), st.integers(-2, 2), st.integers(1, 8))
def test_g2_series_against_weight_count(a, b, u):
    try:
        hs = hilbert_series(G2, OM2, (a, b), u)
    except PositivityError:
        assume(False)
    assert expand(hs, 4) == coefficients_oracle(G2, OM2, (a, b), u, 4)


@settings(max_examples=8, deadline=None)
@given(st.lists(st.integers(-1, 1), min_size=6, max_size=6), st.integers(2, 5))
def test_gr26_series_against_weight_count(mu, u):
    mu = tuple(mu)
    try:
        hs = hilbert_series(GL6, GR26, mu, u)
    except PositivityError:
        assume(False)
    assert expand(hs, 4) == coefficients_oracle(GL6, GR26, mu, u, 4)


def test_positivity_error_names_weight():
    with pytest.raises(PositivityError) as exc:
        hilbert_series(G2, OM2, (0, 0), 0)
    assert exc.value.value <= 0
    with pytest.raises(PositivityError):
        embedding_weights(G2, OM2, (3, -3), 1)


@pytest.mark.parametrize("rs,lam,mu,u", [
    (G2, OM2, (0, 0), 1), (G2, OM2, (2, -3), 4), (GL6, GR26, (0,) * 6, 1),
    (GL6, GR26, (2, 1, 0, 0, -1, -2), 4), (G2, OM1, (0, 0), 1)])
def test_gorenstein_symmetry(rs, lam, mu, u):
    hs = hilbert_series(rs, lam, mu, u)
    assert is_gorenstein_symmetric(hs.numerator) and hs.gorenstein
    assert hs.numerator.order_at_one() == len(hs.weights) - hs.variety_dim - 1


@pytest.mark.parametrize("u", range(1, 6))
def test_canonical_degree_laws(u):
    assert canonical_degree(hilbert_series(G2, OM1, (0, 0), u)) == -5 * u
    assert canonical_degree(hilbert_series(G2, OM2, (0, 0), u)) == -3 * u


def test_canonical_degree_of_straight_gr26():
    assert canonical_degree(hilbert_series(GL6, GR26, (0,) * 6, 1)) == -6


# ---------------------------------------------------------------- closed forms

def _admissible(rs, lam, mu, u):
    try:
        embedding_weights(rs, lam, mu, u)
        return True
    except PositivityError:
        return False


@settings(max_examples=15, deadline=None)
@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(1, 12))
def test_g2_closed_forms(a, b, u):
    for lam in (OM1, OM2):
        assume(_admissible(G2, lam, (a, b), u))
        assert closed_form_check(G2, lam, (a, b), u)


@settings(max_examples=12, deadline=None)
@given(st.lists(st.integers(-2, 2), min_size=6, max_size=6), st.integers(1, 8))
def test_gr26_closed_form(mu, u):
    mu = tuple(mu)
    assume(_admissible(GL6, GR26, mu, u))
    assert closed_form_check(GL6, GR26, mu, u)


@settings(max_examples=15, deadline=None)
@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(1, 12))
def test_g2_omega2_quadric_degrees(a, b, u):
    """Lowest terms of the numerator: one -t^d per quadric of degree d, with
    the quadric degrees 2u (four times), <a,mu> + 2u and 2<a,mu> + 2u over
    short roots (the first twice), <a,mu> + 2u over long roots."""
    mu = (a, b)
    assume(_admissible(G2, OM2, mu, u))
    short = [pair(r, mu) for r in G2.roots if not G2.is_long(r)]
    long_ = [pair(r, mu) for r in G2.roots if G2.is_long(r)]
    degs = [2 * u] * 4 + [s + 2 * u for s in short] * 2 + [2 * s + 2 * u for s in short] \
        + [l + 2 * u for l in long_]
    hs = hilbert_series(G2, OM2, mu, u)
    assert hs.numerator.degree == 11 * u and hs.numerator[11 * u] == 1
    # below the first syzygy degree only relations contribute
    first_syzygy = min(degs) + min(hs.weights)
    counts = Counter(degs)
    for e in range(1, first_syzygy):
        assert hs.numerator[e] == -counts.get(e, 0)


def test_closed_form_unavailable():
    with pytest.raises(ValueError):
        closed_form(build_root_system("GL4"), (1, 1, 0, 0), (0,) * 4, 1)


# ---------------------------------------------------------------- sections, cones, degrees

def test_section_and_cone_bookkeeping():
    hs = hilbert_series(G2, OM2, (2, -3), 4)
    k = canonical_degree(hs)
    s = apply_section(hs, 7)
    assert canonical_degree(s) == k + 7 and s.variety_dim == hs.variety_dim - 1
    c = apply_cone(hs)
    assert canonical_degree(c) == k - 1 and c.variety_dim == hs.variety_dim + 1
    assert s.numerator == hs.numerator == c.numerator
    with pytest.raises(ValueError):
        apply_section(hs, 8)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.sampled_from([1, 2, 3, 4, 5, 6, 7]), max_size=4), st.integers(0, 3))
def test_bookkeeping_property(sections, cones):
    hs = hilbert_series(G2, OM2, (2, -3), 4)
    s = hs
    for _ in range(cones):
        s = apply_cone(s)
    avail = list(s.weights)
    used = []
    for d in sections:
        if d in avail:
            avail.remove(d)
            used.append(d)
            s = apply_section(s, d)
    assert canonical_degree(s) == canonical_degree(hs) - cones + sum(used)
    assert s.variety_dim == hs.variety_dim + cones - len(used)


def test_example_degrees():
    g2cy = apply_section(apply_section(hilbert_series(G2, OM2, (2, -3), 4), 7), 5)
    assert canonical_degree(g2cy) == 0 and degree_D3(g2cy) == Fraction(45, 56)
    gr = hilbert_series(GL6, GR26, (2, 1, 0, 0, -1, -2), 4)
    for d in (6, 5, 5, 4, 4):
        gr = apply_section(gr, d)
    assert canonical_degree(gr) == 0 and degree_D3(gr) == Fraction(11, 21)


def test_mukai_degrees():
    v = hilbert_series(G2, OM2, (0, 0), 1)
    for _ in range(2):
        v = apply_section(v, 1)
    assert canonical_degree(v) == -1 and degree_D3(v) == 18
    w = hilbert_series(GL6, GR26, (0,) * 6, 1)
    for _ in range(5):
        w = apply_section(w, 1)
    assert canonical_degree(w) == -1 and degree_D3(w) == 14


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 9))
def test_degree_is_cancellation_independent(w):
    hs = apply_section(apply_section(hilbert_series(G2, OM2, (2, -3), 4), 7), 5)
    num = hs.numerator * IntPolynomial.one_minus_t(w)
    padded = HilbertSeries(num, GradedWeightList(hs.weights + (w,)), 3)
    assert degree_D3(padded) == degree_D3(hs)
    num2, kept = hs.reduced()
    assert leading_degree(HilbertSeries(num2, GradedWeightList(kept), 3)) == degree_D3(hs)


def test_degree_of_straight_g2():
    # the degree of the G2 adjoint variety is 18
    assert leading_degree(hilbert_series(G2, OM2, (0, 0), 1)) == 18


def test_json_roundtrip():
    hs = hilbert_series(GL6, GR26, (2, 1, 0, 0, -1, -2), 4)
    back = HilbertSeries.from_json(hs.to_json())
    assert back.numerator == hs.numerator and back.weights == hs.weights
    assert back.variety_dim == hs.variety_dim
