import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from wflag.lattice import (LatticeError, act, act_dual, build_root_system,
                           check_denominator_identity, pair, parse_weight,
                           variety_dimension, weight_system, weyl_dimension, weyl_group)

G2 = build_root_system("G2")
GL6 = build_root_system("GL6")
GR26 = (1, 1, 0, 0, 0, 0)


def test_group_orders():
    # |W(G2)| = 12 and |S_n| = n!
    assert len(weyl_group(G2)) == 12
    for n in range(3, 7):
        assert len(weyl_group(build_root_system("GL%d" % n))) == [1, 1, 2, 6, 24, 120, 720][n]


def test_simple_reflection_of_long_root():
    # the short simple reflection sends alpha2 to 3 alpha1 + alpha2
    assert G2.reflect((0, 1), (1, 0)) == (3, 1)


def test_g2_root_lengths():
    assert len(G2.roots) == 12
    assert sum(1 for a in G2.roots if G2.is_long(a)) == 6


def test_omega1_orbit_is_short_roots():
    orbit = {act(g, G2.fundamental_weights[0]) for g in weyl_group(G2)}
    assert orbit == {a for a in G2.roots if not G2.is_long(a)}


def test_g2_weight_systems():
    ws1 = weight_system(G2, (2, 1)).as_counter()
    assert sum(ws1.values()) == 7 and ws1[(0, 0)] == 1
    ws2 = weight_system(G2, (3, 2)).as_counter()
    assert sum(ws2.values()) == 14 and ws2[(0, 0)] == 2
    assert {w for w in ws2 if w != (0, 0)} == set(G2.roots)


def test_gl6_wedge_square():
    ws = weight_system(GL6, GR26).as_counter()
    expected = {tuple(int(k in (i, j)) for k in range(6))
                for i, j in itertools.combinations(range(6), 2)}
    assert set(ws) == expected and set(ws.values()) == {1}


def test_dimensions():
    assert variety_dimension(G2, (2, 1)) == 5
    assert variety_dimension(G2, (3, 2)) == 5
    assert variety_dimension(GL6, GR26) == 8


@pytest.mark.parametrize("group,lam", [("G2", (5, 3)), ("G2", (7, 4)), ("GL4", (2, 1, 1, 0)),
                                       ("GL5", (3, 1, 0, 0, 0))])
def test_freudenthal_matches_weyl_dimension(group, lam):
    rs = build_root_system(group)
    assert weight_system(rs, lam).total_dim == weyl_dimension(rs, lam)


def test_non_dominant_rejected():
    with pytest.raises(LatticeError):
        weight_system(G2, (1, 0))


def test_parse_weight():
    assert parse_weight(G2, "omega2") == (3, 2)
    assert parse_weight(G2, "2omega1+omega2") == (7, 4)
    assert parse_weight(GL6, "e1+e2") == GR26
    assert parse_weight(GL6, "1,1,0,0,0,0") == GR26
    for bad in ("omega7", "e1", "x3"):
        with pytest.raises(LatticeError):
            parse_weight(G2, bad)


def test_pair_length_mismatch():
    with pytest.raises(LatticeError):
        pair((1, 2), (1, 2, 3))


@pytest.mark.parametrize("group", ["G2", "GL3", "GL6"])
def test_denominator_identity_random(group):
    rs = build_root_system(group)
    rng = random.Random(7)
    for _ in range(20):
        mu = tuple(rng.randint(-6, 6) for _ in range(rs.rank))
        assert check_denominator_identity(rs, mu)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_parity_is_homomorphism(data):
    for rs in (G2, build_root_system("GL4")):
        w = weyl_group(rs)
        g = data.draw(st.sampled_from(w))
        h = data.draw(st.sampled_from(w))
        gh = g.compose(h)
        assert gh.parity == g.parity * h.parity
        match = [x for x in w if x.action == gh.action]
        assert len(match) == 1 and match[0].parity == gh.parity


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_weight_systems_weyl_invariant(data):
    for rs, lam in ((G2, (2, 1)), (G2, (3, 2)), (GL6, GR26)):
        g = data.draw(st.sampled_from(weyl_group(rs)))
        ws = weight_system(rs, lam).as_counter()
        moved = {act(g, w): m for w, m in ws.items()}
        assert moved == dict(ws)


def test_weight_sum_is_zero_for_g2():
    for lam in ((2, 1), (3, 2)):
        ws = weight_system(G2, lam)
        assert tuple(sum(c) for c in zip(*ws.weights())) == (0, 0)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=2, max_size=2), st.integers(-5, 5),
       st.integers(-5, 5))
def test_dual_action_is_transpose(mu, a, b):
    g = random.Random(a * 11 + b).choice(weyl_group(G2))
    assert pair(act(g, (a, b)), tuple(mu)) == pair((a, b), act_dual(g, tuple(mu)))
