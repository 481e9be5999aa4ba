"""Contribution calculus: the four-value product, restrictions, handshakes."""

import math

import numpy as np
import pytest

from modcorr.deriv import (Restriction, c_restricted, check_squared_identity,
                           contribution, contribution_sweep, gap_threshold,
                           handshake_classify, lemma_hypotheses, odd_even_sums,
                           quad_sweep, quad_sweep_values, v_phi, v_phi_even_sum,
                           v_restricted, v_restricted_enum)
from modcorr.engine import c_phi
from modcorr.modfun import Angle, angle_grid
from modcorr.poly import PolyGF2, elementary, parse, zero
from modcorr.search import mask_to_poly, random_cubic, random_quadratic
from conftest import slow_contribution

W3 = Angle(2 * math.pi / 3)


def test_four_value_table_rows():
    # minimal cases realizing each (coefficient, direction bit) pair
    a = Angle(1.1)
    # (0,0): derivative coefficient 0 on an unselected coordinate -> factor 1
    assert contribution(zero(1), 0, a) == pytest.approx(1.0)
    # (1,0): p = x1*x2, y = 10 puts coefficient 1 on the unselected x2
    assert contribution(parse("x1*x2"), 0b01, a) == 0
    # (0,1): zero polynomial, selected coordinate -> cos
    assert contribution(zero(1), 1, a) == pytest.approx(a.gamma)
    # (1,1) twice with derivative constant 1: (-1) * (-i sin)^2
    assert contribution(parse("x1*x2"), 0b11, a) == pytest.approx(a.sigma ** 2)
    # a linear polynomial only flips the derivative constant
    assert contribution(elementary(1, 1), 1, a) == pytest.approx(-a.gamma)


def test_product_matches_direct(rng):
    for _ in range(10):
        p = random_quadratic(6, rng)
        for ang in (Angle(0.7), W3):
            for y in range(64):
                assert contribution(p, y, ang, "product") == pytest.approx(
                    contribution(p, y, ang, "enum"), abs=1e-12)


def test_contribution_matches_slow_oracle(rng):
    p = random_cubic(5, rng)
    for y in (0, 3, 17, 31):
        got = contribution(p, y, W3)
        assert got == pytest.approx(slow_contribution(p, y, W3.omega), abs=1e-12)


def test_sweep_methods_agree(rng):
    p = random_quadratic(7, rng)
    c = random_cubic(7, rng)
    ang = Angle(0.9)
    np.testing.assert_allclose(contribution_sweep(p, ang, "product"),
                               contribution_sweep(p, ang, "enum"), atol=1e-12)
    np.testing.assert_allclose(contribution_sweep(c, ang, "enum"),
                               contribution_sweep(c, ang, "transform"), atol=1e-12)


def test_symmetric_contributions():
    # even weight: sigma^w; odd below full: zero; full weight: signed cos^n
    for n in (6, 7):
        e2 = elementary(n, 2)
        e2e1 = e2 + elementary(n, 1)
        ang = Angle(1.25)
        for y in range(1 << n):
            w = bin(y).count("1")
            for s in (e2, e2e1):
                c = contribution(s, y, ang)
                if w % 2 == 0:
                    assert c == pytest.approx(ang.sigma ** w, abs=1e-12)
                elif w < n:
                    assert c == 0
        if n % 2:
            sign = 1 if n % 4 == 1 else -1
            full = (1 << n) - 1
            assert contribution(e2, full, ang) == pytest.approx(sign * ang.gamma ** n, abs=1e-12)
            assert contribution(e2e1, full, ang) == pytest.approx(-sign * ang.gamma ** n, abs=1e-12)


def test_no_cancellation_for_even_n():
    # every contribution of the symmetric quadratic is real and non-negative
    n = 8
    vals = contribution_sweep(elementary(n, 2), Angle(1.2))
    assert float(np.abs(vals.imag).max()) <= 1e-12
    assert float(vals.real.min()) >= -1e-12


def test_trivial_maximum_bound(rng):
    # a per-coordinate fact: needs the derivative affine, so quadratics only
    for n in (6, 8):
        w = np.bitwise_count(np.arange(1 << n, dtype=np.int64)).astype(np.float64)
        for _ in range(6):
            p = random_quadratic(n, rng)
            for ang in angle_grid(8):
                cap = max(abs(ang.sigma), abs(ang.gamma)) ** w
                vals = np.abs(contribution_sweep(p, ang))
                assert float((vals - cap).max()) <= 1e-12


def test_trivial_maximum_fails_for_cubics():
    # the weight bound does not survive a quadratic derivative: the full
    # cubic symmetric part breaks it already at n=3, phi=pi/4
    ang = Angle(math.pi / 4)
    got = abs(contribution(elementary(3, 3), 0b111, ang, "enum"))
    cap = max(ang.sigma, ang.gamma) ** 3
    assert got > cap + 0.3


def test_squared_identity_examples(rng):
    r = check_squared_identity(zero(4), W3)
    assert r["lhs"] == pytest.approx(0.5 ** 8, abs=1e-12)
    assert r["diff"] <= 1e-9 and r["imag"] <= 1e-9
    r = check_squared_identity(elementary(6, 2), Angle(math.pi / 2))
    assert r["lhs"] == pytest.approx(0.5, abs=1e-12)
    assert r["rhs"].real == pytest.approx(v_phi(6, Angle(math.pi / 2)), abs=1e-12)
    for _ in range(5):
        p = random_cubic(10, rng)
        r = check_squared_identity(p, Angle(1.9))
        assert r["diff"] <= 1e-9 and r["imag"] <= 1e-9


def test_v_phi_forms_agree():
    assert v_phi(2, Angle(math.pi / 2)) == pytest.approx(0.5)
    for n in (1, 7, 20):
        assert v_phi(n, Angle(0.0)) == pytest.approx(0.5 ** n)
        for ang in angle_grid(16):
            assert v_phi(n, ang) == pytest.approx(v_phi_even_sum(n, ang), abs=1e-12)


def test_odd_even_sums():
    for n in (3, 11, 20):
        for d in np.linspace(0, 1, 9):
            even_c, odd_c = odd_even_sums(n, float(d))
            even_d = sum(math.comb(n, w) * d ** w for w in range(0, n + 1, 2))
            odd_d = sum(math.comb(n, w) * d ** w for w in range(1, n + 1, 2))
            assert even_c == pytest.approx(even_d, rel=1e-12, abs=1e-12)
            assert odd_c == pytest.approx(odd_d, rel=1e-12, abs=1e-12)


def test_restriction_basics():
    r = Restriction("01**0")
    assert r.n == 5 and r.weight == 1 and r.stars == 2
    assert r.base_mask() == 0b00010
    assert sorted(r.directions()) == [0b00010, 0b00110, 0b01010, 0b01110]
    with pytest.raises(ValueError):
        Restriction("01x")


def test_restricted_endpoints(rng):
    p = random_quadratic(6, rng)
    ang = Angle(1.3)
    sweep = np.abs(quad_sweep_values(quad_sweep(p), ang))
    # all stars: mean absolute contribution
    assert c_restricted(p, Restriction("******"), ang) == pytest.approx(float(sweep.mean()), abs=1e-12)
    assert v_restricted(Restriction("******"), ang) == pytest.approx(v_phi(6, ang), abs=1e-12)
    # fully concrete: single direction
    r = Restriction("011010")
    assert c_restricted(p, r, ang) == pytest.approx(abs(contribution(p, r.base_mask(), ang)), abs=1e-12)


def test_split_law(rng):
    ang = Angle(2 * math.pi / 5)
    for _ in range(10):
        p = random_quadratic(8, rng)
        full = c_restricted(p, Restriction("*" * 8), ang)
        zero_side = c_restricted(p, Restriction("0" + "*" * 7), ang)
        one_side = c_restricted(p, Restriction("1" + "*" * 7), ang)
        assert full == pytest.approx((zero_side + one_side) / 2, abs=1e-12)


def test_v_restricted_closed_vs_enum():
    for cells in ("****", "01**", "110*", "1*1*", "0000", "1111"):
        for phi in (0.4, 1.1, math.pi / 2):
            r = Restriction(cells)
            assert v_restricted(r, Angle(phi)) == pytest.approx(
                v_restricted_enum(r, Angle(phi)), abs=1e-12)


def test_cubic_restricted_path(rng):
    p = random_cubic(5, rng)
    ang = Angle(0.8)
    r = Restriction("0**1*")
    direct = np.mean([abs(slow_contribution(p, y, ang.omega)) for y in r.directions()])
    assert c_restricted(p, r, ang) == pytest.approx(float(direct), abs=1e-12)


def test_handshake_classification(rng):
    ang = Angle(1.0)
    # y = 0: empty subgraph, contribution exactly one
    p0 = random_quadratic(6, rng)
    hc = handshake_classify(p0, 0, ang)
    assert not hc.zero and hc.odd_nodes == 0 and hc.magnitude == pytest.approx(1.0)
    # complete graph, even weight: every selected node has odd induced degree
    e2 = elementary(6, 2)
    hc = handshake_classify(e2, 0b111100, ang)
    assert hc.odd_nodes == 4
    # exhaustive agreement with the product values
    for _ in range(10):
        p = random_quadratic(7, rng)
        mags = np.abs(quad_sweep_values(quad_sweep(p), ang))
        for y in range(1 << 7):
            hc = handshake_classify(p, y, ang)
            assert hc.odd_nodes % 2 == 0
            want = 0.0 if hc.zero else hc.magnitude
            assert want == pytest.approx(float(mags[y]), abs=1e-12)


def test_lemma_hypotheses_examples():
    p = parse("x1*x2", n=3)
    flags = lemma_hypotheses(p, Restriction("01*"))
    assert flags.odd_even and not flags.gap
    e2 = elementary(5, 2)
    flags = lemma_hypotheses(e2, Restriction("0****"), t=3)
    assert flags.gap and not flags.odd_even
    assert not flags.buffer  # star degree 4 exceeds n-2
    near_e2 = e2 + parse("x1*x2", n=5)
    flags = lemma_hypotheses(near_e2, Restriction("0****"), t=3)
    assert flags.buffer  # star degree 3 lies in [3, n-2]
    flags = lemma_hypotheses(zero(4), Restriction("0***"))
    assert not (flags.odd_even or flags.gap or flags.buffer)


def test_odd_even_lemma_conclusion(rng):
    # whenever the odd-neighbor hypothesis holds, c(p,r) <= v(r)
    n = 6
    angles = [Angle(a) for a in (0.9, math.pi / 3, math.pi / 2)]
    checked = 0
    for _ in range(40):
        p = random_quadratic(n, rng)
        cells = "".join(str(rng.choice(("0", "1", "*"))) for _ in range(n))
        r = Restriction(cells)
        if not lemma_hypotheses(p, r).odd_even:
            continue
        for ang in angles:
            checked += 1
            assert c_restricted(p, r, ang) <= v_restricted(r, ang) + 1e-9
    assert checked > 10


def test_gap_threshold():
    assert gap_threshold(Angle(math.pi / 2)) == 1
    t = gap_threshold(Angle(0.9))
    s, g = math.sin(0.9), math.cos(0.9)
    assert ((1 + s) / (1 - s)) ** t >= (s + g) / (s - g)
    assert ((1 + s) / (1 - s)) ** (t - 1) < (s + g) / (s - g)
    with pytest.raises(ValueError):
        gap_threshold(Angle(0.3))
