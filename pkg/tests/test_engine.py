"""Brute-force engine: exact values, fast paths, and determinism."""

import itertools
import math

import numpy as np
import pytest

from modcorr._util import fwht
from modcorr.engine import (BudgetError, b_m, bias, c_phi, class_sums, e_phi,
                            prefixed_symmetric_b_m, sign_table, symmetric_b_m,
                            symmetric_c_phi, symmetric_e_phi)
from modcorr.modfun import Angle, angle_grid
from modcorr.poly import PolyGF2, SymmetricSpec, elementary, parse, zero
from modcorr.search import random_cubic, random_quadratic
from conftest import slow_e_phi

W3 = Angle(2 * math.pi / 3)


def test_e_phi_zero_poly():
    for n in (1, 4, 9):
        want = ((1 + W3.omega) / 2) ** n
        assert e_phi(zero(n), W3) == pytest.approx(want, abs=1e-12)
        assert c_phi(zero(n), W3) == pytest.approx(0.5 ** n, abs=1e-12)


def test_e_phi_hand_enumeration():
    # weights 0..3 of e2 on 3 variables give 1 + 3w - 3w^2 - 1
    want = 3 * (W3.omega - W3.omega ** 2) / 8
    assert e_phi(elementary(3, 2), W3) == pytest.approx(want, abs=1e-12)
    assert c_phi(elementary(3, 2), W3) == pytest.approx(3 * math.sqrt(3) / 8, abs=1e-12)


def test_parity_correlation():
    assert c_phi(elementary(2, 1), W3) == pytest.approx(3 / 4, abs=1e-12)
    assert c_phi(zero(3), Angle(0.0)) == pytest.approx(1.0)


def test_e_phi_single_variable():
    assert e_phi(zero(1), W3) == pytest.approx((1 + W3.omega) / 2, abs=1e-12)


def test_matches_slow_oracle(rng):
    for _ in range(5):
        p = random_cubic(6, rng)
        for ang in (Angle(0.4), W3, Angle(5.0)):
            assert e_phi(p, ang) == pytest.approx(slow_e_phi(p, ang.omega), abs=1e-12)


def test_c_in_unit_interval(rng):
    for _ in range(20):
        p = random_cubic(8, rng)
        v = c_phi(p, Angle(1.3))
        assert 0.0 <= v <= 1.0 + 1e-12


def test_global_complement_invariance(rng):
    one = PolyGF2(8, const=1)
    for _ in range(10):
        p = random_quadratic(8, rng)
        assert c_phi(p, W3) == pytest.approx(c_phi(p + one, W3), abs=1e-12)


def test_linear_shift_law(rng):
    # adding the full parity shifts the angle by pi
    n = 8
    e1 = elementary(n, 1)
    for _ in range(5):
        p = random_quadratic(n, rng)
        for phi in (0.3, 1.1):
            lhs = c_phi(p + e1, Angle(phi))
            rhs = c_phi(p, Angle(math.pi + phi))
            assert abs(lhs - rhs) <= 1e-9


def test_thread_and_repeat_determinism():
    p = elementary(12, 2) + parse("x1*x5 + x3", n=12)
    a = Angle(1.234)
    v1 = e_phi(p, a, threads=1)
    v2 = e_phi(p, a, threads=4)
    v3 = e_phi(p, a, threads=1)
    assert v1 == v2 == v3  # bit identical


def test_budget_guard():
    with pytest.raises(BudgetError):
        e_phi(zero(31), W3)
    with pytest.raises(BudgetError):
        e_phi(zero(12), W3, max_n=10)


def test_b_m_examples():
    assert b_m(zero(4), 3) == 0.0
    assert b_m(elementary(3, 1), 3) == 0.0  # both class means vanish
    assert b_m(zero(5), 5) == 0.0


def test_b_m_range(rng):
    for _ in range(10):
        p = random_quadratic(7, rng)
        assert 0.0 <= b_m(p, 3) <= 2.0


def test_class_sums_consistency(rng):
    p = random_quadratic(9, rng)
    s0, s1, n0 = class_sums(p, 3)
    total_bias = bias(p) * (1 << p.n)
    assert s0 + s1 == pytest.approx(total_bias)


def test_bias_examples():
    assert bias(elementary(5, 1)) == 0.0
    assert bias(zero(6)) == 1.0
    assert bias(PolyGF2(4, const=1)) == -1.0


def test_quadratic_symmetric_bias_bound():
    # |bias(e2 + linear)| <= 2^{-(n-1)/2}; sweep every linear part via the
    # Walsh-Hadamard transform of the sign table
    for n in (6, 9, 10):
        s = sign_table(elementary(n, 2)).astype(np.float64)
        biases = np.abs(fwht(s)) / (1 << n)
        assert float(biases.max()) <= 2 ** (-(n - 1) / 2) + 1e-12


def test_symmetric_fast_path_agrees_with_engine(rng):
    angles = angle_grid(16)
    for n in (4, 9, 12):
        for coeffs in itertools.product((0, 1), repeat=4):
            s = SymmetricSpec(n, coeffs)
            p = s.expand()
            for ang in angles[::5]:
                assert symmetric_c_phi(s, ang) == pytest.approx(c_phi(p, ang), abs=1e-9)


def test_symmetric_e2_closed_values():
    # even n at sigma-dominant angles attains sqrt(v)
    from modcorr.deriv import v_phi
    for n in (6, 10):
        for phi in (1.1, math.pi / 2):
            s = SymmetricSpec(n, (0, 0, 1))
            assert symmetric_c_phi(s, Angle(phi)) == pytest.approx(
                math.sqrt(v_phi(n, Angle(phi))), abs=1e-12)
    assert symmetric_c_phi(SymmetricSpec(8, (0,)), W3) == pytest.approx(
        ((1 + W3.gamma) / 2) ** 4, abs=1e-12)


def test_symmetric_b_m_agrees_with_engine():
    for n in (6, 9):
        for coeffs in ((0, 0, 1), (0, 1, 1), (1, 1)):
            s = SymmetricSpec(n, coeffs)
            assert symmetric_b_m(s, 3) == pytest.approx(b_m(s.expand(), 3), abs=1e-12)


def test_prefixed_symmetric_b_m_agrees_with_engine():
    n = 8
    for coeffs in ((0, 0, 1), (0, 1, 1)):
        s = SymmetricSpec(n - 1, coeffs)
        inner = s.expand()
        shifted_edges = tuple((i + 1, j + 1) for i, j in inner.edges)
        p = PolyGF2(n, inner.const, (inner.linear << 1) | 1, shifted_edges)
        assert prefixed_symmetric_b_m(s, 3) == pytest.approx(b_m(p, 3), abs=1e-12)
