"""TRIBES, the low-degree approximator, and local correlation."""

import math
from fractions import Fraction

import numpy as np
import pytest

from modcorr._util import make_rng
from modcorr.localcorr import (ApproxPoly, TableFunction, TribesParams, agreement,
                               as_table, choose_width, counterexample_experiment,
                               delta_s, delta_s_fourier, not_fixed_probability,
                               pick_s, report_to_json, sample_approximator,
                               tribes_eval)


def test_tribes_eval():
    p = TribesParams(2, 2)
    assert tribes_eval(p, 0b1111) == 1
    assert tribes_eval(p, 0) == 0
    # leftmost textual bit is x1 = internal bit 0: '1101' sets x1,x2,x4
    x = sum(1 << i for i, ch in enumerate("1101") if ch == "1")
    assert tribes_eval(p, x) == 1  # first block (x1,x2) fully set
    assert tribes_eval(p, 0b0101) == 0  # one bit per block


def test_tribes_exact_probability():
    p = TribesParams(3, 4)
    assert p.p_zero() == Fraction(7, 8) ** 4
    xs = np.arange(1 << p.n, dtype=np.uint64)
    zero_frac = Fraction(int(np.sum(p.eval_many(xs) == 0)), 1 << p.n)
    assert zero_frac == p.p_zero()


def test_choose_width():
    p = choose_width(64)
    assert (p.term_width, p.term_count) == (4, 16)
    p24 = choose_width(24)
    assert p24.n == 24 and p24.term_width == 3
    assert choose_width(12).term_width >= 2  # width 1 is rejected by scan range
    assert float(p24.imbalance()) <= 0.2


def test_delta_empty_and_full_sets():
    rng = make_rng(9)
    n = 9
    tt = rng.integers(0, 2, size=1 << n).astype(np.uint8)
    f = TableFunction(n, tt)
    ef = float(np.mean(1.0 - 2.0 * tt))
    # inner mean over no variables is the point value: variance
    est = delta_s(f, ())
    assert est.estimate == pytest.approx(1 - ef ** 2, abs=1e-12)
    # inner mean over everything is the global mean: zero
    assert delta_s(f, tuple(range(n))).estimate == 0.0
    assert delta_s(f, tuple(range(n))).exact == 0


def test_delta_single_variable_sign_function():
    n = 6
    xs = np.arange(1 << n, dtype=np.int64)
    f = TableFunction(n, ((xs >> 0) & 1).astype(np.uint8))
    est = delta_s(f, (0,))
    assert est.estimate == 0.0  # inner mean vanishes and so does the global mean


def test_delta_matches_fourier_weight():
    rng = make_rng(10)
    n = 10
    for _ in range(4):
        tt = rng.integers(0, 2, size=1 << n).astype(np.uint8)
        f = TableFunction(n, tt)
        for s in [(), (2,), (0, 4), (1, 5, 8), tuple(range(n))]:
            assert delta_s(f, s).estimate == pytest.approx(delta_s_fourier(f, s), abs=1e-10)


def test_delta_range_and_exactness():
    rng = make_rng(11)
    n = 8
    tt = rng.integers(0, 2, size=1 << n).astype(np.uint8)
    f = TableFunction(n, tt)
    for s in [(0, 1), (3, 5, 7)]:
        est = delta_s(f, s)
        assert 0.0 <= est.estimate <= 4.0
        assert est.exact is not None
        assert float(est.exact) == est.estimate


def test_hybrid_within_stderr_of_exact():
    rng = make_rng(12)
    n = 12
    hits = 0
    trials = 30
    for t in range(trials):
        tt = rng.integers(0, 2, size=1 << n).astype(np.uint8)
        f = TableFunction(n, tt)
        s = tuple(int(v) for v in make_rng(500 + t).choice(n, size=5, replace=False))
        exact = delta_s(f, s, mode="exact").estimate
        hybrid = delta_s(f, s, mode="hybrid", budget=2048, seed=t)
        if abs(hybrid.estimate - exact) <= 4 * max(hybrid.stderr, 1e-12):
            hits += 1
    assert hits >= int(0.9 * trials)


def test_hybrid_determinism():
    params = choose_width(30)
    q = sample_approximator(params, 3)
    a = delta_s(q, (0, 5, 9), mode="hybrid", budget=512, seed=77)
    b = delta_s(q, (0, 5, 9), mode="hybrid", budget=512, seed=77)
    assert a == b


def test_approximator_structure():
    params = TribesParams(3, 4)
    q = sample_approximator(params, 1)
    assert q.degree() == 6
    xs = np.arange(1 << params.n, dtype=np.uint64)
    tribes = params.eval_many(xs)
    qv = q.eval_many(xs)
    # inputs with every block dead are never accepted
    assert np.all(qv[tribes == 0] == 0)


def test_disagreement_law_exhaustive_pairs():
    # over all (t1, t2) pairs the disagreement rate on any live input is 1/4
    params = TribesParams(2, 4)
    xs = np.arange(1 << params.n, dtype=np.uint64)
    tribes = params.eval_many(xs)
    disagree = np.zeros(1 << params.n, dtype=np.int64)
    for t1 in range(16):
        for t2 in range(16):
            q = ApproxPoly(params, t1, t2)
            disagree += q.eval_many(xs) != tribes
    assert np.all(disagree[tribes == 1] * 4 == 16 * 16)
    assert np.all(disagree[tribes == 0] == 0)


def test_monte_carlo_disagreement_at_64():
    params = choose_width(64)
    rng = make_rng(13)
    hits = 0
    for seed in range(3):
        q = sample_approximator(params, seed)
        agree, how = agreement(params, q, budget=100_000, seed=9)
        assert how == "monte-carlo"
        rate = 1 - agree
        sigma = math.sqrt(0.25 * 0.75 / 100_000)
        if rate <= 0.25 + 3 * sigma:
            hits += 1
    assert hits >= 2  # expected disagreement is P[live]/4 ~ 0.16


def test_not_fixed_probability():
    params = TribesParams(2, 3)
    f = as_table(params)
    # fixing everything leaves nothing undetermined
    assert not_fixed_probability(f, ()) == 0
    full = not_fixed_probability(f, tuple(range(params.n)))
    assert full == 1  # nothing assigned, the function is not constant


def test_pick_s_strategies():
    params = TribesParams(3, 8)
    spread = pick_s(params, 8, "spread", seed=1)
    assert len(spread) == 8 and len(set(b // 3 for b in spread)) == 8
    packed = pick_s(params, 6, "packed", seed=1)
    assert packed == tuple(range(6))
    rand = pick_s(params, 5, "random", seed=1)
    assert len(set(rand)) == 5
    with pytest.raises(ValueError):
        pick_s(params, 99, "spread", seed=1)


def test_small_experiment_deterministic():
    rep1 = counterexample_experiment(12, s_sizes=(2, 4), q_seeds=(0, 1, 2, 3),
                                     strategies=("spread", "random"), seed=5)
    rep2 = counterexample_experiment(12, s_sizes=(2, 4), q_seeds=(0, 1, 2, 3),
                                     strategies=("spread", "random"), seed=5)
    assert report_to_json(rep1) == report_to_json(rep2)
    assert rep1["q_found"]
    assert rep1["q"]["agreement"] >= 0.75
    for row in rep1["probes"]:
        assert "delta_exact" in row  # n = 12 runs exactly
        assert row["delta"] >= 0.0


def test_experiment_reports_search_trail():
    rep = counterexample_experiment(12, s_sizes=(2,), q_seeds=(0,), seed=5,
                                    agreement_floor=1.1)  # unreachable floor
    assert not rep["q_found"]
    assert len(rep["q_search"]) == 1
