"""Local correlation of boolean functions and the TRIBES experiment.

For F: {0,1}^n -> {-1,1} and a variable set S, the local correlation is

    Delta_S(F) = E over assignments of the complement of S
                 of (E over the S-coordinates of F  -  E[F])^2,

i.e. the outer expectation samples the variables outside S and the inner
mean runs over the 2^{|S|} completions.  Equivalently it is the Fourier
weight of the nonempty coefficient sets avoiding S.  Consequently
Delta over the empty set equals the variance of F and Delta over all
variables is zero.

TRIBES is the read-once monotone DNF with equal-width terms, tuned so its
acceptance probability is as close to 1/2 as the width allows.  A random
degree-2w polynomial (an OR of two XORs of term monomials) agrees with it on
3/4 of inputs in expectation, yet keeps local correlation bounded away from
zero for every small S.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from ._util import DEFAULT_SEED, make_rng, popcount_array
from .engine import BudgetError

EXACT_MAX_N = 24
HYBRID_MAX_S = 24


# ---- function carriers -----------------------------------------------------


@dataclass(frozen=True)
class TableFunction:
    """A boolean function given by its full truth table of 0/1 values."""

    n: int
    table: np.ndarray

    def value(self, x: int) -> int:
        return int(self.table[x])

    def eval_many(self, xs: np.ndarray) -> np.ndarray:
        return self.table[xs]


@dataclass(frozen=True)
class TribesParams:
    """Read-once monotone DNF with term_count terms of width term_width."""

    term_width: int
    term_count: int

    def __post_init__(self):
        if self.term_width < 1 or self.term_count < 1:
            raise ValueError("width and count must be positive")
        if self.term_width * self.term_count > 64:
            raise ValueError("n = width * count must fit in a machine word")

    @property
    def n(self) -> int:
        return self.term_width * self.term_count

    @cached_property
    def block_masks(self) -> tuple[int, ...]:
        base = (1 << self.term_width) - 1
        return tuple(base << (b * self.term_width) for b in range(self.term_count))

    def p_zero(self) -> Fraction:
        """Exact probability that the function is 0 on a uniform input."""
        per_block = Fraction((1 << self.term_width) - 1, 1 << self.term_width)
        return per_block ** self.term_count

    def imbalance(self) -> Fraction:
        return abs(self.p_zero() - Fraction(1, 2))

    def value(self, x: int) -> int:
        return tribes_eval(self, x)

    def eval_many(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs).astype(np.uint64, copy=False)
        out = np.zeros(xs.shape, dtype=np.uint8)
        for mask in self.block_masks:
            m = np.uint64(mask)
            out |= (xs & m) == m
        return out.astype(np.uint8)


def tribes_eval(params: TribesParams, x: int) -> int:
    """OR over blocks of the AND of the block's bits."""
    if x < 0 or x >> params.n:
        raise ValueError("input outside the variable range")
    for mask in params.block_masks:
        if x & mask == mask:
            return 1
    return 0


def choose_width(n_target: int) -> TribesParams:
    """Pick (width, count) near n_target minimizing the exact imbalance.

    Widths from 2 up are scanned (width 1 is degenerate: the acceptance
    probability collapses to 2^{-count}); for each, count = round(n/width).
    """
    if n_target < 4:
        raise ValueError("need at least 4 variables")
    best: TribesParams | None = None
    for w in range(2, max(4, math.ceil(math.log2(n_target))) + 2):
        t = max(1, round(n_target / w))
        while w * t > 64:
            t -= 1
        if t < 1:
            continue
        cand = TribesParams(w, t)
        if best is None or cand.imbalance() < best.imbalance():
            best = cand
    return best


@dataclass(frozen=True)
class ApproxPoly:
    """OR of two XORs of block monomials: 1 - (1 - a)(1 - b) with
    a = xor of the monomials indexed by t1, b = likewise for t2.

    Kept in factored form; the expanded monomial count is exponential in the
    block width but evaluation is linear in it.
    """

    params: TribesParams
    t1_mask: int
    t2_mask: int

    @property
    def n(self) -> int:
        return self.params.n

    def degree(self) -> int:
        return 2 * self.params.term_width

    def _xor_of_blocks(self, xs: np.ndarray, which: int) -> np.ndarray:
        xs = np.asarray(xs).astype(np.uint64, copy=False)
        acc = np.zeros(xs.shape, dtype=np.uint8)
        for b, mask in enumerate(self.params.block_masks):
            if (which >> b) & 1:
                m = np.uint64(mask)
                acc ^= ((xs & m) == m).astype(np.uint8)
        return acc

    def value(self, x: int) -> int:
        return int(self.eval_many(np.array([x], dtype=np.int64))[0])

    def eval_many(self, xs: np.ndarray) -> np.ndarray:
        a = self._xor_of_blocks(xs, self.t1_mask)
        b = self._xor_of_blocks(xs, self.t2_mask)
        return (a | b).astype(np.uint8)


def sample_approximator(params: TribesParams, seed: int) -> ApproxPoly:
    """Uniformly random pair of term subsets; disagrees with the DNF with
    probability exactly 1/4 on any input having a live block."""
    rng = make_rng(seed)
    t1 = int(rng.integers(1 << params.term_count))
    t2 = int(rng.integers(1 << params.term_count))
    return ApproxPoly(params, t1, t2)


# ---- local correlation -------------------------------------------------------


@dataclass(frozen=True)
class LocalCorrEstimate:
    s: tuple[int, ...]
    estimate: float
    stderr: float
    outer_count: int
    inner_size: int
    mode: str  # exact | hybrid
    seed: int | None = None
    exact: Fraction | None = None
    ef: float = 0.0

    def row(self) -> dict:
        out = {"S": list(self.s), "delta": self.estimate, "stderr": self.stderr,
               "outer": self.outer_count, "inner": self.inner_size,
               "mode": self.mode, "ef": self.ef}
        if self.seed is not None:
            out["seed"] = self.seed
        if self.exact is not None:
            out["delta_exact"] = [self.exact.numerator, self.exact.denominator]
        return out


def _spread_masks(positions: Sequence[int], count_bits: int) -> np.ndarray:
    """Masks placing the bits of 0..2^count_bits-1 at the given positions."""
    vals = np.arange(1 << count_bits, dtype=np.uint64)
    out = np.zeros(1 << count_bits, dtype=np.uint64)
    for t, pos in enumerate(positions):
        out |= ((vals >> np.uint64(t)) & np.uint64(1)) << np.uint64(pos)
    return out


def as_table(f) -> TableFunction:
    """Materialize the full truth table (n <= 24) for repeated probing."""
    if isinstance(f, TableFunction):
        return f
    if f.n > EXACT_MAX_N:
        raise BudgetError(f"truth table needs n <= {EXACT_MAX_N}")
    xs = np.arange(1 << f.n, dtype=np.int64)
    return TableFunction(f.n, f.eval_many(xs).astype(np.uint8))


def _sign_table_of(f) -> np.ndarray:
    if hasattr(f, "table"):
        table = np.asarray(f.table, dtype=np.int8)
    else:
        xs = np.arange(1 << f.n, dtype=np.int64)
        table = f.eval_many(xs).astype(np.int8)
    return (1 - 2 * table).astype(np.int8)


def delta_s(f, s: Sequence[int], mode: str = "auto", budget: int = 4096,
            seed: int = DEFAULT_SEED) -> LocalCorrEstimate:
    """Local correlation of (-1)^f on the variable set s.

    exact mode enumerates everything (n <= 24).  hybrid mode samples the
    complement assignment and keeps the inner mean exact over the 2^{|s|}
    completions (|s| <= 24); the global mean is exact when n <= 24 and
    estimated from a separate seeded sample otherwise, with its uncertainty
    folded into the reported standard error.
    """
    n = f.n
    s = tuple(sorted(set(s)))
    if any(not 0 <= i < n for i in s):
        raise ValueError("S contains indices outside the variable range")
    if mode == "auto":
        mode = "exact" if n <= EXACT_MAX_N else "hybrid"
    if mode == "exact":
        if n > EXACT_MAX_N:
            raise BudgetError(f"exact mode needs n <= {EXACT_MAX_N}")
        return _delta_exact(f, s)
    if mode != "hybrid":
        raise ValueError("mode must be exact, hybrid, or auto")
    if len(s) > HYBRID_MAX_S:
        raise BudgetError(f"hybrid mode needs |S| <= {HYBRID_MAX_S}")
    return _delta_hybrid(f, s, budget, seed)


def _delta_exact(f, s: tuple[int, ...]) -> LocalCorrEstimate:
    n, k = f.n, len(s)
    rest = [i for i in range(n) if i not in s]
    sign = _sign_table_of(f)
    mask_s = _spread_masks(s, k)
    mask_r = _spread_masks(rest, n - k)
    inner = np.zeros(1 << (n - k), dtype=np.int64)
    for a in range(1 << k):
        inner += sign[mask_r | int(mask_s[a])]
    total = int(inner.sum())
    sum_sq = int(np.dot(inner, inner))
    # Delta = (2^{n-k} * sum_b I_b^2 - T^2) / 4^n  with I_b the inner sums
    num = (1 << (n - k)) * sum_sq - total * total
    exact = Fraction(num, 1 << (2 * n))
    return LocalCorrEstimate(
        s=s, estimate=float(exact), stderr=0.0,
        outer_count=1 << (n - k), inner_size=1 << k, mode="exact",
        exact=exact, ef=total / (1 << n),
    )


def _random_inputs(rng: np.random.Generator, n: int, count: int) -> np.ndarray:
    if n >= 64:
        return rng.integers(0, 2 ** 64, size=count, dtype=np.uint64)
    return rng.integers(0, 1 << n, size=count, dtype=np.uint64)


def _delta_hybrid(f, s: tuple[int, ...], budget: int, seed: int) -> LocalCorrEstimate:
    n, k = f.n, len(s)
    rest = [i for i in range(n) if i not in s]
    mask_s = _spread_masks(s, k)
    rng = make_rng(seed, stream=0)
    draws = _random_inputs(rng, n - k, budget)
    base = np.zeros(budget, dtype=np.uint64)
    for t, pos in enumerate(rest):
        base |= ((draws >> np.uint64(t)) & np.uint64(1)) << np.uint64(pos)
    inner = np.zeros(budget, dtype=np.float64)
    for a in range(1 << k):
        inner += 1.0 - 2.0 * f.eval_many(base | np.uint64(mask_s[a]))
    inner /= 1 << k

    ef_err = 0.0
    if n <= EXACT_MAX_N:
        ef = float(np.mean(_sign_table_of(f)))
    else:
        rng_ef = make_rng(seed, stream=1)
        vals = 1.0 - 2.0 * f.eval_many(_random_inputs(rng_ef, n, budget))
        ef = float(np.mean(vals))
        ef_err = float(np.std(vals, ddof=1) / math.sqrt(budget))

    devs = (inner - ef) ** 2
    est = float(np.mean(devs))
    se = float(np.std(devs, ddof=1) / math.sqrt(budget))
    if ef_err:
        # first-order effect of the global-mean error on the squared deviations
        se = math.hypot(se, 2 * abs(float(np.mean(inner - ef))) * ef_err + ef_err ** 2)
    return LocalCorrEstimate(
        s=s, estimate=est, stderr=se, outer_count=budget,
        inner_size=1 << k, mode="hybrid", seed=seed, ef=ef,
    )


def delta_s_fourier(f, s: Sequence[int]) -> float:
    """Independent check: Fourier weight of nonempty sets avoiding S."""
    from ._util import fwht
    n = f.n
    s = tuple(sorted(set(s)))
    coeffs = fwht(_sign_table_of(f).astype(np.float64)) / (1 << n)
    masks = np.arange(1 << n, dtype=np.int64)
    s_mask = sum(1 << i for i in s)
    keep = (masks & s_mask) == 0
    keep[0] = False
    return float(np.sum(coeffs[keep] ** 2))


def not_fixed_probability(f, s: Sequence[int]) -> Fraction:
    """Exact probability over complement assignments that f is not constant
    on the 2^{|S|} completions."""
    n = f.n
    if n > EXACT_MAX_N:
        raise BudgetError("exact fixing probability needs n <= 24")
    s = tuple(sorted(set(s)))
    k = len(s)
    rest = [i for i in range(n) if i not in s]
    sign = _sign_table_of(f)
    mask_s = _spread_masks(s, k)
    mask_r = _spread_masks(rest, n - k)
    inner = np.zeros(1 << (n - k), dtype=np.int64)
    for a in range(1 << k):
        inner += sign[mask_r | int(mask_s[a])]
    not_fixed = int(np.count_nonzero(np.abs(inner) != (1 << k)))
    return Fraction(not_fixed, 1 << (n - k))


# ---- experiment ---------------------------------------------------------------


def agreement(f, g, exact_max_n: int = EXACT_MAX_N, budget: int = 1 << 16,
              seed: int = DEFAULT_SEED) -> tuple[float, str]:
    """Fraction of inputs where f and g agree; exact when the cube is small."""
    n = f.n
    if n <= exact_max_n:
        xs = np.arange(1 << n, dtype=np.uint64)
        eq = np.count_nonzero(f.eval_many(xs) == g.eval_many(xs))
        return eq / (1 << n), "exact"
    rng = make_rng(seed, stream=2)
    xs = _random_inputs(rng, n, budget)
    return float(np.mean(f.eval_many(xs) == g.eval_many(xs))), "monte-carlo"


def pick_s(params: TribesParams, s_size: int, strategy: str, seed: int) -> tuple[int, ...]:
    """Adversarial or random variable sets for the local-correlation probe."""
    n, w, t = params.n, params.term_width, params.term_count
    if s_size > n:
        raise ValueError("S cannot exceed the variable count")
    if strategy == "spread":  # one index per block, wrapping to second slots
        return tuple(sorted((b % t) * w + (b // t) % w for b in range(s_size)))
    if strategy == "packed":  # fill whole blocks first
        return tuple(range(s_size))
    if strategy == "random":
        rng = make_rng(seed, stream=3)
        return tuple(sorted(int(v) for v in rng.choice(n, size=s_size, replace=False)))
    raise ValueError("strategy must be spread, packed, or random")


def counterexample_experiment(n_target: int, s_sizes: Sequence[int],
                              q_seeds: Sequence[int] = tuple(range(8)),
                              agreement_floor: float = 0.75,
                              strategies: Sequence[str] = ("spread", "packed", "random"),
                              budget: int = 4096, seed: int = DEFAULT_SEED,
                              mode: str = "auto") -> dict:
    """Build TRIBES, find a well-agreeing low-degree approximator, and probe
    its local correlation on adversarial variable sets.

    Returns a fully deterministic report: same arguments, same bytes.
    """
    params = choose_width(n_target)
    report: dict = {
        "n_target": n_target,
        "tribes": {"width": params.term_width, "terms": params.term_count,
                   "n": params.n,
                   "p_zero": [params.p_zero().numerator, params.p_zero().denominator],
                   "imbalance": float(params.imbalance()),
                   "imbalance_scale_logn_over_n": math.log2(params.n) / params.n},
        "seed": seed,
        "q_search": [],
    }
    chosen = None
    for qs in q_seeds:
        q = sample_approximator(params, qs)
        agree, how = agreement(params, q, budget=budget, seed=seed)
        report["q_search"].append({"seed": qs, "agreement": agree, "method": how,
                                   "t1": q.t1_mask, "t2": q.t2_mask})
        if chosen is None and agree >= agreement_floor:
            chosen = (q, agree, how)
    if chosen is None:
        report["q_found"] = False
        return report
    q, agree, how = chosen
    report["q_found"] = True
    report["q"] = {"t1": q.t1_mask, "t2": q.t2_mask, "degree": q.degree(),
                   "agreement": agree, "agreement_method": how,
                   "correlation_with_tribes": 2 * agree - 1.0,
                   "correlation_margin_over_half": 2 * agree - 1.0 - 0.5}
    exact_scale = params.n <= EXACT_MAX_N
    q_probe = as_table(q) if exact_scale else q
    tribes_probe = as_table(params) if exact_scale else params
    probes = []
    for s_size in s_sizes:
        for strategy in strategies:
            s = pick_s(params, s_size, strategy, seed)
            est = delta_s(q_probe, s, mode=mode, budget=budget, seed=seed)
            row = {"strategy": strategy, "size": s_size, **est.row()}
            if exact_scale:
                row["tribes_not_fixed_prob"] = float(not_fixed_probability(tribes_probe, s))
            probes.append(row)
    report["probes"] = probes
    return report


def report_to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ":"))
