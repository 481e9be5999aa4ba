"""Exact correlation computations by enumeration over all 2^n inputs.

Every quantity here is a finite sum over the input cube, evaluated in a fixed
chunk order with pairwise reduction, so results are reproducible bit for bit
regardless of thread count.  A weight-class fast path handles symmetric
polynomials in O(n).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._util import CHUNK, chunked_sum, tree_reduce_sum, weights_chunk
from .modfun import Angle, WeightCount
from .poly import PolyGF2, SymmetricSpec

#: Hard ceiling on enumeration size; ~1e9 inputs is the desk-scale limit.
MAX_ENUM_N = 30

_ENV_BUDGET = "MODCORR_MAX_N"


class BudgetError(RuntimeError):
    """Requested enumeration exceeds the configured budget."""


def enum_budget() -> int:
    raw = os.environ.get(_ENV_BUDGET)
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return MAX_ENUM_N


def _check_budget(n: int, max_n: int | None = None):
    cap = max_n if max_n is not None else enum_budget()
    if n > cap:
        raise BudgetError(f"n={n} exceeds enumeration budget {cap}")


@dataclass(frozen=True)
class CorrelationValue:
    """A correlation number together with how it was computed."""

    value: complex
    method: str  # brute | weight-class | closed-form | monte-carlo

    def magnitude(self) -> float:
        return abs(self.value)


def truth_chunk(p: PolyGF2, lo: int, hi: int) -> np.ndarray:
    """Values of p on the inputs lo..hi-1, as an int8 array of 0/1."""
    idx = np.arange(lo, hi, dtype=np.int64)
    acc = np.full(len(idx), p.const, dtype=np.int8)
    for i in range(p.n):
        if (p.linear >> i) & 1:
            acc ^= ((idx >> i) & 1).astype(np.int8)
    for i, j in p.edges:
        acc ^= ((idx >> i) & (idx >> j) & 1).astype(np.int8)
    for i, j, k in p.triples:
        acc ^= ((idx >> i) & (idx >> j) & (idx >> k) & 1).astype(np.int8)
    return acc


def truth_table(p: PolyGF2, max_n: int = 26) -> np.ndarray:
    """Full 2^n truth table; guarded because the array is materialized."""
    if p.n > max_n:
        raise BudgetError(f"truth table for n={p.n} exceeds array budget {max_n}")
    return truth_chunk(p, 0, 1 << p.n)


def sign_table(p: PolyGF2, max_n: int = 26) -> np.ndarray:
    """(-1)^p as an int8 array over all inputs."""
    return (1 - 2 * truth_table(p, max_n)).astype(np.int8)


def e_phi(p: PolyGF2, angle: Angle, threads: int = 1, max_n: int | None = None) -> complex:
    """Mean over all inputs of (-1)^{p(x)} * omega^{w(x)}."""
    _check_budget(p.n, max_n)
    pows = angle.omega ** np.arange(p.n + 1)

    def part(lo: int, hi: int) -> complex:
        sign = 1 - 2 * truth_chunk(p, lo, hi).astype(np.float64)
        return complex(np.sum(sign * pows[weights_chunk(lo, hi)]))

    return chunked_sum(part, 1 << p.n, threads=threads) / (1 << p.n)


def c_phi(p: PolyGF2, angle: Angle, threads: int = 1, max_n: int | None = None) -> float:
    """Correlation magnitude |E_phi(p)|; always in [0, 1]."""
    return abs(e_phi(p, angle, threads=threads, max_n=max_n))


def class_sums(p: PolyGF2, m: int, threads: int = 1,
               max_n: int | None = None) -> tuple[int, int, int]:
    """(sum of (-1)^p over w=0 mod m, same over w!=0 mod m, count of w=0 mod m)."""
    _check_budget(p.n, max_n)
    parts: list[tuple[int, int]] = []
    for lo in range(0, 1 << p.n, CHUNK):
        hi = min(lo + CHUNK, 1 << p.n)
        sign = 1 - 2 * truth_chunk(p, lo, hi).astype(np.int64)
        zero_class = (weights_chunk(lo, hi) % m) == 0
        parts.append((int(np.sum(sign[zero_class])), int(np.sum(sign))))
    s0 = sum(a for a, _ in parts)
    stot = sum(b for _, b in parts)
    n0 = WeightCount(p.n).count_mod(m, 0)
    return s0, stot - s0, n0


def b_m(p: PolyGF2, m: int, max_n: int | None = None) -> float:
    """Correlation with the boolean mod-m function, via exact class sums."""
    if m < 2:
        raise ValueError("m must be >= 2")
    s0, s1, n0 = class_sums(p, m, max_n=max_n)
    n1 = (1 << p.n) - n0
    if n0 == 0 or n1 == 0:
        raise ValueError("one weight class is empty")
    return float(abs(Fraction(s0, n0) - Fraction(s1, n1)))


def bias(p: PolyGF2, max_n: int | None = None) -> float:
    """E_x (-1)^{p(x)}, exact."""
    _check_budget(p.n, max_n)
    ones = 0
    for lo in range(0, 1 << p.n, CHUNK):
        hi = min(lo + CHUNK, 1 << p.n)
        ones += int(np.sum(truth_chunk(p, lo, hi), dtype=np.int64))
    return float(Fraction((1 << p.n) - 2 * ones, 1 << p.n))


# ---- symmetric fast path -------------------------------------------------


def symmetric_e_phi(s: SymmetricSpec, angle: Angle) -> complex:
    """Weight-class evaluation: sum_w C(n,w) (-1)^{s(w)} omega^w / 2^n."""
    prof = s.weight_profile()
    counts = WeightCount(s.n).counts
    total = 0j
    for w in range(s.n, -1, -1):
        total += counts[w] * (1 - 2 * prof[w]) * angle.omega ** w
    return total / (1 << s.n)


def symmetric_c_phi(s: SymmetricSpec, angle: Angle) -> float:
    return abs(symmetric_e_phi(s, angle))


def symmetric_b_m(s: SymmetricSpec, m: int) -> float:
    """Boolean mod-m correlation of a symmetric polynomial, exact in O(n)."""
    prof = s.weight_profile()
    counts = WeightCount(s.n).counts
    s0 = sum(c * (1 - 2 * prof[w]) for w, c in enumerate(counts) if w % m == 0)
    stot = sum(c * (1 - 2 * prof[w]) for w, c in enumerate(counts))
    n0 = WeightCount(s.n).count_mod(m, 0)
    n1 = (1 << s.n) - n0
    return float(abs(Fraction(s0, n0) - Fraction(stot - s0, n1)))


def prefixed_symmetric_b_m(s: SymmetricSpec, m: int) -> float:
    """B_m of x_1 + s(x_2 .. x_n) where s is symmetric on n-1 variables.

    Splitting on x_1 keeps everything weight-classed: inputs with x_1 = b
    have weight b + w' and value b xor s(w').
    """
    prof = s.weight_profile()
    counts = WeightCount(s.n).counts
    n = s.n + 1
    s0 = stot = 0
    for b in (0, 1):
        for w, c in enumerate(counts):
            v = c * (1 - 2 * (b ^ prof[w]))
            stot += v
            if (b + w) % m == 0:
                s0 += v
    n0 = WeightCount(n).count_mod(m, 0)
    n1 = (1 << n) - n0
    return float(abs(Fraction(s0, n0) - Fraction(stot - s0, n1)))
