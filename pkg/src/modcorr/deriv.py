"""Directional contributions and the restriction calculus.

The contribution of p in direction y is
    c_y(p) = E_x (-1)^{p(x) + p(x xor y)} * omega^{w(x) - w(x xor y)},
and the squared correlation satisfies C_phi(p)^2 = E_y c_y(p).

For quadratic p the derivative p_y is affine, so c_y(p) factors into
per-coordinate terms taking one of four values
    (coeff, y_i) -> 1, 0, gamma, -i*sigma
for (0,0), (1,0), (0,1), (1,1); this gives an O(n) product evaluation per
direction.  Cubic contributions fall back to enumeration over x.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from ._util import parity_array, popcount_array
from .engine import BudgetError, c_phi, sign_table
from .modfun import Angle
from .poly import PolyGF2

MAX_DIRECT_N = 30
MAX_STARS = 24


# ---- single-direction contribution ----------------------------------------


def _quad_contribution(p: PolyGF2, y: int, angle: Angle) -> complex:
    adj = p.adjacency
    term_count = 0  # coordinates with coeff 1 and y_i = 1
    w = 0
    for i in range(p.n):
        yi = (y >> i) & 1
        ci = bin(adj[i] & y).count("1") & 1
        if ci and not yi:
            return 0j
        if yi:
            w += 1
            term_count += ci
    sign = 1 - 2 * (p.evaluate(y) ^ p.const)  # constant of the derivative
    return sign * (-1j * angle.sigma) ** term_count * angle.gamma ** (w - term_count)


def _direct_contribution(p: PolyGF2, y: int, angle: Angle) -> complex:
    if p.n > MAX_DIRECT_N:
        raise BudgetError(f"direct contribution needs 2^{p.n} evaluations")
    size = 1 << p.n
    idx = np.arange(size, dtype=np.int64)
    g = sign_table(p) * angle.omega ** popcount_array(idx)
    return complex(np.mean(g * np.conj(g[idx ^ y])))


def contribution(p: PolyGF2, y: int, angle: Angle, method: str = "auto") -> complex:
    """Exact c_y(p); product formula for quadratics, enumeration otherwise."""
    if y < 0 or y >> p.n:
        raise ValueError("direction outside the variable range")
    if method == "auto":
        method = "product" if p.degree() <= 2 else "enum"
    if method == "product":
        if p.degree() > 2:
            raise ValueError("product formula requires a quadratic polynomial")
        return _quad_contribution(p, y, angle)
    if method == "enum":
        return _direct_contribution(p, y, angle)
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class ContributionValue:
    value: complex
    direction: int

    def weight(self) -> int:
        return bin(self.direction).count("1")


# ---- all-directions sweeps -------------------------------------------------


class QuadSweep(NamedTuple):
    """Angle-independent geometry of all 2^n contributions of a quadratic."""

    n: int
    alive: np.ndarray   # bool: no zero factor
    sign: np.ndarray    # int8: (-1)^{derivative constant}
    odd: np.ndarray     # int16: coordinates contributing -i*sigma
    weight: np.ndarray  # int16: w(y)


def quad_sweep(p: PolyGF2) -> QuadSweep:
    if p.degree() > 2:
        raise ValueError("quadratic polynomials only")
    size = 1 << p.n
    y = np.arange(size, dtype=np.int64)
    alive = np.ones(size, dtype=bool)
    odd = np.zeros(size, dtype=np.int16)
    dconst = parity_array(p.linear & y).astype(np.int8)
    adj = p.adjacency
    for i in range(p.n):
        ci = parity_array(adj[i] & y)
        yi = ((y >> i) & 1).astype(np.uint8)
        alive &= ~((ci == 1) & (yi == 0))
        odd += (ci & yi).astype(np.int16)
        # quadratic part of the derivative constant: p_quad(y), accumulated
        # as sum_{i<j in edge} y_i y_j handled below via evaluate-free trick
    # Derivative constant is p(y) xor p(0); compute its quadratic part here.
    quad_c = np.zeros(size, dtype=np.uint8)
    for i, j in p.edges:
        quad_c ^= (((y >> i) & (y >> j)) & 1).astype(np.uint8)
    sign = (1 - 2 * (dconst ^ quad_c)).astype(np.int8)
    weight = popcount_array(y).astype(np.int16)
    return QuadSweep(p.n, alive, sign, odd, weight)


def quad_sweep_values(geom: QuadSweep, angle: Angle) -> np.ndarray:
    """Complex c_y for all y from precomputed geometry."""
    mag = np.power(angle.sigma, geom.odd) * np.power(angle.gamma, geom.weight - geom.odd)
    vals = geom.sign * geom.alive * mag * np.power(-1j, geom.odd)
    return vals.astype(np.complex128)


class CubicSweep(NamedTuple):
    """Angle-independent joint counts for all contributions of any polynomial.

    counts[y, b] = sum over x with w(x and y) = b of (-1)^{p(x)+p(x xor y)},
    so c_y = omega^{-w(y)} * sum_b counts[y, b] * omega^{2b} / 2^n.
    """

    n: int
    counts: np.ndarray  # (2^n, n+1) int64
    weight: np.ndarray


def cubic_sweep(p: PolyGF2, max_n: int = 14) -> CubicSweep:
    if p.n > max_n:
        raise BudgetError(f"full direction sweep needs 4^{p.n} work")
    size = 1 << p.n
    idx = np.arange(size, dtype=np.int64)
    tt = sign_table(p).astype(np.int64)
    counts = np.zeros((size, p.n + 1), dtype=np.int64)
    for y in range(size):
        dp = tt * tt[idx ^ y]
        b = popcount_array(idx & y)
        counts[y] = np.bincount(b, weights=dp, minlength=p.n + 1)
    return CubicSweep(p.n, counts, popcount_array(idx).astype(np.int16))


def cubic_sweep_values(sweep: CubicSweep, angle: Angle) -> np.ndarray:
    pows = angle.omega ** (2 * np.arange(sweep.n + 1))
    vals = sweep.counts @ pows
    return vals * angle.omega ** (-sweep.weight.astype(np.float64)) / (1 << sweep.n)


def contribution_sweep(p: PolyGF2, angle: Angle, method: str = "auto") -> np.ndarray:
    """c_y(p) for every direction y in index order."""
    if method == "auto":
        method = "product" if p.degree() <= 2 else "enum"
    if method == "product":
        return quad_sweep_values(quad_sweep(p), angle)
    if method == "enum":
        return cubic_sweep_values(cubic_sweep(p), angle)
    if method == "transform":
        # convolution route: c = WHT(|WHT(g)|^2) / 4^n
        from ._util import fwht
        size = 1 << p.n
        g = sign_table(p) * angle.omega ** popcount_array(np.arange(size, dtype=np.int64))
        spec = np.abs(fwht(g)) ** 2
        return fwht(spec) / float(size) ** 2
    raise ValueError(f"unknown method {method!r}")


# ---- squared-correlation identity ------------------------------------------


def check_squared_identity(p: PolyGF2, angle: Angle, max_n: int = 14) -> dict:
    """Compare C_phi(p)^2 with the mean contribution over all directions.

    The two sides are computed along independent routes: full input
    enumeration for the left, per-direction products or enumerations for the
    right.
    """
    if p.n > max_n:
        raise BudgetError(f"identity check needs a 2^{p.n} direction sweep")
    lhs = c_phi(p, angle) ** 2
    rhs = complex(np.mean(contribution_sweep(p, angle)))
    return {
        "lhs": lhs,
        "rhs": rhs,
        "diff": abs(lhs - rhs.real),
        "imag": abs(rhs.imag),
    }


# ---- even-weight sums -------------------------------------------------------


def v_phi(n: int, angle: Angle) -> float:
    """2^{-n-1} * ((1+sin phi)^n + (1-sin phi)^n).

    Equals the even-weight direction sum 2^{-n} sum_{w(y) even} sigma^{w(y)};
    the squared correlation target attained by the best quadratic.
    """
    s = angle.sigma
    return ((1 + s) ** n + (1 - s) ** n) / (1 << (n + 1))


def v_phi_even_sum(n: int, angle: Angle) -> float:
    """Direct even-weight sum, used as an oracle for v_phi."""
    total = 0.0
    for w in range(0, n + 1, 2):
        total += math.comb(n, w) * angle.sigma ** w
    return total / (1 << n)


def odd_even_sums(n: int, d: float) -> tuple[float, float]:
    """Closed forms for sum_{y even} d^{w(y)} and sum_{y odd} d^{w(y)}."""
    plus, minus = (1 + d) ** n, (1 - d) ** n
    return (plus + minus) / 2, (plus - minus) / 2


# ---- restrictions -----------------------------------------------------------


@dataclass(frozen=True)
class Restriction:
    """An element of {0,1,*}^n constraining direction bits (never inputs)."""

    cells: str

    def __post_init__(self):
        if not self.cells or any(c not in "01*" for c in self.cells):
            raise ValueError("cells must be a nonempty string over 0/1/*")

    @property
    def n(self) -> int:
        return len(self.cells)

    @property
    def weight(self) -> int:
        return self.cells.count("1")

    @property
    def stars(self) -> int:
        return self.cells.count("*")

    def star_positions(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.cells) if c == "*")

    def base_mask(self) -> int:
        return sum(1 << i for i, c in enumerate(self.cells) if c == "1")

    def fill(self, star_bits: int) -> int:
        """The direction obtained by assigning star cells from star_bits."""
        y = self.base_mask()
        for t, pos in enumerate(self.star_positions()):
            if (star_bits >> t) & 1:
                y |= 1 << pos
        return y

    def directions(self) -> Iterator[int]:
        for star_bits in range(1 << self.stars):
            yield self.fill(star_bits)

    def direction_array(self) -> np.ndarray:
        stars = self.star_positions()
        if len(stars) > MAX_STARS:
            raise BudgetError(f"{len(stars)} stars exceed the budget {MAX_STARS}")
        y = np.full(1 << len(stars), self.base_mask(), dtype=np.int64)
        bits = np.arange(1 << len(stars), dtype=np.int64)
        for t, pos in enumerate(stars):
            y |= ((bits >> t) & 1) << pos
        return y

    @staticmethod
    def all_stars(n: int) -> "Restriction":
        return Restriction("*" * n)


def c_restricted(p: PolyGF2, r: Restriction, angle: Angle) -> float:
    """Mean of |c_{ry}(p)| over all star assignments of r."""
    if r.n != p.n:
        raise ValueError("restriction length must match the variable count")
    if r.stars > MAX_STARS:
        raise BudgetError(f"{r.stars} stars exceed the budget {MAX_STARS}")
    if p.degree() <= 2:
        return float(np.mean(np.abs(_quad_restricted_values(p, r, angle))))
    total = 0.0
    for y in r.directions():
        total += abs(_direct_contribution(p, y, angle))
    return total / (1 << r.stars)


def _quad_restricted_values(p: PolyGF2, r: Restriction, angle: Angle) -> np.ndarray:
    y = r.direction_array()
    alive = np.ones(len(y), dtype=bool)
    odd = np.zeros(len(y), dtype=np.int16)
    adj = p.adjacency
    for i in range(p.n):
        ci = parity_array(adj[i] & y)
        yi = ((y >> i) & 1).astype(np.uint8)
        alive &= ~((ci == 1) & (yi == 0))
        odd += (ci & yi).astype(np.int16)
    w = popcount_array(y).astype(np.int16)
    mag = np.power(angle.sigma, odd) * np.power(angle.gamma, w - odd)
    return alive * mag  # magnitudes only; sign and phase drop under abs


def v_restricted(r: Restriction, angle: Angle) -> float:
    """2^{-S(r)} * sum over star assignments with w(ry) even of sigma^{w(ry)}.

    Computed from the closed odd/even split over the star block, which is
    exact at every size.
    """
    even_sum, odd_sum = odd_even_sums(r.stars, angle.sigma)
    block = even_sum if r.weight % 2 == 0 else odd_sum
    return angle.sigma ** r.weight * block / (1 << r.stars)


def v_restricted_enum(r: Restriction, angle: Angle) -> float:
    """Direct enumeration oracle for v_restricted (small star counts)."""
    total = 0.0
    for y in r.directions():
        w = bin(y).count("1")
        if w % 2 == 0:
            total += angle.sigma ** w
    return total / (1 << r.stars)


# ---- handshake classification ------------------------------------------------


class HandshakeClass(NamedTuple):
    zero: bool
    odd_nodes: int        # even by the handshaking argument
    magnitude: float


def handshake_classify(p: PolyGF2, y: int, angle: Angle) -> HandshakeClass:
    """Classify |c_y(p)| for quadratic p as 0 or sigma^e * gamma^{w(y)-e}.

    e counts odd-degree nodes of the graph induced on the 1-bits of y; it is
    even because odd-degree nodes pair up in any graph.  The contribution is
    zero exactly when some unselected variable has an odd number of selected
    neighbors.
    """
    if p.degree() > 2:
        raise ValueError("quadratic polynomials only")
    g = p.graph_view()
    w = bin(y).count("1")
    for i in range(p.n):
        if not (y >> i) & 1 and g.degree_in(i, y) & 1:
            return HandshakeClass(True, 0, 0.0)
    e = g.odd_degree_count(y)
    mag = abs(angle.sigma) ** e * abs(angle.gamma) ** (w - e)
    return HandshakeClass(False, e, mag)


# ---- restriction-lemma hypotheses ---------------------------------------------


class LemmaFlags(NamedTuple):
    odd_even: bool
    gap: bool
    buffer: bool


def lemma_hypotheses(p: PolyGF2, r: Restriction, t: int = 3) -> LemmaFlags:
    """Hypothesis tests for the restriction comparison lemmas.

    odd_even: some 0-cell variable has an odd number of 1-cell neighbors.
    gap:      some 0-cell variable has an even number of 1-cell neighbors and
              at least t star neighbors.
    buffer:   r has exactly one 0 cell and no 1 cells, and that variable has
              between t and n-2 star neighbors.
    """
    if p.degree() > 2:
        raise ValueError("quadratic polynomials only")
    if r.n != p.n:
        raise ValueError("restriction length must match the variable count")
    g = p.graph_view()
    ones = r.base_mask()
    stars = sum(1 << i for i in r.star_positions())
    odd_even = gap = False
    for i, c in enumerate(r.cells):
        if c != "0":
            continue
        ones_deg = g.degree_in(i, ones)
        if ones_deg & 1:
            odd_even = True
        elif g.degree_in(i, stars) >= t:
            gap = True
    buffer = False
    if r.cells.count("0") == 1 and r.weight == 0:
        i = r.cells.index("0")
        star_deg = g.degree_in(i, stars)
        buffer = t <= star_deg <= p.n - 2
    return LemmaFlags(odd_even, gap, buffer)


def gap_threshold(angle: Angle) -> int:
    """Smallest t making (sigma+gamma)/(sigma-gamma) <= ((1+sigma)/(1-sigma))^t.

    This is the analytic requirement under which the gap comparison closes;
    only defined for sigma > gamma.
    """
    s, g = angle.sigma, angle.gamma
    if s <= g:
        raise ValueError("requires sin phi > cos phi")
    if s >= 1.0:
        return 1
    lhs = (s + g) / (s - g)
    base = (1 + s) / (1 - s)
    t = 1
    while base ** t < lhs:
        t += 1
        if t > 10_000:
            raise ArithmeticError("threshold search did not converge")
    return t
