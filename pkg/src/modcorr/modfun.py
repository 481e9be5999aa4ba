"""Angles, complex and boolean mod functions, and exact weight-class counting.

The complex mod function at angle phi sends x to omega^{w(x)} with
omega = e^{i phi}; the boolean mod-m function flags inputs whose Hamming
weight is not divisible by m.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

TWO_PI = 2.0 * math.pi


class AngleError(ValueError):
    """Unparseable or out-of-range angle specification."""


@dataclass(frozen=True)
class Angle:
    """An angle in [0, 2*pi] with its trigonometry cached."""

    phi: float
    sigma: float = field(init=False)
    gamma: float = field(init=False)
    omega: complex = field(init=False)

    def __post_init__(self):
        if not -1e-12 <= self.phi <= TWO_PI + 1e-12:
            raise AngleError(f"angle {self.phi} outside [0, 2*pi]")
        object.__setattr__(self, "sigma", math.sin(self.phi))
        object.__setattr__(self, "gamma", math.cos(self.phi))
        object.__setattr__(self, "omega", cmath.exp(1j * self.phi))

    @staticmethod
    def from_text(text: str) -> "Angle":
        return Angle(parse_angle(text))

    def __repr__(self):
        return f"Angle({self.phi:.12g})"


_ANGLE_RE = re.compile(r"^\s*(\d+(?:\.\d*)?)?\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$",
                       re.IGNORECASE)


def parse_angle(text: str) -> float:
    """Accepts '2pi/3', 'pi/2', 'pi', or decimal radians."""
    m = _ANGLE_RE.match(text)
    if m:
        num = float(m.group(1)) if m.group(1) else 1.0
        den = float(m.group(2)) if m.group(2) else 1.0
        if den == 0:
            raise AngleError("zero denominator in angle")
        return num * math.pi / den
    try:
        return float(text)
    except ValueError:
        raise AngleError(f"cannot parse angle {text!r}") from None


def as_angle(a: "Angle | float") -> Angle:
    return a if isinstance(a, Angle) else Angle(float(a))


def mod_phi(angle: Angle, x: int) -> complex:
    """omega^{w(x)}, the unit complex point at angle phi * weight(x)."""
    return angle.omega ** bin(x).count("1")


def bmod_m(m: int, x: int) -> int:
    """1 iff the Hamming weight of x is not divisible by m."""
    if m < 2:
        raise ValueError("m must be >= 2")
    return 1 if bin(x).count("1") % m else 0


def reduce_angle(phi: float) -> tuple[float, bool]:
    """Map phi in [0, 2*pi] to phi' in [0, pi/2] plus a linear-shift flag.

    The returned pair satisfies C_phi(p + flag * e1) = C_phi'(p) for every
    polynomial p, combining conjugation symmetry (C_phi = C_{2pi-phi}) with
    the sign trade C_phi(p + e1) = C_{pi+phi}(p).
    """
    if not -1e-12 <= phi <= TWO_PI + 1e-12:
        raise AngleError(f"angle {phi} outside [0, 2*pi]")
    half = math.pi / 2
    if phi <= half:
        return phi, False
    if phi <= math.pi:
        return math.pi - phi, True
    if phi <= 3 * half:
        return phi - math.pi, True
    return TWO_PI - phi, False


@dataclass(frozen=True)
class WeightCount:
    """Exact counts of n-bit strings per Hamming weight."""

    n: int

    @cached_property
    def counts(self) -> tuple[int, ...]:
        return tuple(math.comb(self.n, w) for w in range(self.n + 1))

    def total(self) -> int:
        return 1 << self.n

    def count_mod(self, m: int, residue: int) -> int:
        return sum(c for w, c in enumerate(self.counts) if w % m == residue)


def fraction_weight_mod(n: int, m: int, residue: int) -> Fraction:
    """Exact fraction of n-bit strings whose weight is `residue` mod m."""
    if m < 2:
        raise ValueError("m must be >= 2")
    if not 0 <= residue < m:
        raise ValueError("residue out of range")
    return Fraction(WeightCount(n).count_mod(m, residue), 1 << n)


def balance_gap(n: int, m: int, residue: int) -> tuple[Fraction, float]:
    """|P[w(x) = residue mod m] - 1/m| exactly, with the cos(pi/m)^n bound."""
    gap = abs(fraction_weight_mod(n, m, residue) - Fraction(1, m))
    return gap, math.cos(math.pi / m) ** n


def angle_grid(count: int, lo: float = 0.0, hi: float = TWO_PI,
               include_lo: bool = False) -> list[Angle]:
    """Evenly spaced angles in (lo, hi], optionally including lo."""
    angles = []
    if include_lo:
        angles.append(Angle(lo))
    step = (hi - lo) / count
    angles += [Angle(lo + step * (j + 1)) for j in range(count)]
    return angles
