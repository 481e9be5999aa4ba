"""Closed-form correlation values and explicit bounds, each checkable against
the enumeration engine.

The exact transform values for the symmetric quadratics come from splitting
the weight sum by residue mod 4:
    E(e^2)       = 2^{-(n+1)} [ (1+i)(1 - i w)^n + (1-i)(1 + i w)^n ]
    E(e^2 + e^1) = 2^{-(n+1)} [ (1-i)(1 - i w)^n + (1+i)(1 + i w)^n ]
with w the unit complex point of the evaluation angle.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .deriv import v_phi
from .modfun import Angle

SYMMETRIC_WHICH = ("e2", "e2+e1")


class DegenerateError(ValueError):
    """Weight-class fraction at 0 or 1 makes the reconstruction undefined."""


def _cpow(z: complex, n: int) -> complex:
    """z^n, switching to polar accumulation for very large n."""
    if n <= 64:
        return z ** n
    r, theta = cmath.polar(z)
    return cmath.rect(math.exp(n * math.log(r)), n * theta) if r > 0 else 0j


def e_symmetric_quadratic(n: int, angle: Angle, which: str = "e2") -> complex:
    """Exact E value of e^2 or e^2 + e^1 at an arbitrary angle."""
    if which not in SYMMETRIC_WHICH:
        raise ValueError(f"which must be one of {SYMMETRIC_WHICH}")
    w = angle.omega
    z_minus = _cpow(1 - 1j * w, n)
    z_plus = _cpow(1 + 1j * w, n)
    if which == "e2":
        total = (1 + 1j) * z_minus + (1 - 1j) * z_plus
    else:
        total = (1 - 1j) * z_minus + (1 + 1j) * z_plus
    return total / (1 << (n + 1))


def e_kphi_symmetric(n: int, m: int, k: int, which: str = "e2") -> complex:
    """E at angle 2*pi*k/m for the symmetric quadratics; m odd, 1 <= k <= m-1."""
    if m < 3 or m % 2 == 0:
        raise ValueError("m must be odd and >= 3")
    if not 1 <= k <= m - 1:
        raise ValueError("k out of range")
    return e_symmetric_quadratic(n, Angle(2 * math.pi * k / m), which)


def quadratic_max_prediction(n: int, angle: Angle, odd_term: str = "cos-half") -> dict:
    """Exact correlation of e^2 and e^2+e^1 for angles in (pi/4, pi/2].

    For even n both equal sqrt(v); for odd n they split as
    sqrt(v +- (cos(phi)/2)^n), the sign pattern flipping with n mod 4.  The
    alternative odd_term='quarter' uses (1/4)^n in place of (cos(phi)/2)^n;
    it disagrees with the enumeration oracle except at cos(phi) = 1/2 and is
    kept only for comparison.
    """
    if not math.pi / 4 < angle.phi <= math.pi / 2 + 1e-12:
        raise ValueError("angle must lie in (pi/4, pi/2]")
    v = v_phi(n, angle)
    if n % 2 == 0:
        return {"e2": math.sqrt(v), "e2+e1": math.sqrt(v)}
    if odd_term == "cos-half":
        t = (angle.gamma / 2) ** n
    elif odd_term == "quarter":
        t = 0.25 ** n
    else:
        raise ValueError("odd_term must be 'cos-half' or 'quarter'")
    hi, lo = math.sqrt(v + t), math.sqrt(v - t)
    if n % 4 == 1:
        return {"e2": hi, "e2+e1": lo}
    return {"e2": lo, "e2+e1": hi}


def zero_poly_c(n: int, angle: Angle) -> float:
    """C of the constant polynomial: ((1 + cos phi)/2)^{n/2}."""
    return ((1 + angle.gamma) / 2) ** (n / 2)


def parity_c(n: int, angle: Angle) -> float:
    """C of e^1: ((1 - cos phi)/2)^{n/2}."""
    return ((1 - angle.gamma) / 2) ** (n / 2)


# ---- boolean mod-m machinery ------------------------------------------------


def ell1(m: int) -> int:
    """The integer among (m-1)/4 and (m+1)/4: the multiple of 2*pi/m nearest
    to the quarter turn, where the quadratic correlation peaks."""
    if m < 3 or m % 2 == 0:
        raise ValueError("m must be odd and >= 3")
    return (m - 1) // 4 if (m - 1) % 4 == 0 else (m + 1) // 4


def psi(n: int, m: int) -> float:
    """2m/(m-1) * sqrt(v) at the critical angle; the scale of the best
    boolean mod-m correlation over quadratics."""
    angle = Angle(2 * math.pi * ell1(m) / m)
    return 2 * m / (m - 1) * math.sqrt(v_phi(n, angle))


def b_m_reconstruct(real_parts: Sequence[float], b: Fraction | float, m: int,
                    bias: float = 1.0) -> float:
    """Rebuild B_m(p) from the real parts of E at angles 2*pi*k/m.

        B_m(p) = |(2/m) sum_k Re(E_{k phi}(p)) + (1/m - b) * bias(p)| / (b(1-b))

    with b the exact fraction of inputs whose weight is divisible by m.  The
    (1/m - b) correction is weighted by the polynomial's bias; dropping that
    weight (bias=1) is only exact for polynomials of bias one, though the
    difference vanishes exponentially in n.
    """
    if len(real_parts) != (m - 1) // 2:
        raise ValueError(f"need {(m - 1) // 2} real parts for m={m}")
    b = Fraction(b) if not isinstance(b, Fraction) else b
    if b <= 0 or b >= 1:
        raise DegenerateError("weight fraction must be strictly inside (0, 1)")
    bf = float(b)
    inner = (2.0 / m) * sum(real_parts) + (1.0 / m - bf) * bias
    return abs(inner) / (bf * (1.0 - bf))


@dataclass(frozen=True)
class RealPartProfile:
    """Asymptotic size of the real parts of E at the critical angle.

    All predictions are scaled by 2^{n+1}; `residual_bound` is the exact
    magnitude of the neglected second term, so
        | 2^{n+1} |Re E| - prediction | <= residual_bound
    holds with no asymptotic slack.
    """

    n: int
    m: int
    chi: float
    scale: float            # sqrt(2) * |1 - i w^{l1}|^n
    pred_real_e2: float     # |cos(chi + pi/4)| * scale
    pred_real_e2e1: float   # |cos(chi - pi/4)| * scale
    pred_sqrt_v: float      # scale, approximating 2^{n+1} sqrt(v)
    residual_bound: float   # sqrt(2) * |1 + i w^{l1}|^n


def real_part_profile(n: int, m: int) -> RealPartProfile:
    l1 = ell1(m)
    angle = Angle(2 * math.pi * l1 / m)
    chi = n * math.pi / (4 * m) * (1 if l1 == (m + 1) // 4 and (m + 1) % 4 == 0 else -1)
    base = abs(1 - 1j * angle.omega ** l1)
    scale = math.sqrt(2) * base ** n
    resid = math.sqrt(2) * abs(1 + 1j * angle.omega ** l1) ** n
    return RealPartProfile(
        n=n, m=m, chi=chi, scale=scale,
        pred_real_e2=abs(math.cos(chi + math.pi / 4)) * scale,
        pred_real_e2e1=abs(math.cos(chi - math.pi / 4)) * scale,
        pred_sqrt_v=scale,
        residual_bound=resid,
    )


# ---- symmetric degree-d bound ------------------------------------------------


def symm_mod_bound(n: int, m: int, d: int) -> float:
    """Correlation ceiling 2md * cos(pi/(2md))^n for degree-d symmetric
    polynomials against any angle 2*pi*k/m."""
    if d < 1:
        raise ValueError("d must be >= 1")
    if m % 2 == 0 or m < 3:
        raise ValueError("m must be odd and >= 3")
    return 2 * m * d * math.cos(math.pi / (2 * m * d)) ** n


# ---- cubic contribution bound -------------------------------------------------


def e3_contribution_bound(n: int, y: int, angle: Angle, variant: str = "stated") -> float:
    """Bound on |c_y| for the full degree-3 symmetric polynomial.

    Even weight: (|sin|^w + |cos|^w)/2, tight for w = 0 mod 4.  Odd weight:
    the 'stated' form 2^w / 2^{n-1} is falsified by direct enumeration at
    small sizes (e.g. n=5, w(y)=1, phi=0.8 gives 0.174 > 0.125); the 'bias'
    form 2^{-(n-w-1)/2}, which follows from the bias of a quadratic symmetric
    polynomial on the unselected variables, is the one that holds.
    """
    w = bin(y).count("1")
    if w % 2 == 0:
        return (abs(angle.sigma) ** w + abs(angle.gamma) ** w) / 2
    if variant == "stated":
        return 2.0 ** (w - n + 1)
    if variant == "bias":
        return 2.0 ** (-(n - w - 1) / 2)
    raise ValueError("variant must be 'stated' or 'bias'")


# ---- report row ---------------------------------------------------------------


@dataclass(frozen=True)
class ClosedFormReport:
    """One formula-versus-oracle comparison."""

    formula: str
    params: dict
    predicted: complex
    oracle: complex
    diff: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "diff", abs(self.predicted - self.oracle))

    def row(self) -> dict:
        out = {"formula": self.formula, **self.params,
               "predicted_re": self.predicted.real, "predicted_im": self.predicted.imag,
               "oracle_re": self.oracle.real, "oracle_im": self.oracle.imag,
               "diff": self.diff}
        return out
