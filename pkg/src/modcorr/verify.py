"""Named claim checks with machine-readable outcomes.

Each registered id runs a family of checks and returns rows with one of
three statuses: pass and fail are hard assertions; report rows carry
measurements the desk-scale run cannot decide (asymptotic constants,
unspecified thresholds) and never affect the exit status.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from ._util import DEFAULT_SEED, make_rng
from .closedform import (b_m_reconstruct, e3_contribution_bound, e_kphi_symmetric,
                         ell1, psi, quadratic_max_prediction, real_part_profile,
                         symm_mod_bound)
from .deriv import (Restriction, c_restricted, check_squared_identity, contribution,
                    contribution_sweep, gap_threshold, handshake_classify,
                    lemma_hypotheses, odd_even_sums, quad_sweep, quad_sweep_values,
                    v_phi, v_phi_even_sum, v_restricted)
from .engine import b_m, bias, c_phi, e_phi, symmetric_c_phi
from .modfun import Angle, angle_grid, fraction_weight_mod
from .poly import PolyGF2, SymmetricSpec, elementary, format_poly
from .search import (derivative_case_table, edge_order, mask_to_poly, max_b_m,
                     max_c_phi, quad_orbits, random_cubic, random_quadratic,
                     structured_b_m_comparison)


@dataclass(frozen=True)
class CheckRow:
    name: str
    status: str  # pass | fail | report
    observed: object = None
    expected: object = None
    tol: float | None = None
    note: str = ""

    def row(self) -> dict:
        out = {"check": self.name, "status": self.status}
        for key, val in (("observed", self.observed), ("expected", self.expected),
                         ("tol", self.tol)):
            if val is not None:
                out[key] = val
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class VerifyReport:
    theorem_id: str
    params: dict
    checks: tuple[CheckRow, ...]
    wall_time: float

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def rows(self) -> list[dict]:
        return [c.row() for c in self.checks]


def _bound_row(name: str, worst: float, tol: float, note: str = "") -> CheckRow:
    status = "pass" if worst <= tol else "fail"
    return CheckRow(name, status, observed=worst, expected=0.0, tol=tol, note=note)


def _angles_in_main_range(count: int) -> list[Angle]:
    return angle_grid(count, math.pi / 4, math.pi / 2)


# ---- individual checks ------------------------------------------------------


def _check_squared_identity(p: dict) -> list[CheckRow]:
    n = int(p.get("n", 10))
    n_angles = int(p.get("angles", 16))
    quads = int(p.get("quads", 20))
    cubics = int(p.get("cubics", 8))
    seed = int(p.get("seed", DEFAULT_SEED))
    rng = make_rng(seed)
    angles = angle_grid(n_angles)
    worst_diff = worst_imag = 0.0
    for _ in range(quads):
        q = random_quadratic(n, rng)
        for ang in angles:
            r = check_squared_identity(q, ang)
            worst_diff = max(worst_diff, r["diff"])
            worst_imag = max(worst_imag, r["imag"])
    nc = min(n, 10)
    for _ in range(cubics):
        q = random_cubic(nc, rng)
        for ang in angles:
            r = check_squared_identity(q, ang)
            worst_diff = max(worst_diff, r["diff"])
            worst_imag = max(worst_imag, r["imag"])
    return [_bound_row(f"C^2 equals mean contribution ({quads} quadratics n={n}, "
                       f"{cubics} cubics n={nc}, {n_angles} angles)", worst_diff, 1e-9),
            _bound_row("imaginary residue of mean contribution", worst_imag, 1e-9)]


def _check_product_table(p: dict) -> list[CheckRow]:
    n_small = int(p.get("n_small", 4))
    n_rand = int(p.get("n", 8))
    trials = int(p.get("trials", 50))
    seed = int(p.get("seed", DEFAULT_SEED))
    rng = make_rng(seed)
    angles = [Angle(a) for a in (0.7, math.pi / 2, 2 * math.pi / 3, 5.2)]
    worst = 0.0
    nedges = n_small * (n_small - 1) // 2
    for mask in range(1 << nedges):
        q = mask_to_poly(n_small, mask)
        for ang in angles:
            direct = contribution_sweep(q, ang, "enum")
            prod = contribution_sweep(q, ang, "product")
            worst = max(worst, float(np.abs(direct - prod).max()))
    rows = [_bound_row(f"product vs direct, exhaustive quad parts n={n_small}", worst, 1e-12)]
    worst = 0.0
    for _ in range(trials):
        q = random_quadratic(n_rand, rng)
        for ang in angles[:2]:
            direct = contribution_sweep(q, ang, "enum")
            prod = contribution_sweep(q, ang, "product")
            worst = max(worst, float(np.abs(direct - prod).max()))
    rows.append(_bound_row(f"product vs direct, {trials} random quadratics n={n_rand}",
                           worst, 1e-12))
    return rows


def _check_handshake(p: dict) -> list[CheckRow]:
    n = int(p.get("n", 9))
    trials = int(p.get("trials", 100))
    seed = int(p.get("seed", DEFAULT_SEED))
    rng = make_rng(seed)
    ang = Angle(float(p.get("phi", 1.1)))
    worst = 0.0
    odd_e = 0
    for _ in range(trials):
        q = random_quadratic(n, rng)
        mags = np.abs(quad_sweep_values(quad_sweep(q), ang))
        for y in range(1 << n):
            hc = handshake_classify(q, y, ang)
            if hc.odd_nodes % 2:
                odd_e += 1
            ref = 0.0 if hc.zero else hc.magnitude
            worst = max(worst, abs(ref - float(mags[y])))
    return [_bound_row(f"|c_y| is 0 or sigma^e gamma^(w-e), {trials} quadratics n={n}",
                       worst, 1e-12),
            CheckRow("e is always even", "pass" if odd_e == 0 else "fail",
                     observed=odd_e, expected=0)]


def _check_trivial_maximum(p: dict) -> list[CheckRow]:
    n = int(p.get("n", 8))
    trials = int(p.get("trials", 20))
    seed = int(p.get("seed", DEFAULT_SEED))
    rng = make_rng(seed)
    w = np.bitwise_count(np.arange(1 << n, dtype=np.int64)).astype(np.float64)
    worst_quad = worst_cubic = -1.0
    for _ in range(trials):
        q = random_quadratic(n, rng)
        t = random_cubic(n, rng)
        for ang in angle_grid(16):
            cap = max(abs(ang.sigma), abs(ang.gamma)) ** w
            worst_quad = max(worst_quad,
                             float((np.abs(contribution_sweep(q, ang)) - cap).max()))
            worst_cubic = max(worst_cubic,
                              float((np.abs(contribution_sweep(t, ang)) - cap).max()))
    return [_bound_row(f"|c_y| <= max(sin,cos)^w(y) for quadratics, {trials} samples n={n}, "
                       "16 angles", worst_quad, 1e-12),
            CheckRow("the same bound for cubics", "report", observed=worst_cubic,
                     note="needs an affine derivative; a quadratic derivative breaks "
                          "it (e.g. the full cubic part at phi=pi/4), so cubic "
                          "excesses are recorded, not asserted")]


def _check_odd_even_sum(p: dict) -> list[CheckRow]:
    # compared at mean scale: the raw sums reach 2^19 where 1e-12 absolute
    # resolution does not exist in doubles
    worst = 0.0
    for n in range(1, 21):
        for d in np.linspace(0.0, 1.0, 9):
            even_c, odd_c = odd_even_sums(n, float(d))
            even_d = sum(math.comb(n, w) * d ** w for w in range(0, n + 1, 2))
            odd_d = sum(math.comb(n, w) * d ** w for w in range(1, n + 1, 2))
            scale = 1 << n
            worst = max(worst, abs(even_c - even_d) / scale, abs(odd_c - odd_d) / scale)
    return [_bound_row("closed even/odd weight sums vs direct at mean scale, n <= 20",
                       worst, 1e-12)]


def _check_v_phi(p: dict) -> list[CheckRow]:
    worst = 0.0
    for n in range(1, 21):
        for ang in angle_grid(16):
            worst = max(worst, abs(v_phi(n, ang) - v_phi_even_sum(n, ang)))
    return [_bound_row("two forms of the even-weight sum agree, n <= 20, 16 angles",
                       worst, 1e-12)]


def _check_symmetric_contributions(p: dict) -> list[CheckRow]:
    rows = []
    for n in (7, 8):
        ang = Angle(float(p.get("phi", 1.25)))
        e2 = elementary(n, 2)
        e2e1 = e2 + elementary(n, 1)
        worst_even = worst_odd = 0.0
        for y in range(1 << n):
            w = bin(y).count("1")
            for s in (e2, e2e1):
                c = contribution(s, y, ang)
                if w % 2 == 0:
                    worst_even = max(worst_even, abs(c - ang.sigma ** w))
                elif w < n:
                    worst_odd = max(worst_odd, abs(c))
        rows.append(_bound_row(f"even-weight contribution is sigma^w (n={n})", worst_even, 1e-12))
        rows.append(_bound_row(f"odd-weight contribution is 0 below full weight (n={n})",
                               worst_odd, 1e-12))
    for n in (5, 7):  # full-weight signs at odd n
        ang = Angle(1.25)
        y = (1 << n) - 1
        want = ang.gamma ** n if n % 4 == 1 else -ang.gamma ** n
        ce2 = contribution(elementary(n, 2), y, ang)
        ce2e1 = contribution(elementary(n, 2) + elementary(n, 1), y, ang)
        rows.append(_bound_row(f"full-weight contribution of e2 is {'+' if n % 4 == 1 else '-'}cos^n (n={n})",
                               abs(ce2 - want), 1e-12))
        rows.append(_bound_row(f"full-weight contribution of e2+e1 is {'-' if n % 4 == 1 else '+'}cos^n (n={n})",
                               abs(ce2e1 + want), 1e-12,
                               note="the bare 'cos' in the fourth case reads as cos^n; "
                                    "confirmed by enumeration"))
    return rows


def _check_split_law(p: dict) -> list[CheckRow]:
    n = int(p.get("n", 5))
    ang = Angle(float(p.get("phi", 2 * math.pi / 5)))
    worst = 0.0
    for mask in range(1 << (n * (n - 1) // 2)):
        q = mask_to_poly(n, mask)
        full = c_restricted(q, Restriction("*" * n), ang)
        zero = c_restricted(q, Restriction("0" + "*" * (n - 1)), ang)
        one = c_restricted(q, Restriction("1" + "*" * (n - 1)), ang)
        worst = max(worst, abs(full - (zero + one) / 2))
    v_gap = abs(v_phi(n, ang) - (v_restricted(Restriction("0" + "*" * (n - 1)), ang)
                                 + v_restricted(Restriction("1" + "*" * (n - 1)), ang)) / 2)
    return [_bound_row(f"conditioning split of mean |c_y|, exhaustive quad parts n={n}",
                       worst, 1e-12),
            _bound_row("matching split for the even-weight sum", v_gap, 1e-12)]


def _single_zero_restrictions(n: int) -> list[str]:
    cells = []
    for zero_pos in range(n):
        for rest in itertools.product("1*", repeat=n - 1):
            cells.append("".join(rest[:zero_pos]) + "0" + "".join(rest[zero_pos:]))
    return cells


def _check_restriction_lemmas(p: dict) -> list[CheckRow]:
    n = int(p.get("n", 6))
    t = int(p.get("t", 3))
    angles = [Angle(a) for a in (0.9, math.pi / 3, 2 * math.pi / 5, math.pi / 2)]
    reps, _ = quad_orbits(n)
    cells_list = _single_zero_restrictions(n)
    worst_odd_even = -1.0
    checked = 0
    gap_viol = {f"{ang.phi:.4f}": 0 for ang in angles}
    gap_checked = 0
    for mask in reps:
        q = mask_to_poly(n, int(mask))
        for cells in cells_list:
            r = Restriction(cells)
            flags = lemma_hypotheses(q, r, t=t)
            for ang in angles:
                if flags.odd_even:
                    checked += 1
                    worst_odd_even = max(worst_odd_even,
                                         c_restricted(q, r, ang) - v_restricted(r, ang))
                elif flags.gap:
                    gap_checked += 1
                    if c_restricted(q, r, ang) > v_restricted(r, ang) + 1e-9:
                        gap_viol[f"{ang.phi:.4f}"] += 1
    rows = [_bound_row(f"odd-neighbor hypothesis forces c(p,r) <= v(r) "
                       f"({checked} cases, orbit reps n={n})", worst_odd_even, 1e-9)]
    rows.append(CheckRow(f"even-neighbor gap hypothesis at t={t} ({gap_checked} cases)",
                         "report", observed=gap_viol,
                         note="threshold unspecified; analytic t per angle: "
                              + ", ".join(f"{ang.phi:.3f}->{gap_threshold(ang)}" for ang in angles)))
    return rows


def _check_quadratic_values(p: dict) -> list[CheckRow]:
    n_max = int(p.get("n_max", 14))
    worst = 0.0
    for n in range(4, n_max + 1):
        e2 = elementary(n, 2)
        e2e1 = e2 + elementary(n, 1)
        for ang in _angles_in_main_range(8):
            pred = quadratic_max_prediction(n, ang)
            worst = max(worst, abs(pred["e2"] - c_phi(e2, ang)),
                        abs(pred["e2+e1"] - c_phi(e2e1, ang)))
    rows = [_bound_row(f"exact C values for the symmetric quadratics, n = 4..{n_max}, "
                       "8 angles in (pi/4, pi/2]", worst, 1e-9)]
    # the alternative odd-n term only matches where cos = 1/2
    n = 7
    ang = Angle(1.2)
    alt = quadratic_max_prediction(n, ang, odd_term="quarter")
    gap = abs(alt["e2"] - c_phi(elementary(n, 2), ang))
    rows.append(CheckRow("alternative (1/4)^n odd-n term mismatch at phi=1.2, n=7",
                         "report", observed=gap,
                         note="enumeration sides with the (cos(phi)/2)^n form"))
    return rows


def _check_exact_e_formula(p: dict) -> list[CheckRow]:
    n_max = int(p.get("n_max", 16))
    ms = p.get("ms", (3, 5, 7))
    worst = 0.0
    for m in ms:
        for n in range(1, n_max + 1):
            e2 = elementary(n, 2)
            e2e1 = e2 + elementary(n, 1)
            for k in range(1, m):
                ang = Angle(2 * math.pi * k / m)
                worst = max(worst,
                            abs(e_kphi_symmetric(n, m, k, "e2") - e_phi(e2, ang)),
                            abs(e_kphi_symmetric(n, m, k, "e2+e1") - e_phi(e2e1, ang)))
    return [_bound_row(f"closed transform values vs enumeration, n <= {n_max}, m in {tuple(ms)}",
                       worst, 1e-9)]


_PINNED_SWEEPS = {(4, "1.0472"), (5, "1.0472"), (6, "1.0472"),
                  (4, "1.2566"), (5, "1.2566"), (6, "1.2566"),
                  (4, "1.5708"), (5, "1.5708"), (6, "1.5708")}


def _check_max_quadratic(p: dict) -> list[CheckRow]:
    n = int(p.get("n", 5))
    phi = float(p.get("phi", math.pi / 2))
    ang = Angle(phi)
    res = max_c_phi(n, ang, canonical=bool(p.get("canonical", False)))
    pinned = (n, f"{phi:.4f}") in _PINNED_SWEEPS
    status = ("pass" if res.extras["complete_graph_is_max"] else "fail") if pinned else "report"
    rows = [CheckRow(f"direction-sum maximum over quad parts at n={n}, phi={phi:.4f}",
                     status, observed=res.extras["complete_graph_is_max"], expected=True,
                     note="hard assertion only at the pinned desk-scale points; "
                          "large-n statement elsewhere"),
            CheckRow("maximum value", "report", observed=res.max_value,
                     note=f"maximizers: {', '.join(res.maximizers[:4])}"),
            CheckRow("ceiling attained by symmetric candidates",
                     ("pass" if res.extras["ceiling_attained_by_symmetric"] else "fail")
                     if pinned else "report",
                     observed=res.extras["symmetric_c_squared"], expected=res.max_value,
                     tol=1e-9)]
    return rows


def _check_conjecture_sym_best(p: dict) -> list[CheckRow]:
    n = int(p.get("n", 6))
    count = int(p.get("angles", 8))
    rows = []
    for ang in angle_grid(count, 0.0, math.pi / 2):
        res = max_c_phi(n, ang, canonical=True)
        rows.append(CheckRow(f"maximizers at phi={ang.phi:.4f}", "report",
                             observed=list(res.maximizers),
                             note=f"max mean |c_y| = {res.max_value:.10f}, "
                                  f"symmetric C^2 = {res.extras['symmetric_c_squared']:.10f}"))
    return rows


def _check_max_boolean(p: dict) -> list[CheckRow]:
    n = int(p.get("n", 6))
    m = int(p.get("m", 3))
    res = max_b_m(n, m)
    rows = [CheckRow(f"B* over quadratics at n={n}, m={m}", "report",
                     observed=res.max_value,
                     note=f"maximizers: {', '.join(res.maximizers[:2])}"),
            CheckRow("B*/Psi sandwich ratio", "report",
                     observed=res.extras.get("bstar_over_psi"),
                     note="asymptotics place it in [1/sqrt(2), 1]")]
    zero_b = b_m(mask_to_poly(n, 0), m)
    rows.append(_bound_row("constant polynomial scores 0", zero_b, 1e-12))
    return rows


def _check_prefixed_candidate(p: dict) -> list[CheckRow]:
    n = int(p.get("n", 12))
    m = int(p.get("m", 3))
    cmp_rows = structured_b_m_comparison(n, m)
    rows = [CheckRow(f"B[{k}]", "report", observed=v) for k, v in cmp_rows.items()
            if k.startswith("B[")]
    if n % (4 * m) in (0, 2 * m):
        ok = cmp_rows["max_prefixed"] > cmp_rows["max_symmetric"]
        rows.append(CheckRow(
            f"prefixed candidate strictly beats every symmetric at n={n}, m={m}",
            "pass" if ok else "fail",
            observed=cmp_rows["max_prefixed"], expected=cmp_rows["max_symmetric"],
            note="strict inequality for n = 0 or 2m mod 4m"))
    else:
        rows.append(CheckRow("prefixed vs symmetric comparison", "report",
                             observed=[cmp_rows["max_prefixed"], cmp_rows["max_symmetric"]]))
    return rows


def _check_b_reconstruction(p: dict) -> list[CheckRow]:
    n = int(p.get("n", 12))
    m = int(p.get("m", 3))
    trials = int(p.get("trials", 100))
    seed = int(p.get("seed", DEFAULT_SEED))
    rng = make_rng(seed)
    bfrac = fraction_weight_mod(n, m, 0)
    worst = 0.0
    for _ in range(trials):
        q = random_quadratic(n, rng)
        reals = [e_phi(q, Angle(2 * math.pi * k / m)).real for k in range(1, (m + 1) // 2)]
        rec = b_m_reconstruct(reals, bfrac, m, bias(q))
        worst = max(worst, abs(rec - b_m(q, m)))
    return [_bound_row(f"class-sum reconstruction vs direct B_{m}, {trials} quadratics n={n}",
                       worst, 1e-9,
                       note="the (1/m - b) term carries the polynomial's bias")]


def _check_balance(p: dict) -> list[CheckRow]:
    n_max = int(p.get("n_max", 30))
    ms = p.get("ms", (3, 5, 7))
    ok = True
    worst_ratio = 0.0
    for m in ms:
        for n in range(1, n_max + 1):
            bound = Fraction.from_float(math.cos(math.pi / m) ** n)
            for k in range(m):
                gap = abs(fraction_weight_mod(n, m, k) - Fraction(1, m))
                if gap > bound:
                    ok = False
                if bound:
                    worst_ratio = max(worst_ratio, float(gap / bound))
    return [CheckRow(f"|P[w = k mod m] - 1/m| < cos(pi/m)^n, exact rationals, "
                     f"n <= {n_max}, m in {tuple(ms)}, all residues",
                     "pass" if ok else "fail", observed=worst_ratio, expected="< 1",
                     note="worst gap/bound ratio")]


def _check_symmetric_degree_bound(p: dict) -> list[CheckRow]:
    n = int(p.get("n", 16))
    d_max = int(p.get("d_max", 4))
    ms = p.get("ms", (3, 5))
    worst = -math.inf
    for m in ms:
        for k in range(1, m):
            ang = Angle(2 * math.pi * k / m)
            for bits in itertools.product((0, 1), repeat=d_max + 1):
                s = SymmetricSpec(n, bits)
                d = max(s.degree(), 1)
                worst = max(worst, symmetric_c_phi(s, ang) - symm_mod_bound(n, m, d))
    return [_bound_row(f"C <= 2md cos(pi/2md)^n for every symmetric spec of degree <= {d_max}, "
                       f"n={n}, m in {tuple(ms)}", worst, 1e-12)]


def _check_cubic_dominance(p: dict) -> list[CheckRow]:
    n = int(p.get("n", 8))
    phi = float(p.get("phi", 2 * math.pi / 3))
    trials = int(p.get("trials", 200))
    seed = int(p.get("seed", DEFAULT_SEED))
    ang = Angle(phi)
    rng = make_rng(seed)
    e3 = elementary(n, 3)
    base = np.abs(contribution_sweep(e3, ang, "enum"))
    w = np.bitwise_count(np.arange(1 << n, dtype=np.int64)).astype(np.int64)
    even_lt = (w % 2 == 0) & (w < n)
    odd = w % 2 == 1
    full = w == n
    bias_cap = np.where(odd, 2.0 ** (-(n - w - 1) / 2.0), np.inf)
    viol = 0
    worst_all = worst_even = worst_oddcap = worst_full = -math.inf
    for _ in range(trials):
        q = random_quadratic(n, rng)
        vals = np.abs(contribution_sweep(e3 + q, ang, "enum"))
        exc = vals - base
        if float(exc.max()) > 1e-12:
            viol += 1
        worst_all = max(worst_all, float(exc.max()))
        worst_even = max(worst_even, float(exc[even_lt].max()))
        worst_oddcap = max(worst_oddcap, float((vals - bias_cap)[odd].max()))
        if full.any():
            worst_full = max(worst_full, float(exc[full].max()))
    rows = [CheckRow(f"per-direction dominance of the pure cubic part "
                     f"({trials} random q, n={n}, phi={phi:.4f})",
                     "pass" if viol == 0 else "fail",
                     observed={"violating_q": viol, "worst_excess": worst_all},
                     expected={"violating_q": 0}, tol=1e-12,
                     note="the per-direction claim fails at odd weights at generic "
                          "angles; see the even/odd refinements below")]
    rows.append(_bound_row(f"dominance restricted to even weights below n", worst_even, 1e-12))
    rows.append(_bound_row("odd-weight contributions of e3+q obey the bias cap "
                           "2^{-(n-w-1)/2}", worst_oddcap, 1e-12))
    note_full = "holds when sin >= |cos|" if abs(ang.sigma) >= abs(ang.gamma) else \
        "can fail when |cos| > sin"
    rows.append(CheckRow("full-weight direction excess", "report",
                         observed=worst_full, note=note_full))
    return rows


def _check_derivative_cases(p: dict) -> list[CheckRow]:
    n = int(p.get("n", 10))
    e3 = elementary(n, 3)
    bad = 0
    for y in range(1 << n):
        if e3.derivative(y) != derivative_case_table(n, y):
            bad += 1
    return [CheckRow(f"cubic symmetric derivative matches the weight mod 4 case table, "
                     f"all y, n={n}", "pass" if bad == 0 else "fail",
                     observed=bad, expected=0)]


def _check_cubic_contribution_bound(p: dict) -> list[CheckRow]:
    ns = p.get("ns", (5, 8))
    angles = [Angle(a) for a in (0.3, 0.8, math.pi / 2, 2 * math.pi / 3)]
    worst_even = worst_bias = -math.inf
    worst_even_eq = 0.0
    stated_violations = 0
    worst_full = 0.0
    full_violations = 0
    for n in ns:
        e3 = elementary(n, 3)
        for ang in angles:
            vals = np.abs(contribution_sweep(e3, ang, "enum"))
            for y in range(1 << n):
                w = bin(y).count("1")
                if w % 2 == 0 and w < n:
                    worst_even = max(worst_even,
                                     vals[y] - e3_contribution_bound(n, y, ang, "stated"))
                    if w % 4 == 0:
                        want = (abs(ang.sigma) ** w + abs(ang.gamma) ** w) / 2
                        worst_even_eq = max(worst_even_eq, abs(vals[y] - want))
                elif w % 2 == 1:
                    if vals[y] > e3_contribution_bound(n, y, ang, "stated") + 1e-12:
                        stated_violations += 1
                    worst_bias = max(worst_bias,
                                     vals[y] - e3_contribution_bound(n, y, ang, "bias"))
            if n % 2 == 0:
                want = abs(ang.sigma) ** n if n % 4 == 0 else abs(ang.gamma) ** n
                worst_full = max(worst_full, abs(vals[(1 << n) - 1] - want))
                if vals[(1 << n) - 1] > e3_contribution_bound(n, (1 << n) - 1, ang,
                                                              "stated") + 1e-12:
                    full_violations += 1
    rows = [_bound_row("even-weight bound (sin^w + cos^w)/2 below full weight",
                       worst_even, 1e-12),
            _bound_row("even-weight equality at w = 0 mod 4 below full weight",
                       worst_even_eq, 1e-12),
            _bound_row("full-weight direction has its exact closed value",
                       worst_full, 1e-12),
            _bound_row("odd-weight bias-form bound 2^{-(n-w-1)/2}", worst_bias, 1e-12),
            CheckRow("averaged forms at the remaining directions", "report",
                     observed={"odd_weight_violations": stated_violations,
                               "full_weight_violations": full_violations},
                     note="the stated odd form 2^w/2^{n-1} is falsified by "
                          "enumeration (first at n=5, w=1), and the averaged even "
                          "form can fail at the single full-weight direction; both "
                          "need an unselected variable")]
    return rows


def _check_real_part_profile(p: dict) -> list[CheckRow]:
    n_max = int(p.get("n_max", 16))
    ms = p.get("ms", (3, 5))
    worst = -math.inf
    for m in ms:
        l1 = ell1(m)
        for n in range(2, n_max + 1):
            prof = real_part_profile(n, m)
            scale = 1 << (n + 1)
            for which, pred in (("e2", prof.pred_real_e2), ("e2+e1", prof.pred_real_e2e1)):
                exact = scale * abs(e_kphi_symmetric(n, m, l1, which).real)
                worst = max(worst, abs(exact - pred) - prof.residual_bound)
            exact_v = scale * math.sqrt(v_phi(n, Angle(2 * math.pi * l1 / m)))
            worst = max(worst, abs(exact_v - prof.pred_sqrt_v) - prof.residual_bound)
    return [_bound_row(f"real-part predictions within the exact residual bound, "
                       f"n <= {n_max}, m in {tuple(ms)}", worst, 1e-9)]


def _check_local_correlation(p: dict) -> list[CheckRow]:
    from .localcorr import counterexample_experiment, report_to_json
    n_target = int(p.get("n", 24))
    seed = int(p.get("seed", DEFAULT_SEED))
    sizes = tuple(p.get("s_sizes", (2, 4, 6)))
    rep = counterexample_experiment(n_target, s_sizes=sizes, q_seeds=tuple(range(6)),
                                    strategies=("spread", "packed"), seed=seed)
    rows = []
    if not rep["q_found"]:
        rows.append(CheckRow("approximator search", "fail",
                             observed="no q reached the agreement floor"))
        return rows
    agree = rep["q"]["agreement"]
    rows.append(CheckRow("approximator agreement with the DNF", "pass" if agree >= 0.7 else "fail",
                         observed=agree, expected=">= 0.7"))
    exact = all("delta_exact" in row for row in rep["probes"]) if n_target <= 24 else False
    rows.append(CheckRow("probes computed exactly", "pass" if exact else "report",
                         observed=exact))
    for row in rep["probes"]:
        rows.append(CheckRow(f"delta on {row['strategy']} set of {row['size']}",
                             "report", observed=row["delta"],
                             note=f"DNF not fixed with prob {row.get('tribes_not_fixed_prob')}"))
    rep2 = counterexample_experiment(n_target, s_sizes=sizes, q_seeds=tuple(range(6)),
                                     strategies=("spread", "packed"), seed=seed)
    same = report_to_json(rep) == report_to_json(rep2)
    rows.append(CheckRow("repeat run is byte-identical", "pass" if same else "fail",
                         observed=same, expected=True))
    return rows


REGISTRY: dict[str, Callable[[dict], list[CheckRow]]] = {
    "squared-identity": _check_squared_identity,
    "product-table": _check_product_table,
    "handshake": _check_handshake,
    "trivial-maximum": _check_trivial_maximum,
    "odd-even-sum": _check_odd_even_sum,
    "v-phi": _check_v_phi,
    "symmetric-contributions": _check_symmetric_contributions,
    "split-law": _check_split_law,
    "restriction-lemmas": _check_restriction_lemmas,
    "quadratic-values": _check_quadratic_values,
    "exact-e-formula": _check_exact_e_formula,
    "max-quadratic": _check_max_quadratic,
    "conjecture-sym-best": _check_conjecture_sym_best,
    "max-boolean": _check_max_boolean,
    "prefixed-candidate": _check_prefixed_candidate,
    "b-reconstruction": _check_b_reconstruction,
    "balance": _check_balance,
    "symmetric-degree-bound": _check_symmetric_degree_bound,
    "cubic-dominance": _check_cubic_dominance,
    "derivative-cases": _check_derivative_cases,
    "cubic-contribution-bound": _check_cubic_contribution_bound,
    "real-part-profile": _check_real_part_profile,
    "local-correlation": _check_local_correlation,
}


class UnknownTheoremError(ValueError):
    pass


def verify(theorem_id: str, **params) -> VerifyReport:
    """Run a registered claim check; see REGISTRY for the documented ids."""
    if theorem_id not in REGISTRY:
        raise UnknownTheoremError(
            f"unknown id {theorem_id!r}; known: {', '.join(sorted(REGISTRY))}")
    start = time.monotonic()
    checks = tuple(REGISTRY[theorem_id](params))
    return VerifyReport(theorem_id, params, checks, time.monotonic() - start)
