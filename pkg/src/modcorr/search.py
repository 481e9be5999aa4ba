"""Exhaustive and randomized searches over polynomial families, plus the
verification harness dispatching every claim check by name.

Quadratic families are swept by edge-set bitmask.  The direction-sum
objective E_y |c_y| ignores linear terms, so the quadratic sweep enumerates
quadratic parts only; orbit pruning under variable relabeling is available
with exact orbit sizes so maxima remain maxima over the full family.
"""

from __future__ import annotations

import itertools
import json
import math
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from ._util import DEFAULT_SEED, make_rng, parity_array, popcount_array
from .closedform import psi
from .engine import (BudgetError, b_m, bias, c_phi, e_phi, prefixed_symmetric_b_m,
                     sign_table, symmetric_b_m, symmetric_c_phi)
from .modfun import Angle
from .deriv import contribution_sweep
from .poly import PolyGF2, SymmetricSpec, elementary, format_poly

TIE_TOL = 1e-9


def edge_order(n: int) -> list[tuple[int, int]]:
    """Fixed edge indexing used by every mask-based sweep."""
    return list(itertools.combinations(range(n), 2))


def mask_to_poly(n: int, mask: int, linear: int = 0, const: int = 0) -> PolyGF2:
    edges = [e for b, e in enumerate(edge_order(n)) if (mask >> b) & 1]
    return PolyGF2(n, const, linear, tuple(edges))


def poly_to_mask(p: PolyGF2) -> int:
    order = {e: b for b, e in enumerate(edge_order(p.n))}
    mask = 0
    for e in p.edges:
        mask |= 1 << order[e]
    return mask


# ---- canonical labeling -----------------------------------------------------


def canonical_mask(n: int, mask: int) -> int:
    """Minimum edge-mask over all variable permutations (exact)."""
    order = edge_order(n)
    edges = [order[b] for b in range(len(order)) if (mask >> b) & 1]
    if not edges:
        return 0
    index = {e: b for b, e in enumerate(order)}
    best = mask
    for perm in itertools.permutations(range(n)):
        m = 0
        for i, j in edges:
            a, b = perm[i], perm[j]
            m |= 1 << index[(a, b) if a < b else (b, a)]
            if m > best:
                break
        else:
            best = min(best, m)
    return best


def canonical_form(p: PolyGF2) -> str:
    """Canonical text of the quadratic part (relabeling-invariant)."""
    return format_poly(mask_to_poly(p.n, canonical_mask(p.n, poly_to_mask(p))))


_orbit_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def quad_orbits(n: int) -> tuple[np.ndarray, np.ndarray]:
    """(representative masks, orbit sizes) for edge sets under relabeling.

    Label propagation over the transposition images of every mask; converges
    to the orbit minimum.  Feasible through n = 7 (2^21 masks).
    """
    if n in _orbit_cache:
        return _orbit_cache[n]
    if n > 7:
        raise BudgetError("orbit enumeration supported through n = 7")
    order = edge_order(n)
    index = {e: b for b, e in enumerate(order)}
    nedges = len(order)
    masks = np.arange(1 << nedges, dtype=np.int64)

    images = []
    for k in range(n - 1):  # adjacent transposition (k, k+1)
        perm = list(range(n))
        perm[k], perm[k + 1] = perm[k + 1], perm[k]
        img = np.zeros_like(masks)
        for b, (i, j) in enumerate(order):
            a, c = perm[i], perm[j]
            tgt = index[(a, c) if a < c else (c, a)]
            img |= ((masks >> b) & 1) << tgt
        images.append(img)

    labels = masks.copy()
    changed = True
    while changed:
        changed = False
        for img in images:
            gathered = labels[img]
            if (gathered < labels).any():
                labels = np.minimum(labels, gathered)
                changed = True
        # pointer-jump: a mask's label may itself carry a smaller label
        jumped = labels[labels]
        if (jumped < labels).any():
            labels = jumped
            changed = True
    reps_mask = labels == masks
    reps = masks[reps_mask]
    sizes = np.bincount(labels, minlength=len(masks))[reps]
    _orbit_cache[n] = (reps, sizes)
    return reps, sizes


def enumerate_quadratics(n: int, include_affine: bool = False,
                         canonical: bool = False) -> Iterator[tuple[PolyGF2, int]]:
    """Yield (polynomial, orbit size) over quadratic parts.

    With canonical=False every quadratic part appears once with orbit size 1.
    With canonical=True one representative per relabeling orbit is produced
    and the orbit size reported.  include_affine additionally sweeps linear
    masks and the constant (canonical=False only).
    """
    if canonical and include_affine:
        raise ValueError("canonical enumeration covers quadratic parts only")
    nedges = n * (n - 1) // 2
    if canonical:
        reps, sizes = quad_orbits(n)
        for mask, size in zip(reps, sizes):
            yield mask_to_poly(n, int(mask)), int(size)
        return
    if nedges > 36:
        raise BudgetError("full quadratic enumeration supported through n = 9")
    for mask in range(1 << nedges):
        if include_affine:
            for linear in range(1 << n):
                for const in (0, 1):
                    yield mask_to_poly(n, mask, linear, const), 1
        else:
            yield mask_to_poly(n, mask), 1


# ---- search results ----------------------------------------------------------


@dataclass(frozen=True)
class SearchResult:
    family: str
    objective: str
    params: dict
    max_value: float
    maximizers: tuple[str, ...]
    runners_up: tuple[tuple[str, float], ...]
    enumerated: int
    wall_time: float
    tie_tol: float = TIE_TOL
    extras: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps({
            "family": self.family, "objective": self.objective, "params": self.params,
            "max_value": self.max_value, "maximizers": list(self.maximizers),
            "runners_up": [[t, v] for t, v in self.runners_up],
            "enumerated": self.enumerated, "wall_time": round(self.wall_time, 3),
            "tie_tol": self.tie_tol, "extras": self.extras,
        }, sort_keys=True)


def _direction_sum_batch(n: int, masks: np.ndarray, angle: Angle) -> np.ndarray:
    """E_y |c_y| for a batch of quadratic-part masks, vectorized over (mask, y)."""
    order = edge_order(n)
    size = 1 << n
    y = np.arange(size, dtype=np.int64)
    ybits = [((y >> i) & 1).astype(np.uint8) for i in range(n)]
    coeff = [np.zeros((len(masks), size), dtype=np.uint8) for _ in range(n)]
    for b, (i, j) in enumerate(order):
        present = ((masks >> b) & 1).astype(np.uint8)[:, None]
        coeff[i] ^= present & ybits[j][None, :]
        coeff[j] ^= present & ybits[i][None, :]
    alive = np.ones((len(masks), size), dtype=bool)
    odd = np.zeros((len(masks), size), dtype=np.int16)
    for i in range(n):
        alive &= ~((coeff[i] == 1) & (ybits[i][None, :] == 0))
        odd += (coeff[i] & ybits[i][None, :]).astype(np.int16)
    w = popcount_array(y).astype(np.int16)[None, :]
    mags = np.abs(angle.sigma) ** odd * np.abs(angle.gamma) ** (w - odd)
    return np.mean(alive * mags, axis=1)


class Checkpoint:
    """Plain-text resume cursor for long sweeps: cursor plus best-so-far."""

    def __init__(self, path: str | Path):
        self.path = Path(path)

    def load(self) -> dict | None:
        if not self.path.exists():
            return None
        state = {}
        for line in self.path.read_text().splitlines():
            key, _, value = line.partition("=")
            state[key] = value
        return {
            "cursor": int(state.get("cursor", 0)),
            "best": float(state.get("best", "-inf")),
            "candidates": json.loads(state.get("candidates", "[]")),
        }

    def save(self, cursor: int, best: float, candidates: list[tuple[int, float]]):
        text = (f"cursor={cursor}\nbest={best!r}\n"
                f"candidates={json.dumps(candidates)}\n")
        self.path.write_text(text)


def max_c_phi(n: int, angle: Angle, family: str = "quadratic",
              canonical: bool = False, tie_tol: float = TIE_TOL,
              checkpoint: str | Path | None = None,
              batch: int = 4096) -> SearchResult:
    """Maximize the correlation objective over a polynomial family.

    family='quadratic' sweeps quadratic parts and maximizes E_y |c_y|, the
    ceiling for C^2 over every polynomial sharing that quadratic part; the
    result records whether the ceiling is met by the symmetric candidates
    with a suitable linear part.  family='cubic-structured' sweeps the sum of
    the full cubic symmetric part with every quadratic part and maximizes
    C itself.
    """
    start = time.monotonic()
    if family == "quadratic":
        masks, sizes = _family_masks(n, canonical)
        objective = "mean |c_y|"
        cp = Checkpoint(checkpoint) if checkpoint else None
        cursor, best, cands = 0, float("-inf"), []
        if cp and (state := cp.load()):
            cursor, best, cands = state["cursor"], state["best"], [tuple(c) for c in state["candidates"]]
        while cursor < len(masks):
            chunk = masks[cursor:cursor + batch]
            vals = _direction_sum_batch(n, chunk, angle)
            hi = float(vals.max())
            if hi > best:
                best = hi
            keep = vals >= best - 2 * tie_tol
            cands += [(int(m), float(v)) for m, v in zip(chunk[keep], vals[keep])]
            cands = [(m, v) for m, v in cands if v >= best - 2 * tie_tol]
            cursor += len(chunk)
            if cp:
                cp.save(cursor, best, cands)
        maxim = sorted({canonical_mask(n, m) for m, v in cands if v >= best - tie_tol})
        runners = sorted({(canonical_mask(n, m), round(v, 12)) for m, v in cands
                          if best - 2 * tie_tol <= v < best - tie_tol})
        sym = _symmetric_ceiling(n, angle)
        full_mask = (1 << (n * (n - 1) // 2)) - 1  # complete graph, its own canonical form
        extras = {
            "ceiling_attained_by_symmetric": bool(abs(sym - best) <= 1e-9),
            "symmetric_c_squared": sym,
            "complete_graph_is_max": full_mask in maxim,
        }
        return SearchResult(
            family="quadratic", objective=objective,
            params={"n": n, "phi": angle.phi, "canonical": canonical},
            max_value=best,
            maximizers=tuple(format_poly(mask_to_poly(n, m)) for m in maxim),
            runners_up=tuple((format_poly(mask_to_poly(n, m)), v) for m, v in runners),
            enumerated=len(masks), wall_time=time.monotonic() - start,
            tie_tol=tie_tol, extras=extras,
        )
    if family == "cubic-structured":
        return _max_c_cubic_structured(n, angle, tie_tol, start)
    raise ValueError(f"unknown family {family!r}")


def _family_masks(n: int, canonical: bool) -> tuple[np.ndarray, np.ndarray]:
    if canonical:
        reps, sizes = quad_orbits(n)
        return reps, sizes
    nedges = n * (n - 1) // 2
    if nedges > 21:
        raise BudgetError("full sweep supported through n = 7")
    masks = np.arange(1 << nedges, dtype=np.int64)
    return masks, np.ones_like(masks)


def _symmetric_ceiling(n: int, angle: Angle) -> float:
    """max(C(e2), C(e2+e1))^2 via the weight-class path."""
    best = 0.0
    for coeffs in ((0, 0, 1), (0, 1, 1)):
        s = SymmetricSpec(n, coeffs)
        best = max(best, symmetric_c_phi(s, angle) ** 2)
    return best


def _max_c_cubic_structured(n: int, angle: Angle, tie_tol: float, start: float) -> SearchResult:
    if n > 7:
        raise BudgetError("structured cubic sweep supported through n = 7")
    e3 = elementary(n, 3)
    best, cands = float("-inf"), []
    reps, sizes = quad_orbits(n)
    for mask in reps:
        base = e3 + mask_to_poly(n, int(mask))
        for linear in range(1 << n):
            p = PolyGF2(n, 0, linear, base.edges, base.triples)
            val = c_phi(p, angle)
            if val > best - 2 * tie_tol:
                if val > best:
                    best = val
                cands.append((format_poly(p), val))
    cands = [(t, v) for t, v in cands if v >= best - 2 * tie_tol]
    maxim = sorted({t for t, v in cands if v >= best - tie_tol})
    runners = sorted({(t, round(v, 12)) for t, v in cands if best - 2 * tie_tol <= v < best - tie_tol})
    sym_best = max(symmetric_c_phi(SymmetricSpec(n, c), angle)
                   for c in ((0, 0), (0, 1), (0, 0, 1), (0, 1, 1)))
    return SearchResult(
        family="cubic-structured", objective="C",
        params={"n": n, "phi": angle.phi},
        max_value=best, maximizers=tuple(maxim), runners_up=tuple(runners),
        enumerated=int(len(reps)) * (1 << n), wall_time=time.monotonic() - start,
        tie_tol=tie_tol,
        extras={"best_symmetric_quadratic_c": sym_best,
                "ratio_to_symmetric": best / sym_best if sym_best else float("inf")},
    )


# ---- boolean mod-m search ------------------------------------------------------


def _fwht_int(a: np.ndarray) -> np.ndarray:
    m = len(a)
    a = a.astype(np.int64).copy()
    h = 1
    while h < m:
        a = a.reshape(-1, 2, h)
        x, y = a[:, 0, :].copy(), a[:, 1, :].copy()
        a[:, 0, :] = x + y
        a[:, 1, :] = x - y
        a = a.reshape(m)
        h <<= 1
    return a


def max_b_m(n: int, m: int, tie_tol: float = TIE_TOL) -> SearchResult:
    """Maximize B_m over all quadratics (quadratic part x linear part).

    The constant is dropped: complementing flips both class means, leaving
    the gap unchanged.  For each canonical quadratic part the linear sweep is
    two Walsh-Hadamard transforms of the masked sign table.  Supported
    through n = 7; use structured_b_m_comparison beyond.
    """
    if m < 2:
        raise ValueError("m must be >= 2")
    start = time.monotonic()
    size = 1 << n
    w = popcount_array(np.arange(size, dtype=np.int64))
    zero_class = (w % m == 0).astype(np.int64)
    n0 = int(zero_class.sum())
    n1 = size - n0
    if n0 == 0 or n1 == 0:
        raise ValueError("one weight class is empty")
    reps, sizes = quad_orbits(n)
    best, cands = float("-inf"), []
    for mask in reps:
        q = mask_to_poly(n, int(mask))
        sq = sign_table(q).astype(np.int64)
        s0 = _fwht_int(sq * zero_class)
        stot = _fwht_int(sq)
        vals = np.abs(s0 / n0 - (stot - s0) / n1)
        hi = float(vals.max())
        if hi > best:
            best = hi
        keep = np.nonzero(vals >= best - 2 * tie_tol)[0]
        for lin in keep:
            p = mask_to_poly(n, int(mask), int(lin))
            cands.append((format_poly(p), float(vals[lin])))
    cands = [(t, v) for t, v in cands if v >= best - 2 * tie_tol]
    maxim = sorted({t for t, v in cands if v >= best - tie_tol})
    runners = sorted({(t, round(v, 12)) for t, v in cands if best - 2 * tie_tol <= v < best - tie_tol})
    extras = structured_b_m_comparison(n, m)
    psi_value = psi(n, m) if m % 2 else None
    if psi_value:
        extras["psi"] = psi_value
        extras["bstar_over_psi"] = best / psi_value
    return SearchResult(
        family="quadratic-affine", objective=f"B_{m}",
        params={"n": n, "m": m},
        max_value=best, maximizers=tuple(maxim), runners_up=tuple(runners),
        enumerated=int(len(reps)) * size, wall_time=time.monotonic() - start,
        tie_tol=tie_tol, extras=extras,
    )


def structured_b_m_comparison(n: int, m: int) -> dict:
    """B_m of the structured candidates; exact via weight classes at any n.

    Candidates: the four symmetric quadratics, and the first variable added
    to a symmetric quadratic on the remaining ones.
    """
    out = {}
    for name, coeffs in (("0", (0,)), ("e1", (0, 1)), ("e2", (0, 0, 1)), ("e2+e1", (0, 1, 1))):
        out[f"B[{name}]"] = symmetric_b_m(SymmetricSpec(n, coeffs), m)
    for name, coeffs in (("x1+e2'", (0, 0, 1)), ("x1+e2'+e1'", (0, 1, 1))):
        s = SymmetricSpec(n - 1, coeffs)
        out[f"B[{name}]"] = prefixed_symmetric_b_m(s, m)
    out["max_symmetric"] = max(out["B[0]"], out["B[e1]"], out["B[e2]"], out["B[e2+e1]"])
    out["max_prefixed"] = max(out["B[x1+e2']"], out["B[x1+e2'+e1']"])
    return out


# ---- cubic dominance ------------------------------------------------------------


def verify_cubic_dominance(n: int, angle: Angle, trials: int, seed: int = DEFAULT_SEED,
                           tol: float = 1e-12) -> dict:
    """For random quadratics q, check |c_y(e3+q)| <= |c_y(e3)| at every y.

    Also reports the correlation ratio against the best symmetric quadratic
    and checks the derivative case table for the cubic symmetric part.
    """
    if n > 12:
        raise BudgetError("dominance sweep supported through n = 12")
    rng = make_rng(seed)
    e3 = elementary(n, 3)
    base = np.abs(contribution_sweep(e3, angle, method="enum"))
    violations = 0
    max_excess = 0.0
    ratios = []
    sym_best = max(symmetric_c_phi(SymmetricSpec(n, c), angle)
                   for c in ((0, 0), (0, 1), (0, 0, 1), (0, 1, 1)))
    for _ in range(trials):
        q = random_quadratic(n, rng)
        t = e3 + q
        vals = np.abs(contribution_sweep(t, angle, method="enum"))
        excess = float((vals - base).max())
        if excess > tol:
            violations += 1
        max_excess = max(max_excess, excess)
        ratios.append(c_phi(t, angle) / sym_best if sym_best else float("inf"))
    return {
        "n": n, "phi": angle.phi, "trials": trials, "seed": seed,
        "violations": violations, "max_excess": max_excess,
        "max_c_ratio_to_symmetric": max(ratios), "mean_c_ratio": float(np.mean(ratios)),
    }


def derivative_case_table(n: int, y: int) -> PolyGF2:
    """Expected derivative of the cubic symmetric polynomial by w(y) mod 4."""
    v1 = [i for i in range(n) if (y >> i) & 1]
    v0 = [i for i in range(n) if not (y >> i) & 1]
    w = len(v1)

    def lin(idxs):
        mask = 0
        for i in idxs:
            mask |= 1 << i
        return mask

    def e2_on(idxs):
        return tuple(itertools.combinations(sorted(idxs), 2))

    if w % 4 == 0:
        # e1(V1) + e1(V1) e1(V0)
        edges = tuple(sorted((min(a, b), max(a, b)) for a in v1 for b in v0))
        return PolyGF2(n, 0, lin(v1), edges)
    if w % 4 == 2:
        edges = tuple(sorted((min(a, b), max(a, b)) for a in v1 for b in v0))
        return PolyGF2(n, 0, lin(v0), edges)
    if w % 4 == 1:
        return PolyGF2(n, 0, 0, tuple(sorted(e2_on(v1) + e2_on(v0))))
    return PolyGF2(n, 1, lin(v1) | lin(v0), tuple(sorted(e2_on(v1) + e2_on(v0))))


def random_quadratic(n: int, rng: np.random.Generator, affine: bool = True) -> PolyGF2:
    edges = tuple(e for e in edge_order(n) if rng.integers(2))
    linear = int(rng.integers(1 << n)) if affine else 0
    const = int(rng.integers(2)) if affine else 0
    return PolyGF2(n, const, linear, edges)


def random_cubic(n: int, rng: np.random.Generator, affine: bool = True) -> PolyGF2:
    p = random_quadratic(n, rng, affine)
    triples = tuple(t for t in itertools.combinations(range(n), 3) if rng.integers(2))
    return PolyGF2(n, p.const, p.linear, p.edges, triples)


def verify(theorem_id: str, **params):
    """Dispatch a named claim check; see modcorr.verify.REGISTRY for ids."""
    from .verify import verify as run
    return run(theorem_id, **params)
