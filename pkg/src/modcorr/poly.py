"""GF(2) polynomials of degree <= 3 on up to 64 variables.

A polynomial is stored structurally: a constant bit, a bitmask of linear
terms, a sorted tuple of quadratic index pairs and a sorted tuple of cubic
index triples.  Indices are 0-based internally; the text grammar and the JSON
encoding are 1-based.

Inputs are n-bit integers where bit i is the value of variable i.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

MAX_VARS = 64


class ParseError(ValueError):
    """Malformed polynomial text; carries the character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnsupportedDegreeError(ValueError):
    """Requested operation needs a degree this representation does not carry."""


def _check_indices(n: int, items: Iterable[tuple[int, ...]], arity: int) -> tuple[tuple[int, ...], ...]:
    seen = set()
    out = []
    for t in items:
        t = tuple(t)
        if len(t) != arity or len(set(t)) != arity:
            raise ValueError(f"expected {arity} distinct indices, got {t}")
        t = tuple(sorted(t))
        if t[0] < 0 or t[-1] >= n:
            raise ValueError(f"index out of range in {t} for n={n}")
        if t in seen:
            raise ValueError(f"duplicate monomial {t}")
        seen.add(t)
        out.append(t)
    return tuple(sorted(out))


@dataclass(frozen=True)
class PolyGF2:
    """Structured GF(2) polynomial of degree at most 3."""

    n: int
    const: int = 0
    linear: int = 0
    edges: tuple[tuple[int, int], ...] = ()
    triples: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VARS:
            raise ValueError(f"n must be in 1..{MAX_VARS}, got {self.n}")
        if self.const not in (0, 1):
            raise ValueError("const must be 0 or 1")
        if self.linear < 0 or self.linear >> self.n:
            raise ValueError("linear mask has bits outside the variable range")
        object.__setattr__(self, "edges", _check_indices(self.n, self.edges, 2))
        object.__setattr__(self, "triples", _check_indices(self.n, self.triples, 3))

    # ---- structure ----------------------------------------------------

    def degree(self) -> int:
        if self.triples:
            return 3
        if self.edges:
            return 2
        if self.linear:
            return 1
        return 0

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        """Neighbor bitmask per variable in the quadratic-term graph."""
        adj = [0] * self.n
        for i, j in self.edges:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return tuple(adj)

    def graph_view(self) -> "DirectionGraph":
        return DirectionGraph(self.n, self.edges)

    # ---- algebra -------------------------------------------------------

    def evaluate(self, x: int) -> int:
        """Value at the n-bit input x, in {0, 1}."""
        v = self.const ^ (bin(self.linear & x).count("1") & 1)
        for i, j in self.edges:
            v ^= (x >> i) & (x >> j) & 1
        for i, j, k in self.triples:
            v ^= (x >> i) & (x >> j) & (x >> k) & 1
        return v

    def __add__(self, other: "PolyGF2") -> "PolyGF2":
        if self.n != other.n:
            raise ValueError("variable counts differ")
        edges = set(self.edges) ^ set(other.edges)
        triples = set(self.triples) ^ set(other.triples)
        return PolyGF2(self.n, self.const ^ other.const, self.linear ^ other.linear,
                       tuple(sorted(edges)), tuple(sorted(triples)))

    def derivative(self, y: int) -> "PolyGF2":
        """The polynomial p(x xor y) + p(x), expanded and canonicalized.

        Each monomial of degree k contributes its 2^k - 1 proper cross terms,
        gated by the bits of y; duplicates cancel mod 2.
        """
        if y < 0 or y >> self.n:
            raise ValueError("direction has bits outside the variable range")
        const = bin(self.linear & y).count("1") & 1
        lin = 0
        edges: set[tuple[int, int]] = set()
        for i, j in self.edges:
            yi, yj = (y >> i) & 1, (y >> j) & 1
            if yj:
                lin ^= 1 << i
            if yi:
                lin ^= 1 << j
            if yi and yj:
                const ^= 1
        for i, j, k in self.triples:
            yi, yj, yk = (y >> i) & 1, (y >> j) & 1, (y >> k) & 1
            # proper subsets of {i,j,k}: substitute y on the subset, x elsewhere
            if yk:
                edges ^= {(i, j)}
            if yj:
                edges ^= {(i, k)}
            if yi:
                edges ^= {(j, k)}
            if yj and yk:
                lin ^= 1 << i
            if yi and yk:
                lin ^= 1 << j
            if yi and yj:
                lin ^= 1 << k
            if yi and yj and yk:
                const ^= 1
        return PolyGF2(self.n, const, lin, tuple(sorted(edges)), ())

    # ---- serialization -------------------------------------------------

    def to_json(self) -> str:
        return json.dumps({
            "n": self.n,
            "const": self.const,
            "linear": [i + 1 for i in range(self.n) if (self.linear >> i) & 1],
            "quad": [[i + 1, j + 1] for i, j in self.edges],
            "cubic": [[i + 1, j + 1, k + 1] for i, j, k in self.triples],
        })

    @staticmethod
    def from_json(text: str) -> "PolyGF2":
        d = json.loads(text)
        lin = 0
        for i in d.get("linear", []):
            lin ^= 1 << (i - 1)
        return PolyGF2(
            d["n"], d.get("const", 0), lin,
            tuple(tuple(v - 1 for v in e) for e in d.get("quad", [])),
            tuple(tuple(v - 1 for v in t) for t in d.get("cubic", [])),
        )


def zero(n: int) -> PolyGF2:
    return PolyGF2(n)


def elementary(n: int, k: int) -> PolyGF2:
    """Elementary symmetric polynomial of degree k on n variables.

    For k > n the sum is empty and the zero polynomial is returned.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > 3:
        raise UnsupportedDegreeError(f"degree {k} terms are not representable")
    if k == 1:
        return PolyGF2(n, linear=(1 << n) - 1)
    if k == 2:
        return PolyGF2(n, edges=tuple(itertools.combinations(range(n), 2)))
    return PolyGF2(n, triples=tuple(itertools.combinations(range(n), 3)))


@dataclass(frozen=True)
class SymmetricSpec:
    """Symmetric polynomial s = a_0 + sum_k a_k e^k given by its coefficient bits."""

    n: int
    coeffs: tuple[int, ...]  # a_0 .. a_d

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("need at least the constant coefficient")
        if any(c not in (0, 1) for c in self.coeffs):
            raise ValueError("coefficients must be bits")
        if len(self.coeffs) - 1 > self.n:
            raise ValueError("degree exceeds variable count")

    def degree(self) -> int:
        d = 0
        for k, a in enumerate(self.coeffs):
            if a and k > 0:
                d = k
        return d

    def weight_profile(self) -> tuple[int, ...]:
        """Value as a function of input weight w = 0..n.

        Uses the parity of binomial coefficients: C(w, k) is odd exactly when
        k's bits are contained in w's bits.
        """
        prof = []
        for w in range(self.n + 1):
            v = 0
            for k, a in enumerate(self.coeffs):
                if a and (w & k) == k:
                    v ^= 1
            prof.append(v)
        return tuple(prof)

    def expand(self) -> PolyGF2:
        """Expansion into monomials; only defined for degree <= 3."""
        if self.degree() > 3:
            raise UnsupportedDegreeError("expansion limited to degree 3")
        p = PolyGF2(self.n, const=self.coeffs[0])
        for k, a in enumerate(self.coeffs[1:], start=1):
            if a:
                p = p + elementary(self.n, k)
        return p


@dataclass(frozen=True)
class DirectionGraph:
    """Graph on the variables with one edge per quadratic monomial."""

    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "edges", _check_indices(self.n, self.edges, 2))

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        adj = [0] * self.n
        for i, j in self.edges:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return tuple(adj)

    def degrees(self) -> tuple[int, ...]:
        return tuple(bin(a).count("1") for a in self.adjacency)

    def degree_in(self, i: int, subset: int) -> int:
        """Number of neighbors of variable i inside the given bitmask."""
        return bin(self.adjacency[i] & subset).count("1")

    def odd_degree_count(self, subset: int) -> int:
        """Nodes of the subgraph induced on `subset` that have odd degree there."""
        count = 0
        for i in range(self.n):
            if (subset >> i) & 1 and self.degree_in(i, subset) & 1:
                count += 1
        return count


# ---- text grammar -------------------------------------------------------

_TERM_RE = re.compile(r"x(\d+)$")


def parse(text: str, n: int | None = None) -> PolyGF2:
    """Parse 'x1*x2 + x3 + 1' style text; duplicate monomials cancel mod 2.

    If n is omitted the variable count is the largest index mentioned (at
    least 1).  '0' denotes the zero polynomial.
    """
    const = 0
    lin = 0
    edges: set[tuple[int, int]] = set()
    triples: set[tuple[int, int, int]] = set()
    max_idx = 0
    pos = 0
    for chunk in text.split("+"):
        term = chunk.strip()
        tpos = pos + (len(chunk) - len(chunk.lstrip()))
        pos += len(chunk) + 1
        if term == "":
            raise ParseError("empty term", tpos)
        if term == "0":
            continue
        if term == "1":
            const ^= 1
            continue
        idxs = []
        fpos = tpos
        for factor in term.split("*"):
            f = factor.strip()
            m = _TERM_RE.match(f)
            if not m:
                raise ParseError(f"malformed token {f!r}", fpos)
            i = int(m.group(1))
            if i < 1:
                raise ParseError(f"index must be >= 1 in {f!r}", fpos)
            idxs.append(i - 1)
            fpos += len(factor) + 1
        if len(idxs) > 3:
            raise ParseError(f"term degree {len(idxs)} exceeds 3", tpos)
        if len(set(idxs)) != len(idxs):
            raise ParseError(f"repeated index in term {term!r}", tpos)
        max_idx = max(max_idx, max(idxs) + 1)
        if len(idxs) == 1:
            lin ^= 1 << idxs[0]
        elif len(idxs) == 2:
            edges ^= {tuple(sorted(idxs))}
        else:
            triples ^= {tuple(sorted(idxs))}
    if n is None:
        n = max(max_idx, 1)
    elif max_idx > n:
        raise ParseError(f"index x{max_idx} out of range for n={n}", 0)
    return PolyGF2(n, const, lin, tuple(sorted(edges)), tuple(sorted(triples)))


def format_poly(p: PolyGF2) -> str:
    """Canonical text form; parse(format_poly(p)) == p."""
    terms = []
    if p.const:
        terms.append("1")
    terms += [f"x{i + 1}" for i in range(p.n) if (p.linear >> i) & 1]
    terms += [f"x{i + 1}*x{j + 1}" for i, j in p.edges]
    terms += [f"x{i + 1}*x{j + 1}*x{k + 1}" for i, j, k in p.triples]
    return " + ".join(terms) if terms else "0"
