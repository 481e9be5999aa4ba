"""Shared test helpers: dead-slow reference implementations used as oracles."""

from __future__ import annotations

import numpy as np
import pytest

from modcorr._util import make_rng


def slow_eval(p, x: int) -> int:
    """Monomial-by-monomial evaluation, no bit tricks."""
    v = p.const
    for i in range(p.n):
        if (p.linear >> i) & 1 and (x >> i) & 1:
            v ^= 1
    for i, j in p.edges:
        v ^= ((x >> i) & (x >> j)) & 1
    for i, j, k in p.triples:
        v ^= ((x >> i) & (x >> j) & (x >> k)) & 1
    return v


def slow_e_phi(p, omega) -> complex:
    total = 0j
    for x in range(1 << p.n):
        total += (-1) ** slow_eval(p, x) * omega ** bin(x).count("1")
    return total / (1 << p.n)


def slow_contribution(p, y: int, omega) -> complex:
    total = 0j
    for x in range(1 << p.n):
        d = slow_eval(p, x) ^ slow_eval(p, x ^ y)
        total += (-1) ** d * omega ** (bin(x).count("1") - bin(x ^ y).count("1"))
    return total / (1 << p.n)


@pytest.fixture
def rng():
    return make_rng(20250811)


ACCEPTANCE_LINES: list[str] = []


def record_criterion(tag: str, ok: bool, detail: str = "") -> bool:
    """Collect one pass/fail line per acceptance criterion for the summary."""
    status = "PASS" if ok else "FAIL"
    line = f"[criterion {tag}] {status}  {detail}".rstrip()
    ACCEPTANCE_LINES.append(line)
    print(line, flush=True)
    return ok


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
