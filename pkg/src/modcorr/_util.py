"""Shared low-level helpers: popcounts, Walsh-Hadamard transform, deterministic
chunked reduction, and seeded random streams."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

import numpy as np

# Default seed used whenever a caller does not supply one.  Recorded in every
# report so runs are reproducible by construction.
DEFAULT_SEED = 271828

# Fixed chunk width for input-space enumeration.  Chunk boundaries never move,
# so partial sums (and therefore totals) are bit-identical across runs and
# across thread counts.
CHUNK_BITS = 16
CHUNK = 1 << CHUNK_BITS


def popcount(x: int) -> int:
    return bin(x).count("1")


def popcount_array(a: np.ndarray) -> np.ndarray:
    """Per-element popcount for an integer array."""
    return np.bitwise_count(a)


def parity_array(a: np.ndarray) -> np.ndarray:
    """Per-element parity (popcount mod 2) as uint8."""
    return (np.bitwise_count(a) & 1).astype(np.uint8)


def weights_chunk(lo: int, hi: int) -> np.ndarray:
    """Hamming weights of the integers lo..hi-1."""
    return np.bitwise_count(np.arange(lo, hi, dtype=np.uint64)).astype(np.int64)


def fwht(a: np.ndarray) -> np.ndarray:
    """Unnormalized Walsh-Hadamard transform, F[s] = sum_x a[x] * (-1)^{x.s}.

    Returns a new array; length must be a power of two.  Self-inverse up to a
    factor of len(a).
    """
    a = np.array(a, dtype=np.complex128 if np.iscomplexobj(a) else np.float64)
    m = len(a)
    if m & (m - 1):
        raise ValueError("length must be a power of two")
    h = 1
    while h < m:
        a = a.reshape(-1, 2, h)
        x, y = a[:, 0, :].copy(), a[:, 1, :].copy()
        a[:, 0, :] = x + y
        a[:, 1, :] = x - y
        a = a.reshape(m)
        h <<= 1
    return a


def tree_reduce_sum(parts: Sequence[complex]) -> complex:
    """Pairwise reduction in fixed order; deterministic for a fixed partition."""
    vals = list(parts)
    if not vals:
        return 0j
    while len(vals) > 1:
        nxt = [vals[i] + vals[i + 1] for i in range(0, len(vals) - 1, 2)]
        if len(vals) % 2:
            nxt.append(vals[-1])
        vals = nxt
    return vals[0]


def chunked_sum(part_fn: Callable[[int, int], complex], total: int,
                threads: int = 1, chunk: int = CHUNK) -> complex:
    """Sum part_fn(lo, hi) over fixed chunks of range(total).

    The chunk partition and the reduction order are independent of the thread
    count, so the result is reproducible bit for bit.
    """
    ranges = [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]
    if threads > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda r: part_fn(*r), ranges))
    else:
        parts = [part_fn(*r) for r in ranges]
    return tree_reduce_sum(parts)


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Counter-based generator (Philox); disjoint streams merge order-free."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(stream,))))


def bit_floor_log2(x: float) -> float:
    return math.log2(x)
