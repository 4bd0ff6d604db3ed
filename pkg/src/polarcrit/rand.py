"""Deterministic seeded randomness.

Every random choice in the package flows through a child generator derived
from (seed, purpose-tag) via sha256, so a fixed (input, seed, prime) triple
reproduces bit-identical output across runs and platforms.
"""

from __future__ import annotations

import hashlib
import random

__all__ = ["derive_seed", "rng_for", "draw_nonzero_ints"]


def derive_seed(seed: int, tag: str) -> int:
    digest = hashlib.sha256(f"{seed}:{tag}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def rng_for(seed: int, tag: str) -> random.Random:
    return random.Random(derive_seed(seed, tag))


def draw_nonzero_ints(rng: random.Random, count: int, bound: int) -> list[int]:
    """Integers from {-bound..bound} without 0."""
    out = []
    for _ in range(count):
        v = rng.randint(1, 2 * bound)
        out.append(v - bound - 1 if v <= bound else v - bound)
    return out
