"""Deterministic RNG streams derived from a master seed and a label path."""

import hashlib
import os
import random

__all__ = ["derive_seed", "rng_for", "resolve_seed", "SEED_ENV"]

SEED_ENV = "SRDEGREE_SEED"


def derive_seed(master, *labels):
    h = hashlib.blake2b(digest_size=8)
    h.update(str(int(master)).encode())
    for label in labels:
        h.update(b"\x00" + str(label).encode())
    return int.from_bytes(h.digest(), "big")


def rng_for(master, *labels):
    return random.Random(derive_seed(master, *labels))


def resolve_seed(seed=None, default=0):
    """Explicit seed, else $SRDEGREE_SEED, else ``default``."""
    if seed is not None:
        return int(seed)
    env = os.environ.get(SEED_ENV)
    if env not in (None, ""):
        return int(env)
    return default
