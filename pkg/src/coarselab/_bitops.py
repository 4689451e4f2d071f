"""Vectorized helpers for collections of subset-families encoded as bit keys.

A subset of an n-element universe is a mask in [0, 2^n); a family of
subsets is a key in [0, 2^(2^n)) whose bit ``s`` says that the subset
with mask ``s`` is a member.  For n <= 4 whole collections of families
fit in arrays of 65536 entries, which makes exhaustive axiom sweeps
cheap when expressed as per-bit passes.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

MAX_SLOTS = 16  # subset slots; universes of up to 4 elements get full tables


@lru_cache(maxsize=None)
def _indices(m: int) -> np.ndarray:
    return np.arange(1 << m, dtype=np.int64)


@lru_cache(maxsize=None)
def _has_bit(m: int, t: int) -> np.ndarray:
    return (_indices(m) >> t & 1).astype(bool)


def fold_or(m: int, values: list[int]) -> np.ndarray:
    """out[F] = OR of values[t] over bits t of F (0 for F = 0)."""
    out = np.zeros(1 << m, dtype=np.int64)
    for t in range(m):
        sel = _has_bit(m, t)
        out[sel] |= values[t]
    return out


def fold_and(m: int, values: list[int], init: int) -> np.ndarray:
    """out[F] = AND of values[t] over bits t of F (init for F = 0)."""
    out = np.full(1 << m, init, dtype=np.int64)
    for t in range(m):
        sel = _has_bit(m, t)
        out[sel] &= values[t]
    return out


def or_has_submask(flag: np.ndarray, m: int) -> np.ndarray:
    """g[U] = any(flag[V] for V submask of U), by the subset-sum sweep."""
    g = flag.copy()
    idx = _indices(m)
    for t in range(m):
        sel = _has_bit(m, t)
        g[sel] |= g[idx[sel] ^ (1 << t)]
    return g


def maximal_keys(member: np.ndarray, m: int) -> np.ndarray:
    """Boolean mask of members with no one-bit-larger member."""
    idx = _indices(m)
    dominated = np.zeros_like(member)
    for t in range(m):
        sel = ~_has_bit(m, t)
        bigger = member[idx[sel] | (1 << t)]
        dominated[sel] |= bigger
    return member & ~dominated


def minimal_keys(flag: np.ndarray, m: int) -> np.ndarray:
    """Boolean mask of flagged keys with no one-bit-smaller flagged key."""
    idx = _indices(m)
    dominated = np.zeros_like(flag)
    for t in range(m):
        sel = _has_bit(m, t)
        smaller = flag[idx[sel] ^ (1 << t)]
        dominated[sel] |= smaller
    return flag & ~dominated


def submasks(mask: int):
    """All submasks of ``mask``, descending, including mask and 0."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def bits(mask: int):
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def vee_key(f: int, g: int) -> int:
    """Key of the pairwise-union family of the families with keys f and g."""
    out = 0
    for s in bits(f):
        for t in bits(g):
            out |= 1 << (s | t)
    return out


def key_to_masks(key: int) -> list[int]:
    return list(bits(key))


def masks_to_key(masks) -> int:
    out = 0
    for s in masks:
        out |= 1 << s
    return out
