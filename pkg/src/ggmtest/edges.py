"""Canonical ordering of unordered vertex pairs.

Vertices are numbered 1..p.  Pairs (i, j) with i < j are listed
lexicographically, which matches ``numpy.triu_indices(p, k=1)``, so any
vector indexed by this order aligns with a flattened strict upper triangle.
"""

import itertools
import math

import numpy as np


def n_pairs(p: int) -> int:
    """Number of unordered pairs among p vertices."""
    return p * (p - 1) // 2


def edge_pairs(p: int) -> list[tuple[int, int]]:
    """All pairs (i, j), 1 <= i < j <= p, in canonical order."""
    return list(itertools.combinations(range(1, p + 1), 2))


def p_from_n_pairs(count: int) -> int:
    """Invert ``n_pairs``: the p with p*(p-1)/2 == count."""
    p = round((1 + math.isqrt(1 + 8 * count)) / 2)
    if n_pairs(p) != count:
        raise ValueError(f"{count} is not a pair count p*(p-1)/2 for any integer p")
    return p


def pair_index(i: int, j: int, p: int) -> int:
    """Position of the pair (i, j) within ``edge_pairs(p)``."""
    if not (1 <= i < j <= p):
        raise ValueError(f"({i}, {j}) is not a valid vertex pair for p={p}")
    return (i - 1) * p - i * (i - 1) // 2 + (j - i) - 1


def mask_from_edges(edges, p: int) -> np.ndarray:
    """Boolean vector over the canonical pair order, True at the given edges."""
    mask = np.zeros(n_pairs(p), dtype=bool)
    for i, j in edges:
        mask[pair_index(i, j, p)] = True
    return mask


def edges_from_mask(mask, p: int) -> frozenset[tuple[int, int]]:
    """Edge set selected by a boolean vector over the canonical pair order."""
    mask = np.asarray(mask, dtype=bool)
    if mask.shape != (n_pairs(p),):
        raise ValueError(f"mask must have length {n_pairs(p)} for p={p}")
    pairs = edge_pairs(p)
    return frozenset(pairs[k] for k in np.flatnonzero(mask))
