"""Shared fixtures and helpers for the test suite."""

from __future__ import annotations

import random
from math import gcd

import pytest

from torext.corpus import census_pairs
from torext.fgabelian import FgGroup, Morphism
from torext.intmat import IntMatrix


@pytest.fixture(scope="session")
def census():
    """All ordered pairs (C, A) of finite groups with small orders."""
    return census_pairs()


def random_automorphism(rng: random.Random, g: FgGroup) -> Morphism:
    """A random automorphism built from generator-preserving moves.

    Composes unit scalings, swaps of generators with equal order, and
    well-defined shears g_i -> g_i + c * g_j.  Every factor is invertible,
    so the product is an automorphism.
    """
    n = g.ngens
    orders = list(g.invariant_factors) + [0] * g.free_rank
    mat = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def unit(d: int) -> int:
        if d == 0:
            return rng.choice([1, -1])
        candidates = [u for u in range(1, d) if gcd(u, d) == 1]
        return rng.choice(candidates) if candidates else 1

    for i in range(n):
        u = unit(orders[i])
        for r in range(n):
            mat[r][i] *= u
    for _ in range(2 * n):
        i = rng.randrange(n)
        j = rng.randrange(n)
        if i == j:
            continue
        if orders[i] == orders[j] and rng.random() < 0.3:
            for r in range(n):
                mat[r][i], mat[r][j] = mat[r][j], mat[r][i]
            continue
        # Shear column i by c * column j; well-defined iff c * d_i is a
        # multiple of d_j (always true when g_j has infinite order only
        # if c = 0, so skip torsion -> free shears).
        di, dj = orders[i], orders[j]
        if dj == 0 and di != 0:
            continue
        if dj == 0 or di == 0:
            c = rng.randrange(-2, 3)
        else:
            step = dj // gcd(di, dj)
            c = step * rng.randrange(gcd(di, dj))
        for r in range(n):
            mat[r][i] += c * mat[r][j]
    f = Morphism(g, g, IntMatrix.from_rows(mat, n))
    assert f.is_isomorphism()
    return f
