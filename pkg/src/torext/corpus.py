"""Seeded random groups, morphisms and extensions for the test suites.

Sizes are deliberately small (free rank at most 2, at most 3 invariant
factors, each at most 16) so that every property can be cross-checked
against the brute-force machinery in reasonable time.  Everything is a
pure function of the supplied random.Random instance.
"""

from __future__ import annotations

import itertools
from math import gcd

from .extcalc import ExtElement, ext_group, ext_t_subgroup
from .extensions import Extension, baer_sum, realize, split_extension
from .fgabelian import Element, FgGroup, Morphism, canonical_from_orders
from .intmat import IntMatrix

__all__ = [
    "MAX_RANK",
    "MAX_FACTORS",
    "MAX_FACTOR",
    "random_group",
    "random_finite_group",
    "random_element",
    "random_morphism",
    "random_extension",
    "random_t_extension",
    "equivalent_pair",
    "groups_of_order",
    "census_pairs",
]

MAX_RANK = 2
MAX_FACTORS = 3
MAX_FACTOR = 16


def random_group(
    rng,
    max_rank: int = MAX_RANK,
    max_factors: int = MAX_FACTORS,
    max_factor: int = MAX_FACTOR,
) -> FgGroup:
    free_rank = rng.randint(0, max_rank)
    k = rng.randint(0, max_factors)
    orders = [rng.randint(2, max_factor) for _ in range(k)]
    base = canonical_from_orders(orders)
    return FgGroup(free_rank, base.invariant_factors)


def random_finite_group(
    rng,
    max_factors: int = MAX_FACTORS,
    max_factor: int = MAX_FACTOR,
    max_order: int | None = None,
) -> FgGroup:
    while True:
        g = random_group(rng, 0, max_factors, max_factor)
        if max_order is None or (g.order() or 1) <= max_order:
            return g


def random_element(rng, g: FgGroup, span: int = 9) -> Element:
    torsion = tuple(rng.randrange(d) for d in g.invariant_factors)
    free = tuple(rng.randint(-span, span) for _ in range(g.free_rank))
    return Element(g, torsion, free)


def random_morphism(rng, domain: FgGroup, codomain: FgGroup, span: int = 9) -> Morphism:
    """A uniformly chosen well-defined morphism (free columns unbounded
    only by span)."""
    cols = []
    es = codomain.invariant_factors
    for d in domain.invariant_factors:
        # The image of an order-d generator must be killed by d.
        col = [
            (e // gcd(d, e)) * rng.randrange(gcd(d, e)) for e in es
        ] + [0] * codomain.free_rank
        cols.append(col)
    for _ in range(domain.free_rank):
        col = [rng.randrange(e) for e in es] + [
            rng.randint(-span, span) for _ in range(codomain.free_rank)
        ]
        cols.append(col)
    if cols:
        mat = IntMatrix.from_rows(list(zip(*cols)), domain.ngens)
    else:
        mat = IntMatrix.zeros(codomain.ngens, 0)
    return Morphism(domain, codomain, mat)


def random_extension(rng, A: FgGroup, C: FgGroup) -> Extension:
    return realize(ext_group(C, A).random_element(rng))


def random_t_extension(rng, A: FgGroup, C: FgGroup) -> Extension:
    return realize(ext_t_subgroup(C, A).random_element(rng))


def equivalent_pair(rng, A: FgGroup, C: FgGroup) -> tuple[Extension, Extension]:
    """Two differently presented extensions of the same class."""
    e1 = random_extension(rng, A, C)
    e2 = baer_sum(e1, split_extension(A, C))
    return e1, e2


def groups_of_order(n: int) -> list[FgGroup]:
    """All abelian groups of order n, as invariant factor chains.

    >>> [g.invariant_factors for g in groups_of_order(8)]
    [(8,), (2, 4), (2, 2, 2)]
    """
    out: list[tuple[int, ...]] = []

    def extend(chain: tuple[int, ...], remaining: int, max_last: int) -> None:
        if remaining == 1:
            out.append(tuple(reversed(chain)))
            return
        for d in range(2, min(remaining, max_last) + 1):
            if remaining % d == 0 and (not chain or chain[-1] % d == 0):
                extend(chain + (d,), remaining // d, d)

    extend((), n, n)
    groups = [FgGroup(0, chain) for chain in out]
    groups.sort(key=lambda g: (len(g.invariant_factors), g.invariant_factors))
    return groups


def census_pairs(orders=(2, 3, 4, 6, 8)) -> list[tuple[FgGroup, FgGroup]]:
    """Every ordered pair of abelian groups with orders from the census."""
    groups = [g for n in orders for g in groups_of_order(n)]
    return list(itertools.product(groups, groups))
