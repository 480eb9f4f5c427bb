"""Pontryagin duality for finite groups.

The dual of a finite abelian group is abstractly isomorphic to the
group itself, so the dual is represented by a carrier with the same
invariant factors plus an explicit nondegenerate pairing
<x, chi> = sum_i x_i * chi_i / d_i taken modulo 1, with exact rational
arithmetic throughout.  Dual morphisms are the unique adjoints for this
pairing, and dualizing an extension reverses its two maps.

Infinite groups are rejected: their duals are compact and leave the
category handled here.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .extensions import Extension
from .fgabelian import Element, FgGroup, Morphism
from .intmat import IntMatrix, InvalidInputError, UnsupportedInputError

__all__ = [
    "CyclicFraction",
    "DualGroup",
    "dual_group",
    "dual_morphism",
    "dual_extension",
]


@dataclass(frozen=True)
class CyclicFraction:
    """An exact element of Q/Z: numerator/denominator reduced modulo 1.

    >>> CyclicFraction(5, 4) + CyclicFraction(3, 4)
    CyclicFraction(numerator=0, denominator=1)
    >>> str(CyclicFraction(2, 8))
    '1/4'
    """

    numerator: int
    denominator: int

    def __post_init__(self):
        if self.denominator <= 0:
            raise InvalidInputError("denominator must be positive")
        num = self.numerator % self.denominator
        g = gcd(num, self.denominator)
        object.__setattr__(self, "numerator", num // g)
        object.__setattr__(self, "denominator", self.denominator // g)

    def __add__(self, other: "CyclicFraction") -> "CyclicFraction":
        d = self.denominator * other.denominator
        n = self.numerator * other.denominator + other.numerator * self.denominator
        return CyclicFraction(n, d)

    def __neg__(self) -> "CyclicFraction":
        return CyclicFraction(-self.numerator, self.denominator)

    def scale(self, k: int) -> "CyclicFraction":
        return CyclicFraction(self.numerator * k, self.denominator)

    def is_zero(self) -> bool:
        return self.numerator == 0

    def __str__(self):
        return f"{self.numerator}/{self.denominator}"


def _require_finite(g: FgGroup) -> None:
    if g.free_rank:
        raise UnsupportedInputError(
            "duals of infinite groups are compact and not representable here"
        )


@dataclass(frozen=True)
class DualGroup:
    """A finite group's dual: same invariant factors, explicit pairing."""

    base: FgGroup
    carrier: FgGroup

    def pair(self, x: Element, chi: Element) -> CyclicFraction:
        """<x, chi> = sum_i x_i chi_i / d_i modulo 1."""
        if x.group != self.base or chi.group != self.carrier:
            raise InvalidInputError("pairing arguments belong to the wrong groups")
        acc = CyclicFraction(0, 1)
        for xi, ci, d in zip(x.torsion, chi.torsion, self.base.invariant_factors):
            acc = acc + CyclicFraction(xi * ci, d)
        return acc


def dual_group(g: FgGroup) -> DualGroup:
    """The dual of a finite group, carried by the same canonical form.

    >>> dual_group(FgGroup(0, (2, 4))).carrier
    FgGroup(free_rank=0, invariant_factors=(2, 4))
    """
    _require_finite(g)
    return DualGroup(g, g)


def dual_morphism(f: Morphism) -> Morphism:
    """The adjoint of f: <f(x), chi> = <x, dual_morphism(f)(chi)>.

    Entrywise: if f: G -> H has matrix M, the dual H^ -> G^ has
    N[i][j] = d_i * M[j][i] / e_j, an exact division because f is
    well defined.  Applying the formula twice returns M, so double
    duals are literal identities on normalized matrices.

    >>> from .intmat import IntMatrix
    >>> g = FgGroup(0, (4,))
    >>> doubling = Morphism(g, g, IntMatrix.from_rows([[2]]))
    >>> dual_morphism(doubling).matrix.tolists()
    [[2]]
    """
    _require_finite(f.domain)
    _require_finite(f.codomain)
    ds = f.domain.invariant_factors
    es = f.codomain.invariant_factors
    m = f.matrix
    rows = []
    for i, d in enumerate(ds):
        row = []
        for j, e in enumerate(es):
            num = d * m.entries[j][i]
            q, r = divmod(num, e)
            assert r == 0, "well-definedness guarantees exact division"
            row.append(q)
        rows.append(row)
    mat = IntMatrix.from_rows(rows, len(es))
    return Morphism(f.codomain, f.domain, mat)


def dual_extension(e: Extension) -> Extension:
    """Dualize 0 -> A -> B -> C -> 0 into 0 -> C^ -> B^ -> A^ -> 0."""
    for g in (e.A, e.B, e.C):
        _require_finite(g)
    return Extension(dual_morphism(e.psi), dual_morphism(e.phi))
