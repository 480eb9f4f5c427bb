"""Ext and Hom groups in closed form, with tagged cyclic components.

For canonical C with torsion orders d_1 | ... | d_k, Ext(C, A) is the
direct sum over i of A/d_i A.  Each cyclic summand keeps a tag saying
which torsion generator of C and which generator of A produced it:

    (c_index=i, free generator l of A)     -> Z/d_i
    (c_index=i, torsion generator j of A)  -> Z/gcd(d_i, e_j)

The t-subgroup (classes that restrict exactly to torsion) is precisely
the span of the components whose target is a torsion generator of A, so
membership is a coordinate support check.  Elements are coordinate
tuples against the component list; the extensions module converts
between elements and concrete short exact sequences.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, prod
from typing import Callable, Iterator, Sequence

from .fgabelian import Element, FgGroup, Morphism, canonical_from_orders, direct_sum
from .intmat import InvalidInputError

__all__ = [
    "ExtComponent",
    "ExtGroup",
    "ExtElement",
    "ExtTSubgroup",
    "ExtMap",
    "ext_group",
    "ext_t_subgroup",
    "pext_group",
    "hom_group",
    "induced_pushforward",
    "induced_pullback",
    "ext_t_via_torsion_targets",
    "ext_t_via_free_quotient",
    "fg_t_projective",
    "fg_t_injective",
    "t_projective_counterexample",
    "t_injective_counterexample",
    "pure_splits_certificate",
]


@dataclass(frozen=True)
class ExtComponent:
    """One cyclic summand of Ext(C, A) with its provenance tag."""

    c_index: int
    target_kind: str  # "torsion" or "free"
    target_index: int
    order: int

    @property
    def is_torsion_target(self) -> bool:
        return self.target_kind == "torsion"

    def label(self) -> str:
        return f"{self.target_kind}:{self.target_index}"


@dataclass(frozen=True)
class ExtGroup:
    """Ext(C, A) with canonical structure and tagged components."""

    C: FgGroup
    A: FgGroup
    components: tuple[ExtComponent, ...]
    structure: FgGroup

    def zero(self) -> "ExtElement":
        return ExtElement(self, (0,) * len(self.components))

    def element(self, coords: Sequence[int]) -> "ExtElement":
        if len(coords) != len(self.components):
            raise InvalidInputError("coordinate length does not match component count")
        return ExtElement(self, tuple(coords))

    def elements(self) -> Iterator["ExtElement"]:
        """All classes, lexicographic in component coordinates (always finite)."""
        for coords in itertools.product(*(range(c.order) for c in self.components)):
            yield ExtElement(self, coords)

    def order(self) -> int:
        return prod(c.order for c in self.components)

    def random_element(self, rng) -> "ExtElement":
        return ExtElement(self, tuple(rng.randrange(c.order) for c in self.components))

    def is_trivial(self) -> bool:
        return self.structure.is_trivial()


@dataclass(frozen=True)
class ExtElement:
    """An extension class as coordinates against the component list."""

    parent: ExtGroup
    coords: tuple[int, ...]

    def __post_init__(self):
        comps = self.parent.components
        if len(self.coords) != len(comps):
            raise InvalidInputError("coordinate length does not match component count")
        object.__setattr__(
            self, "coords", tuple(c % comp.order for c, comp in zip(self.coords, comps))
        )

    def __add__(self, other: "ExtElement") -> "ExtElement":
        self._same_parent(other)
        return ExtElement(self.parent, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "ExtElement") -> "ExtElement":
        self._same_parent(other)
        return ExtElement(self.parent, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "ExtElement":
        return ExtElement(self.parent, tuple(-a for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def in_t_subgroup(self) -> bool:
        """True when all free-target coordinates vanish."""
        return all(
            c == 0 or comp.is_torsion_target
            for c, comp in zip(self.coords, self.parent.components)
        )

    def _same_parent(self, other: "ExtElement") -> None:
        if self.parent != other.parent:
            raise InvalidInputError("classes live in different ext groups")


def ext_group(C: FgGroup, A: FgGroup) -> ExtGroup:
    """Ext(C, A) with one component per (torsion generator of C, generator of A).

    >>> eg = ext_group(FgGroup(0, (4,)), FgGroup(0, (6,)))
    >>> eg.structure
    FgGroup(free_rank=0, invariant_factors=(2,))
    >>> eg = ext_group(FgGroup(0, (2,)), FgGroup(1, (4,)))
    >>> eg.structure
    FgGroup(free_rank=0, invariant_factors=(2, 2))
    """
    comps: list[ExtComponent] = []
    for i, d in enumerate(C.invariant_factors):
        for j, e in enumerate(A.invariant_factors):
            comps.append(ExtComponent(i, "torsion", j, gcd(d, e)))
        for l in range(A.free_rank):
            comps.append(ExtComponent(i, "free", l, d))
    structure = canonical_from_orders([c.order for c in comps])
    return ExtGroup(C, A, tuple(comps), structure)


@dataclass(frozen=True)
class ExtTSubgroup:
    """The subgroup of classes whose torsion rows stay exact."""

    parent: ExtGroup
    member_indices: tuple[int, ...]

    def as_group(self) -> FgGroup:
        comps = self.parent.components
        return canonical_from_orders([comps[i].order for i in self.member_indices])

    def contains(self, x: ExtElement) -> bool:
        if x.parent != self.parent:
            raise InvalidInputError("class belongs to a different ext group")
        return x.in_t_subgroup()

    def elements(self) -> Iterator[ExtElement]:
        comps = self.parent.components
        member = set(self.member_indices)
        ranges = [range(comps[i].order) if i in member else range(1) for i in range(len(comps))]
        for coords in itertools.product(*ranges):
            yield ExtElement(self.parent, coords)

    def order(self) -> int:
        comps = self.parent.components
        return prod(comps[i].order for i in self.member_indices)

    def random_element(self, rng) -> ExtElement:
        comps = self.parent.components
        member = set(self.member_indices)
        return ExtElement(
            self.parent,
            tuple(rng.randrange(comps[i].order) if i in member else 0 for i in range(len(comps))),
        )


def ext_t_subgroup(C: FgGroup, A: FgGroup) -> ExtTSubgroup:
    """Coordinate span of the torsion-target components of Ext(C, A).

    >>> sub = ext_t_subgroup(FgGroup(0, (2,)), FgGroup(1, (4,)))
    >>> sub.as_group()
    FgGroup(free_rank=0, invariant_factors=(2,))
    """
    parent = ext_group(C, A)
    members = tuple(i for i, c in enumerate(parent.components) if c.is_torsion_target)
    return ExtTSubgroup(parent, members)


def pext_group(C: FgGroup, A: FgGroup) -> ExtGroup:
    """Pure-extension classes: identically trivial for finitely generated groups.

    Comes with a runtime certificate: see pure_splits_certificate.
    """
    return ExtGroup(C, A, (), FgGroup(0, ()))


def pure_splits_certificate(e) -> bool:
    """Certificate behind pext triviality: a pure extension must split."""
    from .extensions import is_pure_extension, splits

    return (not is_pure_extension(e)) or splits(e)


def hom_group(C: FgGroup, A: FgGroup) -> FgGroup:
    """Canonical form of Hom(C, A).

    >>> hom_group(FgGroup(0, (4,)), FgGroup(0, (6,)))
    FgGroup(free_rank=0, invariant_factors=(2,))
    >>> hom_group(FgGroup(1, (2,)), FgGroup(1, (4,)))
    FgGroup(free_rank=1, invariant_factors=(2, 4))
    """
    orders: list[int] = []
    for d in C.invariant_factors:
        for e in A.invariant_factors:
            orders.append(gcd(d, e))
    # Each free generator of C maps anywhere in A.
    for _ in range(C.free_rank):
        orders.extend(A.invariant_factors)
    return canonical_from_orders(orders, C.free_rank * A.free_rank)


@dataclass(frozen=True)
class ExtMap:
    """Induced homomorphism between ext groups, applied coordinatewise."""

    source: ExtGroup
    target: ExtGroup
    _apply: Callable[[ExtElement], ExtElement]

    def __call__(self, x: ExtElement) -> ExtElement:
        if x.parent != self.source:
            raise InvalidInputError("class is not in the map's source ext group")
        return self._apply(x)


def _representative(parent: ExtGroup, x: ExtElement, i: int) -> Element:
    """A representative in A of x's i-th coordinate block (defined mod d_i A)."""
    a = parent.A
    torsion = [0] * a.torsion_count
    free = [0] * a.free_rank
    for comp, c in zip(parent.components, x.coords):
        if comp.c_index != i or c == 0:
            continue
        if comp.is_torsion_target:
            torsion[comp.target_index] = c
        else:
            free[comp.target_index] = c
    return Element(a, tuple(torsion), tuple(free))


def _coords_from_representatives(target: ExtGroup, reps: Sequence[Element]) -> ExtElement:
    """Coordinates of the class given one representative in A per c_index."""
    coords = []
    for comp in target.components:
        a_el = reps[comp.c_index]
        val = a_el.torsion[comp.target_index] if comp.is_torsion_target else a_el.free[comp.target_index]
        coords.append(val % comp.order if comp.order else val)
    return ExtElement(target, tuple(coords))


def induced_pushforward(mu: Morphism, C: FgGroup) -> ExtMap:
    """Ext(C, A) -> Ext(C, A') induced by mu: A -> A'."""
    source = ext_group(C, mu.domain)
    target = ext_group(C, mu.codomain)

    def apply(x: ExtElement) -> ExtElement:
        reps = [
            mu(_representative(source, x, i)) for i in range(len(C.invariant_factors))
        ]
        return _coords_from_representatives(target, reps)

    return ExtMap(source, target, apply)


def induced_pullback(gamma: Morphism, A: FgGroup) -> ExtMap:
    """Ext(C, A) -> Ext(C', A) induced by gamma: C' -> C (contravariant)."""
    C = gamma.codomain
    C2 = gamma.domain
    source = ext_group(C, A)
    target = ext_group(C2, A)
    m = gamma.matrix
    ds = C.invariant_factors
    d2s = C2.invariant_factors

    def apply(x: ExtElement) -> ExtElement:
        source_reps = [_representative(source, x, j) for j in range(len(ds))]
        reps = []
        for i2, d2 in enumerate(d2s):
            acc = A.zero()
            for j, d in enumerate(ds):
                # Well-definedness of gamma makes this division exact.
                coef = (d2 * m.entries[j][i2]) // d
                if coef:
                    acc = acc + source_reps[j].scale(coef)
            reps.append(acc)
        return _coords_from_representatives(target, reps)

    return ExtMap(source, target, apply)


def ext_t_via_torsion_targets(C: FgGroup, A: FgGroup) -> FgGroup:
    """Alternate route for torsion C: Ext_t(C, A) computed as Ext(C, tA)."""
    if not C.is_torsion():
        raise InvalidInputError("this reduction requires a torsion base group")
    t_a = FgGroup(0, A.invariant_factors)
    return ext_group(C, t_a).structure


def ext_t_via_free_quotient(C: FgGroup, A: FgGroup) -> FgGroup:
    """Alternate route for torsion-free A: Ext_t(C, A) computed as Ext(C/tC, A)."""
    if not A.is_torsion_free():
        raise InvalidInputError("this reduction requires a torsion-free coefficient group")
    c_mod_t = FgGroup(C.free_rank, ())
    return ext_group(c_mod_t, A).structure


def fg_t_projective(C: FgGroup) -> bool:
    """Does every t-extension over base C split (equivalently: is C free)?"""
    return C.is_free()


def fg_t_injective(A: FgGroup) -> bool:
    """Does every t-extension with kernel A split (equivalently: is A torsion-free)?"""
    return A.is_torsion_free()


def t_projective_counterexample(C: FgGroup) -> tuple[FgGroup, ExtElement] | None:
    """For non-free C: a coefficient group and a nonzero t-class over C."""
    if C.is_free():
        return None
    d = C.invariant_factors[0]
    a = FgGroup(0, (d,))
    sub = ext_t_subgroup(C, a)
    # Component (c_index 0, torsion generator 0) has order gcd(d, d) = d >= 2.
    coords = [0] * len(sub.parent.components)
    idx = next(
        i
        for i, comp in enumerate(sub.parent.components)
        if comp.c_index == 0 and comp.is_torsion_target and comp.target_index == 0
    )
    coords[idx] = 1
    witness = sub.parent.element(coords)
    assert sub.contains(witness) and not witness.is_zero()
    return a, witness


def t_injective_counterexample(A: FgGroup) -> tuple[FgGroup, ExtElement] | None:
    """For A with torsion: a base group and a nonzero t-class with kernel A."""
    if A.is_torsion_free():
        return None
    e = A.invariant_factors[0]
    c = FgGroup(0, (e,))
    sub = ext_t_subgroup(c, A)
    coords = [0] * len(sub.parent.components)
    idx = next(
        i
        for i, comp in enumerate(sub.parent.components)
        if comp.c_index == 0 and comp.is_torsion_target and comp.target_index == 0
    )
    coords[idx] = 1
    witness = sub.parent.element(coords)
    assert sub.contains(witness) and not witness.is_zero()
    return c, witness
